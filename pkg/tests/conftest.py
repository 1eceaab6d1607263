import os
import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small = st.integers(-3, 3).map(Fraction)


def vectors(n):
    return st.tuples(*[small] * n)


@st.composite
def spanning_sets(draw, max_n=4, max_k=3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, max_k))
    return n, [draw(vectors(n)) for _ in range(k)]
