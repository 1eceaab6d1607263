import random
from fractions import Fraction

from hypothesis import given, strategies as st

from flattice import fm

F = Fraction


def test_strict_versus_weak():
    # t > 0 and -t >= 0 is infeasible, t >= 0 and -t >= 0 has t = 0
    assert fm.feasible_point([((F(1),), F(0), fm.STRICT), ((F(-1),), F(0), fm.WEAK)], 1) is None
    assert fm.feasible_point([((F(1),), F(0), fm.WEAK), ((F(-1),), F(0), fm.WEAK)], 1) == (F(0),)


def test_equality_constraints():
    cons = [((F(1), F(1)), F(-2), fm.EQ), ((F(1), F(-1)), F(0), fm.STRICT)]
    pt = fm.feasible_point(cons, 2)
    assert pt is not None and fm.satisfies(cons, pt)


def test_open_cone_in_plane():
    # x > 0, y > 0, x + y < 1
    cons = [((F(1), F(0)), F(0), fm.STRICT), ((F(0), F(1)), F(0), fm.STRICT),
            ((F(-1), F(-1)), F(1), fm.STRICT)]
    pt = fm.feasible_point(cons, 2)
    assert fm.satisfies(cons, pt)


def grid_feasible(cons, nvars, radius=3):
    """Brute force over a rational grid; only used in the direction 'found => feasible'."""
    vals = [F(a, 2) for a in range(-2 * radius, 2 * radius + 1)]
    import itertools
    return any(fm.satisfies(cons, p) for p in itertools.product(vals, repeat=nvars))


@st.composite
def systems(draw):
    nvars = draw(st.integers(1, 3))
    k = draw(st.integers(1, 5))
    cons = []
    for _ in range(k):
        coeffs = tuple(F(draw(st.integers(-2, 2))) for _ in range(nvars))
        const = F(draw(st.integers(-2, 2)))
        kind = draw(st.sampled_from([fm.STRICT, fm.WEAK]))
        cons.append((coeffs, const, kind))
    return nvars, cons


@given(systems())
def test_fm_agrees_with_grid_search(sys_):
    nvars, cons = sys_
    pt = fm.feasible_point(cons, nvars)
    if pt is not None:
        assert fm.satisfies(cons, pt)
    if grid_feasible(cons, nvars):
        assert pt is not None


def test_random_infeasible_pairs():
    rng = random.Random(3)
    for _ in range(50):
        a = tuple(F(rng.randint(-3, 3)) for _ in range(3))
        # a.t > 0 and -a.t > 0 never both hold
        cons = [(a, F(0), fm.STRICT), (tuple(-x for x in a), F(0), fm.STRICT)]
        assert fm.feasible_point(cons, 3) is None
