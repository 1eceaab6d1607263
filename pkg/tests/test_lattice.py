import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import spanning_sets, vectors
from oracles import closure_by_saturation, lattice_hom_counterexample, same_span
from flattice.errors import MixedAmbient, PreconditionFailed, SizeLimit
from flattice.lattice import (Inf, Leaf, Lin, LinearMap, Sup, check_lattice_hom, check_positive,
                              evaluate, full_space, is_admissible, is_sublattice, make_subspace,
                              member_two_point, point_classes, sublattice, sublattice_closure,
                              sup_witness, upsilon, zero_space, resolve_max_points)
from flattice.linalg import pmax, vabs

F = Fraction


def V(*xs):
    return tuple(F(x) for x in xs)


# ---- make_subspace


def test_dependent_pair_collapses():
    X = make_subspace([(1, 1, 0), (2, 2, 0)])
    assert X.dim == 1 and X.basis == (V(1, 1, 0),)


def test_empty_span_needs_ambient():
    assert make_subspace([], 3).dim == 0


def test_echelon_basis_by_hand():
    X = make_subspace([(1, 1, 0), (0, 1, 1)])
    assert X.basis == (V(1, 0, -1), V(0, 1, 1))


def test_mixed_ambient_rejected():
    with pytest.raises(MixedAmbient):
        make_subspace([(1, 0), (1, 0, 0)])


# ---- is_sublattice and closure


def test_is_sublattice_examples():
    assert is_sublattice(make_subspace([(1, 1)]))
    assert not is_sublattice(make_subspace([(1, 1, 0), (0, 1, 1)]))
    assert is_sublattice(full_space(4))
    assert is_sublattice(zero_space(2))


def test_pairwise_sup_test_would_miss_this_one():
    # a single basis vector is trivially "closed" under sups with itself,
    # yet (1,-1) v 0 = (1,0) leaves the span
    X = make_subspace([(1, -1)])
    assert not is_sublattice(X)
    a, b = sup_witness(X)
    assert X.contains(a) and X.contains(b) and not X.contains(pmax(a, b))


def test_sup_witness_for_two_generators():
    X = make_subspace([(1, 1, 0), (0, 1, 1)])
    a, b = sup_witness(X)
    assert not X.contains(pmax(a, b))


def test_sublattice_rejects_non_lattice():
    with pytest.raises(PreconditionFailed):
        sublattice(make_subspace([(1, -1)]))


def test_closure_examples():
    assert sublattice_closure(make_subspace([(1, 1)])).dim == 1
    assert sublattice_closure(make_subspace([(1, 1, 0), (0, 1, 1)])).space == full_space(3)
    assert sublattice_closure(zero_space(3)).dim == 0
    assert sublattice_closure(make_subspace([(1, -1)])).space == full_space(2)


def test_closure_with_proportional_points():
    X = make_subspace([(1, 2, 0, 0), (0, 0, 1, -1)])
    L = sublattice_closure(X)
    assert L.basis == (V(1, 2, 0, 0), V(0, 0, 1, 0), V(0, 0, 0, 1))


def test_point_classes_group_positive_multiples():
    X = make_subspace([(1, 2, 0, -1), (0, 0, 1, 0)])
    assert point_classes(X) == [(0, 1), (2,), (3,)]


@pytest.mark.parametrize("strategy", ["greedy", "pointwise", "dual"])
@given(spanning_sets(max_n=5, max_k=4))
def test_certificates_reproduce_basis(strategy, data):
    n, gens = data
    X = make_subspace(gens, n)
    gens = list(gens) or None
    L = sublattice_closure(X, gens, strategy=strategy) if gens else sublattice_closure(X)
    for expr, b in zip(L.certificates, L.basis):
        assert evaluate(expr, L.generators, n) == b
    assert is_sublattice(L.space)
    assert X.issubspace(L.space)


@given(spanning_sets(max_n=4, max_k=3))
def test_closure_matches_saturation_oracle(data):
    n, gens = data
    L = sublattice_closure(make_subspace(gens, n))
    want = closure_by_saturation(gens, n)
    assert same_span(list(L.basis), want) if want or L.dim else True


@given(spanning_sets(max_n=5, max_k=4))
def test_closure_idempotent(data):
    n, gens = data
    L = sublattice_closure(make_subspace(gens, n))
    assert sublattice_closure(L.space).space == L.space


@given(spanning_sets(max_n=5, max_k=4))
def test_closure_minimal(data):
    n, gens = data
    X = make_subspace(gens, n)
    L = sublattice_closure(X)
    if L.dim == X.dim:
        return
    for k in range(L.dim):
        rest = make_subspace(L.basis[:k] + L.basis[k + 1:], n)
        assert not (is_sublattice(rest) and X.issubspace(rest))


# ---- membership oracle


def test_member_two_point_examples():
    X = make_subspace([(1, 1, 0), (0, 1, 1)])
    assert member_two_point(X, V(5, -2, 7))
    assert not member_two_point(make_subspace([(1, 1)]), V(1, 2))
    assert member_two_point(make_subspace([(1, 1)]), V(0, 0))


def test_member_two_point_negatively_proportional_pair():
    # the literal "match v on each pair" reading says (1,0) is not reachable
    # from span{(1,-1)}, but (1,-1) v 0 = (1,0)
    X = make_subspace([(1, -1)])
    assert member_two_point(X, V(1, 0))
    assert sublattice_closure(X).contains(V(1, 0))


def test_member_two_point_zero_column():
    assert not member_two_point(make_subspace([(1, 0)]), V(0, 1))


@given(spanning_sets(max_n=5, max_k=4), st.data())
def test_oracle_agreement(data, draw):
    n, gens = data
    X = make_subspace(gens, n)
    L = sublattice_closure(X)
    v = draw.draw(vectors(n))
    assert L.contains(v) == member_two_point(X, v)


# ---- upsilon


def test_upsilon_examples():
    assert upsilon(make_subspace([(1, 0)])) == {0}
    assert upsilon(full_space(3)) == {0, 1, 2}
    assert upsilon(zero_space(2)) == set()
    assert is_admissible(full_space(2)) and not is_admissible(make_subspace([(1, 0)]))


# ---- expressions


def test_evaluate_nested_expression():
    gens = [V(1, -2), V(0, 3)]
    e = Inf((Sup((Leaf(0), Leaf(1))), Lin(((F(2), Leaf(0)),))))
    assert evaluate(e, gens, 2) == V(1, -4)


# ---- lattice homomorphisms


def m(domain, *images):
    return LinearMap(domain, len(images[0]), tuple(V(*im) for im in images))


def test_lattice_hom_examples():
    Q2 = full_space(2)
    assert check_lattice_hom(m(Q2, (2, 0), (0, 3))).ok
    # matrix [[1,1],[0,1]]: e0 -> (1,0), e1 -> (1,1)
    chk = check_lattice_hom(m(Q2, (1, 0), (1, 1)))
    assert not chk.ok
    x = chk.witness
    T = m(Q2, (1, 0), (1, 1))
    assert T(vabs(x)) != vabs(T(x))
    x = V(1, -1)
    assert T(vabs(x)) == V(2, 1) and vabs(T(x)) == V(0, 1)
    assert check_lattice_hom(m(Q2, (0, 0), (0, 0))).ok


def test_single_negative_entry_is_caught():
    chk = check_lattice_hom(m(full_space(1), (-1,)))
    assert not chk.ok


def test_lattice_hom_on_proper_sublattice():
    L = make_subspace([(1, 1, 0), (0, 0, 1)])
    # evaluation at point 1 is a lattice hom; the difference of evaluations is not
    assert check_lattice_hom(m(L, (1,), (0,))).ok
    assert not check_lattice_hom(m(L, (1,), (-1,))).ok


def test_lattice_hom_needs_sublattice_domain():
    with pytest.raises(PreconditionFailed):
        check_lattice_hom(m(make_subspace([(1, -1)]), (1,)))


def test_size_limit():
    Q = full_space(5)
    T = LinearMap(Q, 1, tuple((F(1),) for _ in range(5)))
    with pytest.raises(SizeLimit):
        check_lattice_hom(T, max_points=4)
    assert not check_lattice_hom(T, max_points=6).ok


def test_max_points_env_override(monkeypatch):
    monkeypatch.setenv("FLATTICE_MAX_POINTS", "3")
    assert resolve_max_points() == 3
    assert resolve_max_points(7) == 7


def test_positive_examples():
    Q2 = full_space(2)
    assert check_positive(m(Q2, (1, 0), (1, 1))).ok
    assert not check_positive(m(Q2, (1, 0), (-1, 1))).ok


def test_randomized_falsification_agrees():
    rng = random.Random(11)
    samples = 0
    for _ in range(40):
        n = rng.randint(1, 3)
        domain = full_space(n) if rng.random() < 0.5 else sublattice_closure(
            make_subspace([tuple(F(rng.randint(0, 2)) for _ in range(n))], n)).space
        if domain.dim == 0:
            continue
        t = rng.randint(1, 3)
        images = tuple(tuple(F(rng.randint(-1, 2)) for _ in range(t)) for _ in range(domain.dim))
        T = LinearMap(domain, t, images)
        exact = check_lattice_hom(T)
        found = lattice_hom_counterexample(images, domain.basis, n, rng, tries=250)
        samples += 250
        if found is not None:
            assert not exact.ok
        if not exact.ok:
            assert T(vabs(exact.witness)) != vabs(T(exact.witness))
    assert samples >= 9000


@given(st.integers(1, 3), st.data())
def test_lattice_hom_iff_rows_are_sign_uniform_on_classes(n, data):
    # on full Q^n, T is a lattice hom iff each codomain coordinate is a
    # nonnegative multiple of a single coordinate (oracle by inspection)
    rows = data.draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n),
                              min_size=1, max_size=3))
    images = tuple(tuple(F(r[i]) for r in rows) for i in range(n))
    T = LinearMap(full_space(n), len(rows), images)
    want = all(sum(1 for a in r if a) <= 1 and all(a >= 0 for a in r) for r in rows)
    assert check_lattice_hom(T).ok == want
