import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import vectors
from oracles import product_index, tensor_weight_dict
from flattice.errors import CertificatesMissing
from flattice.falgebra import (build_from_weight, find_identity, is_semi_prime, mult, tabulate,
                               zero_algebra)
from flattice.lattice import Sublattice, full_space, make_subspace
from flattice.linalg import is_nonneg
from flattice.propsuite import GenConfig, gen_falgebra, stream
from flattice.tensor import (algebraic_tensor, as_matrix, fremlin_tensor, outer,
                             reconstruct_mult_from_generators, tensor_falgebra,
                             tensor_generator_products, tensor_weight)

F = Fraction


def V(*xs):
    return tuple(F(x) for x in xs)


def alg(w, basis=None):
    n = len(w)
    L = full_space(n) if basis is None else make_subspace(basis, n)
    return build_from_weight(L, V(*w))


def test_outer_examples():
    assert as_matrix(outer((1, 2), (3, 1)), 2) == [[3, 1], [6, 2]]
    assert outer((1, 2), (0, 0)) == V(0, 0, 0, 0)
    assert outer((1, 0), (1, 0)) == V(1, 0, 0, 0)


def test_outer_is_row_major():
    a, b = V(1, 2, 3), V(5, 7)
    u = outer(a, b)
    for s, o in itertools.product(range(3), range(2)):
        assert u[product_index(s, o, 2)] == a[s] * b[o]


def test_algebraic_tensor_examples():
    assert algebraic_tensor(full_space(2), full_space(3)) == full_space(6)
    assert algebraic_tensor(make_subspace([(1, 1)]), full_space(1)).dim == 1


def test_fremlin_tensor_examples():
    assert fremlin_tensor(full_space(2), full_space(3)).space == full_space(6)
    diag = make_subspace([(1, 1)])
    P = fremlin_tensor(diag, diag)
    assert P.basis == (V(1, 1, 1, 1),)
    X = make_subspace([(1, 1, 0), (0, 1, 1)])
    assert algebraic_tensor(X, full_space(1)).dim == 2
    assert fremlin_tensor(X, full_space(1)).space == full_space(3)


def test_tensor_weight_examples():
    u = tensor_weight(V(1, 2), V(3, 1))
    assert as_matrix(u, 2) == [[3, 1], [6, 2]]
    assert tensor_weight(V(0, 0), V(3, 1)) == V(0, 0, 0, 0)
    assert all(a > 0 for a in tensor_weight(V(1, 2), V(3, 1)))


def test_tensor_falgebra_example():
    P = tensor_falgebra(alg((1, 2)), alg((3, 1)))
    assert P.carrier.space == full_space(4)
    assert P.weight == V(3, 1, 6, 2)
    assert as_matrix(find_identity(P), 2) == [[F(1, 3), 1], [F(1, 6), F(1, 2)]]


def test_tensor_with_zero_algebra():
    P = tensor_falgebra(alg((1, 2)), zero_algebra(2))
    assert P.dim == 0


def test_reconstruction_examples():
    for A, B in [(alg((1, 2)), alg((3, 1))), (alg((0, 0)), alg((1,))), (alg((2,)), alg((3,)))]:
        for strategy in ("greedy", "pointwise", "dual"):
            P = tensor_falgebra(A, B, strategy)
            assert reconstruct_mult_from_generators(P) == tabulate(P)
    P = tensor_falgebra(alg((2,)), alg((3,)))
    assert P.weight == V(6)


def test_reconstruction_needs_certificates():
    A = alg((1, 2))
    bare = build_from_weight(Sublattice(A.carrier.space), A.weight)
    with pytest.raises(CertificatesMissing):
        reconstruct_mult_from_generators(bare)


def test_reconstruction_through_a_growing_closure():
    # X = span{(1,1,0),(0,1,1)} is not a sublattice; multiplying through its
    # certificates still reproduces the weighted product
    X = make_subspace([(1, 1, 0), (0, 1, 1)])
    gens = [V(1, 1, 0), V(0, 1, 1)]
    from flattice.lattice import sublattice_closure
    for strategy in ("greedy", "pointwise", "dual"):
        L = sublattice_closure(X, gens, strategy)
        A = build_from_weight(L, V(2, 3, 5))
        assert reconstruct_mult_from_generators(A) == tabulate(A)


factors = st.integers(0, 2 ** 32).map(
    lambda s: gen_falgebra(stream(s, "tf"), GenConfig(max_points=3), nonzero=True))


@given(vectors(3), vectors(2), vectors(3), vectors(2), st.integers(-3, 3))
def test_outer_is_bilinear(a, b, a2, b2, c):
    lhs = outer(tuple(x + c * y for x, y in zip(a, a2)), b)
    rhs = tuple(x + c * y for x, y in zip(outer(a, b), outer(a2, b)))
    assert lhs == rhs
    lhs = outer(a, tuple(x + c * y for x, y in zip(b, b2)))
    rhs = tuple(x + c * y for x, y in zip(outer(a, b), outer(a, b2)))
    assert lhs == rhs


@given(vectors(3), vectors(2))
def test_outer_positive(a, b):
    a, b = tuple(abs(x) for x in a), tuple(abs(x) for x in b)
    assert is_nonneg(outer(a, b))


@given(factors, factors)
def test_algebraic_dimension(A, B):
    assert algebraic_tensor(A.carrier, B.carrier).dim == A.dim * B.dim


@given(factors, factors)
def test_weight_matches_oracle(A, B):
    P = tensor_falgebra(A, B)
    d = tensor_weight_dict(A.weight, B.weight)
    assert P.weight == tuple(d[divmod(k, B.n)] for k in range(P.n))


@given(factors, factors, st.data())
def test_restriction_identity(A, B, data):
    P = tensor_falgebra(A, B)

    def combo(alg_):
        cs = data.draw(st.lists(st.integers(-2, 2), min_size=alg_.dim, max_size=alg_.dim))
        return tuple(sum(F(c) * b[s] for c, b in zip(cs, alg_.basis)) for s in range(alg_.n))
    a, a2, b, b2 = combo(A), combo(A), combo(B), combo(B)
    assert mult(P, outer(a, b), outer(a2, b2)) == outer(mult(A, a, a2), mult(B, b, b2))


@pytest.mark.parametrize("strategy", ["pointwise", "dual"])
@given(factors, factors)
def test_uniqueness(strategy, A, B):
    P = tensor_falgebra(A, B, strategy)
    assert reconstruct_mult_from_generators(P, tensor_generator_products(A, B)) == tabulate(P)


@given(factors, factors)
def test_semi_prime_preserved(A, B):
    assert is_semi_prime(tensor_falgebra(A, B)) == (is_semi_prime(A) and is_semi_prime(B))


@given(factors, factors)
def test_identity_preserved(A, B):
    ea, eb, ep = find_identity(A), find_identity(B), find_identity(tensor_falgebra(A, B))
    assert (ep is not None) == (ea is not None and eb is not None)
    if ep is not None:
        assert ep == outer(ea, eb)
