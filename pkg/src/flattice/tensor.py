"""Tensor products of function lattices and of f-algebras.

Functions on a product point set Sigma x Omega (sizes n and m) are stored
flat in row-major order: the pair (s, o) is index ``s * m + o``.
"""

import itertools
from typing import Callable, Optional

from .errors import CertificatesMissing, NotClosed, PreconditionFailed
from .falgebra import FAlgebra, build_from_weight, mult, weight_of
from .lattice import (ZERO_EXPR, Leaf, Lin, Sup, Sublattice, as_space, evaluate,
                      make_subspace, sublattice_closure)
from .linalg import Vec, is_nonneg, lincomb, pmax, pmin, sub, vec


def pair_index(s: int, o: int, m: int) -> int:
    return s * m + o


def pair_of(k: int, m: int) -> tuple:
    return divmod(k, m)


def outer(a, b) -> Vec:
    a, b = vec(a), vec(b)
    return tuple(x * y for x in a for y in b)


def as_matrix(v: Vec, m: int) -> list:
    return [list(v[i:i + m]) for i in range(0, len(v), m)]


def tensor_generators(A, B) -> tuple:
    """Outer products of basis vectors, ordered by (i, j) with i major."""
    X, Y = as_space(A), as_space(B)
    return tuple(outer(a, b) for a in X.basis for b in Y.basis)


def algebraic_tensor(A, B):
    X, Y = as_space(A), as_space(B)
    return make_subspace(tensor_generators(X, Y), X.n * Y.n)


def fremlin_tensor(A, B, strategy: str = "greedy") -> Sublattice:
    """Sublattice generated by the simple tensors, certified over them."""
    gens = tensor_generators(A, B)
    X = algebraic_tensor(A, B)
    return sublattice_closure(X, gens, strategy=strategy)


def tensor_weight(v, w) -> Vec:
    return outer(v, w)


def tensor_falgebra(A: FAlgebra, B: FAlgebra, strategy: str = "greedy") -> FAlgebra:
    """The f-algebra multiplication on the Fremlin tensor product.

    The weight is the product of the factor weights.  That the weighted
    product keeps the generated sublattice closed, and that it restricts to
    (a x b)(a' x b') = (a a') x (b b') on simple tensors, are both checked
    here rather than assumed.
    """
    v, w = weight_of(A), weight_of(B)
    carrier = fremlin_tensor(A.carrier, B.carrier, strategy)
    try:
        P = build_from_weight(carrier, tensor_weight(v, w))
    except NotClosed as exc:  # pragma: no cover - contradicts the closure theorem
        raise AssertionError(f"tensor weight does not preserve the carrier: {exc}") from exc
    for (i, a), (j, b) in itertools.product(enumerate(A.basis), enumerate(B.basis)):
        for (i2, a2), (j2, b2) in itertools.product(enumerate(A.basis), enumerate(B.basis)):
            if (i2, j2) < (i, j):
                continue
            lhs = mult(P, outer(a, b), outer(a2, b2))
            rhs = outer(mult(A, a, a2), mult(B, b, b2))
            assert lhs == rhs, "tensor multiplication disagrees on simple tensors"
    return P


def tensor_generator_products(A: FAlgebra, B: FAlgebra) -> Callable:
    """Products of simple-tensor generators computed in the factors only."""
    dB = B.dim
    cache = {}

    def products(k, l):
        if (k, l) not in cache:
            i, j = divmod(k, dB)
            i2, j2 = divmod(l, dB)
            cache[k, l] = outer(mult(A, A.basis[i], A.basis[i2]),
                                mult(B, B.basis[j], B.basis[j2]))
        return cache[k, l]

    return products


def reconstruct_mult_from_generators(T: FAlgebra, products: Optional[Callable] = None) -> tuple:
    """Rebuild the basis product table from the products of generators alone.

    Every basis vector of the carrier is a sup/inf expression over the
    generators.  Products are expanded through those expressions using
    only bilinearity, commutativity and the fact that multiplication by a
    positive element preserves finite sups and infs.  Factors that are not
    positive are split into positive and negative parts first.  The
    generators themselves must be positive.
    """
    L = T.carrier
    if L.certificates is None or L.generators is None:
        raise CertificatesMissing("carrier has no sup/inf certificates over generators")
    gens = L.generators
    n = L.n
    if products is None:
        cache = {}

        def products(k, l):
            if (k, l) not in cache:
                cache[k, l] = mult(T, gens[k], gens[l])
            return cache[k, l]

    values = {}
    parts = {}
    gen_memo = {}
    memo = {}

    def value(e):
        return evaluate(e, gens, n, memo=values)

    def split(F):
        if id(F) not in parts:
            parts[id(F)] = (F, Sup((F, ZERO_EXPR)), Sup((Lin(((-1, F),)), ZERO_EXPR)))
        return parts[id(F)][1:]

    def fold(op, vals):
        out = vals[0]
        for v in vals[1:]:
            out = op(out, v)
        return out

    def gen_times(k, F):
        key = (k, id(F))
        if key in gen_memo:
            return gen_memo[key][1]
        if isinstance(F, Leaf):
            out = products(k, F.index)
        elif isinstance(F, Lin):
            out = lincomb([c for c, _ in F.terms], [gen_times(k, e) for _, e in F.terms], n)
        else:
            if not is_nonneg(gens[k]):
                raise PreconditionFailed(f"generator {k} is not positive")
            op = pmax if isinstance(F, Sup) else pmin
            out = fold(op, [gen_times(k, e) for e in F.args])
        gen_memo[key] = (F, out)
        return out

    def times(E, F):
        key = (id(E), id(F))
        if key in memo:
            return memo[key][2]
        if isinstance(E, Leaf):
            out = gen_times(E.index, F)
        elif isinstance(E, Lin):
            out = lincomb([c for c, _ in E.terms], [times(e, F) for _, e in E.terms], n)
        elif is_nonneg(value(F)):
            op = pmax if isinstance(E, Sup) else pmin
            out = fold(op, [times(e, F) for e in E.args])
        else:
            pos, neg = split(F)
            out = sub(times(E, pos), times(E, neg))
        memo[key] = (E, F, out)
        return out

    certs = L.certificates
    d = len(certs)
    table = [[None] * d for _ in range(d)]
    for r in range(d):
        for s in range(r, d):
            table[r][s] = times(certs[r], certs[s])
            table[s][r] = table[r][s] if r == s else times(certs[s], certs[r])
    return tuple(tuple(row) for row in table)


__all__ = [
    "outer", "pair_index", "pair_of", "as_matrix", "tensor_generators", "algebraic_tensor",
    "fremlin_tensor", "tensor_weight", "tensor_falgebra", "tensor_generator_products",
    "reconstruct_mult_from_generators",
]
