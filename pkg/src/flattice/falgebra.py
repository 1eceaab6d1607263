"""f-algebra multiplications on vector sublattices of Q^n.

On a function lattice every f-algebra multiplication is a weighted
pointwise product ``(x * y)(s) = w(s) x(s) y(s)`` with ``w >= 0``.  An
algebra is stored either by such a weight or by its table of basis
products; the functions here move between the two forms and read off
semi-primality, identities, nilpotent bands and quotients from the weight.
"""

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import (Inconsistent, NegativeWeight, NotClosed, NotFAlgebra, NotInCarrier,
                     NotPositive, NotSemiPrime, PreconditionFailed)
from .lattice import (LinearMap, Sublattice, as_space, check_positive, is_sublattice,
                      make_subspace, restrict, restriction_kernel, sublattice, upsilon,
                      zero_space)
from .linalg import ZERO, Vec, is_nonneg, lincomb, pmin, pmul, rank, support, vec, zeros
from .report import Report


@dataclass(frozen=True)
class FAlgebra:
    """A sublattice with a multiplication.

    Exactly one of ``weight`` (pointwise weight) and ``table``
    (``table[i][j]`` is the product of basis vectors i and j) is set.
    """

    carrier: Sublattice
    weight: Optional[Vec] = None
    table: Optional[tuple] = None
    verified: bool = False

    def __post_init__(self):
        if (self.weight is None) == (self.table is None):
            raise ValueError("give exactly one of weight and table")

    @property
    def n(self) -> int:
        return self.carrier.n

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def basis(self) -> tuple:
        return self.carrier.basis

    def __call__(self, x, y) -> Vec:
        return mult(self, x, y)


def _carrier(L) -> Sublattice:
    if isinstance(L, Sublattice):
        if not is_sublattice(L.space):
            raise PreconditionFailed("carrier is not a vector sublattice")
        return L
    return sublattice(L)


def canonical_weight(L, w: Sequence) -> Vec:
    """Weight with entries outside Upsilon(L) set to zero."""
    ups = upsilon(L)
    return tuple(Fraction(a) if p in ups else ZERO for p, a in enumerate(w))


def build_from_weight(L, w: Sequence) -> FAlgebra:
    L = _carrier(L)
    w = vec(w)
    if len(w) != L.n:
        raise NotInCarrier(f"weight has {len(w)} entries for {L.n} points")
    neg = [p for p, a in enumerate(w) if a < 0]
    if neg:
        raise NegativeWeight(f"weight is negative at point {neg[0]}", witness=neg[0])
    w = canonical_weight(L, w)
    B = L.basis
    for i, j in itertools.combinations_with_replacement(range(len(B)), 2):
        prod = pmul(w, B[i], B[j])
        if not L.contains(prod):
            raise NotClosed(f"product of basis vectors {i} and {j} leaves the carrier",
                            witness=(i, j))
    return FAlgebra(L, weight=w, verified=True)


def table_algebra(L, products: Sequence[Sequence]) -> FAlgebra:
    """Unverified algebra given by basis products (``products[i][j]``)."""
    L = _carrier(L)
    d = L.dim
    if len(products) != d or any(len(row) != d for row in products):
        raise NotInCarrier(f"table must be {d}x{d} for a {d}-dimensional carrier")
    table = tuple(tuple(vec(v) for v in row) for row in products)
    for row in table:
        for v in row:
            if len(v) != L.n:
                raise NotInCarrier("table entry over the wrong point set")
    return FAlgebra(L, table=table)


def tabulate(A: FAlgebra) -> tuple:
    if A.table is not None:
        return A.table
    B = A.basis
    return tuple(tuple(pmul(A.weight, bi, bj) for bj in B) for bi in B)


def as_table(A: FAlgebra) -> FAlgebra:
    return FAlgebra(A.carrier, table=tabulate(A), verified=A.verified)


def mult(A: FAlgebra, x, y) -> Vec:
    x, y = vec(x), vec(y)
    cx, cy = A.carrier.coords(x), A.carrier.coords(y)
    if cx is None or cy is None:
        raise NotInCarrier("factor outside the carrier", witness=x if cx is None else y)
    if A.table is None:
        return pmul(A.weight, x, y)
    out = list(zeros(A.n))
    for i, a in enumerate(cx):
        if a:
            row = lincomb(cy, A.table[i], A.n)
            for k, r in enumerate(row):
                out[k] += a * r
    return tuple(out)


def extract_weight(A: FAlgebra) -> Vec:
    """Weight representing the multiplication of ``A``.

    Per point of Upsilon the weight is read off one basis square; every
    table entry is then checked against the weighted pointwise product.
    """
    L = A.carrier
    table = tabulate(A)
    B = L.basis
    for i, j in itertools.product(range(len(B)), repeat=2):
        if not L.contains(table[i][j]):
            raise NotFAlgebra(f"product of basis vectors {i} and {j} leaves the carrier",
                              witness=(i, j, None))
    w = [ZERO] * L.n
    for s in sorted(upsilon(L)):
        i = next(k for k, b in enumerate(B) if b[s])
        w[s] = table[i][i][s] / (B[i][s] * B[i][s])
    for i, j in itertools.product(range(len(B)), repeat=2):
        for s in upsilon(L):
            if table[i][j][s] != w[s] * B[i][s] * B[j][s]:
                raise NotFAlgebra(
                    f"entry ({i},{j}) at point {s} is {table[i][j][s]}, "
                    f"weight form gives {w[s] * B[i][s] * B[j][s]}", witness=(i, j, s))
    neg = [s for s in range(L.n) if w[s] < 0]
    if neg:
        raise NegativeWeight(f"weight {w[neg[0]]} at point {neg[0]}", witness=neg[0])
    return tuple(w)


def weight_of(A: FAlgebra) -> Vec:
    """Weight of a verified algebra; tables are converted (and checked)."""
    if A.weight is not None:
        if A.verified:
            return A.weight
        return build_from_weight(A.carrier, A.weight).weight
    return extract_weight(A)


def as_weight_form(A: FAlgebra) -> FAlgebra:
    return FAlgebra(A.carrier, weight=weight_of(A), verified=True)


def extract_orthomorphism_weight(E, T: LinearMap) -> Vec:
    """Multiplier q with (Tx)(s) = q(s) x(s) on Upsilon(E), zero elsewhere.

    ``T`` maps E into functions on the same point set.  Positivity is
    decided exactly; the remaining hypotheses (linearity is structural,
    disjointness preservation) are certified by consistency of the
    pointwise quotients over all basis vectors.
    """
    X = as_space(E)
    if T.domain != X or T.target != X.n:
        raise PreconditionFailed("map must send E into functions on the same points")
    pos = check_positive(T)
    if not pos.ok:
        raise NotPositive("map sends a positive element outside the positive cone",
                          witness=pos.witness)
    q = [ZERO] * X.n
    for s in sorted(upsilon(X)):
        i = next(k for k, b in enumerate(X.basis) if b[s])
        q[s] = T.images[i][s] / X.basis[i][s]
        for k, b in enumerate(X.basis):
            if T.images[k][s] != q[s] * b[s]:
                raise Inconsistent(
                    f"basis vectors {i} and {k} give different multipliers at point {s}; "
                    "the map does not preserve disjointness", witness=(s, i, k))
    return tuple(q)


def extract_partial_weight(H, G, products: Sequence[Sequence]) -> Vec:
    """Weight on Upsilon(G) reproducing a multiplication known only on G.

    ``products[i][j]`` is the product of the i-th and j-th echelon basis
    vectors of G and must lie in H.
    """
    H, G = as_space(H), as_space(G)
    if not G.issubspace(H):
        raise PreconditionFailed("G is not contained in H")
    d = G.dim
    if len(products) != d or any(len(r) != d for r in products):
        raise PreconditionFailed(f"partial table must be {d}x{d}")
    P = [[vec(v) for v in row] for row in products]
    for i, j in itertools.product(range(d), repeat=2):
        if not H.contains(P[i][j]):
            raise PreconditionFailed(f"product ({i},{j}) is not in H", witness=(i, j))
    B = G.basis
    w = [ZERO] * G.n
    ups = sorted(upsilon(G))
    for s in ups:
        i = next(k for k, b in enumerate(B) if b[s])
        w[s] = P[i][i][s] / (B[i][s] * B[i][s])
        if w[s] < 0:
            raise Inconsistent(f"negative weight {w[s]} forced at point {s}", witness=(i, i, s))
    for i, j in itertools.product(range(d), repeat=2):
        for s in ups:
            if P[i][j][s] != w[s] * B[i][s] * B[j][s]:
                raise Inconsistent(f"entry ({i},{j}) at point {s} is not of weight form",
                                   witness=(i, j, s))
    return tuple(w)


def weight_support(A: FAlgebra) -> list:
    return [s for s, a in enumerate(weight_of(A)) if a > 0]


def nilpotent_witness(A: FAlgebra) -> Optional[Vec]:
    """Nonzero x with x*x = 0, or None when A is semi-prime."""
    N = restriction_kernel(A.carrier, weight_support(A))
    return N.basis[0] if N.dim else None


def is_semi_prime(A: FAlgebra) -> bool:
    supp = weight_support(A)
    rows = [restrict(b, supp) for b in A.basis]
    return rank(rows, len(supp)) == A.dim if supp else A.dim == 0


def find_identity(A: FAlgebra) -> Optional[Vec]:
    w = weight_of(A)
    ups = upsilon(A.carrier)
    if any(w[s] == 0 for s in ups):
        return None
    e = tuple(1 / w[s] if s in ups else ZERO for s in range(A.n))
    if not A.carrier.contains(e):
        return None
    assert all(mult(A, e, b) == b for b in A.basis)
    return e


def nilpotent_band(A: FAlgebra) -> Sublattice:
    return sublattice(restriction_kernel(A.carrier, weight_support(A)))


def band_complement(L, N) -> Sublattice:
    """Elements of L disjoint from every element of N."""
    X, NX = as_space(L), as_space(N)
    if not NX.issubspace(X):
        raise PreconditionFailed("N is not contained in L")
    zero_set = sorted(set().union(*(support(b) for b in NX.basis)))
    D = sublattice(restriction_kernel(X, zero_set))
    for x in D.basis:
        for y in NX.basis:
            assert not any(pmin(tuple(map(abs, x)), tuple(map(abs, y))))
    return D


class Quotient(NamedTuple):
    algebra: FAlgebra
    map: LinearMap
    points: tuple


def quotient_by_band(A: FAlgebra, N=None) -> Quotient:
    """C/N realized as the restriction of the carrier to the support of the weight.

    When the weight vanishes identically the quotient is the zero algebra,
    represented on a single point.
    """
    w = weight_of(A)
    if N is not None and as_space(N) != nilpotent_band(A).space:
        raise PreconditionFailed("N is not the nilpotent band of the algebra")
    supp = tuple(s for s in range(A.n) if w[s] > 0)
    if not supp:
        space = zero_space(1)
        Q = LinearMap(A.carrier.space, 1, tuple((ZERO,) for _ in A.basis))
        return Quotient(FAlgebra(sublattice(space), weight=(ZERO,), verified=True), Q, ())
    images = tuple(restrict(b, supp) for b in A.basis)
    space = make_subspace(images, len(supp))
    Q = LinearMap(A.carrier.space, len(supp), images)
    alg = build_from_weight(space, restrict(w, supp))
    return Quotient(alg, Q, supp)


def restrict_to_support(A: FAlgebra) -> Quotient:
    x = nilpotent_witness(A)
    if x is not None:
        raise NotSemiPrime("restriction to the weight support is not injective", witness=x)
    return quotient_by_band(A)


def verify_falgebra(A: FAlgebra) -> Report:
    rep = Report("f-algebra")
    L = A.carrier
    B = L.basis
    d = len(B)
    pairs = list(itertools.product(range(d), repeat=2))
    rep.add("bilinearity", True, "by construction")
    if A.table is not None:
        bad = next(((i, j) for i, j in pairs if not L.contains(A.table[i][j])), None)
        rep.add("closure", bad is None,
                "" if bad is None else f"product {bad} leaves the carrier", bad)
    else:
        bad = next(((i, j) for i, j in pairs if not L.contains(pmul(A.weight, B[i], B[j]))), None)
        rep.add("closure", bad is None,
                "" if bad is None else f"product {bad} leaves the carrier", bad)
    try:
        w = weight_of(A)
        rep.add("weight_form", True, "w=" + ",".join(str(a) for a in w))
    except (NotFAlgebra, NegativeWeight, NotClosed) as exc:
        rep.add("weight_form", False, str(exc), exc.witness)
    if rep["closure"].ok:
        tab = tabulate(A)
        bad = next(((i, j) for i, j in pairs if tab[i][j] != tab[j][i]), None)
        rep.add("commutativity", bad is None, "" if bad is None else f"pair {bad}", bad)
        bad = None
        for i, j, k in itertools.product(range(d), repeat=3):
            if mult(A, tab[i][j], B[k]) != mult(A, B[i], tab[j][k]):
                bad = (i, j, k)
                break
        rep.add("associativity", bad is None, "" if bad is None else f"triple {bad}", bad)
        # the echelon basis of a sublattice is its atom basis, which generates the positive cone
        bad = next(((i, j) for i, j in pairs if not is_nonneg(tab[i][j])), None)
        rep.add("positivity", bad is None, "" if bad is None else f"atom pair {bad}", bad)
        bad = None
        for i, j, k in itertools.product(range(d), repeat=3):
            if i == j:
                continue
            sj = support(B[j])
            if support(tab[i][k]) & sj or support(tab[k][i]) & sj:
                bad = (i, k, j)
                break
        rep.add("disjointness", bad is None,
                "" if bad is None else f"(a{bad[0]}*a{bad[1]}) meets a{bad[2]}", bad)
    return rep


def verified(A: FAlgebra) -> FAlgebra:
    """Copy of ``A`` flagged verified; raises if any axiom check fails."""
    rep = verify_falgebra(A)
    if not rep.ok:
        first = rep.failures[0]
        raise NotFAlgebra(f"{first.name}: {first.detail}", witness=first.witness)
    return replace(A, verified=True)


def zero_algebra(n: int) -> FAlgebra:
    return FAlgebra(sublattice(zero_space(n)), weight=zeros(n), verified=True)
