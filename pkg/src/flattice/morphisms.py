"""Algebra homomorphisms, the sup/inf extension cascade and the universal map.

Every linear map between finite dimensional vector lattices is order
bounded, so order boundedness never appears as a runtime check here.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import fm
from .errors import (ExtensionInconsistent, FlatticeError, NotIntoCodomain, PreconditionFailed,
                     SizeLimit)
from .falgebra import (FAlgebra, band_complement, mult, nilpotent_band, weight_of)
from .lattice import (HomCheck, LinearMap, Sup, as_space, check_lattice_hom,
                      check_positive, evaluate, is_sublattice, make_subspace,
                      resolve_max_points, restrict, sublattice_closure)
from .linalg import ZERO, is_nonneg, lincomb, vec
from .report import Report
from .tensor import outer, tensor_falgebra


@dataclass(frozen=True)
class AlgebraHom:
    map: LinearMap
    domain_alg: FAlgebra
    codomain_alg: FAlgebra
    multiplicative: bool

    def __call__(self, x):
        return self.map.apply(x)


def check_algebra_hom(T: LinearMap, A: FAlgebra, C: FAlgebra) -> HomCheck:
    """Multiplicativity of T on all basis pairs (bilinearity does the rest)."""
    if T.domain != A.carrier.space or T.target != C.n:
        raise PreconditionFailed("map does not go from the carrier of A to functions on C's points")
    for i, im in enumerate(T.images):
        if not C.carrier.contains(im):
            raise NotIntoCodomain(f"image of basis vector {i} is outside the codomain", witness=i)
    B = A.basis
    for i, j in itertools.product(range(len(B)), repeat=2):
        lhs = T.apply(mult(A, B[i], B[j]))
        rhs = mult(C, T.images[i], T.images[j])
        if lhs != rhs:
            return HomCheck(False, (i, j))
    return HomCheck(True)


def algebra_hom(T: LinearMap, A: FAlgebra, C: FAlgebra) -> AlgebraHom:
    return AlgebraHom(T, A, C, check_algebra_hom(T, A, C).ok)


def positively_generated(X, generators: Optional[Sequence] = None,
                         max_points: Optional[int] = None) -> bool:
    """Whether the nonnegative elements of X span X.

    The cone X n Q^n_+ is polyhedral; it spans X exactly when it has
    interior in X, i.e. when the strict system ``x(s) > 0`` over the points
    where X does not vanish identically is feasible.
    """
    X = as_space(X)
    if X.dim == 0 or is_sublattice(X):
        return True
    if generators is not None:
        gens = [vec(g) for g in generators]
        if all(is_nonneg(g) for g in gens) and make_subspace(gens, X.n) == X:
            return True
    rows = {}
    for p in range(X.n):
        col = X.column(p)
        scale = max(abs(a) for a in col)
        if scale:
            rows[tuple(a / scale for a in col)] = None
    bound = resolve_max_points(max_points)
    if len(rows) > bound:
        raise SizeLimit(f"{len(rows)} distinct point constraints exceed the bound {bound}")
    cons = [(r, ZERO, fm.STRICT) for r in rows]
    return fm.is_feasible(cons, X.dim)


def _cascade_sets(L):
    """Values of the sup nodes and of the full certificates of a closure."""
    sups, seen = [], set()
    memo = {}
    for expr in L.certificates:
        evaluate(expr, L.generators, L.n, memo=memo)
    for node, val in memo.values():
        if isinstance(node, Sup) and val not in seen:
            seen.add(val)
            sups.append(val)
    return sups, list(L.basis)


def check_multext(T: LinearMap, X, A: FAlgebra, B: FAlgebra,
                  generators: Optional[Sequence] = None, max_points: Optional[int] = None,
                  strategy: str = "pointwise") -> Report:
    """Run the extension cascade from X to the sublattice it generates.

    Hypotheses are checked first and a broken one raises
    :class:`PreconditionFailed`.  Then multiplicativity is checked stage by
    stage: X against sups of X, sups against sups, sups against
    inf-of-sups, and inf-of-sups against itself (the last set spans the
    generated sublattice).
    """
    X = as_space(X)
    if T.domain != A.carrier.space or T.target != B.n:
        raise PreconditionFailed("T must map the carrier of A into functions on B's points")
    lat = check_lattice_hom(T, max_points)
    if not lat.ok:
        raise PreconditionFailed("lattice_hom: T is not a lattice homomorphism", witness=lat.witness)
    if not X.issubspace(A.carrier.space):
        raise PreconditionFailed("subspace: X is not contained in the carrier of A")
    for i, j in itertools.combinations_with_replacement(range(X.dim), 2):
        if not X.contains(mult(A, X.basis[i], X.basis[j])):
            raise PreconditionFailed("subalgebra: X is not closed under multiplication",
                                     witness=(i, j))
    if not positively_generated(X, generators, max_points):
        raise PreconditionFailed("positively_generated: X is not spanned by its positive part")
    for i, j in itertools.product(range(X.dim), repeat=2):
        y, z = X.basis[i], X.basis[j]
        if T.apply(mult(A, y, z)) != mult(B, T.apply(y), T.apply(z)):
            raise PreconditionFailed("multiplicative_on_X: T restricted to X is not multiplicative",
                                     witness=(y, z))
    L = sublattice_closure(X, generators, strategy=strategy)
    sups, top = _cascade_sets(L)
    base = list(X.basis)
    rep = Report("multiplicative extension")
    stages = [("X x X^sup", base, sups), ("X^sup x X^sup", sups, sups),
              ("X^sup x X^sup-inf", sups, top), ("X^sup-inf x X^sup-inf", top, top)]
    for name, left, right in stages:
        bad = None
        for y, z in itertools.product(left, right):
            if T.apply(mult(A, y, z)) != mult(B, T.apply(y), T.apply(z)):
                bad = (y, z)
                break
        rep.add(name, bad is None, f"{len(left)}x{len(right)} pairs", bad)
    return rep


def _same_algebra(C1: FAlgebra, C2: FAlgebra) -> bool:
    return C1.carrier.space == C2.carrier.space and weight_of(C1) == weight_of(C2)


def quotient_map(C: FAlgebra, T: LinearMap) -> LinearMap:
    """Q o T where Q restricts to the support of C's weight."""
    w = weight_of(C)
    supp = [s for s in range(C.n) if w[s] > 0]
    if not supp:
        return LinearMap(T.domain, 1, tuple((ZERO,) for _ in T.images))
    return LinearMap(T.domain, len(supp), tuple(restrict(im, supp) for im in T.images))


def induced_tensor_hom(TA: AlgebraHom, TB: AlgebraHom, P: Optional[FAlgebra] = None,
                       strategy: str = "greedy", max_points: Optional[int] = None) -> AlgebraHom:
    """The lattice and algebra homomorphism S on the tensor product with
    S(a x b) = TA(a) TB(b).

    S is fixed on the simple-tensor generators and carried to every basis
    vector of the tensor product by evaluating its closure certificate with
    sups and infs taken in C.  Well-definedness, the lattice and algebra
    homomorphism properties and range containment in the complement of the
    nilpotent band are all verified before returning.
    """
    if not (TA.multiplicative and TB.multiplicative):
        raise PreconditionFailed("both factor maps must be algebra homomorphisms")
    C = TA.codomain_alg
    if not _same_algebra(C, TB.codomain_alg):
        raise PreconditionFailed("factor maps have different codomains")
    for name, T in (("TA", TA), ("TB", TB)):
        chk = check_lattice_hom(quotient_map(C, T.map), max_points)
        if not chk.ok:
            raise PreconditionFailed(f"{name} composed with the quotient by the nilpotent band "
                                     "is not a lattice homomorphism", witness=chk.witness)
    A, B = TA.domain_alg, TB.domain_alg
    if P is None:
        P = tensor_falgebra(A, B, strategy)
    L = P.carrier
    if L.certificates is None:
        raise PreconditionFailed("tensor carrier carries no certificates")
    dB = B.dim
    if len(L.generators) != A.dim * dB or any(
            g != outer(A.basis[k // dB], B.basis[k % dB]) for k, g in enumerate(L.generators)):
        raise PreconditionFailed("tensor carrier is not generated by the factor simple tensors")
    gen_images = [mult(C, TA.map.images[k // dB], TB.map.images[k % dB])
                  for k in range(len(L.generators))]
    memo = {}
    images = tuple(evaluate(e, gen_images, C.n, memo=memo) for e in L.certificates)
    S = LinearMap(L.space, C.n, images)
    for k, g in enumerate(L.generators):
        if S.apply(g) != gen_images[k]:
            raise ExtensionInconsistent(
                f"certificate images disagree with the generator image of simple tensor {k}",
                witness=k)
    lat = check_lattice_hom(S, max_points)
    if not lat.ok:
        raise ExtensionInconsistent("extension is not a lattice homomorphism", witness=lat.witness)
    try:
        alg = check_algebra_hom(S, P, C)
    except NotIntoCodomain as exc:
        raise ExtensionInconsistent(f"extension leaves C: {exc}", witness=exc.witness) from exc
    if not alg.ok:
        raise ExtensionInconsistent("extension is not multiplicative", witness=alg.witness)
    Nd = band_complement(C.carrier, nilpotent_band(C))
    bad = next((r for r, im in enumerate(images) if not Nd.contains(im)), None)
    if bad is not None:
        raise ExtensionInconsistent("extension leaves the complement of the nilpotent band",
                                    witness=bad)
    return AlgebraHom(S, P, C, True)


def _as_hom(T, A, C) -> AlgebraHom:
    return T if isinstance(T, AlgebraHom) else algebra_hom(T, A, C)


def verify_universal(A: FAlgebra, B: FAlgebra, C: FAlgebra, TA, TB, seed: int = 0,
                     samples: int = 8, max_points: Optional[int] = None) -> Report:
    rep = Report("universal property")
    try:
        HA, HB = _as_hom(TA, A, C), _as_hom(TB, B, C)
    except FlatticeError as exc:
        rep.add("preconditions", False, str(exc), exc.witness)
        return rep
    if not (HA.multiplicative and HB.multiplicative):
        rep.add("preconditions", False, "factor maps are not algebra homomorphisms")
        return rep
    rep.add("preconditions", True)
    try:
        H = induced_tensor_hom(HA, HB, max_points=max_points)
    except FlatticeError as exc:
        rep.add("existence", False, f"{type(exc).__name__}: {exc}", exc.witness)
        return rep
    S, P = H.map, H.domain_alg
    rep.add("existence", True, f"S defined on a {P.dim}-dimensional tensor product")
    pos = check_positive(S)
    rep.add("positivity", pos.ok, "", pos.witness)
    lat = check_lattice_hom(S, max_points)
    rep.add("lattice_hom", lat.ok, f"{lat.cells} sign cells", lat.witness)
    alg = check_algebra_hom(S, P, C)
    rep.add("algebra_hom", alg.ok, "", alg.witness)
    rng = random.Random(seed)
    bad = None
    for _ in range(samples):
        a = lincomb([Fraction(rng.randint(-3, 3)) for _ in A.basis], A.basis, A.n)
        b = lincomb([Fraction(rng.randint(-3, 3)) for _ in B.basis], B.basis, B.n)
        if S.apply(outer(a, b)) != mult(C, HA(a), HB(b)):
            bad = (a, b)
            break
    rep.add("generator_identity", bad is None, f"{samples} random simple tensors", bad)
    Nd = band_complement(C.carrier, nilpotent_band(C))
    rep.add("range_in_band_complement", all(Nd.contains(im) for im in S.images))
    try:
        P2 = tensor_falgebra(A, B, "dual")
        H2 = induced_tensor_hom(HA, HB, P2, max_points=max_points)
        same = H2.map.images == S.images and P2.carrier.space == P.carrier.space
        rep.add("uniqueness", same, "extension from independent certificates")
    except FlatticeError as exc:
        rep.add("uniqueness", False, str(exc), exc.witness)
    return rep


def point_evaluation_hom(A: FAlgebra, C: FAlgebra, choice: Sequence[Optional[int]],
                         free: Optional[Sequence] = None) -> LinearMap:
    """Multiplicative map (Tx)(j) = lam_j x(choice[j]) from A into functions on C's points.

    ``lam_j`` is forced to v(choice[j]) / u(j) where C's weight u is positive;
    where u(j) = 0 multiplicativity needs v(choice[j]) = 0 or lam_j = 0, and
    ``free[j]`` (default 0) is used when allowed.
    """
    v, u = weight_of(A), weight_of(C)
    lam = []
    for j, s in enumerate(choice):
        if s is None:
            lam.append(ZERO)
        elif u[j] > 0:
            lam.append(v[s] / u[j])
        elif v[s] == 0 and free is not None:
            lam.append(Fraction(free[j]))
        else:
            lam.append(ZERO)
    images = tuple(tuple(lam[j] * b[s] if s is not None else ZERO for j, s in enumerate(choice))
                   for b in A.basis)
    return LinearMap(A.carrier.space, C.n, images)


__all__ = [
    "AlgebraHom", "check_algebra_hom", "algebra_hom", "positively_generated", "check_multext",
    "induced_tensor_hom", "verify_universal", "point_evaluation_hom", "quotient_map",
]
