"""Subspaces and vector sublattices of Q^n with pointwise order.

A point set is identified with its size ``n``; points are ``0..n-1``.
A finite dimensional vector sublattice of Q^n always has a basis of
pairwise disjoint positive vectors (its atoms), and its reduced echelon
basis is exactly that atom basis with each atom scaled to 1 at its first
point.  Most of the exact decision procedures below lean on that fact.
"""

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import fm
from .errors import MixedAmbient, PreconditionFailed, SizeLimit
from .linalg import (ZERO, Vec, is_nonneg, is_zero, lincomb, neg, pmax, pmin,
                     rref, solve, sub, transpose, vabs, vec, zeros)

DEFAULT_MAX_POINTS = 12


def resolve_max_points(max_points: Optional[int] = None) -> int:
    if max_points is not None:
        return int(max_points)
    env = os.environ.get("FLATTICE_MAX_POINTS")
    if env:
        return int(env)
    return DEFAULT_MAX_POINTS


@dataclass(frozen=True)
class Subspace:
    """Span of ``basis`` inside Q^n; ``basis`` is in reduced echelon form."""

    n: int
    basis: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: Vec) -> Optional[Vec]:
        """Coordinates of ``v`` in the echelon basis, or None if ``v`` is outside."""
        if len(v) != self.n:
            raise MixedAmbient(f"vector of length {len(v)} in a space over {self.n} points")
        c = tuple(Fraction(v[p]) for p in self.pivots)
        if lincomb(c, self.basis, self.n) != tuple(v):
            return None
        return c

    def contains(self, v: Vec) -> bool:
        return self.coords(v) is not None

    def element(self, coords: Sequence) -> Vec:
        return lincomb(coords, self.basis, self.n)

    def column(self, point: int) -> Vec:
        return tuple(b[point] for b in self.basis)

    def issubspace(self, other: "Subspace") -> bool:
        return self.n == other.n and all(other.contains(b) for b in self.basis)

    def __contains__(self, v) -> bool:
        return self.contains(vec(v))


def make_subspace(vectors: Sequence, n: Optional[int] = None) -> Subspace:
    vs = [vec(v) for v in vectors]
    sizes = {len(v) for v in vs}
    if n is not None:
        sizes.add(n)
    if len(sizes) > 1:
        raise MixedAmbient(f"vectors over different point sets: sizes {sorted(sizes)}")
    if not sizes:
        raise MixedAmbient("cannot infer the point set of an empty span; pass n")
    (size,) = sizes
    if size < 1:
        raise MixedAmbient("point sets must have at least one point")
    basis, pivots = rref(vs, size)
    return Subspace(size, basis, pivots)


def full_space(n: int) -> Subspace:
    return make_subspace([[int(i == j) for j in range(n)] for i in range(n)], n)


def zero_space(n: int) -> Subspace:
    return make_subspace([], n)


# -- sup/inf expressions ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Leaf:
    index: int


@dataclass(frozen=True, eq=False)
class Sup:
    args: tuple


@dataclass(frozen=True, eq=False)
class Inf:
    args: tuple


@dataclass(frozen=True, eq=False)
class Lin:
    """Linear combination ``sum(c * e for c, e in terms)``; no terms means zero."""

    terms: tuple


ZERO_EXPR = Lin(())


def evaluate(expr, leaves: Sequence[Vec], n: int, sup=pmax, inf=pmin, memo=None) -> Vec:
    """Evaluate ``expr`` with ``Leaf(i)`` bound to ``leaves[i]``.

    ``sup`` and ``inf`` default to the pointwise operations of Q^n.
    """
    if memo is None:
        memo = {}
    key = id(expr)
    if key in memo:
        return memo[key][1]
    if isinstance(expr, Leaf):
        if not 0 <= expr.index < len(leaves):
            raise IndexError(f"leaf {expr.index} out of range for {len(leaves)} generators")
        out = tuple(leaves[expr.index])
    elif isinstance(expr, Lin):
        vals = [evaluate(e, leaves, n, sup, inf, memo) for _, e in expr.terms]
        out = lincomb([c for c, _ in expr.terms], vals, n)
    elif isinstance(expr, (Sup, Inf)):
        op = sup if isinstance(expr, Sup) else inf
        vals = [evaluate(e, leaves, n, sup, inf, memo) for e in expr.args]
        out = vals[0]
        for v in vals[1:]:
            out = op(out, v)
    else:
        raise TypeError(f"not an expression node: {expr!r}")
    # keep expr alive so its id stays unique for the lifetime of memo
    memo[key] = (expr, out)
    return out


def leaves_of(expr) -> set:
    if isinstance(expr, Leaf):
        return {expr.index}
    if isinstance(expr, Lin):
        return set().union(*(leaves_of(e) for _, e in expr.terms))
    return set().union(*(leaves_of(e) for e in expr.args))


def depth(expr) -> int:
    if isinstance(expr, Leaf):
        return 0
    kids = [e for _, e in expr.terms] if isinstance(expr, Lin) else list(expr.args)
    return 1 + max((depth(e) for e in kids), default=0)


# -- sublattices --------------------------------------------------------------

@dataclass(frozen=True)
class Sublattice:
    """A vector sublattice of Q^n.

    ``certificates[i]``, when present, is an expression over ``generators``
    evaluating to ``space.basis[i]``.
    """

    space: Subspace
    generators: Optional[tuple] = None
    certificates: Optional[tuple] = None

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> tuple:
        return self.space.basis

    def contains(self, v) -> bool:
        return self.space.contains(vec(v))

    def coords(self, v):
        return self.space.coords(vec(v))


def as_space(x) -> Subspace:
    return x.space if isinstance(x, Sublattice) else x


def point_classes(x) -> list:
    """Points of Upsilon grouped by positive proportionality of their columns.

    Two points are in one class iff every element of the span takes values
    at them in a fixed positive ratio.  Classes are sorted by first point.
    """
    X = as_space(x)
    groups = {}
    for p in range(X.n):
        col = X.column(p)
        lead = next((a for a in col if a), None)
        if lead is None:
            continue
        key = tuple(a / abs(lead) for a in col)
        groups.setdefault(key, []).append(p)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def upsilon(x) -> frozenset:
    """Points where some member of the span is nonzero."""
    X = as_space(x)
    return frozenset(p for p in range(X.n) if any(X.column(p)))


def is_admissible(x) -> bool:
    return len(upsilon(x)) == as_space(x).n


def is_sublattice(x) -> bool:
    X = as_space(x)
    return len(point_classes(X)) == X.dim


def sublattice(x) -> Sublattice:
    """Wrap an already sup-closed space, with its own basis as generators."""
    X = as_space(x)
    if not is_sublattice(X):
        raise PreconditionFailed("span is not closed under pointwise sup",
                                 witness=sup_witness(X))
    certs = tuple(Lin(((Fraction(1), Leaf(i)),)) for i in range(X.dim))
    return Sublattice(X, X.basis, certs)


def _separator(X: Subspace, sigma: int, zero_at: Sequence[int], greedy_pool=()):
    """Element x of X with x(sigma)=1 and x(t)=0 for t in zero_at (plus whatever of
    greedy_pool can be added), as echelon coordinates."""
    rows = [X.column(sigma)]
    rhs = [Fraction(1)]
    for t in zero_at:
        if solve(rows + [X.column(t)], rhs + [ZERO], X.dim) is not None:
            rows.append(X.column(t))
            rhs.append(ZERO)
    for t in greedy_pool:
        if solve(rows + [X.column(t)], rhs + [ZERO], X.dim) is not None:
            rows.append(X.column(t))
            rhs.append(ZERO)
    c = solve(rows, rhs, X.dim)
    assert c is not None
    return c


def _separators(X: Subspace, sigma: int, outside: Sequence[int], strategy: str):
    """Elements x with x(sigma)=1 such that every outside point has x(t) <= 0
    for at least one x."""
    if strategy == "greedy":
        seps = []
        bad = list(outside)
        while bad:
            c = _separator(X, sigma, bad[:1], bad[1:])
            x = X.element(c)
            seps.append(x)
            bad = [t for t in bad if x[t] > 0]
        if not seps:
            seps.append(X.element(_separator(X, sigma, ())))
        return seps
    order = list(outside) if strategy == "pointwise" else list(reversed(outside))
    seps = [X.element(_separator(X, sigma, (t,))) for t in order]
    if not seps:
        seps.append(X.element(_separator(X, sigma, ())))
    return seps


STRATEGIES = ("greedy", "pointwise", "dual")


def sublattice_closure(x, generators: Optional[Sequence] = None,
                       strategy: str = "greedy") -> Sublattice:
    """Smallest vector sublattice containing ``x``, with certificates.

    Each basis vector of the result (an atom) comes with an expression over
    ``generators`` (default: the echelon basis of ``x``).  ``greedy`` builds
    atoms as infima of positive parts of few separating elements and falls
    back to plain linear combinations when the span already contains the
    atom; ``pointwise`` uses one positive part per separated point; ``dual``
    writes atoms as negated suprema of infima, separating points in reverse
    order.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown closure strategy {strategy!r}")
    X = as_space(x)
    n = X.n
    gens = X.basis if generators is None else tuple(vec(g) for g in generators)
    for g in gens:
        if len(g) != n:
            raise MixedAmbient("generator over a different point set")
    if make_subspace(gens, n) != X:
        raise PreconditionFailed("generators do not span the given subspace")
    gen_cols = transpose(gens, X.n) if gens else []
    # each echelon basis vector written over the generators, once
    basis_in_gens = [solve(gen_cols, b, len(gens)) for b in X.basis]

    def linear(v):
        c = X.coords(v)
        d = lincomb(c, basis_in_gens, len(gens))
        return Lin(tuple((a, Leaf(k)) for k, a in enumerate(d) if a))

    classes = point_classes(X)
    if strategy == "greedy" and len(classes) == X.dim:
        certs = tuple(linear(b) for b in X.basis)
        return Sublattice(X, gens, certs)
    ups = sorted(p for c in classes for p in c)
    atoms, certs = [], []
    for cls in classes:
        sigma = cls[0]
        members = set(cls)
        outside = [t for t in ups if t not in members]
        seps = _separators(X, sigma, outside, strategy)
        if strategy == "dual":
            parts = [Inf((Lin(((Fraction(-1), linear(s)),)), ZERO_EXPR)) for s in seps]
            top = parts[0] if len(parts) == 1 else Sup(tuple(parts))
            expr = Lin(((Fraction(-1), top),))
        else:
            parts = []
            for s in seps:
                if strategy == "greedy" and is_nonneg(s):
                    parts.append(linear(s))
                else:
                    parts.append(Sup((linear(s), ZERO_EXPR)))
            expr = parts[0] if len(parts) == 1 else Inf(tuple(parts))
        atom = evaluate(expr, gens, n)
        assert atom[sigma] == 1
        assert all((atom[p] > 0) == (p in members) for p in range(n)), "bad atom"
        atoms.append(atom)
        certs.append(expr)
    space = make_subspace(atoms, n)
    assert space.basis == tuple(atoms)
    return Sublattice(space, gens, tuple(certs))


def sup_witness(x):
    """A pair (a, b) of elements of ``x`` whose pointwise sup escapes it, or None."""
    X = as_space(x)
    if is_sublattice(X):
        return None
    L = sublattice_closure(X)
    for expr in L.certificates:
        found = _walk_for_escape(expr, X)
        if found is not None:
            return found
    raise AssertionError("closure grew but no certificate step escaped the span")


def _walk_for_escape(expr, X: Subspace):
    memo = {}

    def go(e):
        if id(e) in memo:
            return memo[id(e)]
        if isinstance(e, Leaf):
            val = X.basis[e.index]
        elif isinstance(e, Lin):
            vals = [go(c) for _, c in e.terms]
            if any(isinstance(v, Escape) for v in vals):
                return next(v for v in vals if isinstance(v, Escape))
            val = lincomb([c for c, _ in e.terms], vals, X.n)
        else:
            vals = [go(c) for c in e.args]
            if any(isinstance(v, Escape) for v in vals):
                return next(v for v in vals if isinstance(v, Escape))
            acc = vals[0]
            for v in vals[1:]:
                if isinstance(e, Sup):
                    new = pmax(acc, v)
                    if not X.contains(new):
                        return Escape((acc, v))
                else:
                    new = pmin(acc, v)
                    if not X.contains(new):
                        return Escape((neg(acc), neg(v)))
                acc = new
            val = acc
        memo[id(e)] = val
        return val

    out = go(expr)
    return out.pair if isinstance(out, Escape) else None


@dataclass(frozen=True)
class Escape:
    pair: tuple


def member_two_point(x, v: Sequence) -> bool:
    """Membership in the sublattice generated by ``x``, decided pair by pair.

    For every pair of points (including a point with itself) the two-point
    restriction of ``x`` generates a sublattice of Q^2 that is computed by
    hand below; ``v`` belongs to the generated sublattice iff each of its
    two-point restrictions lies in the corresponding one.
    """
    X = as_space(x)
    v = vec(v)
    if len(v) != X.n:
        raise MixedAmbient("probe vector over a different point set")
    for s in range(X.n):
        cs = X.column(s)
        if not any(cs) and v[s] != 0:
            return False
    for s, t in itertools.combinations(range(X.n), 2):
        cs, ct = X.column(s), X.column(t)
        rk = len(rref([cs, ct], X.dim)[0])
        if rk != 1:
            continue  # rank 0 handled above; rank 2 restricts onto all of Q^2
        # the restriction is the line through (cs.k, ct.k) for any k where not both vanish
        k = next(i for i in range(X.dim) if cs[i] or ct[i])
        p, q = cs[k], ct[k]
        if p * q < 0:
            continue  # a line crossing quadrants II/IV generates Q^2
        if p * v[t] != q * v[s]:
            return False
    return True


# -- linear maps --------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    """Linear map from ``domain`` into Q^target given by the images of the
    echelon basis of the domain."""

    domain: Subspace
    target: int
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.domain.dim:
            raise MixedAmbient(f"{len(self.images)} images for a {self.domain.dim}-dim domain")
        for im in self.images:
            if len(im) != self.target:
                raise MixedAmbient("image vector over the wrong point set")

    def apply(self, x) -> Vec:
        c = self.domain.coords(vec(x))
        if c is None:
            raise PreconditionFailed("argument outside the domain of the map", witness=x)
        return lincomb(c, self.images, self.target)

    def __call__(self, x) -> Vec:
        return self.apply(x)

    def image_space(self) -> Subspace:
        return make_subspace(self.images, self.target)


def linear_map(domain, target: int, images: Sequence) -> LinearMap:
    return LinearMap(as_space(domain), target, tuple(vec(v) for v in images))


def map_from_function(domain, target: int, f) -> LinearMap:
    D = as_space(domain)
    return LinearMap(D, target, tuple(vec(f(b)) for b in D.basis))


@dataclass(frozen=True)
class HomCheck:
    ok: bool
    witness: Optional[Vec] = None
    cells: int = 0

    def __bool__(self):
        return self.ok


def _sign_cells(hyperplanes, nvars):
    """Yield (signs, point) for every nonempty open cell of the arrangement."""

    def rec(i, cons, signs):
        pt = fm.feasible_point(cons, nvars)
        if pt is None:
            return
        if i == len(hyperplanes):
            yield tuple(signs), pt
            return
        for s in (1, -1):
            row = tuple(s * a for a in hyperplanes[i])
            yield from rec(i + 1, cons + [(row, ZERO, fm.STRICT)], signs + [s])

    yield from rec(0, [], [])


def check_lattice_hom(T: LinearMap, max_points: Optional[int] = None) -> HomCheck:
    """Decide exactly whether ``T|x| == |Tx|`` for every x in the domain.

    The domain must be a vector sublattice, so x = sum t_i a_i over its atoms
    a_i and |x| = sum |t_i| a_i.  Both sides are continuous and piecewise
    linear, so the identity holds everywhere iff it holds on each open sign
    cell.  Codomain points are independent: at point j only the coordinates
    t_i with (T a_i)(j) != 0 and the form (Tx)(j) matter, so cells are
    enumerated per codomain point, feasibility by Fourier-Motzkin.
    """
    D = T.domain
    if not is_sublattice(D):
        raise PreconditionFailed("lattice homomorphism check needs a sublattice domain")
    bound = resolve_max_points(max_points)
    cells = 0
    for j in range(T.target):
        row = [im[j] for im in T.images]
        S = [i for i, a in enumerate(row) if a]
        if not S:
            continue
        hyper = [tuple(int(k == i) for k in range(len(S))) for i in range(len(S))]
        hyper.append(tuple(row[i] for i in S))
        if len(hyper) > bound:
            raise SizeLimit(f"{len(hyper)} sign hyperplanes at codomain point {j} "
                            f"exceed the enumeration bound {bound}")
        for signs, pt in _sign_cells(hyper, len(S)):
            cells += 1
            eps = signs[-1]
            if all(signs[k] == eps for k in range(len(S))):
                continue
            t = [ZERO] * D.dim
            for k, i in enumerate(S):
                t[i] = pt[k]
            x = D.element(t)
            assert T.apply(vabs(x)) != vabs(T.apply(x))
            return HomCheck(False, x, cells)
    return HomCheck(True, None, cells)


def check_positive(T: LinearMap) -> HomCheck:
    """Decide whether T maps nonnegative domain elements to nonnegative vectors."""
    D = T.domain
    pos = [(D.column(p), ZERO, fm.WEAK) for p in range(D.n) if any(D.column(p))]
    for j in range(T.target):
        row = tuple(im[j] for im in T.images)
        if not any(row):
            continue
        pt = fm.feasible_point(pos + [(tuple(-a for a in row), ZERO, fm.STRICT)], D.dim)
        if pt is not None:
            return HomCheck(False, D.element(pt))
    return HomCheck(True)


def atoms(L) -> tuple:
    """Disjoint positive basis of a sublattice (its echelon basis)."""
    X = as_space(L)
    if not is_sublattice(X):
        raise PreconditionFailed("only vector sublattices have an atom basis")
    return X.basis


def restrict(v: Vec, points: Sequence[int]) -> Vec:
    return tuple(v[p] for p in points)


def restriction_kernel(x, points: Sequence[int]) -> Subspace:
    """Elements of the span vanishing at every point in ``points``."""
    from .linalg import nullspace
    X = as_space(x)
    rows = [X.column(p) for p in points]
    if X.dim == 0:
        return zero_space(X.n)
    ker = nullspace(rows, X.dim) if rows else [tuple(int(i == j) for j in range(X.dim))
                                               for i in range(X.dim)]
    return make_subspace([X.element(c) for c in ker], X.n)


__all__ = [
    "Subspace", "Sublattice", "Leaf", "Sup", "Inf", "Lin", "ZERO_EXPR", "LinearMap",
    "HomCheck", "make_subspace", "full_space", "zero_space", "evaluate", "is_sublattice",
    "sublattice", "sublattice_closure", "sup_witness", "member_two_point", "upsilon",
    "is_admissible", "point_classes", "check_lattice_hom", "check_positive",
    "linear_map", "map_from_function", "atoms", "restrict", "restriction_kernel",
    "resolve_max_points", "zeros", "is_zero", "sub",
]
