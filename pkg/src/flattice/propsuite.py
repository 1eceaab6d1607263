"""Random instance generators and the executable property suite.

Every property draws its instances from its own stream, seeded by
``(seed, property id, instance index)``, so results do not depend on which
other properties ran or in which order.
"""

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import FlatticeError, NotFAlgebra
from .falgebra import (FAlgebra, band_complement, build_from_weight, canonical_weight,
                       extract_orthomorphism_weight, extract_partial_weight, extract_weight,
                       find_identity, is_semi_prime, mult, nilpotent_band, restrict_to_support,
                       table_algebra, tabulate, verify_falgebra, weight_of)
from .lattice import (LinearMap, Sublattice, evaluate, full_space, is_sublattice, make_subspace,
                      member_two_point, sublattice_closure, upsilon)
from .linalg import (ONE, ZERO, add, is_nonneg, is_zero, lincomb, pmax, pmin, pmul, positive_part,
                     rank, scale)
from .morphisms import algebra_hom, induced_tensor_hom, point_evaluation_hom, verify_universal
from .tensor import (outer, reconstruct_mult_from_generators, tensor_falgebra,
                     tensor_generator_products)

DEFAULT_COUNTS = {"P1": 200, "P2": 200, "P3": 200, "P4": 200, "P5": 100, "P6": 100,
                  "P7": 200, "P8": 100, "M": 50}

TITLES = {
    "P1": "closure agrees with the two-point oracle and brute force",
    "P2": "weight round trip",
    "P3": "semi-prime preservation under tensor products",
    "P4": "identity preservation under tensor products",
    "P5": "uniqueness of the tensor multiplication",
    "P6": "universal property",
    "P7": "f-algebra axiom battery",
    "P8": "representation theorems",
    "M": "mutation sensitivity",
}


@dataclass
class GenConfig:
    seed: int = 0
    max_points: int = 4
    max_dim: int = 4
    weight_zero_probability: Fraction = Fraction(1, 4)
    instance_count: Optional[int] = None
    # test-only hook: (table, rng) -> perturbed table, applied before P2/P5 comparisons
    mutation: Optional[Callable] = None

    def __post_init__(self):
        self.weight_zero_probability = Fraction(self.weight_zero_probability)
        if self.max_points < 1 or self.max_dim < 1:
            raise ValueError("max_points and max_dim must be positive")
        if not 0 <= self.weight_zero_probability <= 1:
            raise ValueError("weight_zero_probability must lie in [0, 1]")
        if self.instance_count is not None and self.instance_count < 0:
            raise ValueError("instance_count must be nonnegative")

    def count(self, pid: str) -> int:
        return DEFAULT_COUNTS[pid] if self.instance_count is None else self.instance_count


def stream(seed: int, *key) -> random.Random:
    return random.Random(":".join(str(k) for k in (seed,) + key))


def _small(rng, lo=-2, hi=2) -> Fraction:
    return Fraction(rng.randint(lo, hi))


def _chance(rng, p: Fraction) -> bool:
    return rng.random() < p


def random_vector(rng, n, lo=-2, hi=2) -> tuple:
    return tuple(_small(rng, lo, hi) for _ in range(n))


def gen_subspace(rng, n: int, max_dim: int):
    k = rng.randint(0, min(max_dim, n))
    return make_subspace([random_vector(rng, n) for _ in range(k)], n)


def _disjoint_atoms(rng, n: int, max_dim: int) -> list:
    """Random disjoint positive functions, at most ``n - 1`` of them when n > 1."""
    pts = list(range(n))
    rng.shuffle(pts)
    used = pts[:rng.randint(1, n)]
    k = rng.randint(1, min(len(used), max_dim))
    if k == n and n > 1:
        k = n - 1
    cuts = sorted(rng.sample(range(1, len(used)), k - 1)) if k > 1 else []
    groups = [used[a:b] for a, b in zip([0] + cuts, cuts + [len(used)])]
    out = []
    for g in groups:
        v = [ZERO] * n
        for p in g:
            v[p] = Fraction(rng.randint(1, 3), rng.randint(1, 2))
        out.append(tuple(v))
    return out


def gen_sublattice(rng, cfg: GenConfig, n: Optional[int] = None) -> Sublattice:
    """Half the time the closure of a random subspace, half the time a span of
    disjoint positive atoms (a proper sublattice whenever n > 1)."""
    n = rng.randint(1, cfg.max_points) if n is None else n
    if rng.random() < 0.5:
        X = gen_subspace(rng, n, cfg.max_dim)
        L = sublattice_closure(X)
        if L.dim <= cfg.max_dim:
            return L
    return sublattice_closure(make_subspace(_disjoint_atoms(rng, n, cfg.max_dim), n))


def class_weight(rng, L, zero_probability: Fraction) -> tuple:
    """A weight under which L is closed: constant lam_k / c on each class, where
    c is the value of the class atom, so that products of atoms stay multiples
    of atoms."""
    w = [ZERO] * L.n
    for atom in L.basis:
        lam = ZERO if _chance(rng, zero_probability) else Fraction(rng.randint(1, 4),
                                                                    rng.randint(1, 2))
        for p, c in enumerate(atom):
            if c:
                w[p] = lam / c
    return tuple(w)


def gen_weight(rng, L, zero_probability: Fraction) -> tuple:
    if L.dim == L.n:
        return tuple(ZERO if _chance(rng, zero_probability) else Fraction(rng.randint(1, 4))
                     for _ in range(L.n))
    # a free draw first; fall back to a class-consistent weight when it breaks closure
    raw = tuple(ZERO if _chance(rng, zero_probability) else Fraction(rng.randint(1, 4))
                for _ in range(L.n))
    try:
        build_from_weight(L, raw)
        return raw
    except FlatticeError:
        return class_weight(rng, L, zero_probability)


def gen_falgebra(rng, cfg: GenConfig, n: Optional[int] = None,
                 zero_probability: Optional[Fraction] = None, nonzero: bool = False) -> FAlgebra:
    p = cfg.weight_zero_probability if zero_probability is None else Fraction(zero_probability)
    while True:
        L = gen_sublattice(rng, cfg, n)
        if not nonzero or L.dim:
            break
    A = build_from_weight(L, gen_weight(rng, L, p))
    assert verify_falgebra(A).ok
    return A


def _positive_combo(rng, vectors, n):
    return lincomb([Fraction(rng.randint(0, 3)) for _ in vectors], vectors, n)


def _any_combo(rng, vectors, n):
    return lincomb([_small(rng, -3, 3) for _ in vectors], vectors, n)


# ---- properties: each returns (ok, counterexample or None, coverage tags)


def brute_force_closure(X):
    """Span of everything reachable by positive parts of small combinations,
    iterated to a fixed point.  Sups and infs come for free from
    a v b = a + (b - a)^+ and a ^ b = a - (a - b)^+."""
    Y = X if hasattr(X, "basis") else make_subspace(X)
    n = Y.n
    coeffs = (-1, 0, 1)
    while True:
        new = list(Y.basis)
        for i, j in itertools.combinations_with_replacement(range(Y.dim), 2):
            for c, d in itertools.product(coeffs, repeat=2):
                new.append(positive_part(add(scale(c, Y.basis[i]), scale(d, Y.basis[j]))))
        Z = make_subspace(new, n)
        if Z == Y:
            return Y
        Y = Z


def prop_p1(rng, cfg):
    n = rng.randint(1, 6)
    X = gen_subspace(rng, n, n)
    L = sublattice_closure(X)
    tags = {"proper_sublattice"} if 0 < L.dim < n else set()
    if L.dim > X.dim:
        tags.add("closure_grew")
    if not is_sublattice(L.space) or not X.issubspace(L.space):
        return False, f"closure of {X.basis} is not a sublattice containing it", tags
    if any(evaluate(e, L.generators, n) != b for e, b in zip(L.certificates, L.basis)):
        return False, f"certificate mismatch for {X.basis}", tags
    if brute_force_closure(X) != L.space:
        return False, f"brute force closure differs for {X.basis}", tags
    for k in range(50):
        kind = k % 3
        if kind == 0 or not L.dim:
            v = random_vector(rng, n, -3, 3)
        elif kind == 1:
            v = _any_combo(rng, L.basis, n)
        else:
            v = pmax(_any_combo(rng, X.basis, n), _any_combo(rng, X.basis, n)) if X.dim else \
                random_vector(rng, n)
        if L.contains(v) != member_two_point(X, v):
            return False, f"X={X.basis} probe {v}: closure says {L.contains(v)}", tags
    return True, None, tags


def prop_p2(rng, cfg):
    A = gen_falgebra(rng, cfg)
    table = tabulate(A)
    if cfg.mutation is not None:
        table = cfg.mutation(table, rng)
    T = table_algebra(A.carrier, table)
    try:
        got = extract_weight(T)
    except FlatticeError as exc:
        return False, f"extract_weight raised {type(exc).__name__}: {exc}", set()
    want = canonical_weight(A.carrier, A.weight)
    if got != want:
        return False, f"planted {want}, recovered {got}", set()
    return True, None, set()


def _factor_pair(rng, cfg, pid):
    """Two non-zero factors; every fourth instance forces a nilpotent into one."""
    force = rng.random() < 0.25
    A = gen_falgebra(rng, cfg, nonzero=True)
    B = gen_falgebra(rng, cfg, nonzero=True,
                     zero_probability=Fraction(1) if force else None)
    if rng.random() < 0.5:
        A, B = B, A
    return A, B


def prop_p3(rng, cfg):
    A, B = _factor_pair(rng, cfg, "P3")
    P = tensor_falgebra(A, B)
    sa, sb, sp = is_semi_prime(A), is_semi_prime(B), is_semi_prime(P)
    tags = set() if sa and sb else {"non_semi_prime"}
    if sp != (sa and sb):
        return False, f"weights {A.weight} and {B.weight}: tensor semi-prime={sp}", tags
    return True, None, tags


def prop_p4(rng, cfg):
    A, B = _factor_pair(rng, cfg, "P4")
    P = tensor_falgebra(A, B)
    ea, eb, ep = find_identity(A), find_identity(B), find_identity(P)
    tags = {"identity_bearing"} if ep is not None else set()
    if (ep is not None) != (ea is not None and eb is not None):
        return False, f"weights {A.weight}, {B.weight}: identity existence mismatch", tags
    if ep is not None:
        if ep != outer(ea, eb):
            return False, f"identity {ep} is not {outer(ea, eb)}", tags
        w = P.weight
        ups = upsilon(P.carrier)
        if any(ep[s] != (1 / w[s] if s in ups else ZERO) for s in range(P.n)):
            return False, f"identity {ep} is not 1/w on the support", tags
    return True, None, tags


def prop_p5(rng, cfg):
    A, B = _factor_pair(rng, cfg, "P5")
    strategy = "pointwise" if rng.random() < 0.5 else "dual"
    P = tensor_falgebra(A, B, strategy)
    products = tensor_generator_products(A, B)
    if cfg.mutation is not None:
        d = len(P.carrier.generators)
        mutated = cfg.mutation([[products(k, l) for l in range(d)] for k in range(d)], rng)
        products = lambda k, l: mutated[k][l]  # noqa: E731
    got = reconstruct_mult_from_generators(P, products)
    want = tabulate(P)
    if got != want:
        bad = next((r, s) for r in range(P.dim) for s in range(P.dim) if got[r][s] != want[r][s])
        return False, f"{strategy} certificates: product {bad} is {got[bad[0]][bad[1]]}, " \
                      f"weight form gives {want[bad[0]][bad[1]]}", set()
    return True, None, set()


def _eval_map(rng, A, C):
    free = [Fraction(rng.randint(-2, 2)) for _ in range(C.n)]
    choice = [None if rng.random() < 0.2 else rng.randrange(A.n) for _ in range(C.n)]
    return point_evaluation_hom(A, C, choice, free)


def prop_p6(rng, cfg):
    A, B = _factor_pair(rng, cfg, "P6")
    family = rng.random()
    if family < 0.3 and find_identity(A) is not None and find_identity(B) is not None:
        # C = A (x) B with a -> a (x) e_B and b -> e_A (x) b; S must be the identity
        C = tensor_falgebra(A, B)
        ea, eb = find_identity(A), find_identity(B)
        TA = LinearMap(A.carrier.space, C.n, tuple(outer(a, eb) for a in A.basis))
        TB = LinearMap(B.carrier.space, C.n, tuple(outer(ea, b) for b in B.basis))
        expect = C.basis
        tags = {"tensor_codomain"}
    else:
        m = rng.randint(1, 3)
        C = build_from_weight(full_space(m), gen_weight(rng, full_space(m),
                                                        cfg.weight_zero_probability))
        TA, TB = _eval_map(rng, A, C), _eval_map(rng, B, C)
        expect = None
        tags = {"evaluation_codomain"}
        if not is_semi_prime(C):
            tags.add("nilpotent_codomain")
    rep = verify_universal(A, B, C, TA, TB, seed=rng.randrange(2 ** 32))
    if not rep.ok:
        f = rep.failures[0]
        return False, f"{f.name}: {f.detail} (weights {A.weight}, {B.weight}, {C.weight})", tags
    if expect is not None:
        S = induced_tensor_hom(algebra_hom(TA, A, C), algebra_hom(TB, B, C)).map
        if S.images != expect:
            return False, "S is not the identity on the tensor product", tags
    return True, None, tags


def prop_p7(rng, cfg):
    A = gen_falgebra(rng, cfg)
    rep = verify_falgebra(A)
    if not rep.ok:
        return False, str(rep), set()
    n, B = A.n, A.basis
    Nd = band_complement(A.carrier, nilpotent_band(A))
    for _ in range(5):
        a, b = _positive_combo(rng, B, n), _positive_combo(rng, B, n)
        if not is_nonneg(mult(A, a, b)):
            return False, f"product of positives {a}, {b} is not positive", set()
        x, y, z = _any_combo(rng, B, n), _any_combo(rng, B, n), _any_combo(rng, B, n)
        if mult(A, x, y) != mult(A, y, x):
            return False, f"{x} and {y} do not commute", set()
        if mult(A, mult(A, x, y), z) != mult(A, x, mult(A, y, z)):
            return False, f"({x},{y},{z}) not associative", set()
        if not Nd.contains(mult(A, x, y)):
            return False, f"product of {x}, {y} lies outside the band complement", set()
        if len(B) >= 2:
            idx = list(range(len(B)))
            rng.shuffle(idx)
            cut = rng.randint(1, len(B) - 1)
            a = _positive_combo(rng, [B[i] for i in idx[:cut]], n)
            b = _positive_combo(rng, [B[i] for i in idx[cut:]], n)
            c = _positive_combo(rng, B, n)
            assert is_zero(pmin(a, b))
            if not is_zero(pmin(mult(A, a, c), b)) or not is_zero(pmin(mult(A, c, a), b)):
                return False, f"disjointness fails for {a}, {b} with {c}", set()
    return True, None, set()


def prop_p8(rng, cfg):
    part = rng.randrange(3)
    if part == 0:
        E = gen_sublattice(rng, cfg)
        q = tuple(Fraction(rng.randint(0, 3)) for _ in range(E.n))
        T = LinearMap(E.space, E.n, tuple(pmul(q, b) for b in E.basis))
        got = extract_orthomorphism_weight(E, T)
        want = canonical_weight(E, q)
        if got != want:
            return False, f"orthomorphism: planted {want}, recovered {got}", {"orthomorphism"}
        return True, None, {"orthomorphism"}
    if part == 1:
        H = gen_sublattice(rng, cfg)
        w = class_weight(rng, H, cfg.weight_zero_probability)
        combos = [_any_combo(rng, H.basis, H.n) for _ in range(rng.randint(0, H.dim))]
        G = sublattice_closure(make_subspace(combos, H.n))
        products = [[pmul(w, gi, gj) for gj in G.basis] for gi in G.basis]
        got = extract_partial_weight(H, G, products)
        ups = upsilon(G)
        want = tuple(w[s] if s in ups else ZERO for s in range(H.n))
        if got != want:
            return False, f"partial weight: planted {want}, recovered {got}", {"partial_weight"}
        return True, None, {"partial_weight"}
    A = gen_falgebra(rng, cfg, zero_probability=Fraction(0))
    if not is_semi_prime(A):
        return False, f"weight {A.weight} with no zeros on the support is not semi-prime", set()
    quo = restrict_to_support(A)
    w = weight_of(quo.algebra)
    if A.dim and not all(a > 0 for a in w):
        return False, f"quotient weight {w} is not strictly positive", {"restriction"}
    if A.dim and rank(quo.map.images, quo.map.target) != A.dim:
        return False, "restriction to the support is not injective", {"restriction"}
    for x, y in itertools.product(A.basis, repeat=2):
        if quo.map.apply(mult(A, x, y)) != mult(quo.algebra, quo.map.apply(x), quo.map.apply(y)):
            return False, "restriction is not multiplicative", {"restriction"}
    return True, None, {"restriction"}


def perturb_one_entry(table, rng, points=None):
    """Add 1 at one point of one table entry (mutation hook)."""
    table = [list(row) for row in table]
    d = len(table)
    if not d:
        return table
    i, j = rng.randrange(d), rng.randrange(d)
    n = len(table[i][j])
    pts = list(range(n)) if points is None else list(points)
    s = rng.choice(pts)
    v = list(table[i][j])
    v[s] += ONE
    table[i][j] = tuple(v)
    return table


def mutation_caught(A: FAlgebra, rng) -> tuple:
    """Perturb one entry at a point of the support; returns (caught, description)."""
    ups = sorted(upsilon(A.carrier))
    mutated = perturb_one_entry(tabulate(A), rng, ups)
    M = table_algebra(A.carrier, mutated)
    rep = verify_falgebra(M)
    if not rep.ok:
        return True, rep.failures[0].name
    try:
        w = extract_weight(M)
    except NotFAlgebra as exc:
        return True, f"extract_weight: {exc}"
    return w != weight_of(A), f"recovered weight {w}"


def prop_m(rng, cfg):
    A = gen_falgebra(rng, cfg, nonzero=True)
    caught, how = mutation_caught(A, rng)
    if not caught:
        return False, f"mutation of weight {A.weight} went unnoticed ({how})", set()
    return True, None, set()


PROPERTIES = {"P1": prop_p1, "P2": prop_p2, "P3": prop_p3, "P4": prop_p4, "P5": prop_p5,
              "P6": prop_p6, "P7": prop_p7, "P8": prop_p8, "M": prop_m}

# coverage that the default configuration must exercise
REQUIRED_COVERAGE = {"P1": ("proper_sublattice",), "P3": ("non_semi_prime",),
                     "P4": ("identity_bearing",)}


@dataclass
class PropertyResult:
    pid: str
    title: str
    instances: int
    passed: int
    first_counterexample: Optional[tuple] = None
    coverage: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def no_evidence(self) -> bool:
        return self.instances == 0

    @property
    def ok(self) -> bool:
        return self.passed == self.instances

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        out = f"[{status}] {self.pid} {self.title}: {self.passed}/{self.instances}"
        if self.no_evidence:
            out += " (no evidence)"
        if self.coverage:
            out += " " + ", ".join(f"{k}={v}" for k, v in sorted(self.coverage.items()))
        if self.first_counterexample:
            idx, msg = self.first_counterexample
            out += f"\n    first counterexample at instance {idx}: {msg}"
        return out

    def as_json(self) -> dict:
        out = {"id": self.pid, "title": self.title, "instances": self.instances,
               "passed": self.passed, "ok": self.ok, "no_evidence": self.no_evidence,
               "coverage": dict(sorted(self.coverage.items()))}
        if self.first_counterexample:
            out["counterexample"] = {"instance": self.first_counterexample[0],
                                     "detail": self.first_counterexample[1]}
        return out


@dataclass
class SuiteReport:
    seed: int
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, pid) -> PropertyResult:
        return next(r for r in self.results if r.pid == pid)

    def __str__(self):
        return "\n".join(r.line() for r in self.results)


def run_property(pid: str, cfg: GenConfig, count: Optional[int] = None) -> PropertyResult:
    fn = PROPERTIES[pid]
    count = cfg.count(pid) if count is None else count
    res = PropertyResult(pid, TITLES[pid], count, 0)
    start = time.perf_counter()
    for k in range(count):
        rng = stream(cfg.seed, pid, k)
        try:
            ok, why, tags = fn(rng, cfg)
        except (FlatticeError, AssertionError) as exc:
            ok, why, tags = False, f"{type(exc).__name__}: {exc}", set()
        for t in tags:
            res.coverage[t] = res.coverage.get(t, 0) + 1
        if ok:
            res.passed += 1
        elif res.first_counterexample is None:
            res.first_counterexample = (k, why)
    res.seconds = time.perf_counter() - start
    return res


def run_suite(cfg: Optional[GenConfig] = None, properties=None) -> SuiteReport:
    cfg = GenConfig() if cfg is None else cfg
    pids = list(PROPERTIES) if properties is None else list(properties)
    order = list(PROPERTIES)
    pids.sort(key=order.index)
    return SuiteReport(cfg.seed, [run_property(pid, cfg) for pid in pids])


__all__ = [
    "GenConfig", "gen_subspace", "gen_sublattice", "gen_weight", "class_weight", "gen_falgebra",
    "brute_force_closure", "perturb_one_entry", "mutation_caught", "run_property", "run_suite",
    "PropertyResult", "SuiteReport", "PROPERTIES", "REQUIRED_COVERAGE", "stream",
]
