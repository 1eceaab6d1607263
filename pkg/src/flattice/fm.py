"""Fourier-Motzkin elimination over the rationals.

A constraint is a triple ``(coeffs, const, kind)`` read as
``coeffs . t + const  kind  0`` with ``kind`` one of ``">"``, ``">="``,
``"="``.  :func:`feasible_point` either returns an exact rational point
satisfying every constraint or ``None`` when the system is infeasible.
"""

from fractions import Fraction
from typing import Optional, Sequence

from .linalg import ONE, ZERO, nullspace, solve

STRICT = ">"
WEAK = ">="
EQ = "="


def _normalize(coeffs, const, strict):
    scale = max((abs(a) for a in coeffs), default=ZERO)
    if scale == 0:
        scale = abs(const) or ONE
    return tuple(a / scale for a in coeffs), const / scale, strict


def _holds(const, strict):
    return const > 0 if strict else const >= 0


def _eliminate(rows, d):
    """Solve an inequality system in ``d`` variables; rows are (coeffs, const, strict)."""
    if d == 0:
        return () if all(_holds(c, s) for _, c, s in rows) else None
    j = d - 1
    lower, upper, rest = [], [], {}
    for a, c, s in rows:
        if a[j] > 0:
            lower.append((a, c, s))
        elif a[j] < 0:
            upper.append((a, c, s))
        else:
            key = _normalize(a[:j], c, s)
            if not any(key[0]) and not _holds(key[1], key[2]):
                return None
            rest[key] = None
    for pa, pc, ps in lower:
        for qa, qc, qs in upper:
            lam, mu = -qa[j], pa[j]
            coeffs = tuple(lam * x + mu * y for x, y in zip(pa[:j], qa[:j]))
            key = _normalize(coeffs, lam * pc + mu * qc, ps or qs)
            if not any(key[0]) and not _holds(key[1], key[2]):
                return None
            rest[key] = None
    # rows with no variables left are already known to hold
    sub = [r for r in rest if any(r[0])]
    point = _eliminate(sub, j)
    if point is None:
        return None
    lo, lo_strict, hi, hi_strict = None, False, None, False
    for a, c, s in lower:
        # a_j t_j + (rest) (>|>=) 0  ->  t_j (>|>=) -(rest)/a_j
        b = -(sum((x * y for x, y in zip(a[:j], point)), ZERO) + c) / a[j]
        if lo is None or b > lo or (b == lo and s):
            lo, lo_strict = b, s
    for a, c, s in upper:
        b = -(sum((x * y for x, y in zip(a[:j], point)), ZERO) + c) / a[j]
        if hi is None or b < hi or (b == hi and s):
            hi, hi_strict = b, s
    if lo is None and hi is None:
        t = ZERO
    elif hi is None:
        t = lo + 1 if lo_strict else lo
    elif lo is None:
        t = hi - 1 if hi_strict else hi
    elif lo < hi:
        t = (lo + hi) / 2
    elif lo == hi and not lo_strict and not hi_strict:
        t = lo
    else:
        raise AssertionError("Fourier-Motzkin back substitution found an empty interval")
    return point + (t,)


def feasible_point(constraints: Sequence, nvars: int) -> Optional[tuple]:
    eqs = [(tuple(map(Fraction, a)), Fraction(c)) for a, c, k in constraints if k == EQ]
    ineqs = [(tuple(map(Fraction, a)), Fraction(c), k == STRICT)
             for a, c, k in constraints if k != EQ]
    for _, _, k in constraints:
        if k not in (STRICT, WEAK, EQ):
            raise ValueError(f"unknown constraint kind {k!r}")
    if eqs:
        base = solve([a for a, _ in eqs], [-c for _, c in eqs], nvars)
        if base is None:
            return None
        dirs = nullspace([a for a, _ in eqs], nvars)
    else:
        base = (ZERO,) * nvars
        dirs = [tuple(ONE if i == j else ZERO for i in range(nvars)) for j in range(nvars)]
    d = len(dirs)
    rows = []
    for a, c, s in ineqs:
        coeffs = tuple(sum((x * y for x, y in zip(a, v)), ZERO) for v in dirs)
        const = c + sum((x * y for x, y in zip(a, base)), ZERO)
        rows.append((coeffs, const, s))
    s_point = _eliminate(rows, d)
    if s_point is None:
        return None
    t = list(base)
    for coef, v in zip(s_point, dirs):
        for i, x in enumerate(v):
            t[i] += coef * x
    point = tuple(t)
    assert satisfies(constraints, point)
    return point


def satisfies(constraints, point) -> bool:
    for a, c, k in constraints:
        val = sum((Fraction(x) * y for x, y in zip(a, point)), Fraction(c))
        if k == EQ and val != 0:
            return False
        if k == WEAK and val < 0:
            return False
        if k == STRICT and val <= 0:
            return False
    return True


def is_feasible(constraints: Sequence, nvars: int) -> bool:
    return feasible_point(constraints, nvars) is not None
