"""Exact rational vectors and Gauss-Jordan elimination.

Vectors are plain tuples of :class:`fractions.Fraction`; matrices are
sequences of such rows.  Nothing here knows about order structure.
"""

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vec = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Vec) -> Vec:
    return tuple(c * a for a in x)


def neg(x: Vec) -> Vec:
    return tuple(-a for a in x)


def dot(x: Vec, y: Vec):
    return sum((a * b for a, b in zip(x, y)), ZERO)


def lincomb(coeffs: Sequence, vectors: Sequence[Vec], n: int) -> Vec:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def pmax(x: Vec, y: Vec) -> Vec:
    return tuple(a if a >= b else b for a, b in zip(x, y))


def pmin(x: Vec, y: Vec) -> Vec:
    return tuple(a if a <= b else b for a, b in zip(x, y))


def pmul(*vs: Vec) -> Vec:
    out = list(vs[0])
    for v in vs[1:]:
        for k, a in enumerate(v):
            out[k] *= a
    return tuple(out)


def vabs(x: Vec) -> Vec:
    return tuple(abs(a) for a in x)


def positive_part(x: Vec) -> Vec:
    return tuple(a if a > 0 else ZERO for a in x)


def is_zero(x: Vec) -> bool:
    return not any(x)


def is_nonneg(x: Vec) -> bool:
    return all(a >= 0 for a in x)


def support(x: Vec) -> frozenset:
    return frozenset(k for k, a in enumerate(x) if a)


def rref(rows: Iterable[Sequence], ncols: int):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` with zero rows dropped, every pivot equal to
    one and rows ordered by pivot column.  The result depends only on the
    row space, which is what makes it a canonical basis.
    """
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [a / piv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def solve(a: Sequence[Sequence], b: Sequence, ncols: int) -> Optional[Vec]:
    """One solution of ``a @ x == b`` (free variables set to zero), or None."""
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def nullspace(a: Sequence[Sequence], ncols: int) -> list:
    """Basis of ``{x : a @ x == 0}``, one vector per free column."""
    red, pivots = rref(a, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def transpose(rows: Sequence[Sequence], ncols: int) -> list:
    return [tuple(r[c] for r in rows) for c in range(ncols)]


def fmt(x: Vec) -> str:
    return "(" + ",".join(str(a) for a in x) + ")"
