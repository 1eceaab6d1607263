"""Reference implementations used only by the tests.

They are deliberately naive and share no code with the package: dense
Gaussian elimination, saturating sup/inf enumeration, direct division.
"""

import itertools
from fractions import Fraction


def reduce_rows(rows):
    """Row echelon form by plain Gauss-Jordan, zero rows dropped."""
    m = [list(map(Fraction, r)) for r in rows]
    out, col = [], 0
    ncols = len(m[0]) if m else 0
    while m and col < ncols:
        piv = next((r for r in m if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        m.remove(piv)
        piv = [a / piv[col] for a in piv]
        m = [[a - r[col] * b for a, b in zip(r, piv)] for r in m]
        out = [[a - r[col] * b for a, b in zip(r, piv)] for r in out]
        out.append(piv)
        col += 1
    return sorted((tuple(r) for r in out if any(r)), reverse=True)


def rank(rows):
    return len(reduce_rows(rows)) if rows else 0


def in_span(rows, v):
    return rank(list(rows) + [v]) == rank(rows)


def same_span(a, b):
    return rank(a) == rank(b) == rank(list(a) + list(b))


def closure_by_saturation(gens, n, rounds=None):
    """Span of X closed under pairwise sup and inf of vectors drawn from the
    current basis and its sums/differences, iterated to a fixed point."""
    basis = reduce_rows(gens) if gens else []
    rounds = n + 2 if rounds is None else rounds
    for _ in range(rounds):
        if not basis:
            return []
        pool = list(basis)
        pool += [tuple(a + b for a, b in zip(x, y)) for x, y in itertools.combinations(basis, 2)]
        pool += [tuple(a - b for a, b in zip(x, y)) for x, y in itertools.combinations(basis, 2)]
        pool += [tuple(-a for a in x) for x in pool]
        new = list(basis)
        for x, y in itertools.combinations(pool, 2):
            new.append(tuple(max(a, b) for a, b in zip(x, y)))
            new.append(tuple(min(a, b) for a, b in zip(x, y)))
        new.extend(tuple(max(a, 0) for a in x) for x in pool)
        red = reduce_rows(new)
        if len(red) == len(basis):
            return red
        basis = red
    return basis


def weight_by_division(basis, table, n):
    """w(s) = (b * b)(s) / b(s)^2 for a basis vector b not vanishing at s."""
    w = [Fraction(0)] * n
    for i, b in enumerate(basis):
        for s in range(n):
            if b[s] != 0:
                w[s] = table[i][i][s] / (b[s] * b[s])
    return tuple(w)


def semi_prime_by_kernel(basis, w):
    """No nonzero x in the span with x vanishing on supp(w)."""
    supp = [s for s, a in enumerate(w) if a != 0]
    rows = [[b[s] for s in supp] for b in basis]
    if not basis:
        return True
    if not supp:
        return False
    return rank(rows) == len(basis)


def identity_by_solving(basis, w, n):
    """Solve e = sum c_k b_k with w e b_i = b_i for all i; None if impossible."""
    d = len(basis)
    eqs = []
    for b in basis:
        for s in range(n):
            eqs.append(([w[s] * bk[s] * b[s] for bk in basis], b[s]))
    aug = [list(c) + [r] for c, r in eqs]
    red = reduce_rows(aug) if aug else []
    if any(all(a == 0 for a in r[:-1]) and r[-1] != 0 for r in red):
        return None
    coeffs = [Fraction(0)] * d
    for r in red:
        lead = next(i for i, a in enumerate(r[:-1]) if a != 0)
        coeffs[lead] = r[-1]
    return tuple(sum(c * bk[s] for c, bk in zip(coeffs, basis)) for s in range(n))


def product_index(s, o, m):
    return s * m + o


def tensor_weight_dict(v, w):
    return {(s, o): v[s] * w[o] for s in range(len(v)) for o in range(len(w))}


def lattice_hom_counterexample(images, domain_basis, n, rng, tries=300):
    """Random search for x with T|x| != |Tx|; None if none found."""
    d = len(domain_basis)
    for _ in range(tries):
        c = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d)]
        x = tuple(sum(ci * b[s] for ci, b in zip(c, domain_basis)) for s in range(n))
        ax = tuple(abs(a) for a in x)
        # express |x| back in the domain basis: for a sublattice the atoms give coordinates
        ca = coords_in(domain_basis, ax)
        cx = c
        m = len(images[0]) if images else 0
        t_abs = tuple(sum(ci * im[j] for ci, im in zip(ca, images)) for j in range(m))
        tx = tuple(abs(sum(ci * im[j] for ci, im in zip(cx, images))) for j in range(m))
        if t_abs != tx:
            return x
    return None


def coords_in(basis, v):
    d = len(basis)
    n = len(v)
    aug = [[basis[k][s] for k in range(d)] + [v[s]] for s in range(n)]
    red = reduce_rows(aug)
    coeffs = [Fraction(0)] * d
    for r in red:
        lead = next(i for i, a in enumerate(r) if a != 0)
        assert lead < d, "vector not in span"
        coeffs[lead] = r[-1]
    return coeffs
