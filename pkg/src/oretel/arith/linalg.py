"""Dense linear algebra: nullspaces over GF(p) and Q, fraction-free solving over Q[w].

Matrices are plain row lists (or numpy arrays for the modular routines).
"""

import math

import flint
import numpy as np

from .poly import integer_ring, rational_ring


# --------------------------------------------------------------------------
# GF(p)


def rref_mod(A, p):
    """Reduced row echelon form of an int matrix mod ``p`` (< 2**31).

    Returns ``(R, pivots)``; ``R`` is a new int64 array whose first
    ``len(pivots)`` rows are the nonzero rows.
    """
    if p >= 2 ** 31:
        raise ValueError("modulus must fit in 31 bits")
    R = np.array(A, dtype=np.int64, copy=True) % p
    if R.ndim != 2:
        R = R.reshape(len(A), -1)
    nrows, ncols = R.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            R[idx] = (R[idx] - np.outer(col[idx], R[r]) % p) % p
        pivots.append(c)
        r += 1
    return R, pivots


def nullspace_mod(A, p, ncols=None):
    """Basis of the right nullspace mod ``p`` as lists of ints."""
    if ncols is None:
        ncols = len(A[0]) if len(A) else 0
    if len(A) == 0:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref_mod(A, p)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, c in enumerate(pivots):
            v[c] = int(-R[row, f]) % p
        basis.append(v)
    return basis


def rank_mod(A, p):
    if len(A) == 0:
        return 0
    return len(rref_mod(A, p)[1])


def independent_rows_mod(A, p):
    """Indices of a maximal set of linearly independent rows mod ``p``."""
    if len(A) == 0:
        return []
    _, pivots = rref_mod(np.asarray(A, dtype=np.int64).T, p)
    return pivots


# --------------------------------------------------------------------------
# generic fields (fmpq, Fraction, nmod)


def nullspace(M, ncols=None):
    """Right nullspace over an exact field; entries support + - * /.

    Gauss-Jordan elimination; returns an empty list iff ``M`` is injective.
    """
    rows = [list(r) for r in M]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    zero = rows[0][0] * 0
    one = zero + 1
    pivots = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, c in enumerate(pivots):
            v[c] = -rows[row][f]
        basis.append(v)
    return basis


# --------------------------------------------------------------------------
# Q[w] -> Q(w)


def _to_integer_row(row, zctx):
    den = 1
    for e in row:
        for c in e.coeffs():
            den = math.lcm(den, int(c.denom()))
    out = []
    for e in row:
        out.append(zctx.from_dict({k: int(c * den) for k, c in e.to_dict().items()}))
    return out


def _strip_content(row):
    g = None
    for e in row:
        if e.is_zero():
            continue
        g = e if g is None else g.gcd(e)
        if g.is_one():
            return row
    if g is None or g.is_one():
        return row
    if g.is_constant() and int(g.leading_coefficient()) in (1, -1):
        return row
    return [e / g if not e.is_zero() else e for e in row]


def _size(e):
    return (e.total_degree(), len(e))


def solve_fraction_free(M, ctx=None):
    """Nullspace over Q(w) of a matrix with entries in Q[w].

    ``M`` is a list of rows of ``fmpq_mpoly`` (all in ``ctx``).  Elimination is
    fraction-free Gauss-Jordan over Z[w] with the content of every modified
    row removed.  Each basis vector is returned with polynomial entries
    (``fmpq_mpoly`` with integer coefficients) of content 1.
    """
    if ctx is None:
        ctx = next(e.context() for r in M for e in r)
    names = tuple(ctx.names())
    zctx = integer_ring(names)
    qctx = rational_ring(names)
    ncols = len(M[0]) if M else 0
    rows = [_strip_content(_to_integer_row(r, zctx)) for r in M]
    rows = [r for r in rows if any(not e.is_zero() for e in r)]
    pivot_of = []  # (row index, column)
    used = set()
    for c in range(ncols):
        cand = [i for i in range(len(rows)) if i not in used and not rows[i][c].is_zero()]
        if not cand:
            continue
        k = min(cand, key=lambda i: _size(rows[i][c]))
        used.add(k)
        prow = rows[k]
        piv = prow[c]
        for i in range(len(rows)):
            if i == k:
                continue
            a = rows[i][c]
            if a.is_zero():
                continue
            g = piv.gcd(a)
            s, t = piv / g, a / g
            rows[i] = _strip_content([s * x - t * y for x, y in zip(rows[i], prow)])
        pivot_of.append((k, c))
    pivcols = {c for _, c in pivot_of}
    basis = []
    for f in range(ncols):
        if f in pivcols:
            continue
        # x_f = L, x_c = -row[f] * L / row[c] for each pivot row
        L = zctx.constant(1)
        for k, c in pivot_of:
            if not rows[k][f].is_zero():
                pc = rows[k][c]
                L = L * (pc / pc.gcd(L)) if not L.is_one() else pc
        v = [zctx.from_dict({}) for _ in range(ncols)]
        v[f] = L
        for k, c in pivot_of:
            if not rows[k][f].is_zero():
                v[c] = -(rows[k][f] * L) / rows[k][c]
        v = _strip_content(v)
        lead = next(e for e in v if not e.is_zero())
        if lead.leading_coefficient() < 0:
            v = [-e for e in v]
        basis.append([qctx.from_dict({k: flint.fmpq(int(c)) for k, c in e.to_dict().items()}) for e in v])
    return basis
