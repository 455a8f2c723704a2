"""Exact solution of an ansatz over Q(w)."""

import logging
import random

from ..arith import (
    DEFAULT_PRIME,
    RatFunc,
    change_ring,
    independent_rows_mod,
    mod_rational,
    random_point,
    rational_ring,
    solve_fraction_free,
)
from ..errors import BadEvaluationPoint, NoSolution
from .ansatz import assemble, column_terms
from .problem import Telescoper

log = logging.getLogger(__name__)


def reduced_columns(problem, ansatz):
    """Exact normal form of every unknown's operator: list of {u: RatFunc}."""
    G = problem.gb
    den_of = {(b.i, b.gamma): RatFunc(b.den) for b in ansatz.blocks}
    keys = ansatz.unknowns()
    cols = []
    for key in keys:
        acc = {}
        for mu, c in column_terms(problem, key, den_of).items():
            for u, cu in G.nf_monomial(mu).items():
                val = c * cu
                cur = acc.get(u)
                acc[u] = val if cur is None else cur + val
        cols.append({u: c for u, c in acc.items() if not c.is_zero()})
    return keys, cols


def exact_rows(problem, ansatz):
    """Coefficient-comparison rows with entries in Q[w]; returns ``(rows, keys, wctx)``."""
    keys, cols = reduced_columns(problem, ansatz)
    wctx = rational_ring(problem.w_names)
    vset = set(problem.v_index)
    nvars = problem.algebra.ctx.nvars()
    widx = [k for k in range(nvars) if k not in vset]
    vidx = list(problem.v_index)
    table = {}
    us = sorted({u for col in cols for u in col})
    for u in us:
        L = None
        for col in cols:
            c = col.get(u)
            if c is not None:
                L = c.den if L is None else L * (c.den / L.gcd(c.den))
        for j, col in enumerate(cols):
            c = col.get(u)
            if c is None:
                continue
            num = c.num * (L / c.den)
            split = {}
            for exps, coeff in num.to_dict().items():
                vexp = tuple(exps[k] for k in vidx)
                wexp = tuple(exps[k] for k in widx)
                split.setdefault(vexp, {})[wexp] = coeff
            for vexp, terms in split.items():
                table.setdefault((u, vexp), {})[j] = wctx.from_dict(terms)
    zero = wctx.constant(0)
    rows = []
    for rk in sorted(table):
        ent = table[rk]
        rows.append([ent.get(j, zero) for j in range(len(keys))])
    return rows, keys, wctx


def _select_rows(rows, wctx, rng, p):
    names = wctx.names()
    if not names:
        return rows
    for _ in range(5):
        pt = random_point(names, rng)
        vals = [pt[nm] for nm in names]
        try:
            img = [[mod_rational(e(*vals), p) if not e.is_zero() else 0 for e in r] for r in rows]
        except BadEvaluationPoint:
            continue
        return [rows[k] for k in independent_rows_mod(img, p)]
    return rows


def _satisfies(rows, vec):
    for r in rows:
        acc = None
        for e, x in zip(r, vec):
            if e.is_zero() or x.is_zero():
                continue
            acc = e * x if acc is None else acc + e * x
        if acc is not None and not acc.is_zero():
            return False
    return True


def solve_exact(ansatz, problem, seed=0, p=DEFAULT_PRIME):
    """All telescopers from a basis of the exact solution space (principal part nonzero).

    Raises NoSolution when no basis vector has a nonzero principal part.
    """
    rows, keys, wctx = exact_rows(problem, ansatz)
    if not keys:
        raise NoSolution("empty ansatz")
    if rows:
        rng = random.Random(seed)
        sel = _select_rows(rows, wctx, rng, p)
        basis = solve_fraction_free(sel, wctx) if sel else None
        if basis is None:
            basis = [[wctx.constant(int(i == j)) for i in range(len(keys))] for j in range(len(keys))]
        elif len(sel) < len(rows) and not all(_satisfies(rows, v) for v in basis):
            log.info("row selection was unlucky, solving the full system")
            basis = solve_fraction_free(rows, wctx)
    else:
        basis = [[wctx.constant(int(i == j)) for i in range(len(keys))] for j in range(len(keys))]
    actx = problem.algebra.ctx
    out = []
    for vec in basis:
        values = {k: RatFunc(change_ring(x, actx)) for k, x in zip(keys, vec) if not x.is_zero()}
        if not any(k[0] == "p" for k in values):
            continue
        P, Q = assemble(problem, ansatz, values)
        out.append(Telescoper(P, Q, problem.telescope).normalized())
    if not out:
        raise NoSolution("solution space has no vector with a nonzero principal part")
    return out
