"""Feasibility of an ansatz in a homomorphic image, and the heuristics built on it.

Parameters ``w`` are fixed to random integers and arithmetic is done mod p;
the telescoping variables ``v`` stay symbolic so that coefficient
comparison with respect to ``v`` is still possible.  Columns (one per
unknown) are reduced once and cached, so the degree loop, the
denominator minimization and the pruning only ever reduce new columns.
"""

import logging
import random
from dataclasses import dataclass, field, replace

from ..arith import RatFunc, degree_in, monic_factors, nullspace_mod, poly_key
from ..errors import BadEvaluationPoint, DegreeCapExceeded
from ..groebner import HomContext
from .ansatz import build_rational_ansatz, column_terms, raise_degree

log = logging.getLogger(__name__)

MAX_RETRIES = 5


class ModularSystem:
    """Reduced ansatz columns in one homomorphic image (one instance per thread)."""

    def __init__(self, problem, hctx=None, seed=0, p=None):
        self.problem = problem
        self.rng = random.Random(seed)
        self._p = p
        if hctx is None:
            hctx = self._fresh()
        self.set_context(hctx)

    def _fresh(self):
        kw = {} if self._p is None else {"p": self._p}
        return HomContext.random(self.problem.gb, self.problem.w_names, self.rng, retries=MAX_RETRIES, **kw)

    def set_context(self, hctx):
        self.hctx = hctx
        self.p = hctx.p
        self.vctx = hctx.ctx
        self._cols = {}
        self._expanded = {}
        self._lcm = {}

    def rerandomize(self):
        self.set_context(self._fresh())

    # columns ----------------------------------------------------------------
    def column(self, key, blocks):
        den = None if key[0] == "p" else blocks[(key[1], key[2])].den
        ck = (key, None if den is None else poly_key(den))
        col = self._cols.get(ck)
        if col is not None:
            return col
        den_of = {} if den is None else {(key[1], key[2]): RatFunc(den)}
        h = self.hctx
        acc = {}
        for mu, c in column_terms(self.problem, key, den_of).items():
            ci = h.ratfunc(c)
            for u, cu in h.nf_monomial(mu).items():
                val = ci * cu
                cur = acc.get(u)
                acc[u] = val if cur is None else cur + val
        col = {u: c for u, c in acc.items() if not c.is_zero()}
        self._cols[ck] = col
        return col

    def _col_key(self, key, blocks):
        if key[0] == "p":
            return (key, None)
        return (key, poly_key(blocks[(key[1], key[2])].den))

    def entries(self, ansatz):
        """Sparse matrix as ``{(row key, unknown): value}`` plus the unknown list.

        Rows are ``(u, v-exponent)`` after clearing, per ``u``, the lcm of
        the denominators of all columns.
        """
        keys = ansatz.unknowns()
        blocks = ansatz.block_map()
        cols = [self.column(k, blocks) for k in keys]
        ckeys = [self._col_key(k, blocks) for k in keys]
        dens = {}
        for col in cols:
            for u, c in col.items():
                dens.setdefault(u, {})[poly_key(c.den)] = c.den
        lcms = {}
        for u, ds in dens.items():
            sig = (u, tuple(sorted(ds)))
            L = self._lcm.get(sig)
            if L is None:
                L = None
                for dd in ds.values():
                    L = dd if L is None else L * (dd / L.gcd(dd))
                self._lcm[sig] = L
            lcms[u] = L
        out = {}
        for key, ck, col in zip(keys, ckeys, cols):
            for u, c in col.items():
                L = lcms[u]
                ek = (ck, u, poly_key(L))
                exp = self._expanded.get(ek)
                if exp is None:
                    exp = (c.num * (L / c.den)).to_dict()
                    self._expanded[ek] = exp
                for vexp, val in exp.items():
                    out[((u, vexp), key)] = int(val)
        return out, keys

    def matrix(self, ansatz):
        ent, keys = self.entries(ansatz)
        rows = sorted({r for r, _ in ent})
        ridx = {r: n for n, r in enumerate(rows)}
        cidx = {k: n for n, k in enumerate(keys)}
        M = [[0] * len(keys) for _ in rows]
        for (r, k), val in ent.items():
            M[ridx[r]][cidx[k]] = val
        return M, rows, keys


@dataclass
class Sketch:
    """Outcome of a modular feasibility probe."""

    feasible: bool
    keys: list
    basis: list = field(default_factory=list)
    generic: list = None
    system: object = None

    @property
    def nonzero(self):
        if self.generic is None:
            return set()
        return {k for k, v in zip(self.keys, self.generic) if v}

    @property
    def dimension(self):
        return len(self.basis)


def _probe(ansatz, system):
    keys = ansatz.unknowns()
    if not ansatz.principal_unknowns():
        return Sketch(False, keys, system=system)
    M, _, _ = system.matrix(ansatz)
    p = system.p
    basis = nullspace_mod(M, p, len(keys)) if M else [[int(i == j) for i in range(len(keys))] for j in range(len(keys))]
    if not basis:
        return Sketch(False, keys, [], None, system)
    rng = system.rng
    weights = [rng.randrange(1, p) for _ in basis]
    generic = [sum(w * v[c] for w, v in zip(weights, basis)) % p for c in range(len(keys))]
    pk = [c for c, k in enumerate(keys) if k[0] == "p"]
    ok = any(generic[c] for c in pk)
    return Sketch(ok, keys, basis, generic, system)


def hom_feasible(ansatz, problem, ctx):
    """Modular feasibility of ``ansatz``; ``ctx`` is a ModularSystem or a HomContext.

    Feasible means some nullspace vector has a nonzero principal part.
    A vanishing denominator triggers up to five fresh evaluation points.
    """
    system = ctx if isinstance(ctx, ModularSystem) else ModularSystem(problem, ctx)
    last = None
    for _ in range(MAX_RETRIES + 1):
        try:
            return _probe(ansatz, system)
        except BadEvaluationPoint as exc:
            last = exc
            log.info("bad evaluation point, re-randomizing: %s", exc)
            system.rerandomize()
    raise BadEvaluationPoint("evaluation kept failing") from last


def degree_search(problem, B, d, system, max_degree=6, refine=True, per_gamma=None):
    """Smallest delta with a modular solution, then componentwise-refined degrees.

    Returns ``(ansatz, sketch)``.
    """
    base = build_rational_ansatz(problem, B, 0, d, per_gamma)
    for delta in range(max_degree + 1):
        ansatz = raise_degree(base, delta)
        sk = hom_feasible(ansatz, problem, system)
        log.debug("delta=%d unknowns=%d feasible=%s", delta, len(sk.keys), sk.feasible)
        if sk.feasible:
            if refine:
                ansatz, sk = refine_degrees(ansatz, problem, system, sk)
            return ansatz, sk
    raise DegreeCapExceeded(max_degree)


def _with_degree(ansatz, i, k, value):
    blocks = []
    for b in ansatz.blocks:
        if b.i == i:
            deg = list(b.degrees)
            deg[k] = min(deg[k], value)
            b = replace(b, degrees=tuple(deg))
        blocks.append(b)
    return ansatz.with_blocks(blocks)


def refine_degrees(ansatz, problem, system, sketch):
    """Lower the degree bound of each (certificate, variable) pair while still feasible."""
    nv = len(problem.telescope)
    for i in range(nv):
        for k in range(nv):
            cur = max(b.degrees[k] for b in ansatz.blocks if b.i == i)
            while cur >= 0:
                trial = _with_degree(ansatz, i, k, cur - 1)
                sk = hom_feasible(trial, problem, system)
                if not sk.feasible:
                    break
                ansatz, sketch, cur = trial, sk, cur - 1
    return ansatz, sketch


def _remove_factor(block, f, v_index):
    den = block.den / f
    deg = tuple(max(d - degree_in(f, vi), -1) if d >= 0 else d for d, vi in zip(block.degrees, v_index))
    return replace(block, den=den, degrees=deg)


def _divisible(a, f):
    try:
        a / f
        return True
    except Exception:
        return False


def _factor_rounds(den):
    """Factors of ``den`` one power at a time, round robin over distinct factors."""
    if den is None or den.is_constant():
        return []
    facs = monic_factors(den)
    top = max(m for _, m in facs)
    return [f for r in range(top) for f, m in facs if m > r]


def minimize_denominators(ansatz, problem, system, common=True, individual=True):
    """Greedy removal of denominator factors (common lcm first, then per block).

    Each distinct factor loses one power per round, in the deterministic
    factor order; a factor that could not be removed is not tried again.
    """
    vix = problem.v_index
    if common:
        L = None
        for b in ansatz.blocks:
            L = b.den if L is None else L * (b.den / L.gcd(b.den))
        stuck = set()
        for f in _factor_rounds(L):
            if poly_key(f) in stuck:
                continue
            blocks = [_remove_factor(b, f, vix) if _divisible(b.den, f) else b for b in ansatz.blocks]
            trial = ansatz.with_blocks(blocks)
            if hom_feasible(trial, problem, system).feasible:
                ansatz = trial
                log.debug("dropped common factor %s", f)
            else:
                stuck.add(poly_key(f))
    if individual:
        for idx in range(len(ansatz.blocks)):
            stuck = set()
            for f in _factor_rounds(ansatz.blocks[idx].den):
                if poly_key(f) in stuck:
                    continue
                blocks = list(ansatz.blocks)
                blocks[idx] = _remove_factor(blocks[idx], f, vix)
                trial = ansatz.with_blocks(blocks)
                if hom_feasible(trial, problem, system).feasible:
                    ansatz = trial
                else:
                    stuck.add(poly_key(f))
    return ansatz


def prune_zero_unknowns(ansatz, sketches):
    """Drop unknowns that vanish in the generic modular solution of every sketch."""
    sketches = [s for s in sketches if s is not None and s.feasible]
    if not sketches:
        return ansatz
    zero = None
    for sk in sketches:
        z = {k for k, v in zip(sk.keys, sk.generic) if not v and k[0] == "q"}
        zero = z if zero is None else zero & z
    if not zero:
        return ansatz
    return ansatz.with_excluded(set(ansatz.excluded) | zero)
