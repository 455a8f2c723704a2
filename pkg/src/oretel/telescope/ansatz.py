"""Ansatz bookkeeping: principal support, delta-part blocks and their unknowns.

A block is one ``(i, gamma)`` component of a delta part,
``(sum_alpha q_{i,alpha,gamma} v^alpha) / d_{i,gamma} * d^gamma``.
Unknown keys are ``("p", beta)`` and ``("q", i, gamma, alpha)``.
"""

import itertools
from dataclasses import dataclass, replace

from ..arith import RatFunc, depends_on, monic_factors, poly_key
from ..groebner import shifted_leading_coefficient, simulated_reduction
from ..termorder import mono_add


@dataclass(frozen=True)
class Block:
    i: int
    gamma: tuple
    den: object  # fmpq_mpoly in the algebra ring, monic
    degrees: tuple  # numerator degree bound per telescoping variable

    def alphas(self):
        if any(d < 0 for d in self.degrees):
            return []
        return list(itertools.product(*(range(d + 1) for d in self.degrees)))

    def keys(self):
        return [("q", self.i, self.gamma, a) for a in self.alphas()]

    def _sig(self):
        return (self.i, self.gamma, poly_key(self.den), self.degrees)

    def __eq__(self, other):
        return isinstance(other, Block) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())


@dataclass(frozen=True)
class Ansatz:
    B: tuple
    blocks: tuple
    excluded: frozenset = frozenset()
    rational: bool = True

    def unknowns(self):
        out = [("p", b) for b in self.B]
        for blk in self.blocks:
            out.extend(blk.keys())
        return [k for k in out if k not in self.excluded]

    def principal_unknowns(self):
        return [k for k in self.unknowns() if k[0] == "p"]

    def block(self, i, gamma):
        for blk in self.blocks:
            if blk.i == i and blk.gamma == gamma:
                return blk
        raise KeyError((i, gamma))

    def block_map(self):
        return {(b.i, b.gamma): b for b in self.blocks}

    def with_blocks(self, blocks):
        return replace(self, blocks=tuple(blocks))

    def with_excluded(self, excluded):
        return replace(self, excluded=frozenset(excluded))

    def __len__(self):
        return len(self.unknowns())


def _shift_exp(exps, k):
    return mono_add(exps, tuple(int(j == k) for j in range(len(exps))))


def ansatz_support(problem, B, supports=None):
    """Monomials of the ansatz before reduction."""
    sup = set(map(tuple, B))
    for i, k in enumerate(problem.tele_gens):
        for g in (problem.stairs if supports is None else supports[i]):
            sup.add(tuple(g))
            sup.add(_shift_exp(g, k))
    return sup


def candidate_factors(problem, B):
    """v-dependent irreducible factors of the leading coefficients met while reducing.

    Maps factor key -> (monic factor, largest multiplicity seen).
    """
    G = problem.gb
    pairs = simulated_reduction(ansatz_support(problem, B), G)
    found = {}
    for idx, m in sorted(pairs):
        lc = shifted_leading_coefficient(G, idx, m)
        for f, e in monic_factors(lc.num):
            if not depends_on(f, problem.v_index):
                continue
            key = poly_key(f)
            if key not in found or found[key][1] < e:
                found[key] = (f, e)
    return found


def guess_denominator(problem, B):
    """Common denominator candidate: lcm of the v-parts of all leading coefficients used."""
    d = problem.algebra.ctx.constant(1)
    for f, e in candidate_factors(problem, B).values():
        d = d * f ** e
    return d


def _as_poly(den, ctx):
    if den is None:
        return ctx.constant(1)
    if isinstance(den, RatFunc):
        if not den.is_polynomial():
            raise ValueError("denominator must be a polynomial")
        den = den.num
    elif isinstance(den, int):
        den = ctx.constant(den)
    if den.is_zero():
        raise ValueError("zero denominator")
    return den / den.leading_coefficient()


def build_rational_ansatz(problem, B, delta, d=None, per_gamma=None):
    """Rational ansatz with common denominator ``d`` (or per-(i, gamma) ones)."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    ctx = problem.algebra.ctx
    nv = len(problem.telescope)
    blocks = []
    common = _as_poly(d, ctx)
    for i in range(nv):
        for g in problem.stairs:
            den = common
            if per_gamma is not None and (i, g) in per_gamma:
                den = _as_poly(per_gamma[(i, g)], ctx)
            blocks.append(Block(i, g, den, (delta,) * nv))
    return Ansatz(tuple(map(tuple, B)), tuple(blocks))


def build_polynomial_ansatz(problem, B, degrees, supports):
    """Polynomial ansatz: delta parts with polynomial coefficients on caller-given supports.

    ``degrees`` is an int (same bound everywhere) or a tuple per telescoping variable.
    """
    ctx = problem.algebra.ctx
    nv = len(problem.telescope)
    if isinstance(degrees, int):
        degrees = (degrees,) * nv
    one = ctx.constant(1)
    blocks = []
    for i in range(nv):
        for g in sorted(map(tuple, supports[i])):
            blocks.append(Block(i, g, one, tuple(degrees)))
    return Ansatz(tuple(map(tuple, B)), tuple(blocks), rational=False)


def raise_degree(ansatz, delta):
    """Same ansatz with every block's degree bounds set to ``delta``."""
    nv = len(ansatz.blocks[0].degrees) if ansatz.blocks else 0
    return ansatz.with_blocks([replace(b, degrees=(delta,) * nv) for b in ansatz.blocks])


# ---------------------------------------------------------------------------
# columns before reduction


def column_terms(problem, key, den_of):
    """The operator of one unknown as a dict monomial -> coefficient (not reduced).

    ``den_of`` maps ``(i, gamma)`` to the block denominator (a RatFunc).
    """
    alg = problem.algebra
    if key[0] == "p":
        return {key[1]: RatFunc.one(alg.ctx)}
    _, i, gamma, alpha = key
    r = RatFunc(_vmono(problem, alpha)) / den_of[(i, gamma)]
    k = problem.tele_gens[i]
    up = _shift_exp(gamma, k)
    vi = problem.v_index[i]
    if problem.is_shift(i):
        return {up: r.shift(vi, 1), gamma: -r}
    out = {up: r}
    dr = r.derivative(vi)
    if not dr.is_zero():
        out[gamma] = dr
    return out


def _vmono(problem, alpha):
    ctx = problem.algebra.ctx
    exps = [0] * ctx.nvars()
    for idx, e in zip(problem.v_index, alpha):
        exps[idx] = e
    return ctx.term(exp_vec=tuple(exps))


def assemble(problem, ansatz, values):
    """Telescoper pieces from unknown values (RatFuncs in w) -> (P, [Q_i])."""
    from ..ore import OreOperator

    alg = problem.algebra
    P = {}
    Q = [dict() for _ in problem.telescope]
    blocks = ansatz.block_map()
    for key, val in values.items():
        if val.is_zero():
            continue
        if key[0] == "p":
            P[key[1]] = val
            continue
        _, i, gamma, alpha = key
        term = val * RatFunc(_vmono(problem, alpha)) / RatFunc(blocks[(i, gamma)].den)
        cur = Q[i].get(gamma)
        Q[i][gamma] = term if cur is None else cur + term
    return OreOperator(alg, P), [OreOperator(alg, q) for q in Q]
