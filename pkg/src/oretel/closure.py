"""Annihilating ideals from term ratios, and closure under products.

``dfinite_product`` works in the tensor product of the two quotient
modules: the vector of ``d^mu (f*g)`` in the basis ``U1 x U2`` is built one
generator at a time, and monomials are visited in increasing term order
until every minimal non-stairs monomial has produced a relation.
"""

import random
from dataclasses import dataclass, field

from .arith import DEFAULT_PRIME, RatFunc, evaluate_hom, random_point, rank_mod, solve_fraction_free
from .errors import BadEvaluationPoint, IncompatibleCertificates
from .groebner import LeftGB, left_buchberger
from .ore import OreOperator
from .termorder import DEGREVLEX, divides


@dataclass
class TermCertificates:
    """Ratios ``r_t``: ``f(t+1)/f`` for shift variables, ``f'/f`` for derivations.

    ``ratios`` maps a generator symbol to a RatFunc in ``algebra.ctx``.
    """

    algebra: object
    ratios: dict = field(default_factory=dict)

    def __post_init__(self):
        alg = self.algebra
        fixed = {}
        for sym, r in self.ratios.items():
            if sym not in alg.symbol_index:
                # allow keying by variable name too
                match = [g.symbol for g in alg.generators if g.variable == sym]
                if not match:
                    raise KeyError(f"{sym!r} is neither a generator nor a bound variable")
                sym = match[0]
            if isinstance(r, str):
                from .parsing import parse_ratfunc

                r = parse_ratfunc(r, alg.ctx)
            fixed[sym] = alg.coeff(r)
        missing = [g.symbol for g in alg.generators if g.symbol not in fixed]
        if missing:
            raise IncompatibleCertificates(f"no ratio given for {missing}")
        for g in alg.generators:
            if g.is_shift and fixed[g.symbol].is_zero():
                raise IncompatibleCertificates(f"shift ratio for {g.symbol} is zero")
        self.ratios = fixed
        self.check()

    def check(self):
        alg = self.algebra
        gens = alg.generators
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                s, t = gens[a], gens[b]
                rs, rt = self.ratios[s.symbol], self.ratios[t.symbol]
                vs, vt = alg.var_index[s.variable], alg.var_index[t.variable]
                if s.is_shift and t.is_shift:
                    ok = rs.shift(vt, 1) * rt == rt.shift(vs, 1) * rs
                elif not s.is_shift and not t.is_shift:
                    ok = rs.derivative(vt) == rt.derivative(vs)
                else:
                    if not s.is_shift:
                        s, t, rs, rt, vs, vt = t, s, rt, rs, vt, vs
                    # d_t f(s+1) two ways
                    ok = rt.shift(vs, 1) * rs == rs.derivative(vt) + rs * rt
                if not ok:
                    raise IncompatibleCertificates(f"ratios for {s.symbol} and {t.symbol} do not commute")

    def operators(self):
        alg = self.algebra
        out = []
        for g in alg.generators:
            r = self.ratios[g.symbol]
            op = alg.gen(g.symbol).scale(RatFunc(r.den)) - OreOperator(alg, {alg.zero_exp: RatFunc(r.num)})
            out.append(op)
        return out


def hypergeometric_annihilator(cert, algebra=None):
    """First-order annihilating ideal ``{den(r_t) d_t - num(r_t)}``; stairs ``{1}``."""
    if algebra is not None and algebra != cert.algebra:
        raise ValueError("certificate belongs to another algebra")
    return LeftGB(cert.operators())


def hyperexp_annihilator(cert, algebra=None):
    if any(g.is_shift for g in cert.algebra.generators):
        raise ValueError("hyperexponential certificates need derivation generators only")
    return hypergeometric_annihilator(cert, algebra)


# ---------------------------------------------------------------------------
# products


class _Tensor:
    """Action of the generators on M1 (x) M2 with basis U1 x U2."""

    def __init__(self, G1, G2):
        self.G1, self.G2 = G1, G2
        self.alg = G1.algebra

    def step(self, k, vec):
        alg = self.alg
        gen = alg.generators[k]
        vi = alg.gen_var[k]
        e = alg.unit_exp(k)
        out = {}

        def add(key, val):
            cur = out.get(key)
            out[key] = val if cur is None else cur + val

        for (u1, u2), c in vec.items():
            up1 = tuple(x + y for x, y in zip(u1, e))
            up2 = tuple(x + y for x, y in zip(u2, e))
            if gen.is_shift:
                sc = c.shift(vi, 1)
                n1 = self.G1.nf_monomial(up1)
                n2 = self.G2.nf_monomial(up2)
                for a, ca in n1.items():
                    for b, cb in n2.items():
                        add((a, b), sc * ca * cb)
            else:
                dc = c.derivative(vi)
                if not dc.is_zero():
                    add((u1, u2), dc)
                for a, ca in self.G1.nf_monomial(up1).items():
                    add((a, u2), c * ca)
                for b, cb in self.G2.nf_monomial(up2).items():
                    add((u1, b), c * cb)
        return {k_: v for k_, v in out.items() if not v.is_zero()}


def _row_polys(row):
    """Scale a list of RatFuncs to polynomials (the RatFunc numerators)."""
    den = None
    for r in row:
        if r.is_zero() or r.den.is_one():
            continue
        den = r.den if den is None else den * (r.den / den.gcd(r.den))
    out = []
    for r in row:
        if r.is_zero():
            out.append(r.num)
        elif den is None:
            out.append(r.num)
        else:
            out.append(r.num * (den / r.den))
    return out


def dfinite_product(G1, G2, seed=0, p=DEFAULT_PRIME):
    """Annihilating ideal of ``f*g`` from those of ``f`` and ``g``."""
    if G1.algebra != G2.algebra:
        raise ValueError("factors live in different algebras")
    alg = G1.algebra
    order = G1.order
    U1, U2 = G1.stairs(), G2.stairs()
    rng = random.Random(seed)
    names = alg.variables
    point = random_point(names, rng)
    tensor = _Tensor(G1, G2)
    coords = [(a, b) for a in U1 for b in U2]

    one = RatFunc.one(alg.ctx)
    z = alg.zero_exp
    vectors = {z: {(z, z): one}}
    stairs = []
    leads = []
    relations = []
    pending = {z}

    def image(vec):
        nonlocal point
        for _ in range(5):
            try:
                return [int(evaluate_hom(vec[c], point, p)) if c in vec else 0 for c in coords]
            except BadEvaluationPoint:
                point = random_point(names, rng)
        raise BadEvaluationPoint("no good evaluation point for the product module")

    while pending:
        mu = min(pending, key=order.key)
        pending.discard(mu)
        if any(divides(lm, mu) for lm in leads):
            continue
        vec = vectors.get(mu)
        if vec is None:
            k = next(k for k, e in enumerate(mu) if e and tuple(x - (i == k) for i, x in enumerate(mu)) in vectors)
            prev = tuple(x - (i == k) for i, x in enumerate(mu))
            vec = tensor.step(k, vectors[prev])
            vectors[mu] = vec
        rel = None
        if stairs:
            rows = [image(vectors[nu]) for nu in stairs] + [image(vec)]
            if rank_mod(rows, p) <= len(stairs):
                rel = _exact_relation([vectors[nu] for nu in stairs], vec, coords, alg)
        elif not vec:
            rel = {}
        if rel is not None:
            terms = {nu: RatFunc(c) for nu, c in zip(stairs, rel[0]) if not c.is_zero()}
            terms[mu] = RatFunc(rel[1])
            relations.append(OreOperator(alg, terms))
            leads.append(mu)
            continue
        stairs.append(mu)
        for k in range(alg.ngens):
            pending.add(tuple(x + (i == k) for i, x in enumerate(mu)))
    return LeftGB(relations, order)


def _exact_relation(basis_vecs, vec, coords, alg):
    """Polynomial coefficients ``(c_nu, c_mu)`` with ``sum c_nu b_nu + c_mu vec = 0``.

    Returns None when ``vec`` is independent after all (unlucky modular point).
    """
    cols = basis_vecs + [vec]
    zero = RatFunc.zero(alg.ctx)
    rows = []
    for c in coords:
        row = [v.get(c, zero) for v in cols]
        if all(r.is_zero() for r in row):
            continue
        rows.append(_row_polys(row))
    if not rows:
        null = [[alg.ctx.constant(0)] * len(basis_vecs) + [alg.ctx.constant(1)]]
    else:
        null = solve_fraction_free(rows, alg.ctx)
    for v in null:
        if not v[-1].is_zero():
            return v[:-1], v[-1]
    return None


def product_of(ideals, seed=0):
    """Iterated ``dfinite_product`` of a list of bases."""
    acc = ideals[0]
    for G in ideals[1:]:
        acc = dfinite_product(acc, G, seed=seed)
    return acc


def ideal_from_generators(algebra, texts, order=DEGREVLEX):
    """Groebner basis of the left ideal generated by operator strings."""
    return left_buchberger([algebra.parse(t) for t in texts], order)
