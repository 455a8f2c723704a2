"""Problem, options and result types for creative telescoping."""

import os
from dataclasses import dataclass, field

from ..arith import DEFAULT_PRIME, RatFunc
from ..ore import OreOperator


class TelescopingProblem:
    """An annihilating Groebner basis plus the variables to sum/integrate over.

    Every telescoped variable must carry a generator.  All other variables
    (generator-bound or free parameters) are the surviving parameters ``w``.
    """

    def __init__(self, gb, telescope):
        alg = gb.algebra
        self.gb = gb
        self.algebra = alg
        if isinstance(telescope, str):
            telescope = [telescope]
        self.telescope = tuple(telescope)
        if not self.telescope:
            raise ValueError("nothing to telescope")
        bound = {g.variable: k for k, g in enumerate(alg.generators)}
        for v in self.telescope:
            if v not in bound:
                raise ValueError(f"telescoping variable {v!r} has no generator")
        if len(set(self.telescope)) != len(self.telescope):
            raise ValueError("repeated telescoping variable")
        self.tele_gens = tuple(bound[v] for v in self.telescope)
        self.param_gens = tuple(k for k in range(alg.ngens) if k not in self.tele_gens)
        self.v_names = self.telescope
        self.v_index = tuple(alg.var_index[v] for v in self.telescope)
        self.w_names = tuple(nm for nm in alg.variables if nm not in self.telescope)
        self.stairs = gb.stairs()

    def delta_operator(self, i):
        """``D_v`` for an integral, ``S_v - 1`` for a sum."""
        k = self.tele_gens[i]
        gen = self.algebra.generators[k]
        op = self.algebra.monomial(self.algebra.unit_exp(k))
        return op - 1 if gen.is_shift else op

    def is_shift(self, i):
        return self.algebra.generators[self.tele_gens[i]].is_shift

    def support_monomials(self, degree):
        """All monomials in the parameter generators of total degree exactly ``degree``."""
        out = []
        n = self.algebra.ngens
        params = self.param_gens

        def rec(pos, left, cur):
            if pos == len(params):
                if left == 0:
                    out.append(tuple(cur))
                return
            for e in range(left, -1, -1):
                cur[params[pos]] = e
                rec(pos + 1, left - e, cur)
            cur[params[pos]] = 0

        rec(0, degree, [0] * n)
        return out

    def __repr__(self):
        return f"TelescopingProblem(telescope={list(self.telescope)}, |U|={len(self.stairs)})"


@dataclass
class SolverOptions:
    support: tuple = None  # fixed B, exponent vectors
    denominator: object = None  # fixed common denominator (RatFunc or poly)
    max_degree: int = 6
    prime: int = DEFAULT_PRIME
    seed: int = None
    minimize_common: bool = True
    minimize_individual: bool = True
    prune: bool = True
    max_support_degree: int = 3

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        if self.prime < 3 or self.prime >= 2 ** 31:
            raise ValueError("prime must be an odd prime below 2**31")
        if self.seed is None:
            self.seed = int(os.environ.get("ORETEL_SEED", "0"))


@dataclass
class Telescoper:
    """``P + sum_i delta_i * Q_i`` in the annihilating ideal."""

    principal: OreOperator
    certificates: tuple
    telescope: tuple = ()
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.principal.is_zero():
            raise ValueError("principal part must be nonzero")
        self.certificates = tuple(self.certificates)

    def operator(self, problem):
        total = self.principal
        for i, q in enumerate(self.certificates):
            total = total + problem.delta_operator(i) * q
        return total

    def denominators(self):
        """Per certificate: monomial -> denominator polynomial of its coefficient."""
        return [{mu: c.den for mu, c in q.terms.items()} for q in self.certificates]

    def common_denominator(self, i):
        den = None
        for c in self.certificates[i].terms.values():
            den = c.den if den is None else den * (c.den / den.gcd(c.den))
        return den

    def normalized(self):
        """Scale so that ``P`` is primitive with positive leading coefficient."""
        P = self.principal.primitive_part()
        lead = self.principal.lm()
        scale = P.terms[lead] / self.principal.terms[lead]
        certs = tuple(q.scale(scale) for q in self.certificates)
        return Telescoper(P, certs, self.telescope, dict(self.stats))

    def scaled(self, c):
        c = c if isinstance(c, RatFunc) else self.principal.algebra.coeff(c)
        return Telescoper(self.principal.scale(c), tuple(q.scale(c) for q in self.certificates), self.telescope, dict(self.stats))
