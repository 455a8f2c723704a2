"""Homomorphic images: parameters evaluated at integers, coefficients mod p."""

import flint

from ..errors import BadEvaluationPoint
from .poly import modular_ring
from .ratfunc import RatFunc

#: Largest prime below 2**31, the machine-word prime used for all modular work.
DEFAULT_PRIME = 2147483629

ModInt = flint.nmod


def random_point(names, rng, digits=7):
    """Uniform ``digits``-digit integers for each name."""
    lo, hi = 10 ** (digits - 1), 10 ** digits
    return {nm: rng.randrange(lo, hi) for nm in names}


def mod_rational(c, p):
    """Image of a rational number in GF(p) as an int."""
    den = int(c.denom()) % p
    if den == 0:
        raise BadEvaluationPoint(f"denominator of {c} vanishes mod {p}")
    return int(c.numer()) * pow(den, -1, p) % p


class PolyImage:
    """Ring map Q[x_1..x_k] -> GF(p)[unassigned x_i] fixed by an assignment."""

    def __init__(self, src_ctx, assignment, p):
        names = tuple(src_ctx.names())
        self.p = p
        self.source = src_ctx
        self.keep = [k for k, nm in enumerate(names) if nm not in assignment]
        self.assigned = [(k, assignment[nm] % p) for k, nm in enumerate(names) if nm in assignment]
        self.target = modular_ring(tuple(names[k] for k in self.keep), p)
        self._powers = {}

    def _pow(self, k, value, e):
        key = (k, e)
        r = self._powers.get(key)
        if r is None:
            r = pow(value, e, self.p)
            self._powers[key] = r
        return r

    def poly(self, a):
        p = self.p
        keep = self.keep
        terms = {}
        for exp, c in a.to_dict().items():
            v = mod_rational(c, p)
            for k, value in self.assigned:
                e = exp[k]
                if e:
                    v = v * self._pow(k, value, e) % p
            if not v:
                continue
            key = tuple(exp[k] for k in keep)
            terms[key] = (terms.get(key, 0) + v) % p
        return self.target.from_dict({k: v for k, v in terms.items() if v})

    def ratfunc(self, r):
        den = self.poly(r.den)
        if den.is_zero():
            raise BadEvaluationPoint(f"denominator {r.den} vanishes at the evaluation point")
        return RatFunc(self.poly(r.num), den)


def evaluate_hom(f, assignment, p=DEFAULT_PRIME):
    """Value of the rational function ``f`` in GF(p) at a full integer assignment."""
    names = f.ctx.names()
    missing = [nm for nm in names if nm not in assignment]
    if missing:
        raise ValueError(f"assignment misses variables {missing}")
    img = PolyImage(f.ctx, assignment, p)
    den = img.poly(f.den)
    if den.is_zero():
        raise BadEvaluationPoint(f"denominator {f.den} vanishes mod {p}")
    num = img.poly(f.num)
    n = int(num.leading_coefficient()) if not num.is_zero() else 0
    d = int(den.leading_coefficient())
    return flint.nmod(n, p) / flint.nmod(d, p)
