"""Ore algebras of shift and derivation operators over Q(variables).

An operator is stored in standard form: every coefficient to the left of
the operator monomial, i.e. ``sum_mu c_mu * d^mu``.  Exponent vectors are
indexed by the algebra's generator list.
"""

import math
from dataclasses import dataclass
from math import comb

import flint

from .arith import RatFunc, rational_ring
from .errors import CoefficientPole, TableOutOfRange
from .termorder import DEGREVLEX, mono_add

SHIFT = "shift"
DERIVATION = "derivation"


@dataclass(frozen=True)
class GeneratorSpec:
    symbol: str
    variable: str
    kind: str

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in (SHIFT, DERIVATION):
            raise ValueError(f"generator kind must be shift or derivation, not {self.kind!r}")
        object.__setattr__(self, "kind", kind)

    @property
    def is_shift(self):
        return self.kind == SHIFT


class AlgebraSpec:
    """Generator list plus the ordered coefficient variables.

    Coefficient variables are the generator-bound variables (in generator
    order) followed by any extra parameters that carry no operator.
    """

    def __init__(self, generators, parameters=()):
        self.generators = tuple(generators)
        symbols = [g.symbol for g in self.generators]
        if len(set(symbols)) != len(symbols):
            raise ValueError("duplicate generator symbols")
        bound = [g.variable for g in self.generators]
        if len(set(bound)) != len(bound):
            raise ValueError("a variable is bound to more than one generator")
        extra = [p for p in parameters if p not in bound]
        self.variables = tuple(bound) + tuple(extra)
        if set(symbols) & set(self.variables):
            raise ValueError("generator symbols and variable names overlap")
        self.ctx = rational_ring(self.variables)
        self.var_index = {nm: k for k, nm in enumerate(self.variables)}
        self.symbol_index = {s: k for k, s in enumerate(symbols)}
        self.gen_var = tuple(self.var_index[v] for v in bound)
        self.ngens = len(self.generators)
        self._key = (self.generators, self.variables)

    def __eq__(self, other):
        return isinstance(other, AlgebraSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        gens = ", ".join(f"{g.symbol}:{g.kind}({g.variable})" for g in self.generators)
        return f"AlgebraSpec([{gens}], variables={list(self.variables)})"

    # elements -----------------------------------------------------------
    def coeff(self, value):
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, str):
            return RatFunc(self.ctx.gens()[self.var_index[value]])
        if hasattr(value, "context"):
            return RatFunc(value)
        return RatFunc(self.ctx.constant(value))

    def var(self, name):
        return self.coeff(name)

    @property
    def zero_exp(self):
        return (0,) * self.ngens

    def unit_exp(self, k):
        e = [0] * self.ngens
        e[k] = 1
        return tuple(e)

    def zero(self):
        return OreOperator(self, {})

    def one(self):
        return OreOperator(self, {self.zero_exp: RatFunc.one(self.ctx)})

    def monomial(self, exps, coeff=None):
        c = RatFunc.one(self.ctx) if coeff is None else self.coeff(coeff)
        return OreOperator(self, {tuple(exps): c})

    def gen(self, symbol):
        return self.monomial(self.unit_exp(self.symbol_index[symbol]))

    def parse(self, text):
        from .parsing import parse_operator

        return parse_operator(text, self)

    def mono_str(self, exps):
        parts = []
        for g, e in zip(self.generators, exps):
            if e == 1:
                parts.append(g.symbol)
            elif e > 1:
                parts.append(f"{g.symbol}^{e}")
        return "*".join(parts) if parts else "1"


def sigma_delta_action(algebra, k, r):
    """``(sigma(r), delta(r))`` for generator ``k`` so that g*r = sigma(r)*g + delta(r)."""
    g = algebra.generators[k]
    vi = algebra.gen_var[k]
    if g.is_shift:
        return r.shift(vi, 1), RatFunc.zero(r.ctx)
    return r, r.derivative(vi)


def mono_times_coeff(algebra, mu, c):
    """Standard form of ``d^mu * c`` as a dict exponent -> RatFunc."""
    items = {algebra.zero_exp: c}
    for k, e in enumerate(mu):
        if e == 0:
            continue
        g = algebra.generators[k]
        vi = algebra.gen_var[k]
        new = {}
        for exps, cc in items.items():
            if g.is_shift:
                ex = list(exps)
                ex[k] += e
                _acc(new, tuple(ex), cc.shift(vi, e))
                continue
            der = cc
            for j in range(e + 1):
                if der.is_zero():
                    break
                ex = list(exps)
                ex[k] += e - j
                _acc(new, tuple(ex), der * comb(e, j) if j else der)
                if j < e:
                    der = der.derivative(vi)
        items = new
    return items


def _acc(d, key, val):
    cur = d.get(key)
    d[key] = val if cur is None else cur + val


class OreOperator:
    """Element of an Ore algebra; a finite map exponent vector -> RatFunc."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {tuple(k): v for k, v in terms.items() if not v.is_zero()}

    # structure ------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self):
        return set(self.terms)

    def sorted_terms(self, order=DEGREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def lm(self, order=DEGREVLEX):
        if not self.terms:
            raise ValueError("zero operator has no leading monomial")
        return max(self.terms, key=order.key)

    def lc(self, order=DEGREVLEX):
        return self.terms[self.lm(order)]

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), RatFunc.zero(self.algebra.ctx))

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, OreOperator):
            if other.algebra != self.algebra:
                raise ValueError("operators from different algebras")
            return other
        return OreOperator(self.algebra, {self.algebra.zero_exp: self.algebra.coeff(other)})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return OreOperator(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return OreOperator(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        """Left multiplication by a coefficient (no commutation needed)."""
        c = self.algebra.coeff(c)
        if c.is_zero():
            return OreOperator(self.algebra, {})
        return OreOperator(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, OreOperator):
            return self * self._coerce(other)
        if other.algebra != self.algebra:
            raise ValueError("operators from different algebras")
        out = {}
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                for kappa, c in mono_times_coeff(self.algebra, mu, b).items():
                    _acc(out, mono_add(kappa, nu), a * c)
        return OreOperator(self.algebra, out)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, e):
        out = self.algebra.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, OreOperator):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(str(self))

    def map_coeffs(self, f):
        return OreOperator(self.algebra, {k: f(v) for k, v in self.terms.items()})

    # normalization --------------------------------------------------------
    def primitive_part(self, order=DEGREVLEX):
        """Scalar multiple with coprime polynomial coefficients (integer content 1).

        The leading coefficient's leading numeric coefficient is made positive.
        """
        if not self.terms:
            return self
        den = None
        for c in self.terms.values():
            if c.den.is_one():
                continue
            den = c.den if den is None else den * (c.den / den.gcd(c.den))
        polys = {}
        for k, c in self.terms.items():
            polys[k] = c.num if den is None else c.num * (den / c.den)
        g = None
        for p in polys.values():
            g = p if g is None else g.gcd(p)
            if g.is_one():
                break
        if not g.is_one():
            polys = {k: p / g for k, p in polys.items()}
        allc = [c for p in polys.values() for c in p.coeffs()]
        den_l = math.lcm(*(int(c.denom()) for c in allc))
        num_g = math.gcd(*(int(c.numer()) * (den_l // int(c.denom())) for c in allc))
        factor = flint.fmpq(den_l, num_g)
        if polys[self.lm(order)].leading_coefficient() < 0:
            factor = -factor
        return OreOperator(self.algebra, {k: RatFunc(p * factor) for k, p in polys.items()})

    # evaluation on tables ---------------------------------------------------
    def act_on_table(self, tbl, point):
        """``sum_mu c_mu(point) * tbl[point + mu]`` for pure-shift algebras.

        ``point`` lists integer values for every algebra variable; ``tbl`` is
        a mapping or a callable keyed by such tuples.
        """
        alg = self.algebra
        if any(not g.is_shift for g in alg.generators):
            raise TypeError("act_on_table needs an algebra of shift operators only")
        point = tuple(point)
        total = flint.fmpq(0)
        for mu, c in self.terms.items():
            try:
                cval = c(*point)
            except ZeroDivisionError as exc:
                raise CoefficientPole(f"coefficient {c} has a pole at {point}") from exc
            if cval == 0:
                continue
            shifted = list(point)
            for k, e in enumerate(mu):
                shifted[alg.gen_var[k]] += e
            shifted = tuple(shifted)
            try:
                val = tbl(shifted) if callable(tbl) else tbl[shifted]
            except (KeyError, IndexError) as exc:
                raise TableOutOfRange(f"table has no value at {shifted}") from exc
            total += cval * val
        return total

    # printing -------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mu, c in self.sorted_terms():
            mono = self.algebra.mono_str(mu)
            parts.append(f"({c})" if mono == "1" else f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"OreOperator({self})"
