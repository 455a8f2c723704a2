"""Reduced rational functions over Q or GF(p)."""

import flint

_SHIFT_ARGS = {}


def _shift_args(ctx, index, k):
    key = (ctx, index, k)
    args = _SHIFT_ARGS.get(key)
    if args is None:
        gens = list(ctx.gens())
        gens[index] = gens[index] + k
        args = tuple(gens)
        _SHIFT_ARGS[key] = args
    return args


def shift_poly(a, index, k=1):
    """``a`` with variable number ``index`` replaced by itself plus ``k``."""
    if k == 0 or a.is_constant() or a.degrees()[index] == 0:
        return a
    return a.compose(*_shift_args(a.context(), index, k))


class RatFunc:
    """``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic.

    ``num`` and ``den`` are flint polynomials sharing one context, which
    also fixes the coefficient field (``fmpq_mpoly`` or ``nmod_mpoly``).
    Instances are treated as immutable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduced=False):
        ctx = num.context()
        if den is None:
            self.num = num
            self.den = ctx.constant(1)
            return
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = num
            self.den = ctx.constant(1)
            return
        if not reduced and not den.is_constant():
            g = num.gcd(den)
            if not g.is_constant():
                num = num / g
                den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            inv = 1 / lc
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    # construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, ctx, value):
        return cls(ctx.constant(value))

    @classmethod
    def zero(cls, ctx):
        return cls(ctx.from_dict({}))

    @classmethod
    def one(cls, ctx):
        return cls(ctx.constant(1))

    @property
    def ctx(self):
        return self.num.context()

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, flint.fmpq, flint.fmpz, flint.nmod)):
            return RatFunc(self.ctx.constant(other))
        if hasattr(other, "context"):
            return RatFunc(other)
        return NotImplemented

    # predicates -------------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.den.is_one() and self.num.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    # arithmetic -------------------------------------------------------------
    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RatFunc(a + c, b)
        if b.is_one():
            return RatFunc(a * d + c, d, reduced=True)
        if d.is_one():
            return RatFunc(a + c * b, b, reduced=True)
        g = b.gcd(d)
        if g.is_one():
            return RatFunc(a * d + c * b, b * d, reduced=True)
        b1 = b / g
        d1 = d / g
        n = a * d1 + c * b1
        if n.is_zero():
            return RatFunc(n)
        t = n.gcd(g)
        if not t.is_one():
            n = n / t
            g = g / t
        return RatFunc(n, b1 * d1 * g, reduced=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RatFunc.zero(self.ctx)
        if b.is_one() and d.is_one():
            return RatFunc(a * c)
        if not d.is_one():
            g1 = a.gcd(d)
            if not g1.is_one():
                a = a / g1
                d = d / g1
        if not b.is_one():
            g2 = c.gcd(b)
            if not g2.is_one():
                c = c / g2
                b = b / g2
        return RatFunc(a * c, b * d, reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, reduced=True)

    # calculus ---------------------------------------------------------------
    def derivative(self, index):
        """Partial derivative w.r.t. variable number ``index``."""
        name = self.ctx.names()[index]
        if self.den.is_constant() or self.den.degrees()[index] == 0:
            if self.num.is_constant() or self.num.degrees()[index] == 0:
                return RatFunc.zero(self.ctx)
            # d(num) may pick up a factor of den even when den is free of the variable
            return RatFunc(self.num.derivative(name), self.den)
        dn = self.num.derivative(name)
        dd = self.den.derivative(name)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def shift(self, index, k=1):
        """Substitute variable ``index`` -> itself + ``k``."""
        return RatFunc(shift_poly(self.num, index, k), shift_poly(self.den, index, k), reduced=True)

    def degree_in(self, index):
        """(numerator degree, denominator degree) in variable ``index``."""
        dn = -1 if self.num.is_zero() else self.num.degrees()[index]
        return dn, self.den.degrees()[index]

    def depends_on(self, index):
        return any(d > 0 for d in self.degree_in(index))

    def __call__(self, *values):
        """Evaluate at a full point; raises ZeroDivisionError on a pole."""
        n, d = self.num(*values), self.den(*values)
        if isinstance(self.num, flint.nmod_mpoly):
            p = self.ctx.modulus()
            n, d = flint.nmod(n, p), flint.nmod(d, p)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return n / d

    # printing ---------------------------------------------------------------
    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"
