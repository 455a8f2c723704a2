"""Multivariate polynomials over Q and GF(p).

Polynomials are python-flint ``fmpq_mpoly`` / ``nmod_mpoly`` objects; a
flint context plays the role of the variable registry.  Every context
created here uses the degree reverse lexicographic term order, so "leading
coefficient" always refers to that order.
"""

import math
from functools import lru_cache

import flint

from ..errors import DivisionNotExact

try:
    from flint.utils.flint_exceptions import DomainError
except ImportError:  # older python-flint
    DomainError = getattr(flint, "DomainError", ArithmeticError)

ORDERING = "degrevlex"


@lru_cache(maxsize=None)
def rational_ring(names):
    """Polynomial ring Q[names] (``names`` is a tuple of strings)."""
    return flint.fmpq_mpoly_ctx.get(tuple(names), ORDERING)


@lru_cache(maxsize=None)
def integer_ring(names):
    return flint.fmpz_mpoly_ctx.get(tuple(names), ORDERING)


@lru_cache(maxsize=None)
def modular_ring(names, p):
    return flint.nmod_mpoly_ctx.get(tuple(names), modulus=p, ordering=ORDERING)


def ring_names(ctx):
    return tuple(ctx.names())


def mpoly_arith(a, b, kind):
    """Exact ``add``/``sub``/``mul``/``exact_div`` on polynomials of one ring."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "exact_div":
        return exact_div(a, b)
    raise ValueError(f"unknown polynomial operation {kind!r}")


def exact_div(a, b):
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    try:
        return a / b
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        raise DivisionNotExact(f"{b} does not divide {a}") from exc


def divides(b, a):
    """True iff ``b`` divides ``a`` exactly."""
    if b.is_zero():
        return a.is_zero()
    try:
        a / b
    except (DomainError, ValueError):
        return False
    return True


def normalize(a):
    """Scale ``a`` to leading coefficient 1 (zero stays zero)."""
    if a.is_zero():
        return a
    lc = a.leading_coefficient()
    if lc == 1:
        return a
    return a * (1 / lc)


def mpoly_gcd(a, b):
    """Monic gcd; ``gcd(a, 0) == normalize(a)``."""
    if b.is_zero():
        return normalize(a)
    if a.is_zero():
        return normalize(b)
    return normalize(a.gcd(b))


def mpoly_lcm(a, b):
    if a.is_zero() or b.is_zero():
        return a.context().from_dict({})
    return normalize(exact_div(a * b, a.gcd(b)))


def is_constant(a):
    return a.is_constant()


def poly_key(a):
    """Hashable canonical key (flint polynomials are unhashable)."""
    return str(a)


def degree_in(a, index):
    if a.is_zero():
        return -1
    return a.degrees()[index]


def depends_on(a, indices):
    if a.is_zero():
        return False
    degs = a.degrees()
    return any(degs[k] > 0 for k in indices)


def gcd_free_basis(polys):
    """Pairwise coprime monic polynomials generating every input up to a constant.

    Refinement by repeated gcd splitting; no irreducible factorization.
    """
    basis = []

    def insert(q):
        q = normalize(q)
        if q.is_constant():
            return
        for idx, b in enumerate(basis):
            g = b.gcd(q)
            if g.is_constant():
                continue
            basis.pop(idx)
            for part in (g, b / g, q / g):
                insert(part)
            return
        basis.append(q)

    for p in polys:
        if p.is_zero():
            raise ValueError("gcd_free_basis needs nonzero inputs")
        insert(p)
    basis.sort(key=factor_sort_key)
    return basis


def factor_sort_key(f):
    return (f.total_degree(), len(f), str(f))


def multiplicity(f, a):
    """Largest e with f**e | a (f nonconstant, a nonzero)."""
    e = 0
    while True:
        try:
            a = a / f
        except (DomainError, ValueError):
            return e
        e += 1


def monic_factors(a):
    """Irreducible factors of ``a`` over Q as monic ``(factor, multiplicity)``."""
    if a.is_zero():
        raise ValueError("cannot factor zero")
    _, facs = a.factor()
    out = [(normalize(f), m) for f, m in facs]
    out.sort(key=lambda t: factor_sort_key(t[0]))
    return out


def primitive_integer(a):
    """Scalar multiple of ``a`` with coprime integer coefficients and positive lead."""
    if a.is_zero():
        return a
    den = math.lcm(*(int(c.denom()) for c in a.coeffs()))
    scaled = a * den
    g = math.gcd(*(int(c.numer()) for c in scaled.coeffs()))
    if scaled.leading_coefficient() < 0:
        g = -g
    return scaled * flint.fmpq(1, g)


def change_ring(a, ctx):
    """Re-embed ``a`` into ``ctx`` by variable name (missing names must not occur)."""
    src = a.context().names()
    dst = ctx.names()
    pos = [dst.index(nm) for nm in src]
    n = len(dst)
    terms = {}
    for exp, c in a.to_dict().items():
        new = [0] * n
        for k, e in enumerate(exp):
            if e:
                new[pos[k]] = e
        terms[tuple(new)] = c
    return ctx.from_dict(terms)
