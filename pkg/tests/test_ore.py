import math
import random

import flint
import pytest
from hypothesis import given, strategies as st

from conftest import random_operator, random_ratfunc, shift_alg
from oretel.arith import RatFunc
from oretel.errors import CoefficientPole, ParseError, TableOutOfRange
from oretel.ore import AlgebraSpec, GeneratorSpec, OreOperator, sigma_delta_action

DX = AlgebraSpec([GeneratorSpec("Dx", "x", "derivation")])
MIXED = AlgebraSpec([GeneratorSpec("Dx", "x", "derivation"), GeneratorSpec("Sn", "n", "shift")], ["a"])
SN = shift_alg("n")
SNK = shift_alg("n", "k")

seeds = st.integers(0, 2 ** 32)


def test_sigma_delta_examples():
    xv = DX.var("x")
    assert sigma_delta_action(DX, 0, xv) == (xv, RatFunc.one(DX.ctx))
    nv = SN.var("n")
    s, d = sigma_delta_action(SN, 0, nv)
    assert s == nv + 1 and d.is_zero()
    inv = RatFunc.one(DX.ctx) / xv
    s, d = sigma_delta_action(DX, 0, inv)
    assert s == inv and d == -inv * inv


def test_commutation_rules():
    Dx, x = DX.gen("Dx"), DX.var("x")
    assert Dx * x == x * Dx + 1
    assert Dx * (x * x) == (x * x) * Dx + 2 * x
    Sn, n = SN.gen("Sn"), SN.var("n")
    assert Sn * n == n * Sn + Sn


def test_add_sub():
    Dx = DX.gen("Dx")
    P = DX.parse("(x^2+1)*Dx^2 + (3)*Dx + (1/x)")
    assert P + DX.zero() == P
    assert (P - P).is_zero()
    assert (Dx + 1) + (Dx - 1) == 2 * Dx
    assert DX.one() * P == P and P * DX.one() == P


@given(seeds)
def test_associativity_and_distributivity(seed):
    rng = random.Random(seed)
    a, b, c = (random_operator(MIXED, rng, nterms=2, maxdeg=2) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


def test_distinct_generators_commute():
    Dx, Sn = MIXED.gen("Dx"), MIXED.gen("Sn")
    assert Dx * Sn == Sn * Dx


@given(seeds)
def test_derivation_commutator_is_derivative(seed):
    rng = random.Random(seed)
    r = random_ratfunc(DX.ctx, rng)
    Dx = DX.gen("Dx")
    rop = DX.monomial(DX.zero_exp, r)
    lhs = Dx * rop - rop * Dx
    assert lhs == DX.monomial(DX.zero_exp, r.derivative(0))


@given(seeds)
def test_parse_print_round_trip(seed):
    rng = random.Random(seed)
    for alg in (MIXED, SNK, DX):
        op = random_operator(alg, rng)
        assert alg.parse(str(op)) == op


def test_grammar_example():
    A = AlgebraSpec([GeneratorSpec("Dx", "x", "derivation"), GeneratorSpec("Da", "a", "derivation")])
    op = A.parse("(a^3)*Da^4 + (4*a^2)*Da^3 + (-3*a)*Da^2 + (3)*Da + (4*a^3*x^4)")
    assert op.coefficient((0, 4)) == A.parse("a^3").coefficient((0, 0))
    assert op.coefficient((0, 0)) == A.coeff(4) * A.var("a") ** 3 * A.var("x") ** 4
    assert A.parse("  Dx*Da  ") == A.parse("Da * Dx")


@pytest.mark.parametrize("text", ["(x+)*Dx", "Dy", "x**", "(x", "Dx^-1", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError) as info:
        DX.parse(text)
    assert info.value.line == 1 and info.value.column >= 1


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        DX.parse("(x)*Dx +\n (1)*Dq")
    assert info.value.line == 2


def test_act_on_table_examples():
    Sn = SN.gen("Sn")
    assert (Sn - 1).act_on_table(lambda p: flint.fmpq(p[0]), (4,)) == 1
    two = lambda p: flint.fmpq(2) ** p[0]  # noqa: E731
    for v in range(6):
        assert (Sn - 2).act_on_table(two, (v,)) == 0
    binom = {(a, b): flint.fmpq(math.comb(a, b)) for a in range(8) for b in range(8)}
    op = SNK.parse("(n+1-k)*Sn - (n+1)")
    assert op.act_on_table(binom, (4, 2)) == 0


def test_act_on_table_errors():
    with pytest.raises(TableOutOfRange):
        SN.gen("Sn").act_on_table({(0,): 1}, (0,))
    op = SN.parse("(1/(n-2))*Sn")
    with pytest.raises(CoefficientPole):
        op.act_on_table(lambda p: 1, (2,))
    with pytest.raises(TypeError):
        DX.gen("Dx").act_on_table(lambda p: 1, (0,))


@given(seeds)
def test_act_on_table_linear(seed):
    rng = random.Random(seed)
    a = random_operator(SNK, rng, nterms=3, maxdeg=2, polynomial=True)
    b = random_operator(SNK, rng, nterms=3, maxdeg=2, polynomial=True)
    tbl = lambda p: flint.fmpq(3 * p[0] - p[1] ** 2 + 1)  # noqa: E731
    pt = (rng.randint(-5, 5), rng.randint(-5, 5))
    assert (a + b).act_on_table(tbl, pt) == a.act_on_table(tbl, pt) + b.act_on_table(tbl, pt)
    assert (3 * a).act_on_table(tbl, pt) == 3 * a.act_on_table(tbl, pt)


def test_algebra_validation():
    with pytest.raises(ValueError):
        AlgebraSpec([GeneratorSpec("Sn", "n", "shift"), GeneratorSpec("Sn", "m", "shift")])
    with pytest.raises(ValueError):
        AlgebraSpec([GeneratorSpec("Sn", "n", "shift"), GeneratorSpec("Dn", "n", "derivation")])
