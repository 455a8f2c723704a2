import random

import pytest
from hypothesis import HealthCheck, settings

from oretel.arith import RatFunc
from oretel.fileio import ProblemFile
from oretel.ore import AlgebraSpec, GeneratorSpec, OreOperator

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def shift_alg(*vars_, params=()):
    return AlgebraSpec([GeneratorSpec("S" + v, v, "shift") for v in vars_], params)


@pytest.fixture(scope="session")
def bessel_file():
    return ProblemFile.load("bessel")


@pytest.fixture(scope="session")
def bessel(bessel_file):
    return bessel_file.problem()


@pytest.fixture(scope="session")
def ap_file():
    return ProblemFile.load("andrews_paule")


@pytest.fixture(scope="session")
def ap(ap_file):
    return ap_file.problem()


@pytest.fixture(scope="session")
def gegenbauer_file():
    return ProblemFile.load("gegenbauer")


@pytest.fixture(scope="session")
def gegenbauer(gegenbauer_file):
    return gegenbauer_file.problem()


def random_poly(ctx, rng, terms=3, deg=2, coeff=5):
    n = ctx.nvars()
    d = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, deg) for _ in range(n))
        d[e] = d.get(e, 0) + rng.randint(-coeff, coeff)
    return ctx.from_dict({k: v for k, v in d.items() if v})


def random_ratfunc(ctx, rng, polynomial=False):
    num = random_poly(ctx, rng)
    if polynomial or rng.random() < 0.5:
        return RatFunc(num)
    den = random_poly(ctx, rng, terms=2, deg=1)
    if den.is_zero():
        den = ctx.constant(1)
    return RatFunc(num, den)


def random_operator(alg, rng, nterms=4, maxdeg=4, polynomial=False):
    terms = {}
    for _ in range(nterms):
        mu = tuple(rng.randint(0, maxdeg) for _ in range(alg.ngens))
        terms[mu] = random_ratfunc(alg.ctx, rng, polynomial)
    return OreOperator(alg, terms)


@pytest.fixture
def rng():
    return random.Random(1234)


def hom_agreement(problem, rng, count, contexts=3, maxdeg=None):
    """(checked, mismatches) of hom normal forms against imaged exact ones."""
    from oretel.groebner import HomContext, normal_form, normal_form_hom

    G = problem.gb
    alg = problem.algebra
    if maxdeg is None:
        maxdeg = max(max(lm) for lm in G.lms) + 1
    ctxs = [HomContext.random(G, problem.w_names, rng) for _ in range(contexts)]
    checked = mismatches = 0
    for _ in range(count):
        f = random_operator(alg, rng, nterms=3, maxdeg=maxdeg)
        nf = normal_form(f, G)
        for hc in ctxs:
            want = {u: c for u, c in hc.image_operator(nf).items() if not c.is_zero()}
            got = normal_form_hom(f, G, hc)
            checked += 1
            mismatches += want != got
    return checked, mismatches
