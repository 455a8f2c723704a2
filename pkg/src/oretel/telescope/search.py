"""Top-level driver: loop over principal supports, then the modular heuristics, then exact solving."""

import logging
import time

from ..arith import RatFunc, degree_in
from ..errors import DegreeCapExceeded, NoSolution, SearchExhausted
from .ansatz import build_polynomial_ansatz, guess_denominator
from .exact import solve_exact
from .modular import (
    ModularSystem,
    degree_search,
    hom_feasible,
    minimize_denominators,
    prune_zero_unknowns,
    refine_degrees,
)
from .problem import SolverOptions
from .verify import verify_symbolic

log = logging.getLogger(__name__)


def candidate_supports(problem, options):
    """Principal supports in search order: full simplices of growing degree."""
    if options.support is not None:
        yield tuple(map(tuple, options.support))
        return
    acc = []
    for k in range(options.max_support_degree + 1):
        acc = acc + problem.support_monomials(k)
        yield tuple(acc)


def _solve_support(problem, B, options, systems, stats):
    sys1, sys2 = systems
    t0 = time.perf_counter()
    if options.denominator is not None:
        d = options.denominator.num if isinstance(options.denominator, RatFunc) else options.denominator
    else:
        d = guess_denominator(problem, B)
    stats["guessed_denominator"] = str(d)
    # refinement is deferred until the denominators are minimized: tight
    # degree bounds would pin one member of a solution family too early
    ansatz, sk = degree_search(problem, B, d, sys1, options.max_degree, refine=False)
    common_only = ansatz
    stats["delta"] = max((max(b.degrees) for b in ansatz.blocks), default=0)
    stats["unknowns_initial"] = len(ansatz)
    if options.minimize_common or options.minimize_individual:
        ansatz = minimize_denominators(ansatz, problem, sys1, options.minimize_common, options.minimize_individual)
    ansatz, sk = refine_degrees(ansatz, problem, sys1, hom_feasible(ansatz, problem, sys1))
    sk1 = hom_feasible(ansatz, problem, sys1)
    sk2 = hom_feasible(ansatz, problem, sys2)
    if not (sk1.feasible and sk2.feasible):
        raise NoSolution("modular contexts disagree on feasibility")
    pruned = prune_zero_unknowns(ansatz, [sk1, sk2]) if options.prune else ansatz
    stats["modular_seconds"] = round(time.perf_counter() - t0, 3)
    ladder = [("pruned", pruned), ("unpruned", ansatz), ("common-denominator", common_only)]
    seen = set()
    for stage, a in ladder:
        sig = (a.blocks, a.excluded)
        if sig in seen:
            continue
        seen.add(sig)
        found = _try_exact(problem, a, options, stats, stage)
        if found is not None:
            return found
    return _polynomial_fallback(problem, B, options, sys1, stats, d)


def _try_exact(problem, ansatz, options, stats, stage):
    t0 = time.perf_counter()
    try:
        sols = solve_exact(ansatz, problem, seed=options.seed, p=options.prime)
    except NoSolution:
        log.info("exact solve failed at stage %s", stage)
        return None
    for t in sols:
        if verify_symbolic(t, problem):
            t.stats.update(stats)
            t.stats.update(
                stage=stage,
                unknowns=len(ansatz),
                solution_dimension=len(sols),
                exact_seconds=round(time.perf_counter() - t0, 3),
            )
            return t
    return None


def _polynomial_fallback(problem, B, options, system, stats, d):
    extra = 0
    if d is not None and not d.is_constant():
        extra = max(degree_in(d, vi) for vi in problem.v_index)
    supports = [problem.stairs] * len(problem.telescope)
    for delta in range(options.max_degree + extra + 1):
        a = build_polynomial_ansatz(problem, B, delta, supports)
        if hom_feasible(a, problem, system).feasible:
            return _try_exact(problem, a, options, stats, "polynomial")
    return None


def find_creative_telescoping(problem, options=None):
    """First verified telescoper over the enumerated principal supports."""
    options = options or SolverOptions()
    systems = (
        ModularSystem(problem, seed=options.seed, p=options.prime),
        ModularSystem(problem, seed=options.seed + 7919, p=options.prime),
    )
    t0 = time.perf_counter()
    tried = []
    for B in candidate_supports(problem, options):
        stats = {"stairs": len(problem.stairs), "support": [problem.algebra.mono_str(b) for b in B]}
        tried.append(B)
        try:
            t = _solve_support(problem, B, options, systems, stats)
        except (DegreeCapExceeded, NoSolution) as exc:
            log.info("support %s: %s", stats["support"], exc)
            if options.support is not None and isinstance(exc, DegreeCapExceeded):
                raise
            continue
        if t is not None:
            t.stats["seconds"] = round(time.perf_counter() - t0, 3)
            return t
    raise SearchExhausted(f"no telescoper for {len(tried)} candidate supports")
