"""Checks of a telescoping relation: ideal membership and a pointwise numeric test."""

from dataclasses import dataclass, field

import flint

from ..errors import CoefficientPole


def verify_symbolic(t, problem):
    """True iff ``P + sum_i delta_i Q_i`` reduces to zero modulo the basis."""
    if t.principal.is_zero():
        return False
    return problem.gb.normal_form(t.operator(problem)).is_zero()


@dataclass
class NumericReport:
    checked: int = 0
    skipped: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    max_violation: object = 0

    @property
    def ok(self):
        return not self.violations and self.checked > 0

    def summary(self):
        return f"{self.checked} points checked, {len(self.skipped)} skipped at poles, {len(self.violations)} violations"


def verify_numeric_shift(t, problem, oracle, points):
    """Pointwise check of ``(P f)(pt) + sum_i [(Q_i f)(pt + e_i) - (Q_i f)(pt)] = 0``.

    ``oracle`` maps a tuple of integers (one per algebra variable) to an exact
    value; ``points`` is an iterable of such tuples.  Points where some
    coefficient has a pole are skipped and reported.
    """
    alg = problem.algebra
    if any(not g.is_shift for g in alg.generators):
        raise TypeError("numeric check needs a pure shift algebra")
    if t.principal.is_zero():
        raise ValueError("principal part must be nonzero")
    report = NumericReport()
    worst = flint.fmpq(0)
    for pt in points:
        pt = tuple(pt)
        try:
            total = t.principal.act_on_table(oracle, pt)
            for i, q in enumerate(t.certificates):
                up = list(pt)
                up[problem.v_index[i]] += 1
                total += q.act_on_table(oracle, tuple(up)) - q.act_on_table(oracle, pt)
        except CoefficientPole:
            report.skipped.append(pt)
            continue
        report.checked += 1
        if total != 0:
            report.violations.append((pt, total))
            if abs(total) > worst:
                worst = abs(total)
    report.max_violation = worst
    return report
