"""JSON problem, result, basis and certificate files.

Operators travel as strings in the operator grammar.  Writers use a fixed
key order and indentation so files are byte-stable.
"""

import json
from importlib import resources
from pathlib import Path

from .closure import TermCertificates
from .errors import ParseError
from .groebner import left_buchberger
from .ore import AlgebraSpec, GeneratorSpec, OreOperator
from .parsing import parse_ratfunc
from .telescope import SolverOptions, Telescoper, TelescopingProblem
from .termorder import DEGREVLEX, TermOrder

DATA = "oretel.data"


def resolve(path):
    """A filesystem path, or the name of a bundled file (with or without .json)."""
    p = Path(path)
    if p.exists():
        return p
    root = resources.files(DATA)
    for cand in (p.name, p.name + ".json"):
        f = root / cand
        if f.is_file():
            return Path(str(f))
    raise FileNotFoundError(f"no such file or bundled example: {path}")


def load_json(path):
    p = resolve(path)
    text = p.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {p}: {exc.msg}", text, exc.pos) from None


def dump_json(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# algebra ------------------------------------------------------------------


def algebra_from_json(data):
    try:
        gens = [GeneratorSpec(g["symbol"], g["variable"], g["kind"]) for g in data["generators"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed algebra: generators need symbol, variable and kind ({exc!r})") from None
    return AlgebraSpec(gens, data.get("parameters", ()))


def algebra_to_json(alg):
    bound = {g.variable for g in alg.generators}
    return {
        "generators": [{"symbol": g.symbol, "variable": g.variable, "kind": g.kind} for g in alg.generators],
        "parameters": [v for v in alg.variables if v not in bound],
    }


def parse_monomial(text, alg):
    op = alg.parse(text)
    if len(op.terms) != 1:
        raise ParseError(f"{text!r} is not a single monomial", text, 0)
    (mu, c), = op.terms.items()
    if not c.is_one():
        raise ParseError(f"{text!r} is not a monic monomial", text, 0)
    return mu


def parse_support(text, alg):
    if isinstance(text, str):
        parts = [s for s in (x.strip() for x in text.split(",")) if s]
    else:
        parts = list(text)
    return tuple(parse_monomial(s, alg) for s in parts)


# problems -----------------------------------------------------------------


class ProblemFile:
    def __init__(self, algebra, annihilator, telescope, parameters, options=None, numeric=None, order=DEGREVLEX):
        self.algebra = algebra
        self.annihilator = list(annihilator)
        self.telescope = list(telescope)
        self.parameters = list(parameters)
        self.options = dict(options or {})
        self.numeric = numeric
        self.order = order
        got = set(self.telescope) | set(self.parameters)
        if got != set(algebra.variables) or set(self.telescope) & set(self.parameters):
            raise ValueError("telescope and parameters must partition the algebra variables")

    @classmethod
    def from_json(cls, data):
        alg = algebra_from_json(data["algebra"])
        ann = [alg.parse(t) for t in data["annihilator"]]
        order = TermOrder.parse(data.get("order", "degrevlex"))
        return cls(alg, ann, data["telescope"], data.get("parameters", ()), data.get("options"), data.get("numeric"), order)

    @classmethod
    def load(cls, path):
        return cls.from_json(load_json(path))

    def to_json(self):
        out = {
            "algebra": algebra_to_json(self.algebra),
            "annihilator": [str(op) for op in self.annihilator],
            "telescope": self.telescope,
            "parameters": self.parameters,
        }
        if str(self.order) != "degrevlex":
            out["order"] = str(self.order)
        if self.options:
            out["options"] = self.options
        if self.numeric:
            out["numeric"] = self.numeric
        return out

    def problem(self):
        gb = left_buchberger(self.annihilator, self.order)
        return TelescopingProblem(gb, self.telescope)

    def solver_options(self, **overrides):
        opts = dict(self.options)
        opts.update({k: v for k, v in overrides.items() if v is not None})
        if "support" in opts and opts["support"] is not None:
            opts["support"] = parse_support(opts["support"], self.algebra)
        if opts.get("denominator") is not None and isinstance(opts["denominator"], str):
            opts["denominator"] = parse_ratfunc(opts["denominator"], self.algebra.ctx)
        return SolverOptions(**opts)


# results ------------------------------------------------------------------


def result_to_json(t, problem, symbolic=None, numeric=None):
    alg = problem.algebra
    dens = []
    for q in t.certificates:
        dens.append([{"monomial": alg.mono_str(mu), "denominator": str(c.den)} for mu, c in q.sorted_terms()])
    out = {
        "algebra": algebra_to_json(alg),
        "telescope": list(problem.telescope),
        "principal": str(t.principal),
        "certificates": [str(q) for q in t.certificates],
        "denominators": dens,
        "verification": {"symbolic": symbolic},
        "statistics": dict(t.stats),
    }
    if numeric is not None:
        out["verification"]["numeric"] = numeric
    return out


def result_from_json(data, algebra=None):
    alg = algebra or algebra_from_json(data["algebra"])
    P = alg.parse(data["principal"])
    Q = [alg.parse(s) for s in data["certificates"]]
    return Telescoper(P, Q, tuple(data.get("telescope", ())), dict(data.get("statistics", {})))


# bases and certificates ------------------------------------------------------


def basis_to_json(G):
    alg = G.algebra
    return {
        "algebra": algebra_to_json(alg),
        "order": str(G.order),
        "basis": [str(g) for g in G],
        "stairs": [alg.mono_str(u) for u in G.stairs()] if G.is_dfinite() else None,
        "dimension": len(G.stairs()) if G.is_dfinite() else None,
    }


def generators_from_json(data):
    """Algebra and operator list from a basis, generator or problem file."""
    alg = algebra_from_json(data["algebra"])
    for key in ("basis", "generators", "annihilator"):
        if key in data:
            return alg, [alg.parse(t) for t in data[key]]
    raise KeyError("file lists no operators (expected 'basis', 'generators' or 'annihilator')")


def certificates_from_json(data):
    alg = algebra_from_json(data["algebra"])
    return TermCertificates(alg, dict(data["ratios"]))


def operators_equal_up_to_scalar(a, b):
    """``a = c*b`` for some nonzero coefficient ``c`` (a rational function)."""
    if set(a.terms) != set(b.terms):
        return False
    if a.is_zero():
        return True
    mu = next(iter(a.terms))
    c = a.terms[mu] / b.terms[mu]
    return OreOperator(a.algebra, {k: c * v for k, v in b.terms.items()}) == a
