"""Monomial orders on operator exponent vectors."""

from dataclasses import dataclass


@dataclass(frozen=True)
class TermOrder:
    """``kind`` is ``"degrevlex"``, ``"lex"`` or ``"weighted"``.

    ``weighted`` compares the weighted degree first and breaks ties with
    degrevlex; ``weights`` must then be positive integers, one per generator.
    """

    kind: str = "degrevlex"
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "weighted"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "weighted" and (not self.weights or min(self.weights) <= 0):
            raise ValueError("weighted order needs positive weights")

    def key(self, exps):
        """Sort key: larger key means larger monomial."""
        if self.kind == "lex":
            return tuple(exps)
        rev = tuple(-e for e in reversed(exps))
        if self.kind == "degrevlex":
            return (sum(exps), rev)
        return (sum(w * e for w, e in zip(self.weights, exps)), sum(exps), rev)

    def __str__(self):
        if self.kind == "weighted":
            return "weighted(" + ",".join(map(str, self.weights)) + ")"
        return self.kind

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        if text.startswith("weighted"):
            inner = text[text.index("(") + 1 : text.rindex(")")]
            return cls("weighted", tuple(int(w) for w in inner.split(",")))
        return cls(text)


DEGREVLEX = TermOrder()


def divides(a, b):
    """Monomial ``a`` divides monomial ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_add(a, b):
    return tuple(x + y for x, y in zip(a, b))
