"""Exact evaluation of closed-form terms such as ``binomial(i+j,i)^2 * 2^n``.

Used as the oracle for pointwise checks of summation identities.  Binomials
follow the convention ``binomial(a, b) = 0`` unless ``0 <= b <= a``.
"""

import ast
import math
import operator

import flint

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def binomial(a, b):
    a, b = int(a), int(b)
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def factorial(a):
    a = int(a)
    if a < 0:
        raise ZeroDivisionError("factorial of a negative integer")
    return math.factorial(a)


_FUNCS = {"binomial": binomial, "factorial": factorial}


class Term:
    """A parsed term; call with a mapping of variable values."""

    def __init__(self, text):
        self.text = text
        src = text.replace("^", "**")
        try:
            self.tree = ast.parse(src, mode="eval").body
        except SyntaxError as exc:
            raise ValueError(f"cannot parse term {text!r}: {exc.msg}") from None
        self._check(self.tree)

    def _check(self, node):
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            self._check(node.left)
            self._check(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            self._check(node.operand)
        elif isinstance(node, ast.Constant) and isinstance(node.value, int):
            pass
        elif isinstance(node, ast.Name):
            pass
        elif isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            for a in node.args:
                self._check(a)
        else:
            raise ValueError(f"unsupported construct in term {self.text!r}")

    def __call__(self, env):
        return self._eval(self.tree, env)

    def _eval(self, node, env):
        if isinstance(node, ast.Constant):
            return flint.fmpq(node.value)
        if isinstance(node, ast.Name):
            return flint.fmpq(env[node.id])
        if isinstance(node, ast.UnaryOp):
            v = self._eval(node.operand, env)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call):
            args = [self._eval(a, env) for a in node.args]
            for a in args:
                if a.denom() != 1:
                    raise ValueError("non-integer argument")
            return flint.fmpq(_FUNCS[node.func.id](*(int(a.numer()) for a in args)))
        left = self._eval(node.left, env)
        right = self._eval(node.right, env)
        if isinstance(node.op, ast.Pow):
            if right.denom() != 1:
                raise ValueError("non-integer exponent")
            return left ** int(right.numer())
        return _BINOPS[type(node.op)](left, right)

    def oracle(self, names):
        """Callable on value tuples ordered like ``names``."""
        names = tuple(names)

        def f(point):
            return self(dict(zip(names, point)))

        return f


def parse_grid(spec, base=None):
    """``"n=0..4,i=0..2*n"`` -> ordered list of (name, lo_expr, hi_expr).

    Entries of ``spec`` override those of ``base`` with the same name.
    """
    def split(text):
        out = []
        for part in filter(None, (s.strip() for s in (text or "").split(","))):
            name, _, rng = part.partition("=")
            lo, sep, hi = rng.partition("..")
            if not sep:
                lo = hi = rng
            out.append((name.strip(), lo.strip(), hi.strip()))
        return out

    merged = {}
    for name, lo, hi in split(base):
        merged[name] = (lo, hi)
    order = [n for n, _, _ in split(base)]
    fresh = []
    for name, lo, hi in split(spec):
        if name not in merged and name not in fresh:
            fresh.append(name)
        merged[name] = (lo, hi)
    # names only in ``spec`` come first, in their given order
    return [(n, *merged[n]) for n in fresh + order]


def grid_points(grid, names):
    """All integer points of a triangular grid, as tuples ordered like ``names``."""
    missing = [n for n in names if n not in {g[0] for g in grid}]
    if missing:
        raise ValueError(f"grid gives no range for {missing}")

    def rec(k, env):
        if k == len(grid):
            yield tuple(env[n] for n in names)
            return
        name, lo, hi = grid[k]
        a = Term(lo)(env)
        b = Term(hi)(env)
        for v in range(int(a), int(b) + 1):
            env[name] = v
            yield from rec(k + 1, env)
        env.pop(name, None)

    return list(rec(0, {}))
