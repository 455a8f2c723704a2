"""Left ideals in Ore algebras: Groebner bases, normal forms and their modular images.

Normal forms are computed monomial by monomial: reduction is linear over
the coefficient field from the left, so ``NF(sum c_mu d^mu) = sum c_mu NF(d^mu)``
and the normal form of every operator monomial is memoized on the basis.
The homomorphic variant replays exactly the same reduction steps, but only
the cofactor products ``m*g`` are formed in the full algebra; everything
after that happens in the image where some variables are integers mod p.

Thread safety: a :class:`LeftGB` or :class:`HomContext` only grows memo
tables; use one :class:`HomContext` per thread.
"""

import itertools
import logging

from .arith import DEFAULT_PRIME, PolyImage, RatFunc, random_point
from .errors import BadEvaluationPoint, CompletionCapExceeded, NotDFinite
from .ore import OreOperator
from .termorder import DEGREVLEX, TermOrder, divides, mono_add, mono_lcm, mono_sub

log = logging.getLogger(__name__)

__all__ = [
    "HomContext",
    "LeftGB",
    "TermOrder",
    "left_buchberger",
    "normal_form",
    "normal_form_hom",
    "reduce_operator",
    "simulated_reduction",
    "under_stairs",
]


def _gen_times(k, op):
    """Product ``d_k * op`` for a single generator ``k``."""
    alg = op.algebra
    g = alg.generators[k]
    vi = alg.gen_var[k]
    out = {}
    for nu, c in op.terms.items():
        up = list(nu)
        up[k] += 1
        up = tuple(up)
        if g.is_shift:
            out[up] = c.shift(vi, 1)
        else:
            cur = out.get(up)
            out[up] = c if cur is None else cur + c
            dc = c.derivative(vi)
            if not dc.is_zero():
                cur = out.get(nu)
                out[nu] = dc if cur is None else cur + dc
    return OreOperator(alg, out)


def _mono_times(m, op, cache=None):
    """``d^m * op`` built one generator at a step."""
    result = op
    for k, e in enumerate(m):
        for _ in range(e):
            result = _gen_times(k, result)
    return result


class LeftGB:
    """A left Groebner basis with memoized cofactor products and monomial normal forms.

    Elements are stored primitive: polynomial coefficients without common
    content, leading coefficient not made monic.
    """

    def __init__(self, elements, order=DEGREVLEX, normalize=True):
        elements = [e for e in elements if not e.is_zero()]
        if not elements:
            raise ValueError("empty basis")
        self.algebra = elements[0].algebra
        self.order = order
        if normalize:
            elements = [e.primitive_part(order) for e in elements]
        elements.sort(key=lambda e: order.key(e.lm(order)))
        self.elements = tuple(elements)
        self.lms = tuple(e.lm(order) for e in self.elements)
        self.lcs = tuple(e.terms[m] for e, m in zip(self.elements, self.lms))
        self._products = {}
        self._nf = {}
        self._stairs = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __repr__(self):
        return f"LeftGB({[str(e) for e in self.elements]})"

    # reduction machinery ----------------------------------------------------
    def reducer(self, mu):
        """First ``(index, cofactor)`` whose leading monomial divides ``mu``."""
        for idx, lm in enumerate(self.lms):
            if divides(lm, mu):
                return idx, mono_sub(mu, lm)
        return None

    def cofactor_product(self, idx, m):
        """``d^m * g_idx`` in the full algebra (memoized)."""
        key = (idx, m)
        prod = self._products.get(key)
        if prod is not None:
            return prod
        if not any(m):
            prod = self.elements[idx]
        else:
            k = max(i for i, e in enumerate(m) if e)
            prev = list(m)
            prev[k] -= 1
            prod = _gen_times(k, self.cofactor_product(idx, tuple(prev)))
        self._products[key] = prod
        return prod

    def _collect(self, mu, memo):
        needed = []
        seen = set()
        stack = [mu]
        while stack:
            m = stack.pop()
            if m in memo or m in seen:
                continue
            seen.add(m)
            needed.append(m)
            red = self.reducer(m)
            if red is None:
                continue
            prod = self.cofactor_product(*red)
            stack.extend(t for t in prod.terms if t != m)
        needed.sort(key=self.order.key)
        return needed

    def nf_monomial(self, mu):
        """Normal form of ``d^mu`` as a dict stairs-monomial -> RatFunc."""
        mu = tuple(mu)
        memo = self._nf
        hit = memo.get(mu)
        if hit is not None:
            return hit
        one = RatFunc.one(self.algebra.ctx)
        for m in self._collect(mu, memo):
            red = self.reducer(m)
            if red is None:
                memo[m] = {m: one}
                continue
            prod = self.cofactor_product(*red)
            lc = prod.terms[m]
            acc = {}
            for t, c in prod.terms.items():
                if t == m:
                    continue
                factor = -(c / lc)
                for u, cu in memo[t].items():
                    cur = acc.get(u)
                    val = factor * cu
                    acc[u] = val if cur is None else cur + val
            memo[m] = {u: c for u, c in acc.items() if not c.is_zero()}
        return memo[mu]

    def normal_form(self, f):
        acc = {}
        for mu, c in f.terms.items():
            for u, cu in self.nf_monomial(mu).items():
                cur = acc.get(u)
                val = c * cu
                acc[u] = val if cur is None else cur + val
        return OreOperator(self.algebra, acc)

    # stairs -----------------------------------------------------------------
    def is_dfinite(self):
        n = self.algebra.ngens
        if any(not any(lm) for lm in self.lms):
            return True  # unit ideal
        for k in range(n):
            if not any(lm[k] > 0 and sum(lm) == lm[k] for lm in self.lms):
                return False
        return True

    def stairs(self):
        """Monomials under the stairs, ascending in the term order."""
        if self._stairs is None:
            self._stairs = tuple(under_stairs(self))
        return self._stairs


def normal_form(f, G):
    """Normal form of ``f`` modulo the left Groebner basis ``G``."""
    return G.normal_form(f)


def under_stairs(G):
    """All operator monomials not divisible by a leading monomial of ``G``."""
    n = G.algebra.ngens
    if any(not any(lm) for lm in G.lms):
        return []
    bounds = []
    for k in range(n):
        pure = [lm[k] for lm in G.lms if lm[k] > 0 and sum(lm) == lm[k]]
        if not pure:
            raise NotDFinite(f"no pure power of {G.algebra.generators[k].symbol} among leading monomials")
        bounds.append(min(pure))
    out = [
        mu
        for mu in itertools.product(*(range(b) for b in bounds))
        if not any(divides(lm, mu) for lm in G.lms)
    ]
    out.sort(key=G.order.key)
    return out


# ---------------------------------------------------------------------------
# Buchberger


def reduce_operator(f, basis, order=DEGREVLEX, products=None):
    """Full left reduction of ``f`` by the operators in ``basis`` (any generating set)."""
    if products is None:
        products = {}
    lms = [b.lm(order) for b in basis]
    work = dict(f.terms)
    rem = {}
    alg = f.algebra
    while work:
        mu = max(work, key=order.key)
        c = work[mu]
        idx = next((i for i, lm in enumerate(lms) if divides(lm, mu)), None)
        if idx is None:
            rem[mu] = work.pop(mu)
            continue
        m = mono_sub(mu, lms[idx])
        key = (id(basis[idx]), m)
        prod = products.get(key)
        if prod is None:
            prod = _mono_times(m, basis[idx])
            products[key] = (prod, basis[idx])
        else:
            prod = prod[0]
        factor = c / prod.terms[mu]
        for t, ct in prod.terms.items():
            if t == mu:
                continue
            val = work.get(t)
            new = -(factor * ct) if val is None else val - factor * ct
            if new.is_zero():
                work.pop(t, None)
            else:
                work[t] = new
        del work[mu]
    return OreOperator(alg, rem)


def s_operator(f, g, order=DEGREVLEX):
    lf, lg = f.lm(order), g.lm(order)
    lcm = mono_lcm(lf, lg)
    a = _mono_times(mono_sub(lcm, lf), f)
    b = _mono_times(mono_sub(lcm, lg), g)
    return a.scale(a.terms[lcm].inverse()) - b.scale(b.terms[lcm].inverse())


def left_buchberger(gens, order=DEGREVLEX, max_pairs=5000):
    """Reduced left Groebner basis of the left ideal generated by ``gens``."""
    G = [g.primitive_part(order) for g in gens if not g.is_zero()]
    if not G:
        raise ValueError("no nonzero generators")
    pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    processed = 0
    products = {}
    while pairs:
        pairs.sort(key=lambda ij: order.key(mono_lcm(G[ij[0]].lm(order), G[ij[1]].lm(order))))
        i, j = pairs.pop(0)
        processed += 1
        if processed > max_pairs:
            raise CompletionCapExceeded(f"more than {max_pairs} S-pairs processed")
        if _chain_skip(G, i, j, pairs, order):
            continue
        s = s_operator(G[i], G[j], order)
        r = reduce_operator(s, G, order, products)
        if r.is_zero():
            continue
        r = r.primitive_part(order)
        G.append(r)
        n = len(G) - 1
        pairs.extend((k, n) for k in range(n))
        log.debug("buchberger: new element with lm %s", r.lm(order))
    return LeftGB(_interreduce(G, order), order)


def _chain_skip(G, i, j, pending, order):
    """Buchberger's chain criterion on the leading monomials."""
    lcm = mono_lcm(G[i].lm(order), G[j].lm(order))
    open_pairs = set(pending)
    for k in range(len(G)):
        if k in (i, j):
            continue
        if not divides(G[k].lm(order), lcm):
            continue
        if (min(i, k), max(i, k)) in open_pairs or (min(j, k), max(j, k)) in open_pairs:
            continue
        if mono_lcm(G[i].lm(order), G[k].lm(order)) == lcm or mono_lcm(G[j].lm(order), G[k].lm(order)) == lcm:
            continue
        return True
    return False


def _interreduce(G, order):
    G = sorted(G, key=lambda g: order.key(g.lm(order)))
    minimal = []
    for g in G:
        if not any(divides(h.lm(order), g.lm(order)) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        lead = g.lm(order)
        tail = OreOperator(g.algebra, {k: v for k, v in g.terms.items() if k != lead})
        red = reduce_operator(tail, others, order) if others else tail
        red.terms[lead] = g.terms[lead]
        out.append(OreOperator(g.algebra, red.terms).primitive_part(order))
    return out


# ---------------------------------------------------------------------------
# homomorphic images


class HomContext:
    """Evaluation of some coefficient variables at integers, everything mod ``p``.

    The remaining variables stay symbolic; images live in GF(p)(remaining).
    Caches images of cofactor products and monomial normal forms.
    """

    def __init__(self, G, assignment, p=DEFAULT_PRIME):
        self.gb = G
        self.assignment = dict(assignment)
        self.p = p
        self.image = PolyImage(G.algebra.ctx, self.assignment, p)
        self.ctx = self.image.target
        self._products = {}
        self._nf = {}
        for lc in G.lcs:
            if self.image.poly(lc.num).is_zero():
                raise BadEvaluationPoint("a leading coefficient vanishes at the evaluation point")

    @classmethod
    def random(cls, G, names, rng, p=DEFAULT_PRIME, retries=5):
        """Fresh context with uniform 7-digit values for ``names``."""
        last = None
        for _ in range(retries):
            try:
                return cls(G, random_point(names, rng), p)
            except BadEvaluationPoint as exc:
                last = exc
        raise BadEvaluationPoint(f"no good evaluation point after {retries} attempts") from last

    def ratfunc(self, r):
        return self.image.ratfunc(r)

    def image_operator(self, op):
        return {mu: self.image.ratfunc(c) for mu, c in op.terms.items()}

    def product_image(self, idx, m):
        key = (idx, m)
        img = self._products.get(key)
        if img is None:
            img = self.image_operator(self.gb.cofactor_product(idx, m))
            self._products[key] = img
        return img

    def nf_monomial(self, mu):
        mu = tuple(mu)
        memo = self._nf
        hit = memo.get(mu)
        if hit is not None:
            return hit
        G = self.gb
        one = RatFunc.one(self.ctx)
        needed = []
        seen = set()
        stack = [mu]
        while stack:
            m = stack.pop()
            if m in memo or m in seen:
                continue
            seen.add(m)
            needed.append(m)
            red = G.reducer(m)
            if red is not None:
                stack.extend(t for t in G.cofactor_product(*red).terms if t != m)
        needed.sort(key=G.order.key)
        for m in needed:
            red = G.reducer(m)
            if red is None:
                memo[m] = {m: one}
                continue
            prod = self.product_image(*red)
            lc = prod.get(m)
            if lc is None or lc.is_zero():
                raise BadEvaluationPoint(f"leading coefficient of cofactor product {red} vanishes")
            acc = {}
            for t, c in prod.items():
                if t == m or c.is_zero():
                    continue
                factor = -(c / lc)
                for u, cu in memo[t].items():
                    cur = acc.get(u)
                    val = factor * cu
                    acc[u] = val if cur is None else cur + val
            memo[m] = {u: c for u, c in acc.items() if not c.is_zero()}
        return memo[mu]


def normal_form_hom(f, G, ctx):
    """Normal form in the homomorphic image described by ``ctx``.

    ``f`` is either an :class:`OreOperator` over the full coefficient field
    (its coefficients are imaged first; result: stairs-monomial -> image
    RatFunc), or a dict monomial -> {unknown: image RatFunc} representing an
    operator linear in undetermined coefficients (result: stairs-monomial ->
    {unknown: image RatFunc}).
    """
    if ctx.gb is not G:
        raise ValueError("context belongs to a different basis")
    if isinstance(f, OreOperator):
        acc = {}
        for mu, c in ctx.image_operator(f).items():
            for u, cu in ctx.nf_monomial(mu).items():
                cur = acc.get(u)
                val = c * cu
                acc[u] = val if cur is None else cur + val
        return {u: c for u, c in acc.items() if not c.is_zero()}
    acc = {}
    for mu, lin in f.items():
        nf = ctx.nf_monomial(mu)
        for u, cu in nf.items():
            row = acc.setdefault(u, {})
            for unk, c in lin.items():
                cur = row.get(unk)
                val = c * cu
                row[unk] = val if cur is None else cur + val
    return {u: {k: c for k, c in row.items() if not c.is_zero()} for u, row in acc.items()}


# ---------------------------------------------------------------------------
# support-only reduction


def product_support(G, idx, m):
    """Superset of the support of ``d^m * g_idx`` computed without coefficients."""
    alg = G.algebra
    g = G.elements[idx]
    out = set()
    for nu, c in g.terms.items():
        ranges = []
        for k, e in enumerate(m):
            gen = alg.generators[k]
            if gen.is_shift or e == 0:
                ranges.append((e,))
                continue
            vi = alg.gen_var[k]
            dn, dd = c.degree_in(vi)
            if dd > 0:
                ranges.append(tuple(range(e + 1)))
            else:
                ranges.append(tuple(range(max(0, e - dn), e + 1)))
        for mm in itertools.product(*ranges):
            out.add(mono_add(mm, nu))
    return out


def simulated_reduction(support, G):
    """Replay the reduction of an operator with the given support.

    Returns the set of ``(basis index, cofactor monomial)`` pairs that a
    reduction would use; coefficients are never computed.
    """
    order = G.order
    pending = set(map(tuple, support))
    done = set()
    pairs = set()
    while pending:
        mu = max(pending, key=order.key)
        pending.discard(mu)
        done.add(mu)
        red = G.reducer(mu)
        if red is None:
            continue
        pairs.add(red)
        for t in product_support(G, *red):
            if t != mu and t not in done:
                pending.add(t)
    return pairs


def shifted_leading_coefficient(G, idx, m):
    """Leading coefficient of ``d^m * g_idx``: sigma^m applied to lc(g_idx)."""
    alg = G.algebra
    lc = G.lcs[idx]
    for k, e in enumerate(m):
        if e and alg.generators[k].is_shift:
            lc = lc.shift(alg.gen_var[k], e)
    return lc
