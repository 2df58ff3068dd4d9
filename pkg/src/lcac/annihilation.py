"""The extended annihilation Lie algebra and the module/representation link.

Symbols ``a_(n)`` for generators ``a`` and ``n >= 0`` span the annihilation
algebra; the extended algebra adds ``d`` with ``[d, a_(n)] = -n a_(n-1)``.
Brackets are exact finite sums::

    [a_(m), b_(n)] = sum_i binom(m, i) (a_(i) b)_(m+n-i)

where ``(a_(i) b)`` is a C[d]-combination of generators, flattened to
symbols with ``(d c)_(N) = -N c_(N-1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .core import AlgebraPresentation, Residual, Vec
from .modules import FreeModulePresentation, action
from .polyring import DEL, LAM, ONE, ZERO, D, Poly, render

Key = Tuple[str, int]


class IndexedElement:
    """Finite combination ``sum c * a_(n) + c_d * d`` with polynomial scalars.

    Scalars are rationals or polynomials in parameters only.
    """

    __slots__ = ("terms", "del_coeff")

    def __init__(self, terms: Mapping[Key, object] | None = None, del_coeff=ZERO):
        clean: Dict[Key, Poly] = {}
        for (g, n), c in (terms or {}).items():
            if n < 0:
                raise ValueError("indices must be nonnegative")
            c = Poly.coerce(c)
            if c:
                clean[(g, n)] = c
        self.terms = clean
        self.del_coeff = Poly.coerce(del_coeff)

    @classmethod
    def symbol(cls, g: str, n: int, coeff=ONE) -> "IndexedElement":
        return cls({(g, n): coeff})

    @classmethod
    def derivation(cls, coeff=ONE) -> "IndexedElement":
        return cls({}, coeff)

    def __add__(self, other: "IndexedElement") -> "IndexedElement":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, ZERO) + c
        return IndexedElement(terms, self.del_coeff + other.del_coeff)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "IndexedElement":
        c = Poly.coerce(c)
        return IndexedElement({k: v * c for k, v in self.terms.items()}, self.del_coeff * c)

    __mul__ = scale
    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.terms and not self.del_coeff

    def __eq__(self, other):
        if not isinstance(other, IndexedElement):
            return NotImplemented
        return self.terms == other.terms and self.del_coeff == other.del_coeff

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.del_coeff))

    def render(self) -> str:
        parts = []
        if self.del_coeff:
            parts.append(f"({render(self.del_coeff)}) d")
        for (g, n) in sorted(self.terms, key=lambda k: (k[0], -k[1])):
            parts.append(f"({render(self.terms[(g, n)])}) {g}_({n})")
        return " + ".join(parts) if parts else "0"

    __str__ = render

    def __repr__(self):
        return f"IndexedElement({self.render()!r})"


def flatten(coeff: Poly, g: str, N: int) -> IndexedElement:
    """``(coeff(d) g)_(N)`` as a combination of pure symbols.

    ``(d^r g)_(N) = (-1)^r N (N-1) ... (N-r+1) g_(N-r)``, zero once r > N.
    """
    terms: Dict[Key, Poly] = {}
    for r, c in enumerate(coeff.coefficients_in(DEL)):
        if not c or r > N:
            continue
        falling = factorial(N) // factorial(N - r)
        k = (g, N - r)
        terms[k] = terms.get(k, ZERO) + c * ((-1) ** r * falling)
    return IndexedElement(terms)


def flatten_stepwise(coeff: Poly, g: str, N: int, rng: random.Random | None = None) -> IndexedElement:
    """Same as :func:`flatten` but by single rewriting steps
    ``(d c)_(n) -> -n c_(n-1)`` applied to terms in a (possibly shuffled) order."""
    pending = [(c, r, N, ONE) for r, c in enumerate(coeff.coefficients_in(DEL)) if c]
    out = IndexedElement()
    while pending:
        if rng is not None:
            rng.shuffle(pending)
        c, r, n, scale = pending.pop()
        if r == 0:
            out = out + IndexedElement({(g, n): c * scale})
        elif n > 0:
            pending.append((c, r - 1, n - 1, scale * (-n)))
    return out


class Annihilation:
    """Bracket engine for the extended annihilation algebra of ``P``."""

    def __init__(self, P: AlgebraPresentation):
        self.P = P
        self._products: Dict[Tuple[int, int], list] = {}

    def products(self, i: int, j: int) -> list[Vec]:
        """``[e_i_(k) e_j]`` for k = 0, 1, ... as C[d]-vectors."""
        cached = self._products.get((i, j))
        if cached is None:
            value = self.P.structure[(i, j)]
            per_component = [p.coefficients_in(LAM) for p in value]
            top = max(len(c) for c in per_component)
            cached = []
            for k in range(top):
                cached.append(Vec(c[k] * factorial(k) if k < len(c) else ZERO for c in per_component))
            while cached and cached[-1].is_zero():
                cached.pop()
            self._products[(i, j)] = cached
        return cached

    def symbol_bracket(self, a: str, m: int, b: str, n: int) -> IndexedElement:
        i, j = self.P.index(a), self.P.index(b)
        out = IndexedElement()
        for k, prod in enumerate(self.products(i, j)):
            if k > m:
                break
            binom = comb(m, k)
            for l, c in enumerate(prod):
                if c:
                    out = out + flatten(c, self.P.generators[l], m + n - k).scale(binom)
        return out

    def bracket(self, x: IndexedElement, y: IndexedElement) -> IndexedElement:
        out = IndexedElement()
        for (a, m), cx in x.terms.items():
            for (b, n), cy in y.terms.items():
                out = out + self.symbol_bracket(a, m, b, n).scale(cx * cy)
        if x.del_coeff:
            for (b, n), cy in y.terms.items():
                if n > 0:
                    out = out + IndexedElement({(b, n - 1): cy * x.del_coeff * (-n)})
        if y.del_coeff:
            for (a, m), cx in x.terms.items():
                if m > 0:
                    out = out - IndexedElement({(a, m - 1): cx * y.del_coeff * (-m)})
        return out


def ann_bracket(P: AlgebraPresentation, x: IndexedElement, y: IndexedElement) -> IndexedElement:
    return Annihilation(P).bracket(x, y)


def ann_jacobi(engine: Annihilation, x, y, z) -> IndexedElement:
    br = engine.bracket
    return br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))


# -- representations -------------------------------------------------------


@dataclass(frozen=True)
class RepBound:
    """``bound[(g, v)] = N`` with ``g_(n) v = 0`` for all ``n > N``; -1 if g kills v."""

    bound: Mapping[Tuple[str, str], int] = field(default_factory=dict)


def rep_bound(M: FreeModulePresentation) -> RepBound:
    out = {}
    for i, g in enumerate(M.algebra.generators):
        for j, v in enumerate(M.basis):
            out[(g, v)] = max(p.degree(LAM) for p in M.action[(i, j)])
    return RepBound(out)


def rep_action(M: FreeModulePresentation, g: str | int, n: int, m: Sequence[Poly]) -> tuple[Vec, int]:
    """``g_(n) m`` (n! times the x^n coefficient of ``g x m``) and the bound
    past which ``g_(k) m`` vanishes."""
    P = M.algebra
    value = action(M, P.gen(g), Vec(m), LAM)
    out = []
    bound = -1
    for p in value:
        coeffs = p.coefficients_in(LAM)
        if p:
            bound = max(bound, len(coeffs) - 1)
        out.append(coeffs[n] * factorial(n) if 0 <= n < len(coeffs) else ZERO)
    return Vec(out), bound


def apply_indexed(M: FreeModulePresentation, x: IndexedElement, m: Sequence[Poly]) -> Vec:
    """Action of an element of the extended annihilation algebra on ``m``."""
    out = Vec(m) * x.del_coeff * D if x.del_coeff else Vec.zero(M.rank)
    for (g, n), c in x.terms.items():
        out = out + rep_action(M, g, n, m)[0] * c
    return out


def default_sample(M: FreeModulePresentation, max_index: int) -> list[tuple[str, int, str, int, str]]:
    gens = M.algebra.generators
    return [
        (g1, m, g2, n, v)
        for g1 in gens
        for m in range(max_index + 1)
        for g2 in gens
        for n in range(max_index + 1)
        for v in M.basis
    ]


def check_rep(M: FreeModulePresentation, sample: Iterable[tuple[str, int, str, int, str]]) -> list[Residual]:
    """Check ``[a_(m), b_(n)] v = a_(m)(b_(n) v) - b_(n)(a_(m) v)`` on the
    sample, plus ``[d, a_(n)] v = d(a_(n) v) - a_(n)(d v)`` for every
    ``(a, n, v)`` occurring in it."""
    engine = Annihilation(M.algebra)
    out = []
    seen = set()
    for g1, m, g2, n, v in sample:
        vec = M.vec(v)
        lhs = apply_indexed(M, engine.symbol_bracket(g1, m, g2, n), vec)
        first = rep_action(M, g1, m, rep_action(M, g2, n, vec)[0])[0]
        second = rep_action(M, g2, n, rep_action(M, g1, m, vec)[0])[0]
        out.append(Residual((g1, str(m), g2, str(n), v), lhs - first + second))
        for g, k in ((g1, m), (g2, n)):
            if (g, k, v) in seen:
                continue
            seen.add((g, k, v))
            outer = rep_action(M, g, k, vec)[0] * D
            inner = rep_action(M, g, k, vec * D)[0]
            lower = rep_action(M, g, k - 1, vec)[0] * k if k > 0 else Vec.zero(M.rank)
            out.append(Residual(("d", g, str(k), v), outer - inner + lower))
    return out


def annihilation_table(P: AlgebraPresentation, max_index: int) -> list[tuple[str, int, str, int, IndexedElement]]:
    """Rows ``(a, m, b, n, [a_(m), b_(n)])`` in generator then index order."""
    engine = Annihilation(P)
    rows = []
    for a in P.generators:
        for m in range(max_index + 1):
            for b in P.generators:
                for n in range(max_index + 1):
                    rows.append((a, m, b, n, engine.symbol_bracket(a, m, b, n)))
    return rows
