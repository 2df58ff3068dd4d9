"""Exact sparse multivariate polynomials over the rationals.

Variables are plain identifiers.  Four names are reserved for the
derivation and the spectral variables::

    d  (the derivation, printed as ∂ in prose)
    x  (lambda)
    y  (mu)
    z  (nu)

Every other identifier is a parameter.  The monomial order is
lexicographic with ``parameters < d < x < y < z``; among parameters the
alphabetically earlier name is the larger one.  This order drives both
canonical printing and exact division.

Polynomials are immutable and hashable.  A monomial is stored as a tuple
of ``(name, exponent)`` pairs sorted by name, so two construction orders of
the same polynomial give identical term maps.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple, Union

DEL, LAM, MU, NU = "d", "x", "y", "z"
RESERVED = (DEL, LAM, MU, NU)
UNICODE_ALIASES = {"∂": DEL, "λ": LAM, "μ": MU, "ν": NU}

Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[int, Fraction]

ONE_MONOMIAL: Monomial = ()


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_divide` when the quotient is not a polynomial."""


class ReservedVariableError(ValueError):
    pass


def is_reserved(name: str) -> bool:
    return name in RESERVED


def variable_order(names: Iterable[str]) -> list[str]:
    """Return ``names`` sorted from the largest to the smallest variable."""
    names = set(names)
    reserved = [v for v in (NU, MU, LAM, DEL) if v in names]
    return reserved + sorted(n for n in names if n not in RESERVED)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_div(m1: Monomial, m2: Monomial) -> Monomial | None:
    exps = dict(m1)
    for v, e in m2:
        left = exps.get(v, 0) - e
        if left < 0:
            return None
        if left:
            exps[v] = left
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class Poly:
    """Immutable polynomial with rational coefficients.

    >>> p = Poly.var("d") + 2 * Poly.var("x")
    >>> str(p)
    '2*x + d'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Poly":
        # terms must already be canonical: sorted monomials, no zero values
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        c = _as_fraction(c)
        return cls._raw({ONE_MONOMIAL: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        name = UNICODE_ALIASES.get(name, name)
        if not name.isidentifier():
            raise ValueError(f"invalid variable name {name!r}")
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        return cls.const(value)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONOMIAL in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def variables(self) -> frozenset:
        return frozenset(v for mono in self._terms for v, _ in mono)

    def parameters(self) -> frozenset:
        return frozenset(v for v in self.variables() if v not in RESERVED)

    def degree(self, v: str | None = None) -> int:
        """Total degree, or degree in ``v``.  The zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if v is None:
            return max(sum(e for _, e in mono) for mono in self._terms)
        v = UNICODE_ALIASES.get(v, v)
        return max(dict(mono).get(v, 0) for mono in self._terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = _as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return ZERO
            return Poly._raw({m: v * c for m, v in self._terms.items()})
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _as_fraction(other.constant_value() if isinstance(other, Poly) else other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        try:
            return self._terms == Poly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution ------------------------------------------------------

    def substitute(self, mapping: Mapping[str, "Poly | Scalar"]) -> "Poly":
        """Simultaneously replace variables by polynomials."""
        if not mapping or not self._terms:
            return self
        repl = {UNICODE_ALIASES.get(k, k): Poly.coerce(v) for k, v in mapping.items()}
        powers: Dict[Tuple[str, int], Poly] = {}
        acc: Dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            kept = []
            factor = None
            for v, e in mono:
                r = repl.get(v)
                if r is None:
                    kept.append((v, e))
                    continue
                pw = powers.get((v, e))
                if pw is None:
                    pw = powers[(v, e)] = r ** e
                factor = pw if factor is None else factor * pw
            kept = tuple(kept)
            if factor is None:
                acc[kept] = acc.get(kept, 0) + c
                continue
            for m2, c2 in factor._terms.items():
                m = _mono_mul(kept, m2)
                acc[m] = acc.get(m, 0) + c * c2
        return Poly._raw({m: c for m, c in acc.items() if c})

    def specialize(self, bindings: Mapping[str, Scalar]) -> "Poly":
        for name in bindings:
            if UNICODE_ALIASES.get(name, name) in RESERVED:
                raise ReservedVariableError(f"cannot specialize reserved variable {name!r}")
        return self.substitute({k: Poly.const(v) for k, v in bindings.items()})

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        result = self.substitute({k: Poly.const(v) for k, v in values.items()})
        if not result.is_constant():
            missing = sorted(result.variables())
            raise ValueError(f"unbound variables in evaluation: {missing}")
        return result.constant_value()

    # -- structure ---------------------------------------------------------

    def coefficients_in(self, v: str) -> list["Poly"]:
        v = UNICODE_ALIASES.get(v, v)
        buckets: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, c in self._terms.items():
            e = 0
            rest = []
            for name, k in mono:
                if name == v:
                    e = k
                else:
                    rest.append((name, k))
            buckets.setdefault(e, {})[tuple(rest)] = c
        if not buckets:
            return [ZERO]
        top = max(buckets)
        return [Poly._raw(buckets.get(j, {})) for j in range(top + 1)]

    def split_by(self, names: Iterable[str]) -> Dict[Monomial, "Poly"]:
        """Group terms by their monomial in ``names``; coefficients keep the rest."""
        names = set(names)
        groups: Dict[Monomial, Dict[Monomial, Fraction]] = {}
        for mono, c in self._terms.items():
            inside = tuple(p for p in mono if p[0] in names)
            outside = tuple(p for p in mono if p[0] not in names)
            groups.setdefault(inside, {})[outside] = c
        return {k: Poly._raw(v) for k, v in groups.items()}

    def sort_key(self, order: list[str]):
        """Keys of the terms for descending lexicographic order over ``order``."""
        return {mono: tuple(dict(mono).get(v, 0) for v in order) for mono in self._terms}

    def leading_term(self, order: list[str] | None = None) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or variable_order(self.variables())
        keys = self.sort_key(order)
        mono = max(self._terms, key=keys.__getitem__)
        return mono, self._terms[mono]

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Poly({render(self)!r})"


def _render_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(p: Poly, names: Mapping[str, str] | None = None) -> str:
    """Canonical text form used in reports and golden files."""
    if not p._terms:
        return "0"
    order = variable_order(p.variables())
    keys = p.sort_key(order)
    rank = {v: i for i, v in enumerate(order)}
    pieces = []
    for mono in sorted(p._terms, key=keys.__getitem__, reverse=True):
        c = p._terms[mono]
        factors = []
        for v, e in sorted(mono, key=lambda t: rank[t[0]]):
            label = names.get(v, v) if names else v
            factors.append(label if e == 1 else f"{label}^{e}")
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            text = _render_coeff(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{_render_coeff(mag)}*{body}"
        pieces.append(("-" if c < 0 else "+", text))
    sign, first = pieces[0]
    out = ("-" if sign == "-" else "") + first
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


ZERO = Poly._raw({})
ONE = Poly._raw({ONE_MONOMIAL: Fraction(1)})
D = Poly.var(DEL)
X = Poly.var(LAM)
Y = Poly.var(MU)
Z = Poly.var(NU)


def var(name: str) -> Poly:
    return Poly.var(name)


def const(c: Scalar) -> Poly:
    return Poly.const(c)


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def substitute(p: Poly, v: str, r) -> Poly:
    return p.substitute({v: r})


def coefficients_in(p: Poly, v: str) -> list[Poly]:
    return p.coefficients_in(v)


def specialize(p: Poly, bindings: Mapping[str, Scalar]) -> Poly:
    return p.specialize(bindings)


def exact_divide(p: Poly, q: Poly) -> Poly:
    """Return ``r`` with ``p == q * r`` or raise :class:`NotDivisible`.

    Plain multivariate division in the lexicographic order; exactness is
    decided by the leading term of the running remainder, which must stay
    divisible by the leading term of ``q``.
    """
    p, q = Poly.coerce(p), Poly.coerce(q)
    if q.is_zero():
        raise ZeroDivisionError("exact_divide by zero polynomial")
    order = variable_order(p.variables() | q.variables())
    lead_q, lead_c = q.leading_term(order)
    quotient: Dict[Monomial, Fraction] = {}
    rem = p
    while rem:
        mono, c = rem.leading_term(order)
        t = _mono_div(mono, lead_q)
        if t is None:
            raise NotDivisible(f"{p} is not divisible by {q}")
        coeff = c / lead_c
        quotient[t] = quotient.get(t, 0) + coeff
        rem = rem - Poly._raw({t: coeff}) * q
    return Poly._raw({m: c for m, c in quotient.items() if c})


def poly_from_coefficients(coeffs: Iterable[Scalar | Poly], v: str) -> Poly:
    """Inverse of :func:`coefficients_in`: ``sum(c_j * v**j)``."""
    base = Poly.var(v)
    out, power = ZERO, ONE
    for c in coeffs:
        out = out + Poly.coerce(c) * power
        power = power * base
    return out
