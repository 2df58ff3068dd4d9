"""Shared strategies and the sympy bridge used as an independent oracle."""

import sys
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from lcac.polyring import Poly

SYMBOLS = {name: sympy.Symbol(name) for name in ("d", "x", "y", "z", "a", "b", "beta", "gamma")}


def to_sympy(p: Poly):
    total = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for name, e in mono:
            term *= SYMBOLS.setdefault(name, sympy.Symbol(name)) ** e
        total += term
    return sympy.expand(total)


def from_sympy(expr) -> Poly:
    expr = sympy.expand(expr)
    if expr == 0:
        return Poly()
    gens = sorted(expr.free_symbols, key=str)
    if not gens:
        r = sympy.Rational(expr)
        return Poly.const(Fraction(int(r.p), int(r.q)))
    out = Poly()
    for exps, c in sympy.Poly(expr, *gens).terms():
        r = sympy.Rational(c)
        term = Poly.const(Fraction(int(r.p), int(r.q)))
        for g, e in zip(gens, exps):
            term = term * Poly.var(str(g)) ** e
        out = out + term
    return out


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)
VAR_NAMES = ("d", "x", "y", "a", "b")


@st.composite
def monomials(draw, names=VAR_NAMES, max_exp=3):
    chosen = draw(st.lists(st.sampled_from(names), max_size=3, unique=True))
    return tuple(sorted((n, draw(st.integers(1, max_exp))) for n in chosen))


@st.composite
def polys(draw, names=VAR_NAMES, max_terms=5, max_exp=3):
    terms = draw(st.dictionaries(monomials(names, max_exp), rationals, max_size=max_terms))
    return Poly(terms)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "SUMMARY", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
