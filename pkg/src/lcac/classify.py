"""Bounded-degree classification of rank-one modules over rank-two algebras.

Unknown polynomials are written with symbolic coefficient variables, the
axiom residuals are expanded, and every monomial in the remaining
variables yields one linear equation over Q.  For a rank-one module with
``g x v = (c_g d + p_g(x)) v`` and fixed ``c_g`` the axioms are linear in
the coefficients of the ``p_g``: the quadratic terms cancel between
``a x (b y v)`` and ``b y (a x v)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Mapping, Sequence

from .core import AlgebraPresentation, Vec, nonzero
from .linalg import (
    SolutionSpace,
    linear_system_from_polys,
    solve_linear,
    space_to_poly,
    unknown_poly,
    unknowns,
    vector_to_poly,
)
from .modules import check_module_axioms, make_rank_one
from .polyring import DEL, LAM, ZERO, D, Poly, X, Y, render

DEFAULT_DEGREE_BOUND = 10


class UnrecognizedNormalForm(ValueError):
    pass


def _relabel(space: SolutionSpace, labels: Sequence[str]) -> SolutionSpace:
    return SolutionSpace(space.particular, space.nullspace, tuple(labels), space.free)


def solve_f(a, b, degree: int) -> SolutionSpace:
    """All ``f`` with ``deg f <= degree`` and
    ``f(x + y)(-x - y + a x + b) = -y f(y)``; slots are ``f0 .. f<degree>``."""
    a, b = Poly.coerce(a), Poly.coerce(b)
    names = unknowns("f", degree + 1)
    f = unknown_poly(names, LAM)
    equation = f.substitute({LAM: X + Y}) * (-X - Y + a * X + b) + Y * f.substitute({LAM: Y})
    space = solve_linear(linear_system_from_polys([equation], names))
    return _relabel(space, [f"f{k}" for k in range(degree + 1)])


def solve_p(a, b, Q, f, degree: int) -> SolutionSpace:
    """All ``p`` with ``deg p <= degree`` and
    ``(x - y) p(x + y) + Q(-x - y, x) f(x + y) = x p(x) - y p(y)``.

    ``a`` and ``b`` do not enter this equation; they are accepted so that
    callers can pass the same data as to :func:`solve_f`.
    """
    Q, f = Poly.coerce(Q), Poly.coerce(f)
    if Q.variables() - {DEL, LAM} - Q.parameters():
        raise ValueError("Q must be a polynomial in d and x")
    names = unknowns("p", degree + 1)
    p = unknown_poly(names, LAM)
    lhs = (X - Y) * p.substitute({LAM: X + Y}) + Q.substitute({DEL: -X - Y}) * f.substitute({LAM: X + Y})
    rhs = X * p - Y * p.substitute({LAM: Y})
    space = solve_linear(linear_system_from_polys([lhs - rhs], names))
    return _relabel(space, [f"p{k}" for k in range(degree + 1)])


# -- normal forms ----------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """Recognised shape of a rank-two presentation on generators ``(A, B)``.

    ``kind`` is one of ``solvable``, ``delta1`` (Vir acting on C[d]B
    through ``(d + a x + b)``), ``delta0`` (B an abelian ideal with zero
    action) and ``vir_sum`` (two commuting Virasoro summands).
    """

    kind: str
    A: str
    B: str
    a: Fraction | None = None
    b: Fraction | None = None
    Q: Poly = ZERO
    P1: Poly = ZERO
    Q1: Poly = ZERO


VIR = D + 2 * X


def _affine_ab(p: Poly):
    """Return ``(a, b)`` if ``p == d + a x + b`` with rational a, b."""
    rest = p - D
    if rest.variables() - {LAM} or rest.degree(LAM) > 1:
        return None
    coeffs = rest.coefficients_in(LAM) + [ZERO]
    if not all(c.is_constant() for c in coeffs):
        return None
    return coeffs[1].constant_value(), coeffs[0].constant_value()


def normal_form(P: AlgebraPresentation) -> NormalForm:
    if P.rank != 2:
        raise UnrecognizedNormalForm("classification needs a rank-two presentation")
    for A, B in (P.generators, P.generators[::-1]):
        iA, iB = P.index(A), P.index(B)
        AA, AB, BB = P.structure[(iA, iA)], P.structure[(iA, iB)], P.structure[(iB, iB)]
        if AA == Vec.unit(2, iA, VIR) and BB == Vec.unit(2, iB, VIR) and AB.is_zero():
            return NormalForm("vir_sum", A, B)
        if not BB.is_zero() or AB[iA]:
            continue
        if AA[iA] == VIR:
            if not AB[iB]:
                return NormalForm("delta0", A, B, Q=AA[iB])
            ab = _affine_ab(AB[iB])
            if ab is not None:
                return NormalForm("delta1", A, B, a=ab[0], b=ab[1], Q=AA[iB])
        elif not AA[iA]:
            return NormalForm("solvable", A, B, P1=AB[iB], Q1=AA[iB])
    raise UnrecognizedNormalForm("presentation is not one of the rank-two normal forms")


# -- families --------------------------------------------------------------


@dataclass
class ActionFamily:
    """Rank-one modules ``g x v = actions[g] v``, one for each value of the
    free ``parameters``."""

    case: str
    actions: Dict[str, Poly]
    parameters: tuple[str, ...]
    notes: list[str] = field(default_factory=list)
    verified: bool = False

    def module(self, P: AlgebraPresentation):
        return make_rank_one(P, self.actions)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "actions": {g: render(p) for g, p in self.actions.items()},
            "parameters": list(self.parameters),
            "notes": list(self.notes),
            "verified": self.verified,
        }


def _verify(P: AlgebraPresentation, family: ActionFamily) -> ActionFamily:
    bad = nonzero(check_module_axioms(family.module(P)))
    if bad:
        raise AssertionError(f"family {family.actions} fails the module axioms at {bad[0].where}")
    family.verified = True
    return family


def _slot_names(prefix: str, space: SolutionSpace, special: Mapping[int, str]) -> list[str]:
    return [special.get(slot, f"{prefix}{slot}") for slot in space.free]


def solve_rank_one(P: AlgebraPresentation, del_pattern: Mapping[str, int], degree: int) -> tuple[SolutionSpace, dict]:
    """Solve the module axioms for ``g x v = (c_g d + p_g(x)) v`` with
    ``c_g = del_pattern[g]`` and ``deg p_g <= degree``.

    Returns the solution space over the concatenated coefficient slots and
    a map from generator to its slice of slot indices.
    """
    names, slices, phis = [], {}, []
    for g in P.generators:
        slots = unknowns(f"{g}_", degree + 1)
        slices[g] = range(len(names), len(names) + len(slots))
        names.extend(slots)
        phis.append(del_pattern.get(g, 0) * D + unknown_poly(slots, LAM))
    residuals = check_module_axioms(make_rank_one(P, phis))
    polys = [p for r in residuals for p in r.value]
    space = solve_linear(linear_system_from_polys(polys, names))
    labels = [f"{g}{k}" for g in P.generators for k in range(degree + 1)]
    return _relabel(space, labels), slices


def _family_from_space(P, space, slices, del_pattern, case, degree) -> ActionFamily | None:
    """Generic member of a solved ansatz, or ``None`` for the zero module."""
    if space.is_empty:
        return None
    params = []
    actions = {}
    for g in P.generators:
        sl = slices[g]
        poly = del_pattern.get(g, 0) * D + vector_to_poly([space.particular[s] for s in sl], LAM)
        for vec_idx, slot in enumerate(space.free):
            vec = space.nullspace[vec_idx]
            part = vector_to_poly([vec[s] for s in sl], LAM)
            if not part:
                continue
            owner = next(h for h in P.generators if slot in slices[h])
            k = slot - slices[owner].start
            if del_pattern.get(owner, 0):
                name = {1: "alpha", 0: "beta"}.get(k, f"p{k}")
            else:
                name = f"phi{owner}_{k}"
            poly = poly + Poly.var(name) * part
            if name not in params:
                params.append(name)
        actions[g] = poly
    if all(not p for p in actions.values()):
        return None
    return ActionFamily(case, actions, tuple(params))


def classify_rank_one(P: AlgebraPresentation, degree: int = DEFAULT_DEGREE_BOUND) -> list[ActionFamily]:
    """Rank-one module actions over a rank-two normal form, degree-bounded.

    Every returned family passes :func:`check_module_axioms` with its free
    parameters left symbolic.
    """
    if P.parameters():
        raise ValueError(f"specialize parameters {sorted(P.parameters())} before classifying")
    nf = normal_form(P)
    if nf.kind == "delta1":
        return [_verify(P, fam) for fam in _classify_delta1(P, nf, degree)]
    if nf.kind == "solvable":
        patterns = [{}]
    else:
        patterns = [dict(zip((nf.A, nf.B), bits)) for bits in product((0, 1), repeat=2)]
    families = []
    for pattern in patterns:
        space, slices = solve_rank_one(P, pattern, degree)
        fam = _family_from_space(P, space, slices, pattern, nf.kind, degree)
        if fam is None:
            continue
        if nf.kind == "solvable":
            fam.notes.append(_solvable_note(nf))
        elif any(pattern.values()):
            fam.notes.append("irreducible iff alpha != 0")
        else:
            fam.notes.append(f"free polynomial coefficients up to degree {degree}")
        families.append(_verify(P, fam))
    return families


def _solvable_note(nf: NormalForm) -> str:
    if nf.P1 or nf.Q1:
        return f"{nf.B} acts by zero since P1 or Q1 is nonzero"
    return "both actions free"


def _classify_delta1(P: AlgebraPresentation, nf: NormalForm, degree: int) -> list[ActionFamily]:
    f_space = solve_f(nf.a, nf.b, degree)
    p_hom = solve_p(nf.a, nf.b, nf.Q, ZERO, degree)
    p_names = _slot_names("p", p_hom, {1: "alpha", 0: "beta"})
    p_generic = space_to_poly(p_hom, LAM, p_names)
    f_generic = ZERO
    params = list(p_names)
    notes = []
    for idx, vec in enumerate(f_space.nullspace):
        f_i = vector_to_poly(vec, LAM)
        gamma = "gamma" if idx == 0 else f"gamma{idx}"
        p_i = solve_p(nf.a, nf.b, nf.Q, f_i, degree)
        if p_i.is_empty:
            notes.append(f"{nf.B} acts by zero: Q obstructs f = {render(f_i)}")
            continue
        f_generic = f_generic + Poly.var(gamma) * f_i
        p_generic = p_generic + Poly.var(gamma) * vector_to_poly(p_i.particular, LAM)
        params.append(gamma)
    if f_generic:
        notes.append("gamma may be nonzero")
    else:
        notes.append(f"{nf.B} acts by zero")
    notes.append(f"irreducible iff alpha != 0 when {nf.B} acts by zero")
    return [ActionFamily("delta1", {nf.A: D + p_generic, nf.B: f_generic}, tuple(params), notes)]


def check_solvable_candidate(P: AlgebraPresentation, phi_A: Poly, phi_B: Poly) -> tuple[list, bool]:
    """Module-axiom residuals for ``A x v = phi_A v, B x v = phi_B v`` and
    whether the side condition ``phi_B != 0 only if P1 = Q1 = 0`` holds."""
    nf = normal_form(P)
    if nf.kind != "solvable":
        raise UnrecognizedNormalForm("candidate checking applies to solvable presentations")
    residuals = check_module_axioms(make_rank_one(P, {nf.A: phi_A, nf.B: phi_B}))
    side_ok = not Poly.coerce(phi_B) or (not nf.P1 and not nf.Q1)
    return residuals, side_ok
