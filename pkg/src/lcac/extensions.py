"""Abelian extensions of rank-two algebras by rank-one modules.

An extension of ``H = C[d]A + C[d]B`` by ``C[d]v`` is presented on the
generators ``(A, B, v)``: brackets of ``H`` pick up a ``v``-component given
by the cocycle data, the generators act on ``v`` through the module, and
``v`` spans an abelian ideal.  The cocycle conditions are read off as
skew-symmetry and Jacobi residuals of that presentation.

A reduction replaces a generator ``T`` by ``T + s g(d) v`` and asks that
the ``v``-components of every bracket involving the new generator vanish.
The unknown ``g`` enters those components linearly, so the search up to a
degree bound is a single linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    AlgebraPresentation,
    Residual,
    Vec,
    change_of_basis,
    check_jacobi,
    check_skew,
    skew_partner,
)
from .linalg import linear_system_from_polys, solve_linear, unknowns, vector_to_poly
from .modules import FreeModulePresentation
from .polyring import DEL, ZERO, D, Poly, X, render

VIR = D + 2 * X


class SettingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CocycleData:
    Q1: Poly = ZERO
    Q2: Poly = ZERO
    Q3: Poly = ZERO

    def __post_init__(self):
        for name in ("Q1", "Q2", "Q3"):
            object.__setattr__(self, name, Poly.coerce(getattr(self, name)))


@dataclass(frozen=True)
class Setting:
    """Which generator is the Virasoro ``A``, which is ``B``, and where the
    cocycle components sit.  ``acting`` names the generator acting on ``v``
    (``A`` for the first setting, ``B`` for the second)."""

    A: str
    B: str
    acting: str
    delta: Poly

    def cocycle_pairs(self) -> dict:
        if self.acting == self.A:
            return {"Q1": (self.A, self.A), "Q2": (self.A, self.B), "Q3": (self.B, self.B)}
        return {"Q1": (self.A, self.A), "Q2": (self.B, self.A), "Q3": (self.B, self.B)}


def detect_setting(P: AlgebraPresentation, M: FreeModulePresentation) -> Setting:
    """Match ``[A x A] = (d + 2x) A, [A x B] = 0, [B x B] = delta (d + 2x) B``
    with a rank-one module on which one of ``A``, ``B`` acts by zero."""
    if P.rank != 2 or M.rank != 1 or M.algebra != P:
        raise SettingMismatch("need a rank-two algebra and a rank-one module over it")
    for A, B in (P.generators, P.generators[::-1]):
        iA, iB = P.index(A), P.index(B)
        if P.structure[(iA, iA)] != Vec.unit(2, iA, VIR) or not P.structure[(iA, iB)].is_zero():
            continue
        BB = P.structure[(iB, iB)]
        if BB[iA]:
            continue
        delta = ZERO
        if BB[iB]:
            coeffs = BB[iB].coefficients_in(DEL)
            delta = coeffs[1] if len(coeffs) == 2 else None
            if delta is None or delta.variables() or BB[iB] != delta * VIR:
                continue
        phi_A, phi_B = M.act_of(A, 0)[0], M.act_of(B, 0)[0]
        if not phi_B:
            return Setting(A, B, A, delta)
        if not phi_A:
            return Setting(A, B, B, delta)
    raise SettingMismatch("algebra and module do not match a supported extension setting")


def build_extension(P: AlgebraPresentation, M: FreeModulePresentation, C: CocycleData, name: str = "E") -> AlgebraPresentation:
    """Presentation of the extension on ``P.generators + M.basis``."""
    setting = detect_setting(P, M)
    n = P.rank + 1
    gens = P.generators + M.basis
    assigned = {}
    for label, (u, w) in setting.cocycle_pairs().items():
        assigned[(P.index(u), P.index(w))] = getattr(C, label)
    structure = {}
    for (i, j), value in assigned.items():
        structure[(i, j)] = Vec(list(P.structure[(i, j)]) + [value])
        if i != j and (j, i) not in assigned:
            structure[(j, i)] = skew_partner(structure[(i, j)])
    for i in range(P.rank):
        for j in range(P.rank):
            structure.setdefault((i, j), Vec(list(P.structure[(i, j)]) + [ZERO]))
        structure[(i, n - 1)] = Vec.unit(n, n - 1, M.act_of(i, 0)[0])
    structure[(n - 1, n - 1)] = Vec.zero(n)
    return AlgebraPresentation(gens, structure, name)


def check_cocycle(P: AlgebraPresentation, M: FreeModulePresentation, C: CocycleData) -> list[Residual]:
    """Skew-symmetry and Jacobi residuals of the extension; all zero iff
    the data is a 2-cocycle."""
    E = build_extension(P, M, C)
    return check_skew(E) + check_jacobi(E)


# -- reduction -------------------------------------------------------------


@dataclass(frozen=True)
class Reduction:
    g: Poly
    reduced: AlgebraPresentation
    degree: int
    target: str
    sign: int
    ideal: str
    freedom: int

    def to_dict(self) -> dict:
        return {
            "g": render(self.g),
            "target": self.target,
            "sign": "+" if self.sign > 0 else "-",
            "ideal": self.ideal,
            "degree_bound": self.degree,
            "freedom": self.freedom,
            "reduced": self.reduced.describe(),
        }


@dataclass(frozen=True)
class NoReduction:
    """No ``g`` of degree at most ``degree`` removes the designated components."""

    degree: int
    target: str
    sign: int
    ideal: str

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "sign": "+" if self.sign > 0 else "-",
            "ideal": self.ideal,
            "degree_bound": self.degree,
        }


def parse_shift(shift) -> tuple[str, int]:
    """``"B"``, ``"+B"``, ``"-B"`` or ``(name, sign)``."""
    if isinstance(shift, tuple):
        name, sign = shift
        if sign in ("+", "-"):
            sign = 1 if sign == "+" else -1
        return name, 1 if sign >= 0 else -1
    shift = shift.strip()
    if shift[:1] in "+-" and shift[:1]:
        return shift[1:].strip(), -1 if shift[0] == "-" else 1
    return shift, 1


def shift_matrix(n: int, target: int, ideal: int, coeff: Poly) -> list[list[Poly]]:
    rows = [[Poly.const(int(i == j)) for j in range(n)] for i in range(n)]
    rows[target][ideal] = coeff
    return rows


def designated_components(E: AlgebraPresentation, target: int, ideal: int) -> list[Poly]:
    """Ideal components of ``[X x T]`` and ``[T x X]`` for every non-ideal ``X``."""
    out = []
    for X_ in range(E.rank):
        if X_ == ideal:
            continue
        out.append(E.structure[(X_, target)][ideal])
        if X_ != target:
            out.append(E.structure[(target, X_)][ideal])
    return out


def reduce_extension(E: AlgebraPresentation, shift, degree: int, ideal: str | None = None) -> Reduction | NoReduction:
    """Look for ``g`` with ``deg g <= degree`` such that replacing ``T`` by
    ``T + sign * g(d) v`` kills the designated components."""
    target_name, sign = parse_shift(shift)
    ideal_name = ideal or E.generators[-1]
    t, iv = E.index(target_name), E.index(ideal_name)
    if t == iv:
        raise ValueError("the shifted generator must differ from the ideal generator")
    names = unknowns("g", degree + 1)
    g = sum((Poly.var(nm) * D ** k for k, nm in enumerate(names)), ZERO)
    E_g = change_of_basis(E, shift_matrix(E.rank, t, iv, g * sign))
    system = linear_system_from_polys(designated_components(E_g, t, iv), names)
    space = solve_linear(system)
    if space.is_empty:
        return NoReduction(degree, target_name, sign, ideal_name)
    g_found = vector_to_poly(space.particular, DEL)
    reduced = change_of_basis(E, shift_matrix(E.rank, t, iv, g_found * sign))
    return Reduction(g_found, reduced, degree, target_name, sign, ideal_name, space.dimension)


def unshift(result: Reduction) -> AlgebraPresentation:
    """Undo a reduction: the inverse basis change applied to ``reduced``."""
    E = result.reduced
    t, iv = E.index(result.target), E.index(result.ideal)
    return change_of_basis(E, shift_matrix(E.rank, t, iv, -result.g * result.sign))
