"""Exact linear algebra over Q and extraction of linear systems from polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import Poly, ZERO


class NonlinearSystemError(ValueError):
    """An unknown appears with degree above one."""


@dataclass(frozen=True)
class LinearSystem:
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.matrix) != len(self.rhs):
            raise ValueError("matrix and rhs have different row counts")
        for row in self.matrix:
            if len(row) != len(self.labels):
                raise ValueError("row length does not match the number of unknowns")

    @classmethod
    def build(cls, matrix, rhs, labels=None) -> "LinearSystem":
        matrix = tuple(tuple(Fraction(c) for c in row) for row in matrix)
        ncols = len(matrix[0]) if matrix else len(labels or ())
        labels = tuple(labels) if labels is not None else tuple(f"u{i}" for i in range(ncols))
        return cls(matrix, tuple(Fraction(c) for c in rhs), labels)


@dataclass(frozen=True)
class SolutionSpace:
    """Affine solution set ``particular + span(nullspace)``.

    ``particular is None`` means the system is inconsistent.  Vectors come
    from the reduced row echelon form: the particular solution has every
    free unknown set to zero, and nullspace vector ``k`` has a one in the
    ``k``-th free slot and zeros in the other free slots.
    """

    particular: tuple[Fraction, ...] | None
    nullspace: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] = field(default=())
    free: tuple[int, ...] = field(default=())

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def dimension(self) -> int:
        """Dimension of the solution set; -1 when empty."""
        return -1 if self.particular is None else len(self.nullspace)

    def is_homogeneous_zero(self) -> bool:
        return self.particular is not None and not any(self.particular)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "particular": None if self.particular is None else [str(c) for c in self.particular],
            "nullspace": [[str(c) for c in vec] for vec in self.nullspace],
            "free": [self.labels[i] for i in self.free] if self.labels else list(self.free),
            "dimension": self.dimension,
        }


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns the rows and pivot columns."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [v * inv for v in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_linear(system: LinearSystem) -> SolutionSpace:
    """Exact Gaussian elimination over Q."""
    n = len(system.labels)
    rows = [list(row) + [b] for row, b in zip(system.matrix, system.rhs)]
    rows = [row for row in rows if any(row)]
    rows, pivots = rref(rows)
    if n in pivots:
        return SolutionSpace(None, (), system.labels)
    particular = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        particular[c] = rows[r][n]
    free = [c for c in range(n) if c not in pivots]
    nullspace = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -rows[r][f]
        nullspace.append(tuple(vec))
    return SolutionSpace(tuple(particular), tuple(nullspace), system.labels, tuple(free))


def check_solution(system: LinearSystem, vec: Sequence[Fraction], homogeneous: bool = False) -> bool:
    for row, b in zip(system.matrix, system.rhs):
        total = sum((a * v for a, v in zip(row, vec)), Fraction(0))
        if total != (0 if homogeneous else b):
            return False
    return True


def unknowns(prefix: str, count: int) -> list[str]:
    """Fresh variable names for unknown coefficients.

    The leading underscore keeps them out of the DSL identifier space.
    """
    return [f"_{prefix}{k}" for k in range(count)]


def linear_system_from_polys(polys: Iterable[Poly], labels: Sequence[str]) -> LinearSystem:
    """Read off the linear system ``poly == 0`` for each poly.

    Each polynomial must be affine in the unknowns ``labels``.  Every
    monomial in the remaining variables (derivation, spectral variables
    and parameters) contributes one equation, so a solution is valid for
    all parameter values simultaneously.
    """
    index = {name: i for i, name in enumerate(labels)}
    label_set = set(labels)
    rows: dict = {}
    for n, p in enumerate(polys):
        for mono, c in p.items():
            inside = [(v, e) for v, e in mono if v in label_set]
            outside = (n, tuple((v, e) for v, e in mono if v not in label_set))
            row = rows.get(outside)
            if row is None:
                row = rows[outside] = [Fraction(0)] * (len(labels) + 1)
            if not inside:
                row[-1] -= c
            elif len(inside) == 1 and inside[0][1] == 1:
                row[index[inside[0][0]]] += c
            else:
                raise NonlinearSystemError(f"term {mono} is not linear in the unknowns")
    ordered = [rows[k] for k in sorted(rows)]
    matrix = tuple(tuple(r[:-1]) for r in ordered)
    rhs = tuple(r[-1] for r in ordered)
    return LinearSystem(matrix, rhs, tuple(labels))


def unknown_poly(names: Sequence[str], var: str) -> Poly:
    """``sum(names[k] * var**k)`` with the names as symbolic unknowns."""
    base = Poly.var(var)
    out, power = ZERO, Poly.const(1)
    for name in names:
        out = out + Poly.var(name) * power
        power = power * base
    return out


def vector_to_poly(vec: Sequence[Fraction], var: str) -> Poly:
    base = Poly.var(var)
    out, power = ZERO, Poly.const(1)
    for c in vec:
        if c:
            out = out + power * c
        power = power * base
    return out


def space_to_poly(space: SolutionSpace, var: str, names: Sequence[str]) -> Poly:
    """Generic member of a solution space: particular + sum(names[k] * basis_k)."""
    if space.particular is None:
        raise ValueError("empty solution space has no members")
    out = vector_to_poly(space.particular, var)
    for name, vec in zip(names, space.nullspace):
        out = out + Poly.var(name) * vector_to_poly(vec, var)
    return out


def rank(rows: list[list[Fraction]]) -> int:
    return len(rref([list(r) for r in rows])[1])


__all__ = [
    "LinearSystem",
    "NonlinearSystemError",
    "SolutionSpace",
    "check_solution",
    "linear_system_from_polys",
    "rank",
    "rref",
    "solve_linear",
    "space_to_poly",
    "unknown_poly",
    "unknowns",
    "vector_to_poly",
]
