"""Presentations of Lie conformal algebras that are free over C[d].

An algebra is given by generators ``e_0 .. e_{n-1}`` and structure
polynomials ``P[i, j][k](d, x)`` with ``[e_i x e_j] = sum_k P[i, j][k] e_k``.
Elements and bracket values are :class:`Vec` objects: tuples of
polynomial coefficients indexed by generator.  Sesquilinearity extends the
generator data to arbitrary elements::

    [f(d) a _s g(d) b] = f(-s) g(d + s) [a _s b]

where the spectral argument ``s`` may itself be a polynomial such as
``x + y``.  Skew-symmetry ``[b _(-x-d) a]`` is plain substitution of
``-x - d`` for the spectral variable, valid because the coefficient ring is
commutative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .linalg import SolutionSpace, linear_system_from_polys, solve_linear, unknowns
from .polyring import DEL, LAM, MU, NU, ONE, ZERO, D, Poly, X, Y, Z, render

SPECTRAL = {LAM: X, MU: Y, NU: Z}


class InvalidPresentation(ValueError):
    """A constructor refused data that violates the algebra axioms."""


class PresentationMismatch(ValueError):
    pass


class NonUnimodular(ValueError):
    pass


class Vec(tuple):
    """Immutable vector of polynomials, one entry per basis element."""

    def __new__(cls, entries: Iterable = ()):
        return super().__new__(cls, (Poly.coerce(e) for e in entries))

    @classmethod
    def zero(cls, n: int) -> "Vec":
        return cls([ZERO] * n)

    @classmethod
    def unit(cls, n: int, i: int, coeff=ONE) -> "Vec":
        entries = [ZERO] * n
        entries[i] = Poly.coerce(coeff)
        return cls(entries)

    def __add__(self, other):
        if len(self) != len(other):
            raise PresentationMismatch("vectors of different length")
        return Vec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(self) != len(other):
            raise PresentationMismatch("vectors of different length")
        return Vec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vec(-a for a in self)

    def __mul__(self, c):
        c = Poly.coerce(c)
        return Vec(a * c for a in self)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self)

    def substitute(self, mapping) -> "Vec":
        return Vec(a.substitute(mapping) for a in self)

    def render(self, names: Sequence[str]) -> str:
        parts = [f"({render(c)}) {n}" for c, n in zip(self, names) if c]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Vec({[str(a) for a in self]})"


@dataclass(frozen=True)
class Residual:
    """One instance of an identity; ``value`` is zero iff the identity holds."""

    where: Tuple[str, ...]
    value: Vec

    def is_zero(self) -> bool:
        return self.value.is_zero()


def nonzero(residuals: Iterable[Residual]) -> list[Residual]:
    return [r for r in residuals if not r.is_zero()]


def all_zero(residuals: Iterable[Residual]) -> bool:
    return all(r.is_zero() for r in residuals)


def _spectral(s) -> Poly:
    if isinstance(s, str):
        if s not in SPECTRAL:
            raise ValueError(f"spectral variable must be one of {sorted(SPECTRAL)}, got {s!r}")
        return SPECTRAL[s]
    return Poly.coerce(s)


def sesquilinear(table, width: int, x: Sequence[Poly], y: Sequence[Poly], s) -> Vec:
    """Extend generator-level data ``table[i, j]`` (a vector of ``width``
    polynomials in d and x) to ``x _s y`` by sesquilinearity."""
    s = _spectral(s)
    left_sub = {DEL: -s}
    right_sub = {DEL: D + s}
    out = [ZERO] * width
    shifted = {}
    for i, fi in enumerate(x):
        if not fi:
            continue
        fl = fi.substitute(left_sub)
        for j, gj in enumerate(y):
            if not gj:
                continue
            entry = table.get((i, j))
            if entry is None or not any(entry):
                continue
            coef = fl * gj.substitute(right_sub)
            at_s = shifted.get((i, j))
            if at_s is None:
                at_s = shifted[(i, j)] = [p.substitute({LAM: s}) if s != X else p for p in entry]
            for k, pk in enumerate(at_s):
                if pk:
                    out[k] = out[k] + coef * pk
    return Vec(out)


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """Free finite Lie conformal algebra on named generators.

    ``structure`` maps every ordered pair of generator indices to a
    :class:`Vec` of polynomials in ``d``, ``x`` and parameters.  Pairs not
    supplied at construction are filled in by skew-symmetry from their
    mirror, or set to zero.
    """

    generators: Tuple[str, ...]
    structure: Mapping[Tuple[int, int], Vec] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        if not self.generators:
            raise InvalidPresentation("a presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise InvalidPresentation("generator names must be distinct")
        n = len(self.generators)
        full: Dict[Tuple[int, int], Vec] = {}
        for (i, j), vec in self.structure.items():
            vec = Vec(vec)
            if len(vec) != n:
                raise InvalidPresentation(f"bracket ({i}, {j}) has {len(vec)} components, expected {n}")
            for p in vec:
                if p.variables() & {MU, NU}:
                    raise InvalidPresentation("structure polynomials may only involve d, x and parameters")
            full[(i, j)] = vec
        for i in range(n):
            for j in range(n):
                if (i, j) not in full:
                    full[(i, j)] = skew_partner(full[(j, i)]) if (j, i) in full else Vec.zero(n)
        object.__setattr__(self, "structure", full)

    @classmethod
    def from_names(cls, generators: Sequence[str], brackets: Mapping[Tuple[str, str], Mapping[str, Poly] | Sequence], name: str = ""):
        """Build from ``{(gen, gen): {gen: poly}}`` data."""
        generators = tuple(generators)
        idx = {g: i for i, g in enumerate(generators)}
        structure = {}
        for (a, b), value in brackets.items():
            structure[(idx[a], idx[b])] = _vec_from(value, generators)
        return cls(generators, structure, name)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, g: str | int) -> int:
        if isinstance(g, int):
            return g
        try:
            return self.generators.index(g)
        except ValueError:
            raise KeyError(f"unknown generator {g!r}") from None

    def gen(self, g: str | int, coeff=ONE) -> Vec:
        return Vec.unit(self.rank, self.index(g), coeff)

    def element(self, coeffs: Mapping[str, Poly]) -> Vec:
        return _vec_from(coeffs, self.generators)

    def bracket_of(self, a: str | int, b: str | int) -> Vec:
        return self.structure[(self.index(a), self.index(b))]

    def parameters(self) -> frozenset:
        out = set()
        for vec in self.structure.values():
            for p in vec:
                out |= p.parameters()
        return frozenset(out)

    def specialize(self, bindings: Mapping[str, Fraction | int]) -> "AlgebraPresentation":
        return AlgebraPresentation(
            self.generators,
            {k: Vec(p.specialize(bindings) for p in v) for k, v in self.structure.items()},
            self.name,
        )

    def __eq__(self, other):
        if not isinstance(other, AlgebraPresentation):
            return NotImplemented
        return self.generators == other.generators and dict(self.structure) == dict(other.structure)

    def __hash__(self):
        return hash((self.generators, tuple(sorted(self.structure.items()))))

    def describe(self) -> list[str]:
        lines = []
        for i, a in enumerate(self.generators):
            for j, b in enumerate(self.generators):
                lines.append(f"[{a} x {b}] = {self.structure[(i, j)].render(self.generators)}")
        return lines


def _vec_from(value, names: Sequence[str]) -> Vec:
    if isinstance(value, Mapping):
        unknown = set(value) - set(names)
        if unknown:
            raise KeyError(f"unknown basis names {sorted(unknown)}")
        return Vec(Poly.coerce(value.get(n, ZERO)) for n in names)
    return Vec(value)


def skew_partner(vec: Vec) -> Vec:
    """``[b x a]`` from ``[a x b]`` via ``-[a _(-x-d) b]``."""
    return Vec(-p.substitute({LAM: -X - D}) for p in vec)


def bracket(P: AlgebraPresentation, x: Sequence[Poly], y: Sequence[Poly], spectral=LAM) -> Vec:
    if len(x) != P.rank or len(y) != P.rank:
        raise PresentationMismatch("element length does not match the presentation")
    return sesquilinear(P.structure, P.rank, x, y, spectral)


def check_skew(P: AlgebraPresentation) -> list[Residual]:
    """Residuals ``[e_i x e_j] + [e_j y e_i]|_{y = -x-d}`` for all pairs."""
    out = []
    for i, a in enumerate(P.generators):
        for j, b in enumerate(P.generators):
            mirror = P.structure[(j, i)].substitute({LAM: Y}).substitute({MU: -X - D})
            out.append(Residual((a, b), P.structure[(i, j)] + mirror))
    return out


def jacobi_residual(P: AlgebraPresentation, a: Vec, b: Vec, c: Vec) -> Vec:
    """``[a x [b y c]] - [[a x b] _(x+y) c] - [b y [a x c]]``."""
    first = bracket(P, a, bracket(P, b, c, MU), LAM)
    second = bracket(P, bracket(P, a, b, LAM), c, X + Y)
    third = bracket(P, b, bracket(P, a, c, LAM), MU)
    return first - second - third


def check_jacobi(P: AlgebraPresentation) -> list[Residual]:
    out = []
    n = P.rank
    for i in range(n):
        for j in range(n):
            for k in range(n):
                value = jacobi_residual(P, P.gen(i), P.gen(j), P.gen(k))
                out.append(Residual((P.generators[i], P.generators[j], P.generators[k]), value))
    return out


def verify(P: AlgebraPresentation) -> AlgebraPresentation:
    bad = nonzero(check_skew(P)) + nonzero(check_jacobi(P))
    if bad:
        first = bad[0]
        raise InvalidPresentation(
            f"{P.name or 'presentation'} fails at {first.where}: {first.value.render(P.generators)}"
        )
    return P


def jth_product(P: AlgebraPresentation, x: Sequence[Poly], y: Sequence[Poly], j: int) -> Vec:
    """``x_(j) y``: j! times the x^j coefficient of ``[x x y]``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    value = bracket(P, x, y, LAM)
    out = []
    for p in value:
        coeffs = p.coefficients_in(LAM)
        out.append(coeffs[j] * factorial(j) if j < len(coeffs) else ZERO)
    return Vec(out)


# -- constructors ----------------------------------------------------------

VIR_BRACKET = D + 2 * X


def make_vir(name: str = "Vir") -> AlgebraPresentation:
    return verify(AlgebraPresentation(("L",), {(0, 0): Vec([VIR_BRACKET])}, name))


def _check_structure_constants(names: Sequence[str], sc: Mapping[Tuple[str, str], Mapping[str, object]]):
    n = len(names)
    idx = {g: i for i, g in enumerate(names)}
    table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (a, b), value in sc.items():
        if a not in idx or b not in idx:
            raise InvalidPresentation(f"unknown basis element in bracket ({a}, {b})")
        for c, coeff in value.items():
            if c not in idx:
                raise InvalidPresentation(f"unknown basis element {c!r}")
            table[idx[a]][idx[b]][idx[c]] = Fraction(coeff)
    for i in range(n):
        for j in range(n):
            if any(table[i][j][k] + table[j][i][k] for k in range(n)):
                raise InvalidPresentation(f"structure constants not antisymmetric at ({names[i]}, {names[j]})")

    def br(u, v):
        out = [Fraction(0)] * n
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        for k in range(n):
                            out[k] += ui * vj * table[i][j][k]
        return out

    basis = [[Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a, b, c = basis[i], basis[j], basis[k]
                terms = [br(a, br(b, c)), br(b, br(c, a)), br(c, br(a, b))]
                if any(sum(t[m] for t in terms) for m in range(n)):
                    raise InvalidPresentation(
                        f"structure constants violate the Jacobi identity at ({names[i]}, {names[j]}, {names[k]})"
                    )
    return table


def make_current(names: Sequence[str], sc: Mapping[Tuple[str, str], Mapping[str, object]], name: str = "Cur") -> AlgebraPresentation:
    """Current algebra ``C[d] (x) g`` with ``[a x b] = [a, b]``."""
    names = tuple(names)
    table = _check_structure_constants(names, sc)
    n = len(names)
    structure = {(i, j): Vec(table[i][j]) for i in range(n) for j in range(n)}
    return verify(AlgebraPresentation(names, structure, name))


def make_semidirect(names: Sequence[str], sc, name: str = "VirCur", vir_name: str = "L") -> AlgebraPresentation:
    """``Vir`` acting on the current algebra by ``[L x a] = (d + x) a``."""
    names = tuple(names)
    if vir_name in names:
        raise InvalidPresentation(f"{vir_name!r} is already a basis name of the Lie algebra")
    table = _check_structure_constants(names, sc)
    n = len(names) + 1
    structure = {(0, 0): Vec.unit(n, 0, VIR_BRACKET)}
    for i in range(1, n):
        structure[(0, i)] = Vec.unit(n, i, D + X)
        for j in range(1, n):
            structure[(i, j)] = Vec([ZERO] + list(table[i - 1][j - 1]))
    return verify(AlgebraPresentation((vir_name,) + names, structure, name))


SL2_NAMES = ("e", "h", "f")
SL2_BRACKETS = {
    ("h", "e"): {"e": 2},
    ("e", "h"): {"e": -2},
    ("h", "f"): {"f": -2},
    ("f", "h"): {"f": 2},
    ("e", "f"): {"h": 1},
    ("f", "e"): {"h": -1},
}


def make_w(a=None, b=None, name: str = "W") -> AlgebraPresentation:
    """``W(a, b)`` on generators ``L, Y``; symbolic ``a``/``b`` by default."""
    a = Poly.var("a") if a is None else Poly.coerce(a)
    b = Poly.var("b") if b is None else Poly.coerce(b)
    structure = {(0, 0): Vec([VIR_BRACKET, ZERO]), (0, 1): Vec([ZERO, D + a * X + b]), (1, 1): Vec.zero(2)}
    return verify(AlgebraPresentation(("L", "Y"), structure, name))


def make_solvable(P1, Q1, name: str = "Solv") -> AlgebraPresentation:
    """``[B x B] = 0, [A x B] = P1 B, [A x A] = Q1 B``.  Not verified."""
    structure = {
        (1, 1): Vec.zero(2),
        (0, 1): Vec([ZERO, Poly.coerce(P1)]),
        (0, 0): Vec([ZERO, Poly.coerce(Q1)]),
    }
    return AlgebraPresentation(("A", "B"), structure, name)


TABLE_ROWS = (1, 0, -1, -4, -6)


def table_cocycle(a: int, beta="beta", gamma="gamma") -> Poly:
    """The exceptional ``Q(d, x)`` for ``b = 0``, ``delta = 1`` keyed by ``a``."""
    beta = Poly.var(beta) if isinstance(beta, str) else Poly.coerce(beta)
    gamma = Poly.var(gamma) if isinstance(gamma, str) else Poly.coerce(gamma)
    w = 2 * X + D
    s = X ** 2 + X * D
    if a == 1:
        return beta * w
    if a == 0:
        return beta * w * s + gamma * w * D
    if a == -1:
        return beta * w * D ** 2 + gamma * w * s * D
    if a == -4:
        return beta * w * s ** 3
    if a == -6:
        return beta * w * (11 * s ** 4 + 2 * s ** 3 * D ** 2)
    raise InvalidPresentation(f"no table row for a = {a}")


def make_rank2(delta, a, b, Q=None, name: str = "H") -> AlgebraPresentation:
    """``[B x B] = 0, [A x B] = delta(d + a x + b) B, [A x A] = (d + 2x) A + Q B``.

    ``Q`` may be a polynomial, ``None`` for zero, or ``("row", key)`` to take
    the table entry for ``a = key`` with symbolic ``beta`` and ``gamma``.
    """
    if isinstance(Q, tuple) and Q and Q[0] == "row":
        Q = table_cocycle(Q[1], *Q[2:])
    Q = ZERO if Q is None else Poly.coerce(Q)
    delta, a, b = Poly.coerce(delta), Poly.coerce(a), Poly.coerce(b)
    structure = {
        (1, 1): Vec.zero(2),
        (0, 1): Vec([ZERO, delta * (D + a * X + b)]),
        (0, 0): Vec([VIR_BRACKET, Q]),
    }
    return verify(AlgebraPresentation(("A", "B"), structure, name))


def make_table_row(a: int, beta="beta", gamma="gamma", name: str | None = None) -> AlgebraPresentation:
    return make_rank2(1, a, 0, table_cocycle(a, beta, gamma), name or f"H{a}")


def make_vir_sum(name: str = "VirVir") -> AlgebraPresentation:
    structure = {(0, 0): Vec([VIR_BRACKET, ZERO]), (1, 1): Vec([ZERO, VIR_BRACKET]), (0, 1): Vec.zero(2)}
    return verify(AlgebraPresentation(("A", "B"), structure, name))


# -- centre and basis change ------------------------------------------------


def center_candidates(P: AlgebraPresentation, degree: int) -> SolutionSpace:
    """Elements ``sum f_i(d) e_i`` with ``deg f_i <= degree`` bracketing to
    zero with every generator.  Unknown slot labels are ``<gen>_<k>`` for
    the coefficient of ``d^k`` in ``f_gen``."""
    labels = []
    names = []
    coeffs = []
    for g in P.generators:
        slots = unknowns(f"c{g}_", degree + 1)
        names.extend(slots)
        labels.extend(f"{g}_{k}" for k in range(degree + 1))
        poly = ZERO
        for k, s in enumerate(slots):
            poly = poly + Poly.var(s) * D ** k
        coeffs.append(poly)
    x = Vec(coeffs)
    polys = []
    for j in range(P.rank):
        polys.extend(bracket(P, x, P.gen(j), LAM))
    space = solve_linear(linear_system_from_polys(polys, names))
    return SolutionSpace(space.particular, space.nullspace, tuple(labels), space.free)


def determinant(M: Sequence[Sequence[Poly]]) -> Poly:
    n = len(M)
    if n == 1:
        return Poly.coerce(M[0][0])
    total = ZERO
    for j in range(n):
        entry = Poly.coerce(M[0][j])
        if not entry:
            continue
        minor = [row[:j] + row[j + 1:] for row in (list(r) for r in M[1:])]
        term = entry * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def inverse_matrix(M: Sequence[Sequence[Poly]]) -> list[list[Poly]]:
    """Inverse of a matrix whose determinant is a nonzero constant."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise NonUnimodular("basis change matrix must be square")
    det = determinant(M)
    if not det.is_constant() or not det:
        raise NonUnimodular(f"determinant {det} is not a nonzero constant")
    inv_det = 1 / det.constant_value()
    if n == 1:
        return [[Poly.const(inv_det)]]
    rows = [list(map(Poly.coerce, r)) for r in M]
    adj = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            cof = determinant(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return [[p * inv_det for p in row] for row in adj]


def change_of_basis(P: AlgebraPresentation, M: Sequence[Sequence], names: Sequence[str] | None = None) -> AlgebraPresentation:
    """Presentation in the basis ``new_i = sum_j M[i][j](d) e_j``."""
    n = P.rank
    rows = [Vec(r) for r in M]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise NonUnimodular(f"basis change must be a {n}x{n} matrix")
    for r in rows:
        for p in r:
            if p.variables() & {LAM, MU, NU}:
                raise NonUnimodular("basis change entries must be polynomials in d")
    inv = inverse_matrix(rows)
    structure = {}
    for i in range(n):
        for j in range(n):
            old = bracket(P, rows[i], rows[j], LAM)
            new = [ZERO] * n
            for k, c in enumerate(old):
                if c:
                    for l in range(n):
                        if inv[k][l]:
                            new[l] = new[l] + c * inv[k][l]
            structure[(i, j)] = Vec(new)
    return AlgebraPresentation(tuple(names or P.generators), structure, P.name)
