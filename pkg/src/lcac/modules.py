"""Conformal modules: free presentations, torsion modules and morphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Tuple

from .core import (
    AlgebraPresentation,
    PresentationMismatch,
    Residual,
    Vec,
    _vec_from,
    bracket,
    make_vir,
    sesquilinear,
)
from .polyring import DEL, LAM, MU, ONE, ZERO, D, Poly, X, Y


@dataclass(frozen=True, eq=False)
class FreeModulePresentation:
    """``e_i x v_j = sum_k action[i, j][k](d, x) v_k`` on a free C[d]-basis."""

    algebra: AlgebraPresentation
    basis: Tuple[str, ...]
    action: Mapping[Tuple[int, int], Vec] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        if not self.basis:
            raise ValueError("a free module needs at least one basis element")
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis names must be distinct")
        s = len(self.basis)
        full = {}
        for (i, j), vec in self.action.items():
            vec = Vec(vec)
            if len(vec) != s:
                raise ValueError(f"action ({i}, {j}) has {len(vec)} components, expected {s}")
            for p in vec:
                if p.variables() & {"y", "z"}:
                    raise ValueError("action polynomials may only involve d, x and parameters")
            full[(i, j)] = vec
        for i in range(self.algebra.rank):
            for j in range(s):
                full.setdefault((i, j), Vec.zero(s))
        object.__setattr__(self, "action", full)

    @classmethod
    def from_names(cls, algebra, basis, acts: Mapping[Tuple[str, str], Mapping[str, Poly]], name: str = ""):
        basis = tuple(basis)
        idx = {v: k for k, v in enumerate(basis)}
        action = {(algebra.index(g), idx[v]): _vec_from(value, basis) for (g, v), value in acts.items()}
        return cls(algebra, basis, action, name)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, v: str | int) -> int:
        if isinstance(v, int):
            return v
        try:
            return self.basis.index(v)
        except ValueError:
            raise KeyError(f"unknown basis element {v!r}") from None

    def vec(self, v: str | int, coeff=ONE) -> Vec:
        return Vec.unit(self.rank, self.index(v), coeff)

    def act_of(self, g: str | int, v: str | int) -> Vec:
        return self.action[(self.algebra.index(g), self.index(v))]

    def parameters(self) -> frozenset:
        out = set(self.algebra.parameters())
        for vec in self.action.values():
            for p in vec:
                out |= p.parameters()
        return frozenset(out)

    def specialize(self, bindings) -> "FreeModulePresentation":
        return FreeModulePresentation(
            self.algebra.specialize(bindings),
            self.basis,
            {k: Vec(p.specialize(bindings) for p in v) for k, v in self.action.items()},
            self.name,
        )

    def __eq__(self, other):
        if not isinstance(other, FreeModulePresentation):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.basis == other.basis
            and dict(self.action) == dict(other.action)
        )

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class TorsionModule:
    """Finite-dimensional module: ``d`` acts by ``del_action`` and
    ``g x m = action[g](x) m`` for matrix-valued polynomials in ``x``."""

    algebra: AlgebraPresentation
    dimension: int
    del_action: Tuple[Tuple[Poly, ...], ...]
    action: Mapping[str, Tuple[Tuple[Poly, ...], ...]] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        n = self.dimension
        if n < 1:
            raise ValueError("torsion module dimension must be positive")
        dmat = _matrix(self.del_action, n)
        for row in dmat:
            for p in row:
                if p.variables() & {DEL, LAM, MU, "z"}:
                    raise ValueError("the action of d must be a constant matrix")
        full = {}
        for g in self.algebra.generators:
            mat = _matrix(self.action.get(g, _zero_matrix(n)), n)
            for row in mat:
                for p in row:
                    if p.variables() & {DEL, MU, "z"}:
                        raise ValueError("torsion action entries must be polynomials in x")
            full[g] = mat
        unknown = set(self.action) - set(self.algebra.generators)
        if unknown:
            raise KeyError(f"unknown generators {sorted(unknown)}")
        object.__setattr__(self, "del_action", dmat)
        object.__setattr__(self, "action", full)

    def is_trivial(self) -> bool:
        return all(not p for mat in self.action.values() for row in mat for p in row)


def _zero_matrix(n: int):
    return tuple(tuple(ZERO for _ in range(n)) for _ in range(n))


def _matrix(rows, n: int):
    mat = tuple(tuple(Poly.coerce(p) for p in row) for row in rows)
    if len(mat) != n or any(len(r) != n for r in mat):
        raise ValueError(f"expected a {n}x{n} matrix")
    return mat


def _matmul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    return tuple(
        tuple(sum((A[i][t] * B[t][j] for t in range(m)), ZERO) for j in range(k)) for i in range(n)
    )


def _matadd(A, B, sign=1):
    return tuple(tuple(a + b * sign for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _matsub(A, B):
    return _matadd(A, B, -1)


def _matscale(A, c):
    return tuple(tuple(a * c for a in row) for row in A)


def _matsubs(A, mapping):
    return tuple(tuple(a.substitute(mapping) for a in row) for row in A)


def _flatten(A) -> Vec:
    return Vec(p for row in A for p in row)


@dataclass(frozen=True)
class ModuleMorphism:
    """``phi(v_j) = sum_k matrix[j][k](d) w_k`` from ``source`` to ``target``."""

    source: FreeModulePresentation
    target: FreeModulePresentation
    matrix: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self):
        if self.source.algebra != self.target.algebra:
            raise PresentationMismatch("morphism between modules over different algebras")
        mat = tuple(tuple(Poly.coerce(p) for p in row) for row in self.matrix)
        if len(mat) != self.source.rank or any(len(r) != self.target.rank for r in mat):
            raise ValueError(f"morphism matrix must be {self.source.rank}x{self.target.rank}")
        for row in mat:
            for p in row:
                if p.variables() & {LAM, MU, "z"}:
                    raise ValueError("morphism entries must be polynomials in d")
        object.__setattr__(self, "matrix", mat)

    def apply(self, m: Sequence[Poly]) -> Vec:
        out = [ZERO] * self.target.rank
        for j, c in enumerate(m):
            if c:
                for k, p in enumerate(self.matrix[j]):
                    out[k] = out[k] + c * p
        return Vec(out)


def compose(phi: ModuleMorphism, psi: ModuleMorphism) -> ModuleMorphism:
    """``psi o phi``."""
    if phi.target != psi.source:
        raise PresentationMismatch("morphisms are not composable")
    rows = [psi.apply(row) for row in phi.matrix]
    return ModuleMorphism(phi.source, psi.target, tuple(tuple(r) for r in rows))


# -- operations ------------------------------------------------------------


def action(M: FreeModulePresentation, x: Sequence[Poly], m: Sequence[Poly], spectral=LAM) -> Vec:
    if len(x) != M.algebra.rank or len(m) != M.rank:
        raise PresentationMismatch("element length does not match the module")
    return sesquilinear(M.action, M.rank, x, m, spectral)


def _free_axioms(M: FreeModulePresentation) -> list[Residual]:
    P = M.algebra
    out = []
    for i, a in enumerate(P.generators):
        ea = P.gen(i)
        for j, b in enumerate(P.generators):
            eb = P.gen(j)
            inner = bracket(P, ea, eb, LAM)
            for k, v in enumerate(M.basis):
                m = M.vec(k)
                lhs = action(M, ea, action(M, eb, m, MU), LAM)
                swap = action(M, eb, action(M, ea, m, LAM), MU)
                composed = action(M, inner, m, X + Y)
                out.append(Residual((a, b, v), lhs - swap - composed))
    return out


def _torsion_axioms(M: TorsionModule) -> list[Residual]:
    P = M.algebra
    n = M.dimension
    Dm = M.del_action
    out = []
    for g in P.generators:
        A = M.action[g]
        shifted = _matadd(Dm, _matscale(_identity(n), X))
        residual = _matsub(_matmul(A, Dm), _matmul(shifted, A))
        out.append(Residual((g, "d"), _flatten(residual)))
    for i, a in enumerate(P.generators):
        Aa = M.action[a]
        for j, b in enumerate(P.generators):
            Ab_mu = _matsubs(M.action[b], {LAM: Y})
            lhs = _matsub(_matmul(Aa, Ab_mu), _matmul(Ab_mu, Aa))
            composed = _zero_matrix(n)
            for k, c in enumerate(P.generators):
                coeff = P.structure[(i, j)][k]
                if not coeff:
                    continue
                coeff = coeff.substitute({DEL: -X - Y})
                Ak = _matsubs(M.action[c], {LAM: X + Y})
                composed = _matadd(composed, _matscale(Ak, coeff))
            out.append(Residual((a, b), _flatten(_matsub(lhs, composed))))
    return out


def _identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def check_module_axioms(M: FreeModulePresentation | TorsionModule) -> list[Residual]:
    """Residuals of ``a x (b y m) - b y (a x m) - [a x b] _(x+y) m``.

    For torsion modules the compatibility ``a x (d m) = (d + x) a x m``
    is not structural and is checked as well.
    """
    if isinstance(M, TorsionModule):
        return _torsion_axioms(M)
    return _free_axioms(M)


def check_morphism(phi: ModuleMorphism) -> list[Residual]:
    """Residuals ``e_i x phi(v_j) - phi(e_i x v_j)``."""
    src, tgt = phi.source, phi.target
    P = src.algebra
    out = []
    for i, g in enumerate(P.generators):
        e = P.gen(i)
        for j, v in enumerate(src.basis):
            image = phi.matrix[j]
            lhs = action(tgt, e, Vec(image), LAM)
            rhs = phi.apply(action(src, e, src.vec(j), LAM))
            out.append(Residual((g, v), lhs - rhs))
    return out


# -- constructors ----------------------------------------------------------


def make_Mab(a=None, b=None, algebra: AlgebraPresentation | None = None, basis: str = "v", name: str = "") -> FreeModulePresentation:
    """Rank-one ``Vir``-module with ``L x v = (d + a x + b) v``."""
    P = algebra or make_vir()
    a = Poly.var("a") if a is None else Poly.coerce(a)
    b = Poly.var("b") if b is None else Poly.coerce(b)
    return FreeModulePresentation(P, (basis,), {(0, 0): Vec([D + a * X + b])}, name or "M")


def make_trivial(algebra: AlgebraPresentation, u=None, name: str = "") -> TorsionModule:
    """One-dimensional ``C_u``: ``d`` acts as ``u``, every generator as zero."""
    u = Poly.var("u") if u is None else Poly.coerce(u)
    return TorsionModule(algebra, 1, ((u,),), {}, name or "C_u")


def make_regular(P: AlgebraPresentation, name: str = "") -> FreeModulePresentation:
    return FreeModulePresentation(P, P.generators, dict(P.structure), name or f"{P.name or 'A'}_reg")


def make_rank_one(P: AlgebraPresentation, phis: Sequence[Poly] | Mapping[str, Poly], basis: str = "v", name: str = "") -> FreeModulePresentation:
    """``e_i x v = phis[i](d, x) v``.  Not verified."""
    if isinstance(phis, Mapping):
        phis = [Poly.coerce(phis.get(g, ZERO)) for g in P.generators]
    if len(phis) != P.rank:
        raise PresentationMismatch("one action polynomial per generator is required")
    action_map = {(i, 0): Vec([p]) for i, p in enumerate(phis)}
    return FreeModulePresentation(P, (basis,), action_map, name or "V")
