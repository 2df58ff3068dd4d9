"""Built-in reproduction suite behind ``lcac paper-verify``.

Each criterion collects named checks; a criterion passes when every check
does.  Criteria 1 and 4 run through the DSL on :data:`SUITE_SOURCE`, the
others call the library directly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .annihilation import Annihilation, IndexedElement, ann_jacobi, check_rep, default_sample
from .classify import classify_rank_one, solve_f, solve_p
from .core import (
    SL2_BRACKETS,
    SL2_NAMES,
    TABLE_ROWS,
    AlgebraPresentation,
    Vec,
    all_zero,
    make_current,
    make_rank2,
    make_semidirect,
    make_solvable,
    make_table_row,
    make_vir,
    make_w,
)
from .dsl import load
from .extensions import CocycleData, NoReduction, Reduction, build_extension, check_cocycle, reduce_extension
from .linalg import vector_to_poly
from .modules import check_module_axioms, make_Mab, make_rank_one
from .oracles import monomial_scan_reducible
from .polyring import DEL, LAM, ZERO, D, Poly, X, render
from .report import Config, Entry, run_document

SUITE_SOURCE = """\
# Algebras, modules and a morphism checked by criteria 1 and 4.
param a, b, c, beta, gamma;

algebra Vir {
  gen L;
  bracket L L = (d + 2x) L;
}

algebra CurSl2 {
  gen e, h, f;
  bracket e h = -2 e;
  bracket h e = 2 e;
  bracket h f = -2 f;
  bracket f h = 2 f;
  bracket e f = h;
  bracket f e = -h;
}

algebra VirCurSl2 {
  gen L, e, h, f;
  bracket L L = (d + 2x) L;
  bracket L e = (d + x) e;
  bracket L h = (d + x) h;
  bracket L f = (d + x) f;
  bracket e h = -2 e;
  bracket h e = 2 e;
  bracket h f = -2 f;
  bracket f h = 2 f;
  bracket e f = h;
  bracket f e = -h;
}

algebra W {
  gen L, Y;
  bracket L L = (d + 2x) L;
  bracket L Y = (d + a x + b) Y;
}

algebra Solv {
  gen A, B;
  bracket A B = c B;
}

algebra H1 {
  gen A, B;
  bracket A A = (d + 2x) A + beta (2x + d) B;
  bracket A B = (d + x) B;
}

algebra H0 {
  gen A, B;
  bracket A A = (d + 2x) A + (beta (2x + d)(x^2 + x d) + gamma (2x + d) d) B;
  bracket A B = d B;
}

algebra Hm1 {
  gen A, B;
  bracket A A = (d + 2x) A + (beta (2x + d) d^2 + gamma (2x + d)(x^2 + x d) d) B;
  bracket A B = (d - x) B;
}

algebra Hm4 {
  gen A, B;
  bracket A A = (d + 2x) A + beta (2x + d)(x^2 + x d)^3 B;
  bracket A B = (d - 4x) B;
}

algebra Hm6 {
  gen A, B;
  bracket A A = (d + 2x) A + beta (2x + d)(11 (x^2 + x d)^4 + 2 (x^2 + x d)^3 d^2) B;
  bracket A B = (d - 6x) B;
}

module M1 over Vir { basis v; act L v = (d + x + b) v; }
module M0 over Vir { basis w; act L w = (d + b) w; }
morphism Phi: M1 -> M0 { map v = (d + b) w; }

task check_algebra Vir;
task check_algebra CurSl2;
task check_algebra VirCurSl2;
task check_algebra W;
task check_algebra Solv;
task check_algebra H1;
task check_algebra H0;
task check_algebra Hm1;
task check_algebra Hm4;
task check_algebra Hm6;
task check_module M1;
task check_module M0;
task check_morphism Phi;
"""

CRITERIA_TITLES = {
    1: "axiom suite",
    2: "annihilation suite",
    3: "classification suite",
    4: "morphism check",
    5: "extension suite",
    6: "representation correspondence",
}
RUNTIME_LIMITS = {1: 10, 2: 30, 3: 10, 4: 1, 5: 60, 6: 10}
CRITERION1_TASKS = ("Vir", "CurSl2", "VirCurSl2", "W", "Solv", "H1", "H0", "Hm1", "Hm4", "Hm6")
ROW_NAMES = {1: "H1", 0: "H0", -1: "Hm1", -4: "Hm4", -6: "Hm6"}


@dataclass
class CriterionResult:
    number: int
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def title(self) -> str:
        return CRITERIA_TITLES[self.number]

    @property
    def limit(self) -> int:
        return RUNTIME_LIMITS[self.number]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    def failures(self) -> list[str]:
        return [f"{n}: {d}" if d else n for n, ok, d in self.checks if not ok]

    def entry(self, timings: bool) -> Entry:
        payload = {
            "checks": len(self.checks),
            "failed": self.failures(),
            "runtime_limit_s": self.limit,
        }
        millis = int(round(self.seconds * 1000)) if timings else 0
        return Entry(f"criterion {self.number}: {self.title}", "pass" if self.passed else "fail", payload, millis)


_suite_cache = {}


def suite_workspace():
    if "ws" not in _suite_cache:
        _suite_cache["ws"] = load(SUITE_SOURCE)
    return _suite_cache["ws"]


def _run_suite_tasks(names: tuple) -> dict:
    ws = suite_workspace()
    tasks = [t for t in ws.document.tasks if t.target in names]
    return {t.target: e for t, e in zip(tasks, run_document(ws, Config(), tasks))}


# -- criteria --------------------------------------------------------------


def criterion_1(seed: int = 0) -> CriterionResult:
    res = CriterionResult(1)
    entries = _run_suite_tasks(CRITERION1_TASKS)
    for name in CRITERION1_TASKS:
        e = entries[name]
        res.add(f"{name} skew and Jacobi", e.status == "pass", f"{e.payload.get('nonzero')} nonzero residuals")
    # the document and the constructors describe the same presentations
    ws = suite_workspace()
    built = {
        "Vir": make_vir(),
        "CurSl2": make_current(SL2_NAMES, SL2_BRACKETS),
        "VirCurSl2": make_semidirect(SL2_NAMES, SL2_BRACKETS),
        "W": make_w(),
        "Solv": make_solvable(Poly.var("c"), 0),
    }
    built.update({ROW_NAMES[a]: make_table_row(a) for a in TABLE_ROWS})
    for name, P in built.items():
        res.add(f"{name} source matches constructor", ws.get(name) == P)
    return res


def criterion_2(seed: int = 0) -> CriterionResult:
    res = CriterionResult(2)
    vir = Annihilation(make_vir())
    L = lambda m: IndexedElement.symbol("L", m + 1)
    bad = [(m, n) for m in range(11) for n in range(11) if vir.bracket(L(m), L(n)) != L(m + n).scale(m - n)]
    res.add("[L_m, L_n] = (m - n) L_(m+n), 0 <= m, n <= 10", not bad, f"fails at {bad[:3]}")

    a, b = Poly.var("a"), Poly.var("b")
    H = Annihilation(make_rank2(1, a, b))
    bad = []
    for m in range(9):
        for n in range(9):
            expected = IndexedElement.symbol("B", m + n, b)
            if m + n >= 1:
                expected = expected + IndexedElement.symbol("B", m + n - 1, (a - 1) * m - n)
            if H.symbol_bracket("A", m, "B", n) != expected:
                bad.append((m, n))
    res.add("[A_(m), B_(n)] = ((a-1)m - n) B_(m+n-1) + b B_(m+n), m, n <= 8", not bad, f"fails at {bad[:3]}")

    form = make_rank2(1, 1, 0, Poly.var("beta") * (2 * X + D))
    for label, P in (("Vir", make_vir()), ("form (a, b) = (1, 0)", form)):
        engine = Annihilation(P)
        bad = 0
        for m in range(13):
            for n in range(13 - m):
                for p in range(13 - m - n):
                    for g1 in P.generators:
                        for g2 in P.generators:
                            for g3 in P.generators:
                                x, y, z = (IndexedElement.symbol(g, k) for g, k in ((g1, m), (g2, n), (g3, p)))
                                if not ann_jacobi(engine, x, y, z).is_zero():
                                    bad += 1
        res.add(f"Jacobi on {label}, m + n + p <= 12", bad == 0, f"{bad} nonzero")
    return res


def criterion_3(seed: int = 0) -> CriterionResult:
    res = CriterionResult(3)
    for (a, b), dim in {(1, 0): 1, (2, 0): 0, (1, 1): 0, (0, 0): 0, (-1, 3): 0}.items():
        space = solve_f(a, b, 6)
        ok = space.dimension == dim
        if dim == 1 and ok:
            ok = vector_to_poly(space.nullspace[0], LAM) == 1
        res.add(f"solve_f({a}, {b}) at D = 6 has dimension {dim}", ok, f"got {space.dimension}")
    affine = {Poly.const(1), X}
    for degree in range(2, 9):
        space = solve_p(0, 0, ZERO, ZERO, degree)
        basis = {vector_to_poly(v, LAM) for v in space.nullspace}
        ok = space.is_homogeneous_zero() and basis == affine
        res.add(f"solve_p(Q = 0, f = 0) at D = {degree} is {{alpha x + beta}}", ok)
    space = solve_p(1, 0, ZERO, Poly.const(1), 6)
    res.add("solve_p(Q = 0, f = 1) at D = 6 is {alpha x + beta}",
            space.is_homogeneous_zero() and {vector_to_poly(v, LAM) for v in space.nullspace} == affine)
    res.add("solve_p(Q = 2x + d, f = 1) at D = 8 is empty", solve_p(1, 0, 2 * X + D, Poly.const(1), 8).is_empty)

    families = classify_rank_one(make_w(1, 0), 6)
    alpha, beta, gamma = Poly.var("alpha"), Poly.var("beta"), Poly.var("gamma")
    expected = {"L": D + alpha * X + beta, "Y": gamma}
    res.add("W(1, 0) family is (d + alpha x + beta, gamma)", len(families) == 1 and families[0].actions == expected)
    for (a, b) in ((1, 0), (2, 0), (1, 1), (0, 0), (-1, 3), (Fraction(1, 2), 0)):
        fams = classify_rank_one(make_w(a, b), 6)
        for fam in fams:
            residuals = check_module_axioms(make_rank_one(make_w(a, b), fam.actions))
            res.add(f"W({a}, {b}) family verifies symbolically", fam.verified and all_zero(residuals))
        y_acts = any(fam.actions["Y"] for fam in fams)
        res.add(f"W({a}, {b}): Y acts nontrivially iff (a, b) = (1, 0)", y_acts == ((a, b) == (1, 0)))
    for a in TABLE_ROWS:
        P = make_table_row(a, 1, 1)
        fams = classify_rank_one(P, 6)
        res.add(f"table row {a}: families verify, B acts by zero",
                all(f.verified for f in fams) and all(not f.actions["B"] for f in fams))
    return res


def criterion_4(seed: int = 0) -> CriterionResult:
    res = CriterionResult(4)
    entries = _run_suite_tasks(("M1", "M0", "Phi"))
    for name in ("M1", "M0", "Phi"):
        res.add(f"{name} residuals vanish for symbolic b", entries[name].status == "pass")
    return res


def _random_poly(rng: random.Random, var_poly: Poly, max_degree: int) -> Poly:
    degree = rng.randint(0, max_degree)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(degree)]
    coeffs.append(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)))
    return sum((var_poly ** k * c for k, c in enumerate(coeffs)), ZERO)


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


VIR = D + 2 * X


def _first_setting(a, b, delta: int) -> tuple:
    H = AlgebraPresentation(("A", "B"), {(0, 0): Vec([VIR, ZERO]), (0, 1): Vec.zero(2), (1, 1): Vec([ZERO, VIR * delta])})
    return H, make_rank_one(H, {"A": D + a * X + b})


def _second_setting(phi: Poly) -> tuple:
    H = AlgebraPresentation(("A", "B"), {(0, 0): Vec([VIR, ZERO]), (0, 1): Vec.zero(2), (1, 1): Vec.zero(2)})
    return H, make_rank_one(H, {"B": phi})


def criterion_5(seed: int = 0) -> CriterionResult:
    res = CriterionResult(5)
    rng = random.Random(seed)
    for trial in range(20):
        f = _random_poly(rng, D, 5)
        a, b = _random_rational(rng), _random_rational(rng)
        delta = trial % 2
        H, M = _first_setting(a, b, delta)
        C = CocycleData(ZERO, (D + a * X + b) * f.substitute({DEL: D + X}), -delta * VIR * f)
        tag = f"first setting #{trial} (a, b, delta) = ({a}, {b}, {delta}), f = {render(f)}"
        res.add(f"{tag}: cocycle", all_zero(check_cocycle(H, M, C)))
        E = build_extension(H, M, C)
        r = reduce_extension(E, "-B", 12)
        ok = isinstance(r, Reduction) and r.g == f and r.reduced == build_extension(H, M, CocycleData())
        res.add(f"{tag}: recovers g = f and the split form", ok, "" if ok else _describe(r))

        f = _random_poly(rng, D, 5)
        phi = _random_poly(rng, X, 3)
        H, V = _second_setting(phi)
        C = CocycleData(VIR * f, -phi * f.substitute({DEL: D + X}), ZERO)
        tag = f"second setting #{trial} phi = {render(phi)}, f = {render(f)}"
        res.add(f"{tag}: cocycle", all_zero(check_cocycle(H, V, C)))
        E = build_extension(H, V, C)
        r = reduce_extension(E, "+A", 12)
        ok = isinstance(r, Reduction) and r.g == f and r.reduced == build_extension(H, V, CocycleData())
        res.add(f"{tag}: recovers g = f and the split form", ok, "" if ok else _describe(r))

    for a in TABLE_ROWS:
        variants = [(1, 1)] if a in (0, -1) else [(1, 0)]
        if a in (0, -1):
            variants += [(1, 0), (0, 1)]
        for beta, gamma in variants:
            T = make_table_row(a, beta, gamma)
            r = reduce_extension(T, "A", 12, ideal="B")
            scan = monomial_scan_reducible(T, "A", 1, "B", 12)
            res.add(f"table row {a} (beta, gamma) = ({beta}, {gamma}): no reduction at D = 12",
                    isinstance(r, NoReduction) and not scan, f"solver {type(r).__name__}, scan reducible {scan}")
    return res


def _describe(r) -> str:
    if isinstance(r, NoReduction):
        return "no reduction"
    return f"g = {render(r.g)}"


def criterion_6(seed: int = 0) -> CriterionResult:
    res = CriterionResult(6)
    M = make_Mab()
    res.add("M_{a,b} over Vir, indices <= 6", all_zero(check_rep(M, default_sample(M, 6))))
    alpha, beta, gamma = Poly.var("alpha"), Poly.var("beta"), Poly.var("gamma")
    W = make_w(1, 0)
    V = make_rank_one(W, {"L": D + alpha * X + beta, "Y": gamma})
    res.add("(d + alpha x + beta, gamma) over W(1, 0), indices <= 6", all_zero(check_rep(V, default_sample(V, 6))))
    return res


CRITERIA: dict[int, Callable[[int], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
}


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    start = time.perf_counter()
    result = CRITERIA[number](seed)
    result.seconds = time.perf_counter() - start
    return result


def run_suite(seed: int = 0, timings: bool = False) -> list[Entry]:
    return [run_criterion(n, seed).entry(timings) for n in sorted(CRITERIA)]
