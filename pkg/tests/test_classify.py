from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lcac.classify import (
    UnrecognizedNormalForm,
    check_solvable_candidate,
    classify_rank_one,
    normal_form,
    solve_f,
    solve_p,
)
from lcac.core import TABLE_ROWS, all_zero, make_rank2, make_solvable, make_table_row, make_vir, make_vir_sum, make_w
from lcac.linalg import LinearSystem, check_solution, solve_linear, vector_to_poly
from lcac.modules import check_module_axioms, make_rank_one
from lcac.polyring import LAM, ZERO, D, Poly, X, Y

alpha, beta, gamma = Poly.var("alpha"), Poly.var("beta"), Poly.var("gamma")


# -- linear systems ----------------------------------------------------------------


def test_solve_linear_examples():
    s = solve_linear(LinearSystem.build([[1, 1], [1, -1]], [1, 1]))
    assert s.particular == (1, 0) and s.nullspace == ()
    assert solve_linear(LinearSystem.build([[0]], [1])).is_empty
    s = solve_linear(LinearSystem.build([[1, 1]], [0]))
    assert s.particular == (0, 0) and s.nullspace == ((-1, 1),)


matrices = st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=1, max_size=4),
        st.integers(-3, 3),
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_solutions_satisfy_system_and_match_sympy(data):
    rows, seed = data
    rhs = [sum(r) * seed % 5 - 2 for r in rows]
    system = LinearSystem.build(rows, rhs)
    space = solve_linear(system)
    M = sympy.Matrix(rows)
    consistent = M.rank() == M.row_join(sympy.Matrix(rhs)).rank()
    assert space.is_empty == (not consistent)
    if consistent:
        assert check_solution(system, space.particular)
        assert len(space.nullspace) == M.cols - M.rank()
        for v in space.nullspace:
            assert check_solution(system, v, homogeneous=True)


# -- solve_f / solve_p ---------------------------------------------------------------


def _sympy_f_dimension(a, b, degree):
    lam, mu = sympy.symbols("x y")
    cs = sympy.symbols(f"c0:{degree + 1}")
    f = lambda t: sum(c * t ** k for k, c in enumerate(cs))
    expr = sympy.expand(f(lam + mu) * (-lam - mu + a * lam + b) + mu * f(mu))
    eqs = sympy.Poly(expr, lam, mu).coeffs()
    A, _ = sympy.linear_eq_to_matrix(eqs, cs)
    return len(cs) - A.rank()


@pytest.mark.parametrize("ab,dim", [((1, 0), 1), ((2, 0), 0), ((1, 1), 0), ((0, 0), 0), ((-1, 3), 0)])
def test_solve_f_examples(ab, dim):
    space = solve_f(*ab, 6)
    assert space.dimension == dim
    assert _sympy_f_dimension(*ab, 6) == dim
    if dim:
        assert vector_to_poly(space.nullspace[0], LAM) == 1


def test_solve_p_examples():
    affine = {Poly.const(1), X}
    for degree in range(2, 9):
        space = solve_p(0, 0, ZERO, ZERO, degree)
        assert space.dimension == 2 and {vector_to_poly(v, LAM) for v in space.nullspace} == affine
    assert solve_p(1, 0, 2 * X + D, Poly.const(1), 8).is_empty
    space = solve_p(1, 0, ZERO, Poly.const(1), 6)
    assert space.is_homogeneous_zero() and {vector_to_poly(v, LAM) for v in space.nullspace} == affine


def _substitute_p(p, Q, f):
    lhs = (X - Y) * p.substitute({LAM: X + Y}) + Q.substitute({"d": -X - Y}) * f.substitute({LAM: X + Y})
    return lhs - (X * p - Y * p.substitute({LAM: Y}))


@pytest.mark.parametrize("degree", range(2, 9))
def test_solution_spaces_substitute_back(degree):
    for a, b in ((1, 0), (2, 0), (0, 0)):
        for v in solve_f(a, b, degree).nullspace:
            f = vector_to_poly(v, LAM)
            assert f.substitute({LAM: X + Y}) * (-X - Y + a * X + b) + Y * f.substitute({LAM: Y}) == 0
    space = solve_p(1, 0, ZERO, ZERO, degree)
    for v in space.nullspace:
        assert _substitute_p(vector_to_poly(v, LAM), ZERO, ZERO) == 0


def _embed(space, degree):
    """Polynomials spanned by the nullspace."""
    return {vector_to_poly(v, LAM) for v in space.nullspace}


@pytest.mark.parametrize("degree", range(2, 8))
def test_monotone_in_degree(degree):
    for a, b in ((1, 0), (2, 0)):
        small, large = solve_f(a, b, degree), solve_f(a, b, degree + 1)
        assert small.dimension <= large.dimension
        assert _embed(small, degree) <= _embed(large, degree + 1)
    small, large = solve_p(0, 0, ZERO, ZERO, degree), solve_p(0, 0, ZERO, ZERO, degree + 1)
    assert _embed(small, degree) <= _embed(large, degree + 1)


# -- classification --------------------------------------------------------------


def test_normal_forms():
    assert normal_form(make_w(1, 0)).kind == "delta1"
    assert normal_form(make_vir_sum()).kind == "vir_sum"
    assert normal_form(make_rank2(0, 0, 0)).kind == "delta0"
    assert normal_form(make_solvable(0, 0)).kind == "solvable"
    with pytest.raises(UnrecognizedNormalForm):
        normal_form(make_vir())


def test_classify_w10():
    (fam,) = classify_rank_one(make_w(1, 0), 6)
    assert fam.actions == {"L": D + alpha * X + beta, "Y": gamma}
    assert fam.verified


def test_classify_vir_sum():
    fams = classify_rank_one(make_vir_sum(), 6)
    assert len(fams) == 2
    for fam in fams:
        zero = [g for g, p in fam.actions.items() if not p]
        assert len(zero) == 1
        other = "A" if zero == ["B"] else "B"
        assert fam.actions[other] == D + alpha * X + beta


def test_classify_delta0():
    fams = classify_rank_one(make_rank2(0, 0, 0), 4)
    actions = [f.actions for f in fams]
    assert {"A": D + alpha * X + beta, "B": ZERO} in actions
    free = [f for f in fams if not f.actions["A"]]
    assert len(free) == 1 and free[0].actions["B"].degree(LAM) == 4
    assert all(f.verified for f in fams)


@pytest.mark.parametrize("row", TABLE_ROWS)
def test_table_rows_b_acts_by_zero(row):
    fams = classify_rank_one(make_table_row(row, 1, 1), 6)
    assert fams and all(not f.actions["B"] for f in fams)


@pytest.mark.parametrize("ab", [(2, 0), (1, 1), (0, 0), (-1, 3), (Fraction(1, 2), Fraction(-2, 3))])
def test_gamma_only_for_a1_b0(ab):
    fams = classify_rank_one(make_w(*ab), 6)
    assert all(not f.actions["Y"] for f in fams)


def test_families_verify_symbolically():
    for P in (make_w(1, 0), make_vir_sum(), make_rank2(0, 0, 0), make_solvable(0, 0), make_solvable(1, 0)):
        for fam in classify_rank_one(P, 5):
            assert all_zero(check_module_axioms(make_rank_one(P, fam.actions)))


def test_classify_rejects_symbolic_parameters():
    with pytest.raises(ValueError):
        classify_rank_one(make_w(), 4)


def test_solvable_candidates():
    P = make_solvable(0, 0)
    residuals, ok = check_solvable_candidate(P, X ** 2, Poly.const(1))
    assert all_zero(residuals) and ok
    Q = make_solvable(Poly.const(2), 0)
    residuals, ok = check_solvable_candidate(Q, X, Poly.const(1))
    assert not ok
