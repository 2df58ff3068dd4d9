from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from lcac.core import (
    SL2_BRACKETS,
    SL2_NAMES,
    TABLE_ROWS,
    AlgebraPresentation,
    InvalidPresentation,
    NonUnimodular,
    Vec,
    all_zero,
    bracket,
    center_candidates,
    change_of_basis,
    check_jacobi,
    check_skew,
    jacobi_residual,
    jth_product,
    make_current,
    make_rank2,
    make_semidirect,
    make_solvable,
    make_table_row,
    make_vir,
    make_w,
    nonzero,
    table_cocycle,
)
from lcac.polyring import LAM, ZERO, D, Poly, X, Y

from conftest import polys, to_sympy

a, b, c = Poly.var("a"), Poly.var("b"), Poly.var("c")
VIR = make_vir()


def test_vir_bracket_examples():
    L = VIR.gen("L")
    assert bracket(VIR, L, L) == Vec([D + 2 * X])
    assert bracket(VIR, L * D, L) == Vec([-X * (D + 2 * X)])


def test_w_reverse_bracket():
    W = make_w()
    got = bracket(W, W.gen("Y"), W.gen("L"))
    assert got == Vec([ZERO, (a - 1) * D + a * X - b])


def test_check_skew_examples():
    assert all_zero(check_skew(VIR))
    P = AlgebraPresentation(("A", "B"), {(0, 0): Vec([ZERO, X]), (0, 1): Vec.zero(2), (1, 1): Vec.zero(2)})
    bad = nonzero(check_skew(P))
    assert len(bad) == 1 and bad[0].value == Vec([ZERO, -D])
    assert all_zero(check_skew(make_w()))


def test_check_jacobi_examples():
    assert all_zero(check_jacobi(VIR))
    assert all_zero(check_jacobi(make_table_row(-6)))
    bad = nonzero(check_jacobi(make_solvable(D, 0)))
    assert ("A", "A", "B") in [r.where for r in bad]


def test_solvable_jacobi_residual_matches_hand_expansion():
    # [A x [A y B]] - [A y [A x B]] with [A x B] = d B gives (d + x) d - (d + y) d
    P = make_solvable(D, 0)
    A, B = P.gen("A"), P.gen("B")
    r = jacobi_residual(P, A, A, B)
    assert to_sympy(r[1]) == to_sympy((D + X) * D - (D + Y) * D)


def test_jth_products():
    L = VIR.gen("L")
    assert jth_product(VIR, L, L, 0) == Vec([D])
    assert jth_product(VIR, L, L, 1) == Vec([Poly.const(2)])
    assert jth_product(VIR, L, L, 5) == Vec([ZERO])


def test_constructors_self_verify():
    for P in (
        make_vir(),
        make_current(SL2_NAMES, SL2_BRACKETS),
        make_semidirect(SL2_NAMES, SL2_BRACKETS),
        make_w(),
        make_rank2(1, 0, 0, ("row", 0)),
        make_rank2(1, a, b),
    ):
        assert all_zero(check_skew(P)) and all_zero(check_jacobi(P))


def test_solvable_c0_passes():
    P = make_solvable(c, 0)
    assert all_zero(check_skew(P)) and all_zero(check_jacobi(P))


@pytest.mark.parametrize("row", TABLE_ROWS)
def test_table_rows_symbolic(row):
    P = make_table_row(row)
    assert all_zero(check_skew(P)) and all_zero(check_jacobi(P))


def test_unknown_table_row():
    with pytest.raises(InvalidPresentation):
        table_cocycle(2)


def test_bad_structure_constants_rejected():
    with pytest.raises(InvalidPresentation):
        make_current(("e", "f"), {("e", "f"): {"e": 1}, ("f", "e"): {"e": 1}})


def test_presentation_validation():
    with pytest.raises(InvalidPresentation):
        AlgebraPresentation((), {})
    with pytest.raises(InvalidPresentation):
        AlgebraPresentation(("L",), {(0, 0): Vec([D + Y])})


def test_center_examples():
    H = make_rank2(1, 1, 0, 2 * X + D)
    assert center_candidates(H, 8).dimension == 0
    abelian = AlgebraPresentation(("B",), {(0, 0): Vec.zero(1)})
    assert center_candidates(abelian, 5).dimension == 6
    assert center_candidates(VIR, 6).dimension == 0


def test_change_of_basis_examples():
    W = make_w(1, 0)
    ident = [[1, 0], [0, 1]]
    assert change_of_basis(W, ident) == W
    vir_plus = AlgebraPresentation(("A", "B"), {(0, 0): Vec([D + 2 * X, ZERO]), (0, 1): Vec.zero(2), (1, 1): Vec.zero(2)})
    shifted = change_of_basis(vir_plus, [[1, 3], [0, 1]])
    assert shifted.structure[(0, 0)] == Vec([D + 2 * X, -3 * (D + 2 * X)])
    with pytest.raises(NonUnimodular):
        change_of_basis(W, [[D, 0], [0, 1]])


def test_change_of_basis_roundtrip():
    H = make_table_row(0, 1, 1)
    g = D ** 2 - 3
    E = change_of_basis(H, [[1, g], [0, 1]])
    assert change_of_basis(E, [[1, -g], [0, 1]]) == H


# -- properties ------------------------------------------------------------------

elements = st.lists(polys(("d", "a"), max_terms=3, max_exp=2), min_size=2, max_size=2).map(Vec)


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_sesquilinearity(x, y):
    P = make_w()
    base = bracket(P, x, y)
    assert bracket(P, x * D, y) == base * (-X)
    assert bracket(P, x, y * D) == base * (D + X)


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_jth_product_reconstruction(x, y):
    P = make_table_row(1)
    full = bracket(P, x, y)
    top = max(p.degree(LAM) for p in full)
    rebuilt = Vec.zero(P.rank)
    for j in range(max(top, 0) + 2):
        rebuilt = rebuilt + jth_product(P, x, y, j) * (X ** j * Poly.const(1) / factorial(j))
    assert rebuilt == full


@settings(max_examples=40, deadline=None)
@given(elements, elements)
def test_skew_involution(x, y):
    P = make_table_row(-1)
    forward = bracket(P, x, y)
    backward = bracket(P, y, x)
    assert forward == Vec(-p.substitute({LAM: -X - D}) for p in backward)


@settings(max_examples=30, deadline=None)
@given(st.lists(polys(("d",), max_terms=3, max_exp=3), min_size=1, max_size=1))
def test_change_of_basis_inverse_property(gs):
    g = gs[0]
    H = make_w(1, 0)
    E = change_of_basis(H, [[1, g], [0, 1]])
    assert change_of_basis(E, [[1, -g], [0, 1]]) == H
