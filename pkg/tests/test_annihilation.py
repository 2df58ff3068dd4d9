import random

from hypothesis import given, settings, strategies as st

from lcac.annihilation import (
    Annihilation,
    IndexedElement,
    ann_bracket,
    ann_jacobi,
    check_rep,
    default_sample,
    flatten,
    flatten_stepwise,
    rep_action,
    rep_bound,
)
from lcac.core import Vec, all_zero, make_rank2, make_table_row, make_vir, make_w, nonzero
from lcac.modules import FreeModulePresentation, make_Mab, make_rank_one, make_regular, make_trivial
from lcac.polyring import ZERO, D, Poly, X

a, b = Poly.var("a"), Poly.var("b")
S = IndexedElement.symbol
VIR = make_vir()


def test_virasoro_relations():
    for m in range(11):
        for n in range(11):
            assert ann_bracket(VIR, S("L", m + 1), S("L", n + 1)) == S("L", m + n + 1, m - n)


def test_rank2_mixed_bracket_symbolic():
    H = Annihilation(make_rank2(1, a, b))
    for m in range(9):
        for n in range(9):
            expected = S("B", m + n, b)
            if m + n:
                expected = expected + S("B", m + n - 1, (a - 1) * m - n)
            assert H.symbol_bracket("A", m, "B", n) == expected


def test_derivation_bracket():
    H = make_rank2(1, a, b)
    assert ann_bracket(H, IndexedElement.derivation(), S("B", 3)) == S("B", 2, -3)
    assert ann_bracket(H, S("B", 3), IndexedElement.derivation()) == S("B", 2, 3)
    assert ann_bracket(H, IndexedElement.derivation(), S("B", 0)).is_zero()


def test_rep_action_examples():
    M = make_Mab()
    v = M.vec("v")
    assert rep_action(M, "L", 0, v)[0] == Vec([D + b])
    assert rep_action(M, "L", 1, v)[0] == Vec([a])
    for k in range(2, 6):
        assert rep_action(M, "L", k, v)[0] == Vec([ZERO])
    assert rep_bound(M).bound[("L", "v")] == 1
    R = make_regular(VIR)
    assert rep_action(R, "L", 1, R.vec("L"))[0] == Vec([Poly.const(2)])


def test_check_rep_examples():
    M = make_Mab()
    assert all_zero(check_rep(M, default_sample(M, 6)))
    W = make_w(1, 0)
    V = make_rank_one(W, {"L": D + Poly.var("alpha") * X + Poly.var("beta"), "Y": Poly.var("gamma")})
    assert all_zero(check_rep(V, default_sample(V, 6)))


def test_check_rep_detects_corruption():
    # flip the sign of d in the action: no longer a module
    bad = FreeModulePresentation(VIR, ("v",), {(0, 0): Vec([-D + a * X + b])})
    assert nonzero(check_rep(bad, default_sample(bad, 3)))


def test_jacobi_on_table_rows():
    for row in (1, 0, -4):
        engine = Annihilation(make_table_row(row, 1, 1))
        for m in range(6):
            for n in range(6 - m):
                for p in range(6 - m - n):
                    x, y, z = S("A", m), S("A", n), S("B", p)
                    assert ann_jacobi(engine, x, y, z).is_zero()
                    assert ann_jacobi(engine, x, y, S("A", p)).is_zero()


def test_flatten_matches_formula():
    assert flatten(D ** 2, "L", 5) == S("L", 3, 20)
    assert flatten(D ** 3, "L", 2).is_zero()


indexed = st.dictionaries(
    st.tuples(st.sampled_from(["A", "B"]), st.integers(0, 6)), st.integers(-5, 5), max_size=4
).map(IndexedElement)


@settings(max_examples=80, deadline=None)
@given(indexed, indexed)
def test_antisymmetry(x, y):
    H = make_table_row(0, 1, 1)
    assert ann_bracket(H, x, y) == -ann_bracket(H, y, x)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 12), st.lists(st.integers(-4, 4), min_size=1, max_size=6), st.integers(0, 10 ** 6))
def test_flatten_order_independent(N, coeffs, seed):
    p = sum((D ** k * c for k, c in enumerate(coeffs)), ZERO)
    assert flatten_stepwise(p, "L", N, random.Random(seed)) == flatten(p, "L", N)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.integers(-3, 3), st.integers(-3, 3))
def test_d_compatibility_of_rep(n, a_val, b_val):
    # a_(n)(d v) - d(a_(n) v) = n a_(n-1) v, the image of [d, a_(n)] = -n a_(n-1)
    M = make_Mab(a_val, b_val)
    v = M.vec("v")
    lhs = rep_action(M, "L", n, v * D)[0] - rep_action(M, "L", n, v)[0] * D
    rhs = rep_action(M, "L", n - 1, v)[0] * n if n else Vec([ZERO])
    assert lhs == rhs


def test_trivial_torsion_has_no_symbols_acting():
    # the trivial module is torsion; every generator acts by zero on it
    assert make_trivial(VIR).is_trivial()
