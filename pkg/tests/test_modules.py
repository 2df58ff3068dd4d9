import pytest
from hypothesis import given, settings

from lcac.core import Vec, all_zero, make_solvable, make_vir, make_w, nonzero
from lcac.modules import (
    ModuleMorphism,
    TorsionModule,
    action,
    check_module_axioms,
    check_morphism,
    compose,
    make_Mab,
    make_rank_one,
    make_regular,
    make_trivial,
)
from lcac.polyring import D, Poly, X

from conftest import rationals

a, b = Poly.var("a"), Poly.var("b")
alpha, beta, gamma = Poly.var("alpha"), Poly.var("beta"), Poly.var("gamma")
VIR = make_vir()


def test_action_examples():
    M = make_Mab()
    assert action(M, VIR.gen("L"), M.vec("v")) == Vec([D + a * X + b])
    assert action(M, VIR.gen("L") * D, M.vec("v")) == Vec([-X * (D + a * X + b)])
    R = make_regular(VIR)
    assert action(R, VIR.gen("L"), R.vec("L")) == Vec([D + 2 * X])


def test_module_axiom_examples():
    assert all_zero(check_module_axioms(make_Mab()))
    good = make_rank_one(make_w(1, 0), {"L": D + alpha * X + beta, "Y": gamma})
    assert all_zero(check_module_axioms(good))
    bad = make_rank_one(make_w(2, 0), {"L": D + alpha * X + beta, "Y": gamma})
    residuals = nonzero(check_module_axioms(bad))
    assert residuals and all(gamma in [Poly.var(n) for n in r.value[0].parameters()] for r in residuals)


def test_constructor_examples():
    for P in (VIR, make_w(), make_solvable(0, 0)):
        assert all_zero(check_module_axioms(make_trivial(P)))
    assert all_zero(check_module_axioms(make_regular(VIR)))
    assert all_zero(check_module_axioms(make_rank_one(make_solvable(0, 0), {"A": X ** 2, "B": 1})))


def test_morphism_examples():
    M1, M0 = make_Mab(1, b), make_Mab(0, b, basis="w")
    assert all_zero(check_morphism(ModuleMorphism(M1, M0, [[D + b]])))
    M = make_Mab()
    assert all_zero(check_morphism(ModuleMorphism(M, M, [[1]])))
    bad = nonzero(check_morphism(ModuleMorphism(make_Mab(1, 0), make_Mab(2, 0, basis="w"), [[1]])))
    assert len(bad) == 1 and bad[0].value == Vec([X])


def test_morphism_validation():
    with pytest.raises(ValueError):
        ModuleMorphism(make_Mab(), make_Mab(), [[X]])
    with pytest.raises(ValueError):
        ModuleMorphism(make_Mab(), make_Mab(), [[1, 0]])


def test_torsion_triviality_on_corpus():
    # a nonzero action cannot satisfy the d-compatibility on a torsion module
    P = make_w(1, 0)
    corpus = [
        make_trivial(P, 3),
        TorsionModule(P, 1, ((Poly.const(2),),), {"L": ((Poly.const(1),),)}),
        TorsionModule(P, 1, ((Poly.const(0),),), {"Y": ((X,),)}),
        TorsionModule(P, 2, ((1, 0), (0, 1)), {}),
    ]
    for M in corpus:
        if all_zero(check_module_axioms(M)):
            assert M.is_trivial()
    assert not all_zero(check_module_axioms(corpus[1]))


@settings(max_examples=25, deadline=None)
@given(rationals, rationals, rationals)
def test_composition_of_morphisms(b_val, c1, c2):
    # M_{1,b} -> M_{0,b} -> M_{0,b}, the second a scalar multiple
    M1, M0 = make_Mab(1, b_val), make_Mab(0, b_val, basis="w")
    M0b = make_Mab(0, b_val, basis="u")
    phi = ModuleMorphism(M1, M0, [[D + b_val]])
    psi = ModuleMorphism(M0, M0b, [[Poly.const(c1) + c2 * 0]])
    assert all_zero(check_morphism(phi)) and all_zero(check_morphism(psi))
    assert all_zero(check_morphism(compose(phi, psi)))


@settings(max_examples=25, deadline=None)
@given(rationals, rationals)
def test_specialized_Mab_modules(a_val, b_val):
    assert all_zero(check_module_axioms(make_Mab(a_val, b_val)))
