"""Exact computations with finite Lie conformal algebras."""

from .annihilation import Annihilation, IndexedElement, ann_bracket, annihilation_table, check_rep
from .classify import ActionFamily, classify_rank_one, normal_form, solve_f, solve_p
from .core import (
    AlgebraPresentation,
    bracket,
    change_of_basis,
    check_jacobi,
    check_skew,
    make_current,
    make_rank2,
    make_semidirect,
    make_solvable,
    make_table_row,
    make_vir,
    make_w,
)
from .dsl import Document, parse_document, serialize
from .extensions import CocycleData, NoReduction, Reduction, build_extension, check_cocycle, reduce_extension
from .linalg import LinearSystem, SolutionSpace, solve_linear
from .modules import (
    FreeModulePresentation,
    ModuleMorphism,
    TorsionModule,
    check_module_axioms,
    check_morphism,
    make_Mab,
    make_rank_one,
    make_trivial,
)
from .polyring import D, Poly, X, Y, Z, render

__version__ = "0.1.0"

__all__ = [
    "ActionFamily",
    "AlgebraPresentation",
    "Annihilation",
    "CocycleData",
    "D",
    "Document",
    "FreeModulePresentation",
    "IndexedElement",
    "LinearSystem",
    "ModuleMorphism",
    "NoReduction",
    "Poly",
    "Reduction",
    "SolutionSpace",
    "TorsionModule",
    "X",
    "Y",
    "Z",
    "__version__",
    "ann_bracket",
    "annihilation_table",
    "bracket",
    "build_extension",
    "change_of_basis",
    "check_cocycle",
    "check_jacobi",
    "check_module_axioms",
    "check_morphism",
    "check_rep",
    "check_skew",
    "classify_rank_one",
    "make_Mab",
    "make_current",
    "make_rank2",
    "make_rank_one",
    "make_semidirect",
    "make_solvable",
    "make_table_row",
    "make_trivial",
    "make_vir",
    "make_w",
    "normal_form",
    "parse_document",
    "reduce_extension",
    "render",
    "serialize",
    "solve_f",
    "solve_linear",
    "solve_p",
]
