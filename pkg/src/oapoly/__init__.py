"""Exact orthogonal-additivity checks for sums of powers of linear functionals."""

from .core import (
    DimensionError,
    Functional,
    MonomialPoly,
    PowersForm,
    amalgamate,
    derivative_form,
    derivative_monomial,
    evaluate,
    evaluate_form,
    expand,
)
from .lattice import (
    DisjointTuple,
    HomVerdict,
    OAVerdict,
    classify_homomorphism,
    is_orthogonally_additive,
    lattice_abs,
    lattice_join,
    lattice_meet,
    orthosymmetry_check,
    symmetric_form_eval,
    theorem_predicate,
)
from .linalg import ExactMatrix, SingularMatrixError, determinant, solve_exact
from .sharpness import SharpnessInstance, build_system, gen_even, gen_odd, verify_instance

__version__ = "0.1.0"
