"""Star configurations X(l) on generic plane curves, in exact rational arithmetic."""

from .classify import Verdict, answer, cross_validate, degree_bound, dimension_count
from .cubic import WeierstrassCurve, CurvePoint, INFINITY, add, chord_third, construct_x4, two_torsion
from .harness import evaluation_matrix, interpolate, replicate_l4, replicate_l5
from .linalg import Matrix, kernel_basis, rank, row_reduce, span_dimension
from .polyring import Form, evaluate, format_form, monomial_basis, mul, parse_form, product_excluding, random_form
from .star import (
    Line,
    ProjPoint,
    StarConfig,
    build_star,
    contains_star,
    hilbert_function_computed,
    hilbert_function_formula,
    ideal_generators,
    intersect_lines,
    random_curve_through,
    random_star,
)
from .tangent import TangentSystem, build_system, deficiency, dominance_check, tangent_dimension

__version__ = "0.1.0"
