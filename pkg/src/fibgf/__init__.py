"""Integral values of generalized Fibonacci/Lucas generating functions, exactly."""

from .classifier import (
    NOT_INTEGER,
    ClassifyResult,
    classify_f,
    classify_f_rational,
    classify_l,
    classify_l_rational,
    eval_f,
    eval_l,
    scan_f,
    scan_l,
    solve_f,
    solve_l,
)
from .errors import ConsistencyError, FibgfError, ParseError, PreconditionError
from .exact_arith import (
    X,
    Poly,
    RatFn,
    format_poly,
    format_ratfn,
    is_integer_poly,
    parse_poly,
    parse_rat,
    parse_ratfn,
    poly_square_root,
    ratfn_reduce,
)
from .pell_descent import DescentResult, PellPair, descend, descend_int, phi, phi_inv
from .quad_ring import (
    QuadNum,
    RadiusSpec,
    counterexample_report,
    eval_f_quad,
    eval_l_quad,
    in_z_sqrt_d,
    quad_arith,
    quad_family_membership,
    within_radius,
)
from .sequences import Family, IdentityId, Kind, Params, check_identity, fib_poly, lucas_poly, seq_at

__version__ = "0.1.0"
