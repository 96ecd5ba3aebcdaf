"""Exact Riordan group arithmetic over Q(zeta_m), with tools for finite-order elements."""

__version__ = "0.1.0"

from .errors import RiordanError
from .scalar import FieldContext, Scalar, field, scalar_order
from .fps import (
    Series,
    comp_inverse,
    compose,
    compose_pow,
    exp_pos,
    inv,
    log_unit,
    mul,
    nth_root_unit,
    power_unit,
)
from .riordan import RiordanMatrix, RiordanPair, apply, expand_matrix, rinv, rmul, rpow
from .forder import (
    OrderReport,
    build_h,
    complete_to_order,
    is_conjugate,
    normalize,
    pair_order,
    series_order,
    sigma_F,
)
from .eigen import EigenSpec, IdentityRecord, eigen_check, eigenvalue_of, eigenvector, row_identity
from .symmetric import CyclicSeriesEvaluator, cyclic_sum, marshall_F, phi2_eval, phik_eval
from .expr import parse_scalar, parse_series

__all__ = [name for name in dir() if not name.startswith("_")]
