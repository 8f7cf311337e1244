"""
Exact truncated series and the transforms between their forms.

This package contains:
- TruncProfile, the truncation bounds and their configuration layers
- MultiSeries, sparse multivariate series with a u-window
- The operators Ξ_m, Λ, Ω, C and T', Lagrange inversion and fixed points
- RationalFunctionSeries, t- or u-series over Q(y_1..y_m)
"""

from faberhurwitz.series.profile import (
    TruncProfile,
    DEFAULT_PROFILE,
    PROFILE_ENV_VAR,
    load_profile,
)
from faberhurwitz.series.multiseries import (
    MultiSeries,
    p_var,
    q_var,
    s_var,
    x_var,
    y_var,
)
from faberhurwitz.series.transforms import (
    TopMode,
    change_to_y,
    lagrange_invert,
    lambda_sub,
    omega_sub,
    shift_to_y,
    solve_fixed_point,
    symmetrize,
    top_degree,
    tree_function,
    tree_y_series,
)
from faberhurwitz.series.ratfunc import (
    RationalFunctionSeries,
    ab_series,
    build_AB_Y,
    delta,
    even_t_part,
    invert_delta,
    rational_field,
    sym,
    y_of_u,
)

__all__ = [
    "TruncProfile",
    "DEFAULT_PROFILE",
    "PROFILE_ENV_VAR",
    "load_profile",
    "MultiSeries",
    "p_var",
    "q_var",
    "s_var",
    "x_var",
    "y_var",
    "TopMode",
    "change_to_y",
    "lagrange_invert",
    "lambda_sub",
    "omega_sub",
    "shift_to_y",
    "solve_fixed_point",
    "symmetrize",
    "top_degree",
    "tree_function",
    "tree_y_series",
    "RationalFunctionSeries",
    "ab_series",
    "build_AB_Y",
    "delta",
    "even_t_part",
    "invert_delta",
    "rational_field",
    "sym",
    "y_of_u",
]
