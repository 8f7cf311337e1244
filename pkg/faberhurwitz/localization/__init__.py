"""
Localization side: tree series, tree enumeration and the symmetrized routes.

This package contains:
- The f/g tree series, ξ^{(i)}, ζ^g and the predicted Faber–Hurwitz forms
- Explicit localization trees with their weights and the tree summation
- The symmetrized double Hurwitz series and the Λ-transformed V-route
"""

from faberhurwitz.localization.treeseries import (
    SymbolSeries,
    TreeSeries,
    faber_keys,
    predicted_fh,
    solve_tree_series,
    tree_residuals,
    xi_series,
    zeta_series,
)
from faberhurwitz.localization.trees import (
    LocTree,
    VertexKind,
    enumerate_trees,
    faber_polynomial_form,
    tree_sum,
    tree_sum_form,
    tree_weight,
)
from faberhurwitz.localization.symmetrized import (
    c_lambda_xi,
    lambda_f,
    lambda_omega_v,
    lambda_xi,
    symmetrized_double_hurwitz,
    v_series,
    xi_stabilizes,
    xi_top_computed,
    xi_top_degrees,
)

__all__ = [
    "SymbolSeries",
    "TreeSeries",
    "faber_keys",
    "predicted_fh",
    "solve_tree_series",
    "tree_residuals",
    "xi_series",
    "zeta_series",
    "LocTree",
    "VertexKind",
    "enumerate_trees",
    "faber_polynomial_form",
    "tree_sum",
    "tree_sum_form",
    "tree_weight",
    "c_lambda_xi",
    "lambda_f",
    "lambda_omega_v",
    "lambda_xi",
    "symmetrized_double_hurwitz",
    "v_series",
    "xi_stabilizes",
    "xi_top_computed",
    "xi_top_degrees",
]
