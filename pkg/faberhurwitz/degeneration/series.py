"""
Faber–Hurwitz generating series and the join-cut equation.

F^g = Σ z^|α| p_α/|Aut α| · F^g_α/r^Fab_{g,α}! is the unique solution of

    (z∂_z − 1 + Σ p_i∂_{p_i}) F^g = Σ p_{i+j}(i∂_{p_i}Ĥ⁰)(j∂_{p_j}F^g)
                                  + ½ Σ p_i p_j (i+j) ∂_{p_{i+j}} F^g
                                  + Σ i^{2g+1} p_i ∂_{p_i} Ĥ⁰

with Ĥ⁰ the single genus-0 Hurwitz series. joincut_residual returns
LHS − RHS, which vanishes for the recursion's summation conventions.
"""

import logging
import math
from typing import Mapping, Optional

from faberhurwitz.core.errors import PartitionError
from faberhurwitz.core.partitions import (
    Partition,
    distinct_orderings,
    partitions_bounded,
    partitions_up_to,
    r_fab,
)
from faberhurwitz.core.rational import ExactRational, rational
from faberhurwitz.degeneration.joincut import faber_hurwitz
from faberhurwitz.hurwitz.series import hurwitz_series_single
from faberhurwitz.series.multiseries import MultiSeries, p_var, partition_exponents, x_var
from faberhurwitz.series.profile import TruncProfile

logger = logging.getLogger(__name__)


def fh_series(
    g: int,
    profile: TruncProfile,
    overrides: Optional[Mapping[Partition, ExactRational]] = None,
) -> MultiSeries:
    """
    The Faber–Hurwitz series F^g to z^{z_max}, parts bounded by index_max.

    Args:
        g: Genus, g ≥ 1
        profile: Truncation bounds
        overrides: Replacement values for selected F^g_α (used to probe the
            uniqueness of the join-cut solution)

    Raises:
        PartitionError: If g < 1
    """
    if g < 1:
        raise PartitionError(f"the Faber–Hurwitz series needs genus >= 1, got {g}")
    overrides = overrides or {}
    monomials = []
    for alpha in partitions_up_to(profile.z_max, max_part=profile.index_max):
        value = overrides.get(alpha)
        if value is None:
            value = faber_hurwitz(g, alpha)
        exps = partition_exponents("p", alpha)
        exps["z"] = alpha.size
        weight = rational(1, alpha.aut_size() * math.factorial(r_fab(g, alpha)))
        monomials.append((exps, value * weight))
    return MultiSeries.from_monomials(monomials, profile, ("z",))


def _derive(f: MultiSeries, name: str) -> MultiSeries:
    if name not in f.variables:
        return MultiSeries.zero(f.profile, f.variables)
    return f.derive(name)


def _p(i: int, profile: TruncProfile) -> MultiSeries:
    return MultiSeries.variable(p_var(i), profile)


def joincut_residual(g: int, profile: TruncProfile, fh: Optional[MultiSeries] = None) -> MultiSeries:
    """
    LHS − RHS of the join-cut equation for F^g.

    Every monomial with z-degree ≤ z_max and parts ≤ index_max is exact.

    Args:
        g: Genus, g ≥ 1
        profile: Truncation bounds
        fh: The series to test; defaults to fh_series(g, profile)
    """
    F = fh if fh is not None else fh_series(g, profile)
    H = hurwitz_series_single(profile)
    n = profile.index_max
    lhs = F.euler("z") - F
    for i in range(1, n + 1):
        if p_var(i) in F.variables:
            lhs = lhs + F.euler(p_var(i))
    cut = MultiSeries.zero(profile, ("z",))
    join = MultiSeries.zero(profile, ("z",))
    psi = MultiSeries.zero(profile, ("z",))
    for i in range(1, n + 1):
        dH = _derive(H, p_var(i)).scale(i)
        for j in range(1, n + 1 - i):
            cut = cut + _p(i + j, profile) * dH * _derive(F, p_var(j)).scale(j)
            join = join + _p(i, profile) * _p(j, profile) * _derive(F, p_var(i + j)).scale(rational(i + j, 2))
        if p_var(i) in H.variables:
            psi = psi + H.euler(p_var(i)).scale(i ** (2 * g + 1))
    residual = lhs - cut - join - psi
    logger.debug("join-cut residual for g=%d has %d terms", g, len(residual))
    return residual


def symmetrized_fh(g: int, m: int, degree: int, profile: TruncProfile) -> MultiSeries:
    """
    Ξ_m F^g computed straight from the numbers: Σ_{l(α)=m, |α|≤degree}
    F^g_α/r^Fab! · Σ over distinct orderings of x^α.

    Equivalent to symmetrize(fh_series(g, ·), m) but touches only the
    m-part partitions.
    """
    if m < 1:
        raise PartitionError(f"symmetrized_fh needs m >= 1, got {m}")
    profile = profile.with_bounds(y_max=degree)
    names = [x_var(k) for k in range(1, m + 1)]
    monomials = []
    for size in range(m, degree + 1):
        for alpha in partitions_bounded(size, max_length=m):
            if alpha.length != m:
                continue
            value = faber_hurwitz(g, alpha) / math.factorial(r_fab(g, alpha))
            if not value:
                continue
            for ordering in distinct_orderings(alpha.parts):
                monomials.append(({x_var(k): part for k, part in enumerate(ordering, start=1)}, value))
    logger.debug("Ξ_%d F^%d with %d terms to degree %d", m, g, len(monomials), degree)
    return MultiSeries.from_monomials(monomials, profile, names)
