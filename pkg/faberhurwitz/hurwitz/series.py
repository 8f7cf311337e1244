"""
Generating series of genus-0 Hurwitz numbers and the query front end.

Example:
    >>> from sympy import QQ
    >>> from faberhurwitz.series.profile import TruncProfile
    >>> from faberhurwitz.hurwitz.series import hurwitz_series_single
    >>> H = hurwitz_series_single(TruncProfile(z_max=3))
    >>> H.coefficient({"z": 2, "p2": 1}) == QQ(1, 2)
    True
"""

import logging
import math
from functools import lru_cache

from faberhurwitz.core.partitions import Partition, partitions_up_to
from faberhurwitz.core.rational import ExactRational, rational
from faberhurwitz.hurwitz.closed import HurwitzQuery, double_one_part_closed, single_closed
from faberhurwitz.hurwitz.monodromy import connected_hurwitz, monodromy_disconnected
from faberhurwitz.series.multiseries import MultiSeries, partition_exponents
from faberhurwitz.series.profile import TruncProfile

logger = logging.getLogger(__name__)


def hurwitz_number(query: HurwitzQuery, oracle: bool = False) -> ExactRational:
    """
    Evaluate a Hurwitz query.

    Genus-0 connected numbers use the closed formulas when one applies
    (single numbers, and double numbers with a one-part side); everything
    else, and everything with oracle=True, goes through the monodromy count.
    """
    alpha, beta = query.alpha, query.beta
    if not query.connected:
        return monodromy_disconnected(query.genus, alpha, beta)
    if query.genus == 0 and not oracle:
        if beta is None:
            return single_closed(alpha)
        if alpha.length == 1:
            return double_one_part_closed(alpha.size, beta)
        if beta.length == 1:
            return double_one_part_closed(beta.size, alpha)
    return connected_hurwitz(query.genus, alpha, beta)


@lru_cache(maxsize=None)
def double_genus_zero(alpha: Partition, beta: Partition) -> ExactRational:
    return hurwitz_number(HurwitzQuery(0, alpha, beta))


def _partitions(profile: TruncProfile):
    return partitions_up_to(profile.z_max, max_part=profile.index_max)


def hurwitz_series_single(profile: TruncProfile) -> MultiSeries:
    """Ĥ⁰(z; p) = Σ z^|α| p_α/|Aut α| · H⁰_α/r⁰_α!."""
    monomials = []
    for alpha in _partitions(profile):
        r = alpha.size + alpha.length - 2
        exps = partition_exponents("p", alpha)
        exps["z"] = alpha.size
        value = single_closed(alpha) / (alpha.aut_size() * math.factorial(r))
        monomials.append((exps, value))
    return MultiSeries.from_monomials(monomials, profile, ("z",))


def hurwitz_series_double(profile: TruncProfile) -> MultiSeries:
    """H⁰(z, u; p; q) = Σ z^|β| p_α q_β u^l(β) H⁰_{α,β}/(r⁰!·|Aut α|·|Aut β|)."""
    monomials = []
    partitions = _partitions(profile)
    for beta in partitions:
        for alpha in partitions:
            if alpha.size != beta.size:
                continue
            r = alpha.length + beta.length - 2
            value = double_genus_zero(alpha, beta)
            if not value:
                continue
            exps = partition_exponents("p", alpha)
            exps.update(partition_exponents("q", beta))
            exps["z"] = beta.size
            exps["u"] = beta.length
            weight = rational(1, math.factorial(r) * alpha.aut_size() * beta.aut_size())
            monomials.append((exps, value * weight))
    logger.debug("double Hurwitz series with %d terms at z <= %d", len(monomials), profile.z_max)
    return MultiSeries.from_monomials(monomials, profile, ("z", "u"))
