"""
Hurwitz numbers from monodromy, by convolution in the class algebra of S_d.

The number of tuples (σ₀, τ₁..τ_r, σ_∞) with τ_r⋯τ₁σ₀ = σ_∞, σ₀ of cycle
type α, σ_∞ of cycle type β and every τ_i a transposition depends only on
cycle types. It is obtained by walking the vector of class counts r times
under multiplication by the transposition class sum. Connected counts come
from the disconnected ones through the logarithm of their exponential
generating series; no tuple is ever enumerated.

Conventions:
    - Connected double numbers: H⁰_{α,β} = |Aut α|·|Aut β|·(connected count)/d!
    - Connected single numbers: H⁰_α = |Aut α|·(connected count with β = 1^d)/d!
"""

import logging
import math
from functools import lru_cache
from typing import Dict, Optional, Tuple

from faberhurwitz.core.partitions import Partition, class_size, partitions_of, r_double, r_single
from faberhurwitz.core.rational import ZERO, ExactRational, rational
from faberhurwitz.series.multiseries import MultiSeries, partition_exponents
from faberhurwitz.series.profile import DEFAULT_PROFILE

logger = logging.getLogger(__name__)

ClassVector = Dict[Partition, int]


@lru_cache(maxsize=None)
def transposition_action(lam: Partition) -> Tuple[Tuple[Partition, int], ...]:
    """
    For a fixed σ of cycle type λ, the number of transpositions τ such that
    τσ has each cycle type.

    Splitting an n-cycle into k and n − k takes n transpositions (n/2 when
    k = n − k); merging an a-cycle with a b-cycle takes a·b.
    """
    counts: Dict[Partition, int] = {}

    def add(target: Partition, ways: int):
        counts[target] = counts.get(target, 0) + ways

    multiplicities = sorted(lam.multiplicities.items())
    for n, mult in multiplicities:
        for k in range(1, n // 2 + 1):
            ways = n // 2 if 2 * k == n else n
            add(lam.remove_part(n).add_part(k).add_part(n - k), mult * ways)
    for i, (a, ma) in enumerate(multiplicities):
        if ma >= 2:
            add(lam.merge(a, a), math.comb(ma, 2) * a * a)
        for b, mb in multiplicities[i + 1:]:
            add(lam.merge(a, b), ma * mb * a * b)
    return tuple(sorted(counts.items(), key=lambda item: item[0].sort_key()))


@lru_cache(maxsize=None)
def class_vector(alpha: Partition, r: int) -> Tuple[Tuple[Partition, int], ...]:
    """
    Class counts after r steps: for each λ, the number of (σ₀, τ₁..τ_r) with
    σ₀ of type α and τ_r⋯τ₁σ₀ of type λ.
    """
    if r == 0:
        return ((alpha, class_size(alpha)),)
    vector: ClassVector = {}
    for lam, count in class_vector(alpha, r - 1):
        for target, ways in transposition_action(lam):
            vector[target] = vector.get(target, 0) + count * ways
    return tuple(sorted(vector.items(), key=lambda item: item[0].sort_key()))


def _branch_count(g: int, alpha: Partition, beta: Optional[Partition]) -> int:
    return r_single(g, alpha) if beta is None else r_double(g, alpha, beta)


def _identity(d: int) -> Partition:
    return Partition((1,) * d)


def monodromy_disconnected(g: int, alpha: Partition, beta: Optional[Partition] = None) -> ExactRational:
    """
    (1/d!)·#{(σ₀, τ₁..τ_r, σ_∞)} for possibly disconnected covers.

    β defaults to the identity type (1^d).
    """
    r = _branch_count(g, alpha, beta)
    if r < 0:
        return ZERO
    target = beta if beta is not None else _identity(alpha.size)
    count = dict(class_vector(alpha, r)).get(target, 0)
    return rational(count, math.factorial(alpha.size))


def _divides(small: Partition, big: Partition) -> bool:
    return all(big.multiplicity(j) >= i for j, i in small.multiplicities.items())


def _disconnected_series(alpha: Partition, beta: Optional[Partition], r_max: int) -> MultiSeries:
    """
    1 + Σ N/(d!·r!)·z^d p_α' q_β' b^r over sub-partitions of α (and β).

    Only monomials dividing z^|α| p_α q_β can feed that coefficient of the
    logarithm, so the rest are left out.
    """
    d = alpha.size
    profile = DEFAULT_PROFILE.with_bounds(z_max=d, b_max=r_max, index_max=max(d, 1))
    monomials = [({}, 1)]
    for size in range(1, d + 1):
        for sub_alpha in partitions_of(size):
            if not _divides(sub_alpha, alpha):
                continue
            for r in range(r_max + 1):
                for lam, count in class_vector(sub_alpha, r):
                    if beta is None:
                        if lam != _identity(size):
                            continue
                        exps = {}
                    else:
                        if not _divides(lam, beta):
                            continue
                        exps = partition_exponents("q", lam)
                    exps.update(partition_exponents("p", sub_alpha))
                    exps["z"] = size
                    if r:
                        exps["b"] = r
                    weight = rational(count, math.factorial(size) * math.factorial(r))
                    monomials.append((exps, weight))
    return MultiSeries.from_monomials(monomials, profile, ("z", "b"))


@lru_cache(maxsize=None)
def connected_hurwitz(g: int, alpha: Partition, beta: Optional[Partition] = None) -> ExactRational:
    """
    Connected Hurwitz number by logarithm of the disconnected series.

    Args:
        g: Genus of the covering curve
        alpha: Cycle type of σ₀
        beta: Cycle type of σ_∞; None for single Hurwitz numbers
    """
    r = _branch_count(g, alpha, beta)
    if r < 0:
        return ZERO
    connected = _disconnected_series(alpha, beta, r).log()
    exps = partition_exponents("p", alpha)
    exps["z"] = alpha.size
    if r:
        exps["b"] = r
    weight = alpha.aut_size() * math.factorial(r)
    if beta is not None:
        exps.update(partition_exponents("q", beta))
        weight *= beta.aut_size()
    value = connected.coefficient(exps) * weight
    logger.debug("connected H^%d_%s,%s = %s", g, alpha, beta, value)
    return value
