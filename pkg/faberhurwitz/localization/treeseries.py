"""
Localization tree series.

The functional equations

    f_j = u^{−2}·(j ∂H⁰/∂q_j)|_{q=g}        g_j = (j ∂Ĥ⁰(1; q)/∂q_j)|_{q=f}

determine series f_j, g_j in z, u and the p's uniquely. From them

    ξ^{(i)} = Σ_j j^{j+i}/j!·f_j
    ζ^g = Σ_n 1/n! Σ (−1)^k ⟨τ_{a_1}⋯τ_{a_n}λ_k⟩ ξ^{(a_1)}⋯ξ^{(a_n)}

and the Faber–Hurwitz series is recovered as

    F^g·𝔾_{g,1} = [u^{2g−1}] ζ^g(z/(1−u), −u; −u/(1−u)·p).

Key Concepts:
    - f_j collects trees hanging from a weight-j edge at a 0-vertex, g_j
      those hanging from a weight-j edge at an ∞-vertex
    - Coefficients of ζ^g are linear in the Faber symbols; SymbolSeries
      keeps one MultiSeries per symbol
    - u is exact up to u_max − z_max: every monomial has u-degree ≥ −z-degree

Example:
    >>> from faberhurwitz.series.profile import TruncProfile
    >>> from faberhurwitz.localization.treeseries import solve_tree_series
    >>> tree = solve_tree_series(TruncProfile(z_max=3, index_max=3))
    >>> tree.f[1].coefficient({"z": 1, "p1": 1, "u": -1}) == 1
    True
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from faberhurwitz.core.errors import PartitionError, TruncationError
from faberhurwitz.core.linear import FaberKey, SymbolLinear
from faberhurwitz.core.partitions import Partition, partitions_bounded, partitions_up_to, r_fab
from faberhurwitz.core.rational import ZERO, ExactRational, as_rational, binomial, rational
from faberhurwitz.hurwitz.closed import single_closed
from faberhurwitz.hurwitz.series import double_genus_zero
from faberhurwitz.series.multiseries import MultiSeries, partition_exponents, variable_family, variable_index
from faberhurwitz.series.profile import TruncProfile
from faberhurwitz.series.transforms import solve_fixed_point

logger = logging.getLogger(__name__)

SeriesKey = Tuple[str, int]


@dataclass(frozen=True, eq=False)
class TreeSeries:
    """
    Solved tree series.

    Attributes:
        profile: Truncation the series were solved under
        f: j -> f_j for 1 ≤ j ≤ z_max
        g: j -> g_j for the same indices
    """
    profile: TruncProfile
    f: Mapping[int, MultiSeries]
    g: Mapping[int, MultiSeries]

    def values(self) -> Dict[SeriesKey, MultiSeries]:
        values: Dict[SeriesKey, MultiSeries] = {("f", j): s for j, s in self.f.items()}
        values.update({("g", j): s for j, s in self.g.items()})
        return values


class _ProductMemo:
    """Products Π s_{γ_i} over the current iterate; an entry is reused while its factors are unchanged."""

    def __init__(self, profile: TruncProfile):
        self.profile = profile
        self._cache: Dict[Tuple[str, Partition], Tuple[Tuple[MultiSeries, ...], MultiSeries]] = {}

    def get(self, values: Mapping[SeriesKey, MultiSeries], family: str, gamma: Partition) -> MultiSeries:
        current = tuple(values[(family, part)] for part in gamma.parts)
        hit = self._cache.get((family, gamma))
        if hit is not None and all(a is b for a, b in zip(hit[0], current)):
            return hit[1]
        if gamma.is_empty():
            result = MultiSeries.constant(1, self.profile)
        else:
            smallest = gamma.parts[-1]
            result = self.get(values, family, gamma.remove_part(smallest)) * values[(family, smallest)]
        self._cache[(family, gamma)] = (current, result)
        return result


class _TreeEquations:
    """Right-hand sides of the f/g functional equations under one profile."""

    def __init__(self, profile: TruncProfile):
        self.profile = profile
        self.indices = tuple(range(1, profile.z_max + 1))
        self.q_coefficients = self._q_coefficients()
        self.g_weights = self._g_weights()
        self.products = _ProductMemo(profile)

    def _q_coefficients(self) -> Dict[Partition, MultiSeries]:
        """β -> u^{l(β)−2}·[q_β u^{l(β)}] H⁰, a series in z and the p's."""
        profile = self.profile
        coefficients = {}
        for beta in partitions_up_to(profile.z_max):
            monomials = []
            for alpha in partitions_bounded(beta.size, max_part=profile.index_max):
                value = double_genus_zero(alpha, beta)
                if not value:
                    continue
                r = alpha.length + beta.length - 2
                exps = partition_exponents("p", alpha)
                exps["z"] = beta.size
                exps["u"] = beta.length - 2
                weight = rational(1, math.factorial(r) * alpha.aut_size() * beta.aut_size())
                monomials.append((exps, value * weight))
            if monomials:
                coefficients[beta] = MultiSeries.from_monomials(monomials, profile, ("z", "u"))
        return coefficients

    def _g_weights(self) -> Dict[int, List[Tuple[Partition, ExactRational]]]:
        """j -> [(γ, j·m_j(γ ∪ j)/|Aut(γ ∪ j)|·H⁰_{γ∪j}/r⁰!)] over |γ| ≤ z_max."""
        weights: Dict[int, List[Tuple[Partition, ExactRational]]] = {}
        gammas = partitions_up_to(self.profile.z_max, include_empty=True)
        for j in self.indices:
            rows = []
            for gamma in gammas:
                full = gamma.add_part(j)
                r = full.size + full.length - 2
                weight = single_closed(full) * j * full.multiplicity(j)
                weight = weight / (full.aut_size() * math.factorial(r))
                rows.append((gamma, weight))
            weights[j] = rows
        return weights

    def f_rhs(self, j: int, values: Mapping[SeriesKey, MultiSeries]) -> MultiSeries:
        terms = []
        for beta, coefficient in self.q_coefficients.items():
            m = beta.multiplicity(j)
            if not m:
                continue
            product = self.products.get(values, "g", beta.remove_part(j))
            if product:
                terms.append((coefficient * product).scale(j * m))
        return MultiSeries.sum_of(terms, self.profile)

    def g_rhs(self, j: int, values: Mapping[SeriesKey, MultiSeries]) -> MultiSeries:
        terms = []
        for gamma, weight in self.g_weights[j]:
            product = self.products.get(values, "f", gamma)
            if product:
                terms.append(product.scale(weight))
        return MultiSeries.sum_of(terms, self.profile)

    def system(self):
        system = {}
        for j in self.indices:
            system[("f", j)] = partial(self.f_rhs, j)
            system[("g", j)] = partial(self.g_rhs, j)
        return system


@lru_cache(maxsize=8)
def solve_tree_series(profile: TruncProfile) -> TreeSeries:
    """
    Solve the f/g functional equations to z^{z_max}.

    Raises:
        ConvergenceError: If the iteration makes no progress (profile too small)
        TruncationError: If a u-exponent leaves the window
    """
    equations = _TreeEquations(profile)
    values = solve_fixed_point(equations.system(), profile, grading="z")
    logger.debug("tree series solved to z <= %d with %d indices", profile.z_max, len(equations.indices))
    return TreeSeries(
        profile,
        {j: values[("f", j)] for j in equations.indices},
        {j: values[("g", j)] for j in equations.indices},
    )


def tree_residuals(tree: TreeSeries) -> Dict[SeriesKey, MultiSeries]:
    """Residual series − RHS(series) of every functional equation at the solved values."""
    equations = _TreeEquations(tree.profile)
    values = tree.values()
    residuals = {}
    for key, rhs in equations.system().items():
        residuals[key] = values[key] - rhs(values)
    return residuals


@lru_cache(maxsize=32)
def xi_series(i: int, profile: TruncProfile) -> MultiSeries:
    """
    ξ^{(i)} = Σ_j j^{j+i}/j!·f_j.

    Raises:
        PartitionError: If i < 0
    """
    if i < 0:
        raise PartitionError(f"xi_series needs i >= 0, got {i}")
    tree = solve_tree_series(profile)
    return MultiSeries.sum_of(
        (f.scale(rational(j ** (j + i), math.factorial(j))) for j, f in tree.f.items()), profile
    )


class SymbolSeries:
    """
    A series with SymbolLinear coefficients, stored as key -> MultiSeries.

    The coefficient of a monomial is Σ_key [monomial](part_key)·key.
    """

    def __init__(self, parts: Mapping[FaberKey, MultiSeries], profile: TruncProfile):
        self.profile = profile
        self._parts = {key: part for key, part in parts.items() if part}

    def keys(self) -> List[FaberKey]:
        return sorted(self._parts, key=FaberKey.sort_key)

    def part(self, key: FaberKey) -> MultiSeries:
        return self._parts.get(key, MultiSeries.zero(self.profile))

    def __len__(self) -> int:
        return len(self._parts)

    def coefficient(self, exps: Mapping[str, int]) -> SymbolLinear:
        return SymbolLinear({key: part.coefficient(exps) for key, part in self._parts.items()})

    def monomials(self) -> Iterator[Tuple[Dict[str, int], SymbolLinear]]:
        """(exponent map, SymbolLinear) pairs, sorted by total degree then exponents."""
        seen: Dict[Tuple, Dict[str, int]] = {}
        for part in self._parts.values():
            for exps, _ in part.monomials():
                seen.setdefault(tuple(sorted(exps.items())), exps)
        for signature in sorted(seen, key=lambda s: (sum(e for _, e in s), s)):
            exps = seen[signature]
            yield exps, self.coefficient(exps)

    def evaluate(self, values) -> MultiSeries:
        """Σ value(key)·part_key with a mapping or callable supplying the values."""
        pieces = []
        for key, part in self._parts.items():
            value = values(key) if callable(values) else values[key]
            pieces.append(part.scale(as_rational(value)))
        return MultiSeries.sum_of(pieces, self.profile)

    def to_json(self) -> List[Dict]:
        return [{"exponents": exps, "coefficient": linear.to_json()} for exps, linear in self.monomials()]


def _p_length(exps: Mapping[str, int]) -> int:
    return sum(e for name, e in exps.items() if variable_family(name) == "p")


def _p_partition(exps: Mapping[str, int]) -> Partition:
    parts: List[int] = []
    for name, e in exps.items():
        if variable_family(name) == "p":
            parts.extend([variable_index(name)] * e)
    return Partition(tuple(parts))


def faber_keys(g: int, n: int) -> List[FaberKey]:
    """Every symbol ⟨τ_{a_1}⋯τ_{a_n}λ_k⟩_g allowed by the dimension constraint."""
    keys = []
    for k in range(0, g + 1):
        total = g - 2 + n - k
        if total < 0:
            continue
        for alpha in partitions_bounded(total, max_length=n):
            keys.append(FaberKey(g, alpha.parts + (0,) * (n - alpha.length), k))
    return keys


def _index_aut(indices: Tuple[int, ...]) -> int:
    result = 1
    for count in Counter(indices).values():
        result *= math.factorial(count)
    return result


def zeta_series(g: int, profile: TruncProfile, n_max: Optional[int] = None) -> SymbolSeries:
    """
    ζ^g with coefficients linear in the Faber symbols of genus g.

    Args:
        g: Genus, g ≥ 1
        profile: Truncation bounds
        n_max: Keep only monomials with at most n_max p's (and so products
            of at most n_max ξ's); defaults to z_max

    Raises:
        PartitionError: If g < 1
        TruncationError: If some ξ^{(i)} has a z-constant term
    """
    if g < 1:
        raise PartitionError(f"zeta_series needs genus >= 1, got {g}")
    n_top = profile.z_max if n_max is None else min(n_max, profile.z_max)
    products: Dict[Tuple[int, ...], MultiSeries] = {(): MultiSeries.constant(1, profile)}

    def xi(i: int) -> MultiSeries:
        series = xi_series(i, profile)
        low = series.min_grade()
        if low is not None and low < 1:
            raise TruncationError(f"ξ^({i}) has a z-constant term; the sum over n would not terminate")
        return series

    def product(indices: Tuple[int, ...]) -> MultiSeries:
        if indices not in products:
            head = product(indices[:-1]) * xi(indices[-1])
            products[indices] = head.filter(lambda exps: _p_length(exps) <= n_top)
        return products[indices]

    parts: Dict[FaberKey, MultiSeries] = {}
    for n in range(1, n_top + 1):
        for key in faber_keys(g, n):
            sign = -1 if key.k % 2 else 1
            parts[key] = product(key.indices).scale(rational(sign, _index_aut(key.indices)))
    logger.debug("ζ^%d with %d symbols, n <= %d", g, len(parts), n_top)
    return SymbolSeries(parts, profile)


def predicted_fh(
    g: int,
    profile: TruncProfile,
    n_max: Optional[int] = None,
) -> Dict[Partition, SymbolLinear]:
    """
    F^g_α as linear forms in the Faber symbols, for |α| ≤ z_max and l(α) ≤ n_max.

    c·z^d u^e p_α in ζ^g contributes c·(−1)^{e+l}·C(d+l−1+N, N), N = 2g−1−e−l,
    to [u^{2g−1}] after the substitution; the result is scaled by
    ((g−1)!/2^g)·r^Fab!·|Aut α| to leave 𝔾_{g,1} units.

    Raises:
        TruncationError: If the exact u-window is smaller than 2g − 2
    """
    if g < 1:
        raise PartitionError(f"predicted_fh needs genus >= 1, got {g}")
    if 2 * g - 2 > profile.exact_u_max:
        raise TruncationError(
            f"predicting genus {g} needs u exact to {2 * g - 2}, profile gives {profile.exact_u_max}",
            required=2 * g - 2 + profile.z_max,
        )
    n_top = profile.z_max if n_max is None else min(n_max, profile.z_max)
    zeta = zeta_series(g, profile, n_top)
    totals: Dict[Partition, Dict[FaberKey, ExactRational]] = {
        alpha: {} for alpha in partitions_up_to(profile.z_max, max_length=n_top, max_part=profile.index_max)
    }
    for key in zeta.keys():
        for exps, c in zeta.part(key).monomials():
            alpha = _p_partition(exps)
            d, e, l = exps.get("z", 0), exps.get("u", 0), alpha.length
            shift = 2 * g - 1 - e - l
            if shift < 0 or alpha not in totals:
                continue
            sign = -1 if (e + l) % 2 else 1
            row = totals[alpha]
            row[key] = row.get(key, ZERO) + c * sign * binomial(d + l - 1 + shift, shift)
    unit = rational(math.factorial(g - 1), 2 ** g)
    return {
        alpha: SymbolLinear(row).scale(unit * math.factorial(r_fab(g, alpha)) * alpha.aut_size())
        for alpha, row in totals.items()
    }
