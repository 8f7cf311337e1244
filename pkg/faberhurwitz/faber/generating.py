"""
The generating series Φ_m and Ψ_m and their closed forms.

    Φ_m = Σ_g 2^{2g−1}t^{2g}/(2g−1)!·T F^g_m
    Ψ_m = Σ_g t^{2g}/(2g−1)!!·[u^{2g−1}] T Λ ζ^g_m

T F^g_m comes from the computed Faber–Hurwitz numbers through symmetrization,
the change of variables and the top-degree restriction. T Λ ζ^g_m is assembled
from the table of Faber symbols and the top terms T Λ ξ^{(i)}_k of the
localization series, either closed (k ≤ 3) or computed through the V-route
(k ≤ 2). Ψ_m = Φ_m is equivalent to the table agreeing with the conjectured
symbols in the top degree.

All series are RationalFunctionSeries in t (or u for top terms) over
Q(y_1..y_m). B_i, A_i and Ŷ_j come from ABSeries.

Example:
    >>> from faberhurwitz.faber.generating import phi_one_closed
    >>> from faberhurwitz.series.ratfunc import rational_field
    >>> y1 = rational_field(1).gens[0]
    >>> phi_one_closed(4).coefficient(4) == 10 * y1 ** 6 / 3
    True
"""

import logging
import math
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator, Optional, Sequence, Tuple

from sympy.polys.fields import FracElement, FracField

from faberhurwitz.core.errors import PartitionError
from faberhurwitz.core.linear import FaberKey
from faberhurwitz.core.partitions import double_factorial_odd
from faberhurwitz.core.rational import ExactRational, binomial, rational
from faberhurwitz.degeneration.series import symmetrized_fh
from faberhurwitz.faber.symbols import SymbolTable
from faberhurwitz.hurwitz.series import hurwitz_series_single
from faberhurwitz.localization.symmetrized import MAX_LAMBDA_PARTS, xi_top_computed
from faberhurwitz.series.multiseries import MultiSeries, y_var
from faberhurwitz.series.profile import DEFAULT_PROFILE, TruncProfile
from faberhurwitz.series.ratfunc import (
    RationalFunctionSeries,
    ab_series,
    invert_delta,
    rational_field,
    sym,
    y_of_u,
)
from faberhurwitz.series.transforms import TopMode, change_to_y, symmetrize, top_degree

logger = logging.getLogger(__name__)

MAX_GENERATING_PARTS = 3
TOP_SOURCES = ("closed", "computed")

TopProvider = Callable[[int, Tuple[int, ...]], RationalFunctionSeries]


def _check_parts(m: int):
    if not 1 <= m <= MAX_GENERATING_PARTS:
        raise PartitionError(f"generating series are built for m <= {MAX_GENERATING_PARTS}, got {m}")


def to_field(f: MultiSeries, K: FracField) -> FracElement:
    """A polynomial MultiSeries in y's as an element of K."""
    return RationalFunctionSeries.from_multiseries(f, K, "t", order=0).coefficient(0)


# -- Φ_m ------------------------------------------------------------------

def faber_top(g: int, m: int, profile: TruncProfile = DEFAULT_PROFILE) -> MultiSeries:
    """
    T F^g_m = T' C Ξ_m F^g, homogeneous of degree 4g + 3m − 5 in y_1..y_m.

    Raises:
        TruncationError: If the change of variables has not stabilised
        PolynomialityError: If terms above the expected degree remain
    """
    degree = 4 * g + 3 * m - 5
    polynomial = change_to_y(symmetrized_fh(g, m, degree + 2, profile))
    return top_degree(polynomial, TopMode.FABER, genus=g, m=m)


def phi_weight(g: int) -> ExactRational:
    return rational(2 ** (2 * g - 1), math.factorial(2 * g - 1))


def build_phi(m: int, g_max: int, profile: TruncProfile = DEFAULT_PROFILE) -> RationalFunctionSeries:
    """
    Φ_m through t^{2g_max} from the computed Faber–Hurwitz numbers.

    Raises:
        PartitionError: If m is outside 1..3
    """
    _check_parts(m)
    K = rational_field(m)
    coefficients = {}
    for g in range(1, g_max + 1):
        coefficients[2 * g] = to_field(faber_top(g, m, profile), K) * K.ground_new(phi_weight(g))
        logger.debug("Φ_%d: genus %d top computed", m, g)
    return RationalFunctionSeries(K, coefficients, 2 * g_max)


# -- top terms T Λ ξ ------------------------------------------------------

def xi_top_closed(
    i: int,
    m: int,
    order: int,
    K: Optional[FracField] = None,
    positions: Optional[Sequence[int]] = None,
) -> RationalFunctionSeries:
    """
    T Λ ξ^{(i)}_m as a u-series through u^order, with Y_j = y_j/(1 − u y_j):

        m = 1:  −(2i−1)!!·u^{−1}·Y_1^{2i+1}
        m = 2:  −(2i+1)!!·u^{−1}·sym_{1,1} y_1²y_2/(y_1 − y_2)·Y_1^{2i+3}
        m = 3:  −(2i+1)!!·u^{−3}·(u²·sym_{1,1,1} y_1³y_2⁴y_3/((y_2−y_3)(y_1−y_2)²)·Y_1^{2i+3}Y_2
                 − sym_{1,2}(u·y_1·Y_1^{2i+5}Y_2Y_3
                             − u²·y_1³∂_{y_1}[y_1³y_2y_3/((y_2−y_1)(y_3−y_1))]·Y_1^{2i+4}))

    Args:
        i: ξ index, i ≥ 0
        m: Number of points, 1..3
        order: Highest u-power kept
        K: Coefficient field (Q(y_1..y_m) when omitted)
        positions: 0-based generators of K playing y_1..y_m

    Raises:
        PartitionError: If i < 0, m is outside 1..3 or positions has the wrong length
    """
    _check_parts(m)
    if i < 0:
        raise PartitionError(f"xi_top_closed needs i >= 0, got {i}")
    K = K or rational_field(m)
    positions = tuple(range(m)) if positions is None else tuple(positions)
    if len(positions) != m:
        raise PartitionError(f"{m} generator positions needed, got {positions}")
    y = K.gens
    Y = {p: y_of_u(K, p, order + 3) for p in positions}

    def at(idx: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(positions[k] for k in idx)

    if m == 1:
        (a,) = positions
        body = (Y[a] ** (2 * i + 1)).scale(-double_factorial_odd(2 * i - 1))
        return body.shift(-1).truncate(order)
    if m == 2:
        def two(idx):
            a, b = at(idx)
            return (Y[a] ** (2 * i + 3)).scale(y[a] ** 2 * y[b] / (y[a] - y[b]))

        body = sym((1, 1), two).scale(-double_factorial_odd(2 * i + 1))
        return body.shift(-1).truncate(order)

    def chain(idx):
        a, b, c = at(idx)
        weight = y[a] ** 3 * y[b] ** 4 * y[c] / ((y[b] - y[c]) * (y[a] - y[b]) ** 2)
        return (Y[a] ** (2 * i + 3) * Y[b]).scale(weight)

    def split(idx):
        a, b, c = at(idx)
        inner = y[a] ** 3 * y[b] * y[c] / ((y[b] - y[a]) * (y[c] - y[a]))
        spread = (Y[a] ** (2 * i + 5) * Y[b] * Y[c]).scale(y[a]).shift(1)
        merged = (Y[a] ** (2 * i + 4)).scale(y[a] ** 3 * inner.diff(y[a])).shift(2)
        return spread - merged

    body = sym((1, 1, 1), chain).shift(2) - sym((1, 2), split)
    return body.shift(-3).scale(-double_factorial_odd(2 * i + 1)).truncate(order)


def _closed_tops(K: FracField, order: int) -> TopProvider:
    @lru_cache(maxsize=None)
    def top(i: int, block: Tuple[int, ...]) -> RationalFunctionSeries:
        return xi_top_closed(i, len(block), order, K, block)

    return top


def _computed_tops(K: FracField, order: int) -> TopProvider:
    @lru_cache(maxsize=None)
    def top(i: int, block: Tuple[int, ...]) -> RationalFunctionSeries:
        if len(block) > MAX_LAMBDA_PARTS:
            raise PartitionError(f"computed tops cover blocks of at most {MAX_LAMBDA_PARTS} points")
        series = xi_top_computed(i, len(block), order)
        renamed = series.rename({y_var(k + 1): y_var(p + 1) for k, p in enumerate(block)})
        return RationalFunctionSeries.from_multiseries(renamed, K, "u", order=order)

    return top


def set_partitions(m: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Unordered set partitions of {0..m−1}; blocks in order of their least element."""
    def walk(rest: Tuple[int, ...]):
        if not rest:
            yield ()
            return
        head, tail = rest[0], rest[1:]
        for size in range(len(tail) + 1):
            for mask in combinations(tail, size):
                block = (head,) + mask
                left = tuple(e for e in tail if e not in mask)
                for more in walk(left):
                    yield (block,) + more

    yield from walk(tuple(range(m)))


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered tuples of `parts` nonnegative integers summing to total."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def build_psi(
    m: int,
    g_max: int,
    table: SymbolTable,
    tops: str = "closed",
) -> RationalFunctionSeries:
    """
    Ψ_m through t^{2g_max}.

    T Λ ζ^g_m sums, over unordered set partitions {B_1..B_n} of the m
    points and index tuples a with Σa = g − 2 + n, the symbol ⟨τ_a⟩_g times
    Π_j T Λ ξ^{(a_j)} on block B_j. Only λ_0 symbols reach the top degree.

    Args:
        m: Number of points, 1..3
        g_max: Highest genus
        table: Faber symbols for every genus ≤ g_max and at most m points
        tops: "closed" or "computed" (m ≤ 2)

    Raises:
        PartitionError: If m is outside 1..3, or tops is unknown
        MissingSymbolError: If the table lacks a needed symbol
    """
    _check_parts(m)
    if tops not in TOP_SOURCES:
        raise PartitionError(f"tops must be one of {TOP_SOURCES}, got {tops!r}")
    K = rational_field(m)
    u_order = 2 * g_max + m
    top = _closed_tops(K, u_order) if tops == "closed" else _computed_tops(K, u_order)
    blocks_list = list(set_partitions(m))
    coefficients = {}
    for g in range(1, g_max + 1):
        total = RationalFunctionSeries(K, {}, u_order, "u")
        for blocks in blocks_list:
            n = len(blocks)
            for indices in compositions(g - 2 + n, n):
                value = table.value(FaberKey(g, indices, 0))
                if not value:
                    continue
                product = top(indices[0], blocks[0])
                for a, block in zip(indices[1:], blocks[1:]):
                    product = product * top(a, block)
                total = total + product.scale(value)
        value = total.coefficient(2 * g - 1 - m)
        sign = -1 if m % 2 else 1
        coefficients[2 * g] = value * K.ground_new(rational(sign, double_factorial_odd(2 * g - 1)))
        logger.debug("Ψ_%d: genus %d assembled", m, g)
    return RationalFunctionSeries(K, coefficients, 2 * g_max)


# -- closed forms ---------------------------------------------------------

def phi_one_closed(order: int) -> RationalFunctionSeries:
    """Φ_1 = Δ_1^{−1} E(t·B_1^{−1}); its t^{2g} coefficient is C(4g−2, 2g−1)/(4g−2)·y^{4g−2}."""
    K = rational_field(1)
    ab = ab_series(K, order)
    return invert_delta(1, (ab.t() * ab.b_inverse(0)).even_part())


def psi_two_closed(order: int) -> RationalFunctionSeries:
    """
    Ψ_2 = E sym_{1,1}[(y_1³y_2 t/(y_1−y_2)
                       − y_1⁴y_2² t/((y_1−y_2)(y_1² − y_2² + 4y_1²y_2² t)))·B_1^{−1}].
    """
    K = rational_field(2)
    ab = ab_series(K, order)
    y = K.gens

    def term(idx):
        a, b = idx
        t = ab.t()
        denominator = RationalFunctionSeries(K, {0: y[a] ** 2 - y[b] ** 2, 1: 4 * y[a] ** 2 * y[b] ** 2}, order)
        first = t.scale(y[a] ** 3 * y[b] / (y[a] - y[b]))
        second = (t * denominator.inverse()).scale(y[a] ** 4 * y[b] ** 2 / (y[a] - y[b]))
        return (first - second) * ab.b_inverse(a)

    return sym((1, 1), term).even_part()


def rhs_two_closed(order: int) -> RationalFunctionSeries:
    """Δ_3Δ_2Φ_2 = E sym_{1,1}(Δ_3[y_1⁴y_2/(y_1−y_2)·t B_1^{−1}] + 3y_1⁵y_2 t B_1^{−5})."""
    K = rational_field(2)
    ab = ab_series(K, order)
    y = K.gens

    def term(idx):
        a, b = idx
        joined = (ab.t() * ab.b_inverse(a)).scale(y[a] ** 4 * y[b] / (y[a] - y[b])).delta(3)
        return joined + (ab.t() * ab.b_power(a, -5)).scale(3 * y[a] ** 5 * y[b])

    return sym((1, 1), term).even_part()


def two_point_common_form(order: int) -> RationalFunctionSeries:
    """
    E sym_{1,1} 2y_1⁵y_2 t B_1^{−5}/(y_1−y_2)·(3y_1 − 2y_2 − 10y_1³t + 4y_1²y_2 t
    + 16y_1⁵t² − 8y_1⁴y_2 t²), the common value of Δ_3Δ_2Ψ_2 and Δ_3Δ_2Φ_2.
    """
    K = rational_field(2)
    ab = ab_series(K, order)
    y = K.gens

    def term(idx):
        a, b = idx
        ya, yb = y[a], y[b]
        cubic = RationalFunctionSeries(
            K,
            {0: 3 * ya - 2 * yb, 1: -10 * ya ** 3 + 4 * ya ** 2 * yb, 2: 16 * ya ** 5 - 8 * ya ** 4 * yb},
            order,
        )
        return (ab.t() * ab.b_power(a, -5) * cubic).scale(2 * ya ** 5 * yb / (ya - yb))

    return sym((1, 1), term).even_part()


def reconstruct_phi_two(order: int) -> RationalFunctionSeries:
    """Φ_2 = Δ_2^{−1}Δ_3^{−1} of the closed Δ_3Δ_2Φ_2."""
    return invert_delta(2, invert_delta(3, rhs_two_closed(order)))


def upsilon_from_top(top: FracElement, order: int) -> RationalFunctionSeries:
    """Υ = Σ_g 2^{2g−1}t^{2g}/(2g−1)!·Σ_i (y_i³∂_i)^{2g+1} top."""
    K = top.field
    coefficients = {}
    for g in range(1, order // 2 + 1):
        total = K.zero
        for gen in K.gens:
            value = top
            for _ in range(2 * g + 1):
                value = gen ** 3 * value.diff(gen)
            total += value
        coefficients[2 * g] = total * K.ground_new(phi_weight(g))
    return RationalFunctionSeries(K, coefficients, order)


def upsilon_two_closed(order: int) -> RationalFunctionSeries:
    """Υ_2 = 3E sym_{1,1} y_1⁵y_2 t B_1^{−5}, the series upsilon_from_top gives for y_1y_2."""
    K = rational_field(2)
    ab = ab_series(K, order)
    y = K.gens
    return sym((1, 1), lambda idx: (ab.t() * ab.b_power(idx[0], -5)).scale(3 * y[idx[0]] ** 5 * y[idx[1]])).even_part()


def upsilon_three_closed(order: int) -> RationalFunctionSeries:
    """Υ_3 = 3E sym_{1,2} y_1⁵y_2y_3 t B_1^{−5}."""
    K = rational_field(3)
    ab = ab_series(K, order)
    y = K.gens

    def term(idx):
        a, b, c = idx
        return (ab.t() * ab.b_power(a, -5)).scale(3 * y[a] ** 5 * y[b] * y[c])

    return sym((1, 2), term).even_part()


def delta_two_phi_three_closed(order: int) -> RationalFunctionSeries:
    """
    Δ_2Φ_3 = E sym_{1,2} y_1⁵y_2y_3 t B_1^{−1} + 3E sym_{1,2} y_1⁵y_2y_3 t B_1^{−5}
           + ½E sym_{1,1,1}(y_1⁵y_3/(y_1−y_3)∂_1 + y_2⁵y_3/(y_2−y_3)∂_2)
             [t(1 + B_1^{−1})(Ŷ_1⁴Ŷ_2/(Ŷ_1² − Ŷ_2²) − y_1²y_2/(y_1−y_2)·A_1Ŷ_1²)]

    with Ŷ_j = Y_j(A_1).
    """
    K = rational_field(3)
    ab = ab_series(K, order)
    y = K.gens

    def spread(idx):
        a, b, c = idx
        t = ab.t()
        weight = y[a] ** 5 * y[b] * y[c]
        return (t * ab.b_inverse(a)).scale(weight) + (t * ab.b_power(a, -5)).scale(3 * weight)

    def chained(idx):
        a, b, c = idx
        ya_hat, yb_hat = ab.y_hat(a, a), ab.y_hat(b, a)
        difference = (ya_hat * ya_hat - yb_hat * yb_hat).inverse()
        bracket = ya_hat ** 4 * yb_hat * difference - (ab.a(a) * ya_hat * ya_hat).scale(
            y[a] ** 2 * y[b] / (y[a] - y[b])
        )
        inner = ab.t() * (ab.one() + ab.b_inverse(a)) * bracket
        first = inner.derive(y[a]).scale(y[a] ** 5 * y[c] / (y[a] - y[c]))
        second = inner.derive(y[b]).scale(y[b] ** 5 * y[c] / (y[b] - y[c]))
        return first + second

    total = sym((1, 2), spread) + sym((1, 1, 1), chained).scale(rational(1, 2))
    return total.even_part()


# -- identity checks ------------------------------------------------------

def lag_y_residual(k: int, order: int) -> RationalFunctionSeries:
    """
    Σ_g t^{2g}[u^{2g−1}] u^k Y_1^{2g−1} − ½E t(1 + B_1^{−1})A_1^k, zero through t^order.
    """
    K = rational_field(1)
    ab = ab_series(K, order)
    Y = y_of_u(K, 0, order + 1)
    lhs = {}
    for g in range(1, order // 2 + 1):
        lhs[2 * g] = (Y ** (2 * g - 1)).shift(k).coefficient(2 * g - 1)
    rhs = (ab.t() * (ab.one() + ab.b_inverse(0)) * ab.a(0) ** k).even_part().scale(rational(1, 2))
    return RationalFunctionSeries(K, lhs, order) - rhs


def single_hurwitz_polynomial(m: int, profile: TruncProfile) -> MultiSeries:
    """C Ξ_m Ĥ⁰, a polynomial in y_1..y_m for m ≥ 3."""
    return change_to_y(symmetrize(hurwitz_series_single(profile), m))


def single_hurwitz_expected(m: int, profile: TruncProfile) -> MultiSeries:
    """(Σ_i y_i²(y_i − 1)∂_{y_i})^{m−3} Π_i (y_i − 1)."""
    if m < 3:
        raise PartitionError(f"C Ξ_m Ĥ⁰ is polynomial for m >= 3, got {m}")
    names = [y_var(i) for i in range(1, m + 1)]
    value = MultiSeries.constant(1, profile, names)
    for name in names:
        value = value * (MultiSeries.variable(name, profile) - 1)
    for _ in range(m - 3):
        value = MultiSeries.sum_of(
            (
                value.derive(name) * MultiSeries.from_monomials([({name: 3}, 1), ({name: 2}, -1)], profile)
                for name in names
            ),
            profile,
        )
    return value


def single_hurwitz_euler_residual(profile: TruncProfile) -> MultiSeries:
    """(1 + s_1)·C(x_1∂Ξ_1Ĥ⁰) − s_1 in s_1 = y_1 − 1, zero when C(x∂Ξ_1Ĥ⁰) = 1 − 1/y_1."""
    s = change_to_y(symmetrize(hurwitz_series_single(profile), 1).euler("x1"), polynomial=False)
    s1 = MultiSeries.variable("s1", s.profile)
    return (1 + s1) * s - s1


def euler_top_residual(g: int, profile: TruncProfile = DEFAULT_PROFILE) -> MultiSeries:
    """T(x∂ Ξ_1F^g) − y³∂_y T F^g_1."""
    raw = symmetrized_fh(g, 1, 4 * g + 2, profile).euler("x1")
    lhs = top_degree(change_to_y(raw), TopMode.FABER, m=1, degree=4 * g)
    top = faber_top(g, 1, profile)
    rhs = top.derive("y1") * MultiSeries.monomial({"y1": 3}, 1, top.profile.with_bounds(y_max=4 * g))
    return lhs - rhs


def cg_ratio_formula(g: int) -> ExactRational:
    """(2g−3)!!·C(4g−3, 2g−1) ÷ ((4g−3)!!/(4g−2))."""
    return rational(
        double_factorial_odd(2 * g - 3) * binomial(4 * g - 3, 2 * g - 1) * (4 * g - 2),
        double_factorial_odd(4 * g - 3),
    )


def cg_ratio_computed(g: int, profile: TruncProfile = DEFAULT_PROFILE) -> ExactRational:
    """(2g−3)!!·C(4g−3, 2g−1) ÷ [y^{4g−2}] T F^g_1 from the computed numbers."""
    coefficient = faber_top(g, 1, profile).coefficient({"y1": 4 * g - 2})
    return rational(double_factorial_odd(2 * g - 3) * binomial(4 * g - 3, 2 * g - 1)) / coefficient
