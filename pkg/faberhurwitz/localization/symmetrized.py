"""
Symmetrized localization series, computed through the double Hurwitz series.

Instead of solving the tree equations in z and the p's, everything here lives
in the symmetrized variables x_1..x_m. The genus-0 double Hurwitz series has
closed symmetrized forms in terms of

    v = x·e^{uQ(v)},  Q(t) = Σ_j q_j t^j,  μ(t) = (1 − u·t·Q′(t))^{−1}

and after Λ (u -> −u, x -> x/(1−u)) and Ω (q_j -> j^{j−1}/j!) the same
substitution becomes

    V = ΛΩv,  V = x/(1−u)·exp(−u·w(V)),  ΛΩμ = 1/(1 + u(y(V) − 1)).

Λf_{j,m} and Λξ^{(i)}_m for m ≤ 2 follow as explicit rational expressions in
V_1, V_2. Quotients by x_1 − x_2 are taken in formal variables first and the
V's are substituted afterwards.

Example:
    >>> from faberhurwitz.series.profile import TruncProfile
    >>> from faberhurwitz.localization.symmetrized import v_series
    >>> v = v_series(TruncProfile(y_max=3, index_max=2, u_max=3))
    >>> v.coefficient({"x1": 2, "q1": 1, "u": 1}) == 1
    True
"""

import logging
import math
from functools import lru_cache
from typing import Callable, Dict, List

from faberhurwitz.core.errors import PartitionError, TruncationError
from faberhurwitz.core.partitions import double_factorial_odd
from faberhurwitz.core.rational import ExactRational, rational
from faberhurwitz.localization.treeseries import solve_tree_series
from faberhurwitz.series.multiseries import MultiSeries, q_var, x_var
from faberhurwitz.series.profile import TruncProfile
from faberhurwitz.series.ratfunc import rational_field
from faberhurwitz.series.transforms import (
    TopMode,
    change_to_y,
    lambda_sub,
    solve_fixed_point,
    symmetrize,
    top_degree,
    tree_function,
    tree_y_series,
)

logger = logging.getLogger(__name__)

MAX_DOUBLE_PARTS = 3
MAX_LAMBDA_PARTS = 2


def _power_sum(name: str, profile: TruncProfile, weight: Callable[[int], ExactRational]) -> MultiSeries:
    """Σ_{j≥1} weight(j)·name^j through the profile's degree bound."""
    return MultiSeries.from_monomials(
        [({name: j}, weight(j)) for j in range(1, profile.y_max + 1) if weight(j)], profile, (name,)
    )


def _q_sum(name: str, profile: TruncProfile, weight: Callable[[int], int]) -> MultiSeries:
    return MultiSeries.from_monomials(
        [({name: j, q_var(j): 1}, weight(j)) for j in range(1, profile.index_max + 1)], profile, (name,)
    )


def _inverse_u(profile: TruncProfile) -> MultiSeries:
    return MultiSeries.monomial({"u": -1}, 1, profile)


# -- the double Hurwitz route -----------------------------------------------

@lru_cache(maxsize=16)
def v_series(profile: TruncProfile, name: str = "x1") -> MultiSeries:
    """v = x·e^{uQ(v)}, solved to total x-degree y_max."""
    x = MultiSeries.variable(name, profile)
    u = MultiSeries.variable("u", profile)
    q_sum = _q_sum(name, profile, lambda j: 1)

    def rhs(values: Dict[str, MultiSeries]) -> MultiSeries:
        return x * (u * q_sum.substitute({name: values["v"]})).exp()

    return solve_fixed_point({"v": rhs}, profile, initial={"v": x}, grading="x")["v"]


def mu_formal(name: str, profile: TruncProfile) -> MultiSeries:
    """μ(t) = (1 − u·Σ_j j·q_j·t^j)^{−1} with t the formal variable name."""
    u = MultiSeries.variable("u", profile)
    return (1 - u * _q_sum(name, profile, lambda j: j)).inverse()


def _u_q_of_v(name: str, profile: TruncProfile) -> MultiSeries:
    u = MultiSeries.variable("u", profile)
    return u * _q_sum(name, profile, lambda j: 1).substitute({name: v_series(profile, name)})


def _at_v(formal: MultiSeries, m: int, profile: TruncProfile) -> MultiSeries:
    """Substitute x_i -> v(x_i) for i ≤ m."""
    return formal.substitute({x_var(i): v_series(profile, x_var(i)) for i in range(1, m + 1)})


def symmetrized_double_hurwitz(m: int, profile: TruncProfile) -> MultiSeries:
    """
    Ξ_m H⁰ for m ≤ 3 from its closed symmetrized form.

        x∂H_1 = uQ(v)
        H_2 = log((v_1 − v_2)/(x_1 − x_2)) − uQ(v_1) − uQ(v_2)
        H_3 = Σ_cyc ±(μ_1 − 1)v_2v_3(v_2 − v_3) / Π_{i<j}(x_i − x_j)

    Args:
        m: Number of x variables, 1..3
        profile: y_max bounds the total x-degree; u_max should be at least
            y_max for every coefficient to be exact

    Raises:
        PartitionError: If m is outside 1..3
    """
    if not 1 <= m <= MAX_DOUBLE_PARTS:
        raise PartitionError(f"closed symmetrized double Hurwitz series exist for m <= {MAX_DOUBLE_PARTS}, got {m}")
    if m == 1:
        derivative = _u_q_of_v("x1", profile)
        return MultiSeries.from_monomials(
            [(exps, value / exps["x1"]) for exps, value in derivative.monomials()], profile, derivative.variables
        )
    if m == 2:
        wide = profile.with_bounds(y_max=profile.y_max + 1)
        ratio = (v_series(wide, "x1") - v_series(wide, "x2")).divide_difference("x1", "x2")
        result = ratio.log() - _u_q_of_v("x1", wide) - _u_q_of_v("x2", wide)
        return result.with_profile(profile)
    wide = profile.with_bounds(y_max=profile.y_max + 3)
    x1, x2, x3 = (MultiSeries.variable(x_var(i), wide) for i in (1, 2, 3))
    mu1, mu2, mu3 = (mu_formal(x_var(i), wide) - 1 for i in (1, 2, 3))
    numerator = mu1 * x2 * x3 * (x2 - x3) - mu2 * x1 * x3 * (x1 - x3) + mu3 * x1 * x2 * (x1 - x2)
    quotient = (
        numerator.divide_difference("x1", "x2").divide_difference("x1", "x3").divide_difference("x2", "x3")
    )
    return _at_v(quotient, 3, wide).with_profile(profile)


def partial_q_residuals(profile: TruncProfile) -> List[MultiSeries]:
    """
    Residuals of the q-derivative identities of H_1 and H_2:

        ∂_{q_j}H_1 = (u/j)·v^j
        ∂_{q_a}∂_{q_b}H_1 = u²·μ(v)·v^{a+b}
        ∂_{q_a}∂_{q_b}∂_{q_c}H_1 = u³·x∂(μ(v)·v^{a+b+c})
        ∂_{q_j}H_2 = u·(v_1^j μ(v_1) v_2 − v_2^j μ(v_2) v_1)/(v_1 − v_2)

    All vanish on a correct computation.
    """
    u = MultiSeries.variable("u", profile)
    h1 = symmetrized_double_hurwitz(1, profile)
    v = v_series(profile, "x1")
    mu = _at_v(mu_formal("x1", profile), 1, profile)
    residuals = []
    indices = range(1, profile.index_max + 1)
    for j in indices:
        residuals.append(h1.derive(q_var(j)) - (u * v ** j).scale(rational(1, j)))
    for a in indices:
        for b in indices:
            if b < a:
                continue
            second = h1.derive(q_var(a)).derive(q_var(b))
            residuals.append(second - u ** 2 * mu * v ** (a + b))
            for c in indices:
                if c < b:
                    continue
                third = second.derive(q_var(c))
                residuals.append(third - (u ** 3 * mu * v ** (a + b + c)).euler("x1"))
    h2 = symmetrized_double_hurwitz(2, profile)
    wide = profile.with_bounds(y_max=profile.y_max + 1)
    x1, x2 = MultiSeries.variable("x1", wide), MultiSeries.variable("x2", wide)
    mu1, mu2 = mu_formal("x1", wide), mu_formal("x2", wide)
    uw = MultiSeries.variable("u", wide)
    for j in indices:
        formal = (uw * (x1 ** j * mu1 * x2 - x2 ** j * mu2 * x1)).divide_difference("x1", "x2")
        expected = _at_v(formal, 2, wide).with_profile(profile)
        residuals.append(h2.derive(q_var(j)) - expected)
    return residuals


# -- the Λ-transformed route ------------------------------------------------

@lru_cache(maxsize=16)
def lambda_omega_v(profile: TruncProfile, name: str = "x1") -> MultiSeries:
    """V = ΛΩv, the solution of V = x/(1−u)·exp(−u·w(V))."""
    x = MultiSeries.variable(name, profile)
    u = MultiSeries.variable("u", profile)
    scaled = x * (1 - u).inverse()
    w = tree_function(name, profile)

    def rhs(values: Dict[str, MultiSeries]) -> MultiSeries:
        return scaled * (-(u * w.substitute({name: values["V"]}))).exp()

    return solve_fixed_point({"V": rhs}, profile, initial={"V": scaled}, grading="x")["V"]


def m_formal(name: str, profile: TruncProfile) -> MultiSeries:
    """ΛΩμ = 1/(1 + u(y(t) − 1)) in the formal variable name."""
    u = MultiSeries.variable("u", profile)
    return (1 + u * (tree_y_series(name, profile) - 1)).inverse()


def p_formal(i: int, name: str, profile: TruncProfile) -> MultiSeries:
    """P_i(t) = Σ_{j≥1} j^{j+i}/j!·t^j."""
    return _power_sum(name, profile, lambda j: rational(j ** (j + i), math.factorial(j)))


def kernel_formal(first: str, second: str, profile: TruncProfile) -> MultiSeries:
    """K(t_1, t_2) = Σ_{j,k≥1} 1/(j+k)·j^{j+1}/j!·k^k/k!·t_1^j t_2^k."""
    monomials = []
    for j in range(1, profile.y_max + 1):
        for k in range(1, profile.y_max + 1 - j):
            value = rational(j ** (j + 1) * k ** k, (j + k) * math.factorial(j) * math.factorial(k))
            monomials.append(({first: j, second: k}, value))
    return MultiSeries.from_monomials(monomials, profile, (first, second))


def _exact_u(f: MultiSeries, profile: TruncProfile) -> MultiSeries:
    """Keep the u-coefficients that survive division by u exactly."""
    return f.filter(lambda exps: exps.get("u", 0) < profile.u_max)


def _at_big_v(formal: MultiSeries, m: int, profile: TruncProfile) -> MultiSeries:
    return formal.substitute({x_var(i): lambda_omega_v(profile, x_var(i)) for i in range(1, m + 1)})


def _lambda_one(inner: MultiSeries, profile: TruncProfile) -> MultiSeries:
    """−u^{−1}·G(V) for a formal series G in x1."""
    return _exact_u(-(_inverse_u(profile) * _at_big_v(inner, 1, profile)), profile)


def _lambda_two(weight: Callable[[str, TruncProfile], MultiSeries], profile: TruncProfile) -> MultiSeries:
    """
    −u^{−1}·[(V_2A_1 − V_1A_2)/(V_1 − V_2) + A_1K(V_1,V_2) + A_2K(V_2,V_1)]
    with A_i = ΛΩμ(V_i)·weight(V_i).
    """
    wide = profile.with_bounds(y_max=profile.y_max + 1)
    x1, x2 = MultiSeries.variable("x1", wide), MultiSeries.variable("x2", wide)
    a1 = m_formal("x1", wide) * weight("x1", wide)
    a2 = m_formal("x2", wide) * weight("x2", wide)
    body = (x2 * a1 - x1 * a2).divide_difference("x1", "x2")
    body = body + a1 * kernel_formal("x1", "x2", wide) + a2 * kernel_formal("x2", "x1", wide)
    result = -(_inverse_u(wide) * _at_big_v(body, 2, wide))
    return _exact_u(result.with_profile(profile), profile)


def _check_parts(m: int):
    if not 1 <= m <= MAX_LAMBDA_PARTS:
        raise PartitionError(f"the V-route covers m <= {MAX_LAMBDA_PARTS}, got {m}")


def lambda_f(j: int, m: int, profile: TruncProfile) -> MultiSeries:
    """
    Λ Ξ_m f_j from the V-route.

    The result keeps u-powers below u_max, where it is exact.

    Raises:
        PartitionError: If j < 1 or m is outside 1..2
    """
    _check_parts(m)
    if j < 1:
        raise PartitionError(f"lambda_f needs j >= 1, got {j}")
    if m == 1:
        return _lambda_one(MultiSeries.variable("x1", profile) ** j, profile)
    return _lambda_two(lambda name, p: MultiSeries.monomial({name: j}, j, p), profile)


def lambda_xi(i: int, m: int, profile: TruncProfile) -> MultiSeries:
    """
    Λ Ξ_m ξ^{(i)} from the V-route: −u^{−1}P_i(V) for m = 1, and the
    two-point expression with A = ΛΩμ·P_{i+1} for m = 2.

    Raises:
        PartitionError: If i < 0 or m is outside 1..2
    """
    _check_parts(m)
    if i < 0:
        raise PartitionError(f"lambda_xi needs i >= 0, got {i}")
    if m == 1:
        return _lambda_one(p_formal(i, "x1", profile), profile)
    return _lambda_two(lambda name, p: p_formal(i + 1, name, p), profile)


def xi_profile(i: int, m: int, u_order: int) -> TruncProfile:
    """
    A profile under which C Λξ^{(i)}_m is polynomial and exact up to u^{u_order}.

    The top degree at u^K is 2i + 2 + 4(m−1) + K; two more degrees witness
    that the change of variables has stabilised.
    """
    return TruncProfile(
        z_max=1,
        index_max=1,
        t_max=0,
        u_min=-2,
        u_max=u_order + 1,
        y_max=2 * i + 4 * m + u_order,
    )


def c_lambda_xi(i: int, m: int, profile: TruncProfile) -> MultiSeries:
    """C Λ Ξ_m ξ^{(i)}, a polynomial in y_1..y_m for each power of u."""
    return change_to_y(lambda_xi(i, m, profile))


def xi_top_computed(i: int, m: int, u_order: int) -> MultiSeries:
    """TΛξ^{(i)}_m through u^{u_order}, taken from the computed polynomials."""
    return top_degree(c_lambda_xi(i, m, xi_profile(i, m, u_order)), TopMode.XI, m=m)


def xi_top_degrees(i: int, m: int, u_order: int) -> Dict[int, int]:
    """u-power K -> top y-degree of C Λξ^{(i)}_m."""
    degrees: Dict[int, int] = {}
    for exps, _ in c_lambda_xi(i, m, xi_profile(i, m, u_order)).monomials():
        k = exps.get("u", 0)
        degree = sum(e for name, e in exps.items() if name != "u")
        degrees[k] = max(degrees.get(k, 0), degree)
    return degrees


def xi_stabilizes(i: int, m: int, u_order: int) -> bool:
    """True when C Λξ^{(i)}_m is unchanged by one more degree of truncation."""
    profile = xi_profile(i, m, u_order)
    try:
        low = c_lambda_xi(i, m, profile)
        high = c_lambda_xi(i, m, profile.with_bounds(y_max=profile.y_max + 1))
    except TruncationError as exc:
        logger.warning("C Λξ^(%d)_%d did not stabilise: %s", i, m, exc)
        return False
    return low == high


# -- identity checks --------------------------------------------------------

def tree_function_residuals(profile: TruncProfile, name: str = "x1") -> Dict[str, MultiSeries]:
    """
    w = v·e^w solved by iteration against the closed coefficients, and the
    two descriptions y = 1/(1 − w) = 1 + v·w′ of y.
    """
    v = MultiSeries.variable(name, profile)
    solved = solve_fixed_point({"w": lambda values: v * values["w"].exp()}, profile, grading="x")["w"]
    w = tree_function(name, profile)
    y = tree_y_series(name, profile)
    return {
        "fixed-point": solved - w,
        "inverse": y - (1 - w).inverse(),
        "derivative": y - 1 - w.euler(name),
    }


def y_ratio_residual(i: int):
    """
    (y³/(1−uy)·∂_y)^i (y/(1−uy)) − (2i−1)!!·(y/(1−uy))^{2i+1} in Q(y, u).
    """
    K = rational_field(1, ("u",))
    y, u = K.gens
    ratio = y / (1 - u * y)
    value = ratio
    for _ in range(i):
        value = y ** 3 / (1 - u * y) * value.diff(y)
    return value - double_factorial_odd(2 * i - 1) * ratio ** (2 * i + 1)


def kernel_residual(profile: TruncProfile) -> MultiSeries:
    """
    K(V_1,V_2)·(V_2 − V_1)(y_2 − y_1) − V_2(y_2 − y_1) + y_1²(y_2 − 1)(V_2 − V_1)
    with y_i = y(V_i), in formal V's.
    """
    v1, v2 = MultiSeries.variable("x1", profile), MultiSeries.variable("x2", profile)
    y1, y2 = tree_y_series("x1", profile), tree_y_series("x2", profile)
    kernel = kernel_formal("x1", "x2", profile)
    return kernel * (v2 - v1) * (y2 - y1) - v2 * (y2 - y1) + y1 ** 2 * (y2 - 1) * (v2 - v1)


def v_change_residuals(profile: TruncProfile) -> Dict[str, MultiSeries]:
    """
    C y(V) = (1−u)y/(1−uy) and C ΛΩμ(V) = (1−uy)/(1−u), both expanded in u
    through u_max.
    """
    big_v = lambda_omega_v(profile, "x1")
    y_of_v = tree_y_series("x1", profile).substitute({"x1": big_v})
    mu_of_v = m_formal("x1", profile).substitute({"x1": big_v})
    ratio, mu = [], []
    for n in range(profile.u_max + 1):
        ratio.append(({"y1": n + 1, "u": n}, 1))
        ratio.append(({"y1": n + 1, "u": n + 1}, -1))
        mu.append(({"u": n}, 1))
        if n:
            mu.append(({"y1": 1, "u": n}, -1))
    expected_ratio = MultiSeries.from_monomials(ratio, profile, ("u", "y1"))
    expected_mu = MultiSeries.from_monomials(mu, profile, ("u", "y1"))
    return {
        "y": change_to_y(y_of_v) - expected_ratio,
        "mu": change_to_y(mu_of_v) - expected_mu,
    }


def lambda_tree_residual(j: int, m: int, tree_profile: TruncProfile, profile: TruncProfile) -> MultiSeries:
    """
    Λ Ξ_m f_j from the solved tree series minus the V-route, restricted to
    u < profile.u_max and total x-degree ≤ profile.y_max.
    """
    tree = solve_tree_series(tree_profile)
    from_tree = lambda_sub(symmetrize(tree.f[j], m))
    bound_u = min(profile.u_max, tree_profile.exact_u_max + 1)
    bound_x = min(profile.y_max, tree_profile.z_max)

    def window(exps: Dict[str, int]) -> bool:
        degree = sum(e for name, e in exps.items() if name.startswith("x"))
        return exps.get("u", 0) < bound_u and degree <= bound_x

    return from_tree.filter(window) - lambda_f(j, m, profile).filter(window)
