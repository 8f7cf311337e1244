"""
Transforms applied to truncated series.

This module holds the operators that move series between the z/p world of
Hurwitz-type generating functions and the x/y world of their symmetrized,
polynomial forms, plus the two generic solvers used to build implicitly
defined series.

Key Concepts:
    - symmetrize (Ξ_m): p_α z^|α| -> Σ over S_m of x_σ(1)^α_1 ⋯ x_σ(m)^α_m
    - lambda_sub (Λ): u -> −u, x_i -> x_i/(1−u)
    - omega_sub (Ω): q_i -> i^(i−1)/i!
    - change_to_y (C): x_i -> G(y_i − 1), G the inverse of Σ n^n x^n/n!
    - top_degree (T'): restriction to terms of top total y-degree
    - solve_fixed_point: unique solution of a contracting system
    - lagrange_invert: compositional inverse of a univariate series

Example:
    >>> from faberhurwitz.series.multiseries import MultiSeries
    >>> from faberhurwitz.series.transforms import symmetrize
    >>> f = MultiSeries.from_monomials([({"z": 2, "p1": 2}, 1)])
    >>> symmetrize(f, 2).coefficient({"x1": 1, "x2": 1}) == 2
    True
"""

import logging
import math
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Tuple

from sympy import QQ
from sympy.polys.ring_series import rs_series_reversion
from sympy.polys.rings import ring

from faberhurwitz.core.errors import (
    ConvergenceError,
    IncompatibleSeriesError,
    NotInImageError,
    PolynomialityError,
    TruncationError,
)
from faberhurwitz.core.partitions import Partition, distinct_orderings
from faberhurwitz.core.rational import ONE, ZERO, ExactRational, binomial, rational
from faberhurwitz.series.multiseries import (
    MultiSeries,
    s_var,
    variable_family,
    variable_index,
    x_var,
    y_var,
)
from faberhurwitz.series.profile import TruncProfile

logger = logging.getLogger(__name__)

System = Mapping[Hashable, Callable[[Dict[Hashable, MultiSeries]], MultiSeries]]


class TopMode(Enum):
    """
    Degree rule used by top_degree.

    - FABER: total degree 4g + 3m − 5 (symmetrized Faber–Hurwitz series)
    - HURWITZ: total degree 3m − 6 (symmetrized single Hurwitz series)
    - XI: the maximal degree present, separately in each u-coefficient
    """
    FABER = "faber"
    HURWITZ = "hurwitz"
    XI = "xi"


# -- fixed points -----------------------------------------------------------

def solve_fixed_point(
    system: System,
    profile: TruncProfile,
    initial: Optional[Mapping[Hashable, MultiSeries]] = None,
    grading: str = "z",
    ramp: bool = True,
    max_passes: Optional[int] = None,
) -> Dict[Hashable, MultiSeries]:
    """
    Solve s_k = RHS_k(s) for a family of series, grade by grade.

    Each pass evaluates the right-hand sides in sorted key order, using the
    newest values. With ramp=True the grading bound is raised one step at a
    time, so early passes work on short series. Iteration stops at a bound
    once a full pass leaves every series unchanged.

    Args:
        system: Mapping key -> callable taking the current values
        profile: Target truncation
        initial: Starting values (zero series when omitted)
        grading: "z", "y" or "t", the direction the system contracts in
        ramp: Raise the grading bound gradually
        max_passes: Pass limit per bound (defaults to bound + 2)

    Returns:
        Mapping key -> solved series

    Raises:
        ConvergenceError: If a bound is not reached within the pass limit
    """
    keys = sorted(system, key=repr)
    values: Dict[Hashable, MultiSeries] = {
        key: (initial[key] if initial and key in initial else MultiSeries.zero(profile))
        for key in keys
    }
    top = {"z": profile.z_max, "y": profile.y_max, "x": profile.y_max, "s": profile.y_max, "t": profile.t_max}[grading]
    bounds = range(0, top + 1) if ramp else [top]
    for bound in bounds:
        level = profile.capped(grading, bound)
        values = {key: value.with_profile(level) for key, value in values.items()}
        limit = max_passes if max_passes is not None else bound + 2
        for passes in range(1, limit + 1):
            changed = False
            for key in keys:
                new = system[key](values).with_profile(level)
                if new != values[key]:
                    values[key] = new
                    changed = True
            if not changed:
                logger.debug("fixed point at %s <= %d after %d passes", grading, bound, passes)
                break
        else:
            raise ConvergenceError(
                f"system did not stabilise at {grading} <= {bound} within {limit} passes"
            )
    return values


# -- univariate helpers -----------------------------------------------------

def lagrange_coefficients(coefficients: List[ExactRational], n: int) -> List[ExactRational]:
    """
    Compositional inverse of Σ c_k v^k (c_0 = 0, c_1 ≠ 0) as a coefficient list through v^n.

    Raises:
        NotInImageError: If c_0 ≠ 0 or c_1 = 0
    """
    coefficients = list(coefficients) + [ZERO] * (n + 2 - len(coefficients))
    if coefficients[0]:
        raise NotInImageError("compositional inverse needs a zero constant term")
    if not coefficients[1]:
        raise NotInImageError("compositional inverse needs a nonzero linear term")
    if n < 2:
        return [ZERO, ONE / coefficients[1]][: n + 1]
    R, v, w = ring("v,w", QQ)
    p = R.from_dict({(k, 0): c for k, c in enumerate(coefficients[: n + 1]) if c})
    inverse = rs_series_reversion(p, v, n + 1, w)
    return [inverse.get((0, k), ZERO) for k in range(n + 1)]


def _univariate(f: MultiSeries) -> Tuple[str, List[ExactRational]]:
    f = f.trim()
    if len(f.variables) != 1:
        raise IncompatibleSeriesError(f"expected a univariate series, got variables {f.variables}")
    name = f.variables[0]
    coefficients: List[ExactRational] = []
    for exps, value in f.monomials():
        e = exps.get(name, 0)
        coefficients.extend([ZERO] * (e + 1 - len(coefficients)))
        coefficients[e] = value
    return name, coefficients


def _from_list(name: str, coefficients: List[ExactRational], profile: TruncProfile) -> MultiSeries:
    return MultiSeries.from_monomials(
        (({name: k}, c) for k, c in enumerate(coefficients) if c), profile, (name,)
    )


def lagrange_invert(f: MultiSeries) -> MultiSeries:
    """
    Compositional inverse G with G(f(v)) = v to truncation.

    Raises:
        IncompatibleSeriesError: If f is not univariate
        NotInImageError: If f has a constant term or a zero linear term
    """
    name, coefficients = _univariate(f)
    n = _grade_bound(name, f.profile)
    return _from_list(name, lagrange_coefficients(coefficients, n), f.profile)


def _grade_bound(name: str, profile: TruncProfile) -> int:
    family = variable_family(name)
    if family == "z":
        return profile.z_max
    if family == "t":
        return profile.t_max
    if family in ("x", "y", "s"):
        return profile.y_max
    raise IncompatibleSeriesError(f"{name} is not a grading variable")


# -- tree-function series ---------------------------------------------------

def tree_function(name: str, profile: TruncProfile) -> MultiSeries:
    """w(v) = Σ_{n≥1} n^(n−1) v^n / n!, the solution of w = v·e^w."""
    n = _grade_bound(name, profile)
    return _from_list(name, [ZERO] + [rational(k ** (k - 1), math.factorial(k)) for k in range(1, n + 1)], profile)


def tree_y_series(name: str, profile: TruncProfile) -> MultiSeries:
    """y(v) = 1/(1 − w(v)) = Σ_{n≥0} n^n v^n / n! (with 0^0 = 1)."""
    n = _grade_bound(name, profile)
    return _from_list(name, [ONE] + [rational(k ** k, math.factorial(k)) for k in range(1, n + 1)], profile)


@lru_cache(maxsize=32)
def y_inverse_coefficients(n: int) -> Tuple[ExactRational, ...]:
    """Coefficients of G, the compositional inverse of Σ_{k≥1} k^k v^k / k!, through v^n."""
    series = [ZERO] + [rational(k ** k, math.factorial(k)) for k in range(1, n + 1)]
    return tuple(lagrange_coefficients(series, n))


# -- symmetrization and substitution operators ------------------------------

def _split_p(exps: Mapping[str, int]) -> Tuple[Partition, Dict[str, int]]:
    parts: List[int] = []
    rest: Dict[str, int] = {}
    for name, e in exps.items():
        family = variable_family(name)
        if family == "p":
            parts.extend([variable_index(name)] * e)
        elif family != "z":
            rest[name] = e
    return Partition(tuple(parts)), rest


def symmetrize(f: MultiSeries, m: int) -> MultiSeries:
    """
    Ξ_m: send p_α z^|α| to |Aut α|·Σ over distinct orderings of x^α when l(α) = m.

    Other variables ride along unchanged. The x-degree of the result is
    exact up to the z-bound of f, so the returned profile caps y_max there.

    Args:
        f: Series in z and p's (any extra variables allowed)
        m: Number of x variables, m ≥ 1
    """
    if m < 1:
        raise ValueError(f"symmetrize needs m >= 1, got {m}")
    profile = f.profile
    if "z" in f.variables:
        profile = profile.capped("y", profile.z_max)
    monomials = []
    for exps, value in f.monomials():
        alpha, rest = _split_p(exps)
        if alpha.length != m:
            continue
        weight = value * alpha.aut_size()
        for ordering in distinct_orderings(alpha.parts):
            monomial = dict(rest)
            for k, part in enumerate(ordering, start=1):
                monomial[x_var(k)] = part
            monomials.append((monomial, weight))
    return MultiSeries.from_monomials(monomials, profile, [x_var(k) for k in range(1, m + 1)])


def _family_variables(f: MultiSeries, family: str) -> List[str]:
    return [name for name in f.variables if variable_family(name) == family]


def lambda_sub(f: MultiSeries) -> MultiSeries:
    """Λ: u -> −u and x_i -> x_i/(1 − u) for every x variable of f."""
    u = MultiSeries.variable("u", f.profile)
    geometric = (1 - u).inverse()
    bindings: Dict[str, MultiSeries] = {"u": -u}
    for name in _family_variables(f, "x"):
        bindings[name] = MultiSeries.variable(name, f.profile) * geometric
    if len(bindings) == 1 and "u" not in f.variables:
        return f
    return f.embed(["u"]).substitute(bindings)


def omega_sub(f: MultiSeries) -> MultiSeries:
    """Ω: q_i -> i^(i−1)/i!."""
    bindings = {
        name: rational(variable_index(name) ** (variable_index(name) - 1), math.factorial(variable_index(name)))
        for name in _family_variables(f, "q")
    }
    return f.substitute(bindings)


def change_to_y(f: MultiSeries, polynomial: bool = True, witness: int = 2) -> MultiSeries:
    """
    The change of variables C: x_i -> G(y_i − 1).

    The substitution is carried out in s_i = y_i − 1. With polynomial=True
    the s-series must have stabilised (every coefficient of the remaining
    variables has s-degree at most y_max − witness) and is then rewritten
    in y. With polynomial=False the s-series is returned as is.

    Raises:
        TruncationError: If the result has not stabilised; required carries
            the smallest y_max that could witness it
    """
    profile = f.profile
    xs = _family_variables(f, "x")
    coefficients = y_inverse_coefficients(profile.y_max)
    bindings = {}
    for name in xs:
        target = s_var(variable_index(name))
        bindings[name] = _from_list(target, list(coefficients), profile)
    s_series = f.substitute(bindings) if bindings else f
    if not polynomial:
        return s_series
    s_names = [s_var(variable_index(name)) for name in xs]
    tops: Dict[Tuple, int] = {}
    for exps, _ in s_series.monomials():
        rest = tuple(sorted((k, v) for k, v in exps.items() if variable_family(k) != "s"))
        degree = sum(exps.get(name, 0) for name in s_names)
        tops[rest] = max(tops.get(rest, 0), degree)
    worst = max(tops.values(), default=0)
    if worst > profile.y_max - witness:
        raise TruncationError(
            f"change of variables has not stabilised: s-degree {worst} with y_max {profile.y_max}",
            required=worst + witness,
        )
    return shift_to_y(s_series)


def shift_to_y(s_series: MultiSeries) -> MultiSeries:
    """Rewrite a polynomial in s_i as a polynomial in y_i = 1 + s_i."""
    monomials = []
    for exps, value in s_series.monomials():
        expansions = [({}, value)]
        for name, e in exps.items():
            if variable_family(name) != "s":
                expansions = [({**mono, name: e}, c) for mono, c in expansions]
                continue
            target = y_var(variable_index(name))
            expanded = []
            for mono, c in expansions:
                for j in range(e + 1):
                    sign = -1 if (e - j) % 2 else 1
                    new = dict(mono)
                    if j:
                        new[target] = j
                    expanded.append((new, c * binomial(e, j) * sign))
            expansions = expanded
        monomials.extend(expansions)
    names = [y_var(variable_index(n)) if variable_family(n) == "s" else n for n in s_series.variables]
    return MultiSeries.from_monomials(monomials, s_series.profile, names)


def _y_degree(exps: Mapping[str, int]) -> int:
    return sum(e for name, e in exps.items() if variable_family(name) == "y")


def top_degree(
    f: MultiSeries,
    mode: TopMode,
    genus: Optional[int] = None,
    m: Optional[int] = None,
    degree: Optional[int] = None,
) -> MultiSeries:
    """
    T': keep the terms of top total y-degree.

    Args:
        f: Polynomial in y_1..y_m (other variables allowed)
        mode: Degree rule
        genus: Required in FABER mode
        m: Number of y variables (defaults to those declared in f)
        degree: Explicit top degree, overriding the FABER/HURWITZ rule

    Raises:
        PolynomialityError: If the result is empty, or terms above the
            expected degree are present
    """
    if m is None:
        m = len(_family_variables(f, "y"))
    if mode is TopMode.XI:
        best: Dict[int, int] = {}
        for exps, _ in f.monomials():
            k = exps.get("u", 0)
            best[k] = max(best.get(k, -1), _y_degree(exps))
        result = f.filter(lambda exps: _y_degree(exps) == best[exps.get("u", 0)])
    else:
        if degree is None and mode is TopMode.FABER:
            if genus is None:
                raise ValueError("FABER mode needs the genus")
            degree = 4 * genus + 3 * m - 5
        elif degree is None:
            degree = 3 * m - 6
        above = f.filter(lambda exps: _y_degree(exps) > degree)
        if above:
            raise PolynomialityError(f"terms above the expected degree {degree}: {above}")
        result = f.filter(lambda exps: _y_degree(exps) == degree)
    if not result:
        raise PolynomialityError(f"no terms of top degree ({mode.value} mode, m={m})")
    return result
