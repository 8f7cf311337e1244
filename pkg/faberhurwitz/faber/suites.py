"""
Verification suites.

Each suite runs a family of exact identities and records one check per
identity. A check passes when its residual is exactly zero; a failing check
keeps the first offending coefficient. Package errors raised while computing
a residual are recorded as failures too, so a suite always returns a report.

Suites:
    hurwitz-oracle          closed genus-0 numbers against the monodromy count
    one-part                join-cut numbers against the one-part closed form
    joincut                 the join-cut equation on the generating series
    localization            tree series, predicted_fh, tree_sum, the double
                            Hurwitz and V-routes
    conjecture-regression   solved symbols against the conjectured values
    cg-ratio                the generator ratio 2^g/(g−1)!
    psi-phi                 Ψ_1 = Φ_1 and Ψ_2 = Φ_2 with their closed forms
    xi-top                  closed against computed top terms
    polynomiality           stabilisation of C Λξ^{(i)}_m
    appendix                tree-function, kernel, change-of-variables and
                            Lagrange identities
    psi-phi-3               the three-point comparison (optional, long)

Example:
    >>> from faberhurwitz.faber.suites import check_suites
    >>> report = check_suites(["cg-ratio"], max_genus=1)
    >>> report.passed
    True
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

from sympy.polys.fields import FracElement

from faberhurwitz.core.errors import FaberHurwitzError
from faberhurwitz.core.partitions import Partition, partitions_of, partitions_up_to
from faberhurwitz.core.rational import ExactRational, rational, rational_str
from faberhurwitz.degeneration.joincut import faber_hurwitz, one_part_closed
from faberhurwitz.degeneration.series import joincut_residual
from faberhurwitz.faber.generating import (
    build_phi,
    build_psi,
    cg_ratio_computed,
    cg_ratio_formula,
    delta_two_phi_three_closed,
    euler_top_residual,
    lag_y_residual,
    phi_one_closed,
    psi_two_closed,
    reconstruct_phi_two,
    rhs_two_closed,
    single_hurwitz_euler_residual,
    single_hurwitz_expected,
    single_hurwitz_polynomial,
    two_point_common_form,
    upsilon_from_top,
    upsilon_three_closed,
    upsilon_two_closed,
    xi_top_closed,
)
from faberhurwitz.faber.solve import conjecture_comparison, nonsing_block, solve_symbols
from faberhurwitz.faber.symbols import SymbolTable, generator_ratio, lambda_relation_residual, reduction_step
from faberhurwitz.hurwitz.closed import HurwitzQuery
from faberhurwitz.hurwitz.series import hurwitz_number, hurwitz_series_double
from faberhurwitz.localization.symmetrized import (
    kernel_residual,
    lambda_tree_residual,
    partial_q_residuals,
    symmetrized_double_hurwitz,
    tree_function_residuals,
    v_change_residuals,
    xi_stabilizes,
    xi_top_computed,
    xi_top_degrees,
    y_ratio_residual,
)
from faberhurwitz.localization.trees import tree_sum
from faberhurwitz.localization.treeseries import predicted_fh, solve_tree_series, tree_residuals
from faberhurwitz.series.multiseries import MultiSeries
from faberhurwitz.series.profile import DEFAULT_PROFILE, TruncProfile
from faberhurwitz.series.ratfunc import RationalFunctionSeries, rational_field
from faberhurwitz.series.transforms import TopMode, symmetrize, top_degree, tree_function, tree_y_series

logger = logging.getLogger(__name__)

OPTIONAL_SUITES = ("psi-phi-3",)

# Small profiles for the routes that grade by x-degree.
TREE_PROFILE = TruncProfile(z_max=4, index_max=4, u_max=8)
DOUBLE_PROFILE = TruncProfile(z_max=4, index_max=4, t_max=0, u_min=-4, u_max=4, y_max=4)
PARTIAL_Q_PROFILE = TruncProfile(z_max=4, index_max=3, t_max=0, u_min=-4, u_max=5, y_max=4)
V_ROUTE_PROFILE = TruncProfile(z_max=1, index_max=1, t_max=0, u_min=-4, u_max=3, y_max=4)
SERIES_PROFILE = TruncProfile(z_max=1, index_max=1, t_max=0, u_min=0, u_max=0, y_max=10)
KERNEL_PROFILE = TruncProfile(z_max=1, index_max=1, t_max=0, u_min=0, u_max=0, y_max=6)
V_CHANGE_PROFILE = TruncProfile(z_max=1, index_max=1, t_max=0, u_min=-2, u_max=4, y_max=8)
SINGLE_PROFILE = TruncProfile(z_max=5, index_max=5, t_max=0, u_min=0, u_max=0, y_max=5)


# -- reports ----------------------------------------------------------------

@dataclass(frozen=True)
class Failure:
    """A failed check with its first offending coefficient (or the error raised)."""
    check: str
    residual: str

    def to_json(self) -> Dict[str, str]:
        return {"check": self.check, "residual": self.residual}


def _is_zero(residual: Any) -> bool:
    if isinstance(residual, (MultiSeries, RationalFunctionSeries)):
        return residual.is_zero()
    if isinstance(residual, FracElement):
        return not residual.numer
    return residual == 0


def describe(residual: Any) -> str:
    """The first nonzero coefficient of a residual, for reports."""
    if isinstance(residual, MultiSeries):
        exps, value = min(residual.monomials(), key=lambda item: sorted(item[0].items()))
        monomial = "*".join(f"{name}^{e}" for name, e in sorted(exps.items())) or "1"
        return f"{monomial}: {rational_str(value)}"
    if isinstance(residual, RationalFunctionSeries):
        k, value = next(iter(residual.items()))
        return f"{residual.variable}^{k}: {value}"
    if isinstance(residual, FracElement):
        return str(residual)
    return rational_str(residual)


@dataclass
class SuiteResult:
    """
    Outcome of one suite.

    Attributes:
        name: Suite name
        checks: Number of checks run
        failures: Failed checks in the order they ran
    """
    name: str
    checks: int = 0
    failures: List[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, label: str, thunk: Callable[[], Any]):
        """
        Run one check whose thunk returns a residual.

        A mapping or list of residuals counts as one check per entry.
        """
        try:
            residual = thunk()
        except FaberHurwitzError as exc:
            self.fail(label, f"{type(exc).__name__}: {exc}")
            return
        if isinstance(residual, Mapping):
            entries: Iterable[Tuple[str, Any]] = ((f"{label}[{key}]", value) for key, value in residual.items())
        elif isinstance(residual, (list, tuple)):
            entries = ((f"{label}[{k}]", value) for k, value in enumerate(residual))
        else:
            entries = ((label, residual),)
        for name, value in entries:
            self.checks += 1
            if not _is_zero(value):
                self.failures.append(Failure(name, describe(value)))
                logger.debug("%s: %s failed", self.name, name)

    def holds(self, label: str, thunk: Callable[[], bool]):
        """Run one check whose thunk returns True on success."""
        try:
            ok = thunk()
        except FaberHurwitzError as exc:
            self.fail(label, f"{type(exc).__name__}: {exc}")
            return
        self.checks += 1
        if not ok:
            self.failures.append(Failure(label, "does not hold"))

    def fail(self, label: str, message: str):
        self.checks += 1
        self.failures.append(Failure(label, message))
        logger.debug("%s: %s raised %s", self.name, label, message)

    def to_json(self) -> Dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": [failure.to_json() for failure in self.failures],
        }


@dataclass
class SuiteReport:
    """Results of check_suites, plus the optional suites left out of 'all'."""
    results: List[SuiteResult] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def to_json(self) -> Dict:
        return {
            "passed": self.passed,
            "suites": [result.to_json() for result in self.results],
            "skipped": list(self.skipped),
        }


# -- shared state -----------------------------------------------------------

class SuiteContext:
    """Profile, genus cap and the symbol tables shared by the suites of one run."""

    def __init__(self, profile: TruncProfile, max_genus: int):
        self.profile = profile
        self.max_genus = max_genus
        self._symbols: Dict[Tuple[int, int], SymbolTable] = {}

    def genera(self, cap: int) -> range:
        return range(1, min(cap, self.max_genus) + 1)

    def symbols(self, g: int, n_max: int) -> SymbolTable:
        key = (g, n_max)
        if key not in self._symbols:
            self._symbols[key] = solve_symbols(g, n_max, self.profile)
        return self._symbols[key]

    def table(self, g_max: int, n_max: int) -> SymbolTable:
        merged = SymbolTable()
        for g in range(1, g_max + 1):
            for key, entry in self.symbols(g, n_max).items():
                merged.set(key, entry.value, entry.provenance)
        return merged


Suite = Callable[[SuiteResult, SuiteContext], None]
SUITES: Dict[str, Suite] = {}


def suite(name: str) -> Callable[[Suite], Suite]:
    def register(fn: Suite) -> Suite:
        SUITES[name] = fn
        return fn

    return register


# -- suites -----------------------------------------------------------------

@suite("hurwitz-oracle")
def _hurwitz_oracle(result: SuiteResult, ctx: SuiteContext):
    for alpha in partitions_up_to(min(5, ctx.profile.z_max)):
        query = HurwitzQuery(0, alpha)
        result.check(f"H0{alpha}", lambda: hurwitz_number(query) - hurwitz_number(query, oracle=True))
    for d in range(1, 5):
        for beta in partitions_of(d):
            query = HurwitzQuery(0, Partition.of(d), beta)
            result.check(f"H0({d}),{beta}", lambda: hurwitz_number(query) - hurwitz_number(query, oracle=True))


@suite("one-part")
def _one_part(result: SuiteResult, ctx: SuiteContext):
    for g in ctx.genera(3):
        for d in range(1, 7):
            result.check(f"F{g}({d})", lambda: faber_hurwitz(g, Partition.of(d)) - one_part_closed(g, d))


@suite("joincut")
def _joincut(result: SuiteResult, ctx: SuiteContext):
    for g in ctx.genera(3):
        result.check(f"joincut g={g}", lambda: joincut_residual(g, ctx.profile))


@suite("localization")
def _localization(result: SuiteResult, ctx: SuiteContext):
    result.check("tree equations", lambda: tree_residuals(solve_tree_series(TREE_PROFILE)))
    for g in ctx.genera(3):
        table = ctx.symbols(g, 3)
        forms = predicted_fh(g, ctx.profile, 3)
        for alpha in sorted(forms, key=Partition.sort_key):
            if alpha.size > 5:
                continue
            form = forms[alpha]
            result.check(f"predicted F{g}{alpha}", lambda: table.evaluate(form) - faber_hurwitz(g, alpha))
    if ctx.max_genus >= 1:
        table = ctx.symbols(1, 3)
        for alpha in partitions_up_to(3):
            result.check(f"tree_sum F1{alpha}", lambda: tree_sum(1, alpha, table) - faber_hurwitz(1, alpha))
    double = hurwitz_series_double(DOUBLE_PROFILE)
    for m in range(1, 4):
        result.check(
            f"double Hurwitz m={m}",
            lambda: symmetrized_double_hurwitz(m, DOUBLE_PROFILE) - symmetrize(double, m),
        )
    for j in range(1, 4):
        for m in range(1, 3):
            result.check(
                f"V-route f_{j} m={m}",
                lambda: lambda_tree_residual(j, m, TREE_PROFILE, V_ROUTE_PROFILE),
            )


@suite("conjecture-regression")
def _conjecture_regression(result: SuiteResult, ctx: SuiteContext):
    for g in ctx.genera(4):
        n_max = 3 if g <= 3 else 2
        try:
            table = ctx.symbols(g, n_max)
        except FaberHurwitzError as exc:
            result.fail(f"solve g={g}", f"{type(exc).__name__}: {exc}")
            continue
        for row in conjecture_comparison(table, g, n_max):
            result.holds(f"conjecture {row['key']}", lambda: row["match"])
        for key, entry in table.items():
            if key.is_reducible():
                result.check(f"string/dilaton {key.label()}", lambda: table.evaluate(reduction_step(key)) - entry.value)
        if g >= 2:
            result.check(f"lambda relation g={g}", lambda: lambda_relation_residual(table, g))
        for n in range(2, n_max + 1):
            result.holds(f"top block g={g} n={n}", lambda: nonsing_block(g, n).is_triangular())


@suite("cg-ratio")
def _cg_ratio(result: SuiteResult, ctx: SuiteContext):
    for g in range(1, 6):
        result.check(f"formula g={g}", lambda: cg_ratio_formula(g) - generator_ratio(g))
    for g in ctx.genera(3):
        result.check(f"computed g={g}", lambda: cg_ratio_computed(g, ctx.profile) - generator_ratio(g))


@suite("psi-phi")
def _psi_phi(result: SuiteResult, ctx: SuiteContext):
    g_one = min(4, ctx.max_genus)
    if g_one >= 1:
        order = 2 * g_one
        phi = build_phi(1, g_one, ctx.profile)
        result.check("Φ1 closed", lambda: phi - phi_one_closed(order))
        result.check("Ψ1 = Φ1", lambda: build_psi(1, g_one, ctx.table(g_one, 1)) - phi)
    g_two = min(3, ctx.max_genus)
    if g_two >= 1:
        order = 2 * g_two
        phi = build_phi(2, g_two, ctx.profile)
        psi = build_psi(2, g_two, ctx.table(g_two, 2))
        rhs = rhs_two_closed(order)
        result.check("Ψ2 = Φ2", lambda: psi - phi)
        result.check("Ψ2 closed", lambda: psi_two_closed(order) - psi)
        result.check("Δ3Δ2Ψ2", lambda: psi.delta(2).delta(3) - rhs)
        result.check("Δ3Δ2Φ2", lambda: phi.delta(2).delta(3) - rhs)
        result.check("Δ3Δ2 common form", lambda: rhs - two_point_common_form(order))
        result.check("Φ2 reconstructed", lambda: reconstruct_phi_two(order) - phi)
        y1, y2 = rational_field(2).gens
        result.check("Υ2", lambda: upsilon_from_top(y1 * y2, order) - upsilon_two_closed(order))


@suite("xi-top")
def _xi_top(result: SuiteResult, ctx: SuiteContext):
    u_order = 6
    for m in range(1, 3):
        K = rational_field(m)
        for i in range(0, 4):
            result.check(
                f"TΛξ({i})_{m}",
                lambda: xi_top_closed(i, m, u_order)
                - RationalFunctionSeries.from_multiseries(xi_top_computed(i, m, u_order), K, "u", order=u_order),
            )
            result.holds(
                f"top degree ({i})_{m}",
                lambda: all(
                    degree == 2 * i + 2 + 4 * (m - 1) + k
                    for k, degree in xi_top_degrees(i, m, u_order).items()
                    if k <= u_order
                ),
            )


@suite("polynomiality")
def _polynomiality(result: SuiteResult, ctx: SuiteContext):
    for m in range(1, 3):
        for i in range(0, 4):
            result.holds(f"CΛξ({i})_{m} stable", lambda: xi_stabilizes(i, m, 3))


@suite("appendix")
def _appendix(result: SuiteResult, ctx: SuiteContext):
    result.check("tree function", lambda: tree_function_residuals(SERIES_PROFILE))
    w, y = tree_function("x1", SERIES_PROFILE), tree_y_series("x1", SERIES_PROFILE)
    for n in range(1, 11):
        result.check(f"w_{n}", lambda: w.coefficient({"x1": n}) - _tree_count(n, n - 1))
        result.check(f"y_{n}", lambda: y.coefficient({"x1": n}) - _tree_count(n, n))
    for i in range(0, 5):
        result.check(f"y-ratio i={i}", lambda: y_ratio_residual(i))
    result.check("kernel", lambda: kernel_residual(KERNEL_PROFILE))
    result.check("V change", lambda: v_change_residuals(V_CHANGE_PROFILE))
    result.check("q-derivatives", lambda: partial_q_residuals(PARTIAL_Q_PROFILE))
    for k in range(0, 4):
        result.check(f"Lagrange u^{k}", lambda: lag_y_residual(k, 8))
    result.check(
        "CΞ3Ĥ0",
        lambda: single_hurwitz_polynomial(3, SINGLE_PROFILE) - single_hurwitz_expected(3, SINGLE_PROFILE),
    )
    result.check(
        "TCΞ3Ĥ0",
        lambda: top_degree(single_hurwitz_polynomial(3, SINGLE_PROFILE), TopMode.HURWITZ)
        - MultiSeries.monomial({"y1": 1, "y2": 1, "y3": 1}, 1, SINGLE_PROFILE),
    )
    result.check("C x∂Ξ1Ĥ0", lambda: single_hurwitz_euler_residual(SINGLE_PROFILE))
    for g in ctx.genera(2):
        result.check(f"T x∂ g={g}", lambda: euler_top_residual(g, ctx.profile))
    y1, y2, y3 = rational_field(3).gens
    result.check("Υ3", lambda: upsilon_from_top(y1 * y2 * y3, 4) - upsilon_three_closed(4))


@suite("psi-phi-3")
def _psi_phi_three(result: SuiteResult, ctx: SuiteContext):
    g_max = min(2, ctx.max_genus)
    order = 2 * g_max
    psi = build_psi(3, g_max, ctx.table(g_max, 3))
    phi = build_phi(3, g_max, ctx.profile)
    closed = delta_two_phi_three_closed(order)
    result.check("Δ2Ψ3", lambda: psi.delta(2) - closed)
    result.check("Δ2Φ3", lambda: phi.delta(2) - closed)
    result.check("Ψ3 = Φ3", lambda: psi - phi)


def _tree_count(n: int, power: int) -> ExactRational:
    return rational(n ** power, math.factorial(n))


# -- entry point ------------------------------------------------------------

def suite_names(names: Sequence[str]) -> Tuple[List[str], List[str]]:
    """
    Expand 'all' and validate names; returns (to run, skipped optional).

    Raises:
        ValueError: On an unknown suite name
    """
    selected: List[str] = []
    skipped: List[str] = []
    for name in names:
        if name == "all":
            for known in SUITES:
                if known in OPTIONAL_SUITES:
                    if known not in skipped:
                        skipped.append(known)
                elif known not in selected:
                    selected.append(known)
        elif name in SUITES:
            if name not in selected:
                selected.append(name)
        else:
            raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    skipped = [name for name in skipped if name not in selected]
    return selected, skipped


def check_suites(
    names: Sequence[str],
    profile: TruncProfile = DEFAULT_PROFILE,
    max_genus: int = 2,
) -> SuiteReport:
    """
    Run the named suites in order.

    Args:
        names: Suite names, or "all" for every suite except the optional ones
        profile: Truncation bounds for the profile-driven checks
        max_genus: Highest genus any suite goes to

    Raises:
        ValueError: On an unknown suite name or max_genus < 1
    """
    if max_genus < 1:
        raise ValueError(f"max_genus must be at least 1, got {max_genus}")
    selected, skipped = suite_names(names)
    for name in skipped:
        logger.warning("optional suite %s skipped; name it explicitly to run it", name)
    ctx = SuiteContext(profile, max_genus)
    report = SuiteReport(skipped=skipped)
    for name in selected:
        result = SuiteResult(name)
        SUITES[name](result, ctx)
        logger.info("suite %s: %d checks, %d failed", name, result.checks, len(result.failures))
        report.results.append(result)
    return report
