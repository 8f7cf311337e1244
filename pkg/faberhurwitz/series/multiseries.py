"""
Truncated multivariate formal power series over the exact rationals.

A MultiSeries is a sparse map from exponent vectors to ExactRational
coefficients over a declared, canonically ordered set of variables drawn from
z, u, t, b, p1.., q1.., x1.., y1.., s1... Every product and substitution is
truncated by the attached TruncProfile, so results are exact up to the bounds.

Key Concepts:
    - Grading variable: z when declared; otherwise the x/y/s variables by
      total degree; otherwise t. Products are computed grade by grade.
    - u is the only Laurent direction, kept inside [u_min, u_max]
    - b marks branch points inside Hurwitz generating series
    - Arithmetic across different variable sets works on the union of the sets

Example:
    >>> from faberhurwitz.series.multiseries import MultiSeries
    >>> z = MultiSeries.variable("z")
    >>> ((1 + z) * (1 - z)).to_json()[1]["exponents"]
    {'z': 2}
"""

import logging
import re
from bisect import bisect_right
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from faberhurwitz.core.errors import IncompatibleSeriesError, NotInImageError, TruncationError
from faberhurwitz.core.partitions import Partition
from faberhurwitz.core.rational import ONE, ZERO, ExactRational, RationalLike, as_rational, rational, rational_to_json
from faberhurwitz.series.profile import DEFAULT_PROFILE, TruncProfile

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
Terms = Dict[Exponents, ExactRational]

_SINGLE_VARIABLES = ("z", "u", "t", "b")
_INDEXED_VARIABLES = ("p", "q", "x", "y", "s")
_GROUP_ORDER = {name: position for position, name in enumerate(_SINGLE_VARIABLES + _INDEXED_VARIABLES)}
_GRADED_FAMILIES = ("x", "y", "s")
_VARIABLE_PATTERN = re.compile(r"^(?:([zutb])|([pqxys])([1-9][0-9]*))$")


def variable_sort_key(name: str) -> Tuple[int, int]:
    """
    Canonical position of a variable name.

    Raises:
        IncompatibleSeriesError: If the name is not a known variable
    """
    match = _VARIABLE_PATTERN.match(name)
    if match is None:
        raise IncompatibleSeriesError(f"unknown series variable: {name!r}")
    if match.group(1):
        return (_GROUP_ORDER[match.group(1)], 0)
    return (_GROUP_ORDER[match.group(2)], int(match.group(3)))


def variable_family(name: str) -> str:
    """The letter of a variable name ("p" for "p3")."""
    variable_sort_key(name)
    return name[0]


def variable_index(name: str) -> int:
    """The index of an indexed variable ("p3" -> 3); 0 for z, u, t, b."""
    return variable_sort_key(name)[1]


def p_var(i: int) -> str:
    return f"p{i}"


def q_var(i: int) -> str:
    return f"q{i}"


def x_var(i: int) -> str:
    return f"x{i}"


def y_var(i: int) -> str:
    return f"y{i}"


def s_var(i: int) -> str:
    return f"s{i}"


def canonical_variables(names: Iterable[str]) -> Tuple[str, ...]:
    """Deduplicate and sort variable names canonically."""
    return tuple(sorted(set(names), key=variable_sort_key))


def partition_exponents(family: str, alpha: Partition) -> Dict[str, int]:
    """Exponent map of the monomial p_α (or q_α, ...): {family+j: i_j}."""
    return {f"{family}{j}": count for j, count in alpha.multiplicities.items()}


class _Layout:
    """Per (variables, profile) truncation bookkeeping."""

    __slots__ = (
        "variables", "profile", "position", "grade_positions", "max_grade",
        "upper", "xys_positions", "xys_graded", "u_position",
    )

    def __init__(self, variables: Tuple[str, ...], profile: TruncProfile):
        self.variables = variables
        self.profile = profile
        self.position = {name: i for i, name in enumerate(variables)}
        families = [name[0] for name in variables]
        self.xys_positions = tuple(i for i, fam in enumerate(families) if fam in _GRADED_FAMILIES)
        self.u_position = self.position.get("u")
        self.xys_graded = False
        upper = []
        if "z" in self.position:
            self.grade_positions = (self.position["z"],)
            self.max_grade = profile.z_max
        elif self.xys_positions:
            self.grade_positions = self.xys_positions
            self.xys_graded = True
            self.max_grade = profile.y_max
        elif "t" in self.position:
            self.grade_positions = (self.position["t"],)
            self.max_grade = profile.t_max
        else:
            self.grade_positions = ()
            self.max_grade = 0
        if "t" in self.position and self.grade_positions != (self.position["t"],):
            upper.append((self.position["t"], profile.t_max))
        if "b" in self.position:
            upper.append((self.position["b"], profile.branch_bound))
        self.upper = tuple(upper)

    def grade(self, exps: Exponents) -> int:
        return sum(exps[i] for i in self.grade_positions)

    def admits(self, exps: Exponents) -> bool:
        """
        True if a monomial lies within the bounds.

        Raises:
            TruncationError: If the u-exponent falls below the window
        """
        if self.grade_positions and sum(exps[i] for i in self.grade_positions) > self.max_grade:
            return False
        for i, bound in self.upper:
            if exps[i] > bound:
                return False
        if self.xys_positions and not self.xys_graded:
            if sum(exps[i] for i in self.xys_positions) > self.profile.y_max:
                return False
        if self.u_position is not None:
            e = exps[self.u_position]
            if e > self.profile.u_max:
                return False
            if e < self.profile.u_min:
                raise TruncationError(
                    f"u-exponent {e} below the window [{self.profile.u_min}, {self.profile.u_max}]",
                    required=e,
                )
        return True


@lru_cache(maxsize=256)
def _layout(variables: Tuple[str, ...], profile: TruncProfile) -> _Layout:
    return _Layout(variables, profile)


class MultiSeries:
    """
    Immutable truncated series with ExactRational coefficients.

    Attributes:
        variables: Canonically ordered variable names
        profile: Truncation bounds
    """

    __slots__ = ("variables", "profile", "_terms", "_layout")

    def __init__(
        self,
        variables: Iterable[str] = (),
        terms: Optional[Mapping[Exponents, RationalLike]] = None,
        profile: TruncProfile = DEFAULT_PROFILE,
    ):
        variables = tuple(variables)
        if variables != canonical_variables(variables):
            raise IncompatibleSeriesError(f"variables must be distinct and canonically ordered: {variables}")
        layout = _layout(variables, profile)
        kept: Terms = {}
        for exps, value in (terms or {}).items():
            if len(exps) != len(variables):
                raise IncompatibleSeriesError(f"exponent vector {exps} does not match {variables}")
            value = as_rational(value)
            if not value:
                continue
            if any(e < 0 for i, e in enumerate(exps) if i != layout.u_position):
                raise IncompatibleSeriesError(f"negative exponent outside u: {exps}")
            if layout.admits(exps):
                kept[tuple(exps)] = value
        self._init(variables, kept, profile, layout)

    def _init(self, variables, terms, profile, layout):
        self.variables = variables
        self.profile = profile
        self._terms = terms
        self._layout = layout

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Terms, profile: TruncProfile) -> "MultiSeries":
        series = cls.__new__(cls)
        series._init(variables, terms, profile, _layout(variables, profile))
        return series

    # -- construction -----------------------------------------------------

    @classmethod
    def from_monomials(
        cls,
        monomials: Iterable[Tuple[Mapping[str, int], RationalLike]],
        profile: TruncProfile = DEFAULT_PROFILE,
        variables: Iterable[str] = (),
    ) -> "MultiSeries":
        """
        Build a series from (exponent map, coefficient) pairs.

        Example:
            >>> from sympy import QQ
            >>> half = MultiSeries.from_monomials([({"z": 2, "p2": 1}, "1/2")])
            >>> half.coefficient({"z": 2, "p2": 1}) == QQ(1, 2)
            True
        """
        monomials = list(monomials)
        names = set(variables)
        for exps, _ in monomials:
            names.update(exps)
        variables = canonical_variables(names)
        position = {name: i for i, name in enumerate(variables)}
        terms: Dict[Exponents, ExactRational] = {}
        for exps, value in monomials:
            vector = [0] * len(variables)
            for name, e in exps.items():
                vector[position[name]] = e
            key = tuple(vector)
            terms[key] = terms.get(key, ZERO) + as_rational(value)
        return cls(variables, terms, profile)

    @classmethod
    def monomial(
        cls,
        exps: Mapping[str, int],
        coefficient: RationalLike = 1,
        profile: TruncProfile = DEFAULT_PROFILE,
    ) -> "MultiSeries":
        return cls.from_monomials([(exps, coefficient)], profile)

    @classmethod
    def variable(cls, name: str, profile: TruncProfile = DEFAULT_PROFILE) -> "MultiSeries":
        return cls.monomial({name: 1}, 1, profile)

    @classmethod
    def constant(
        cls,
        value: RationalLike,
        profile: TruncProfile = DEFAULT_PROFILE,
        variables: Iterable[str] = (),
    ) -> "MultiSeries":
        variables = canonical_variables(variables)
        return cls(variables, {(0,) * len(variables): value}, profile)

    @classmethod
    def zero(cls, profile: TruncProfile = DEFAULT_PROFILE, variables: Iterable[str] = ()) -> "MultiSeries":
        return cls(canonical_variables(variables), {}, profile)

    @classmethod
    def sum_of(cls, parts: Iterable["MultiSeries"], profile: Optional[TruncProfile] = None) -> "MultiSeries":
        """Sum many series with one accumulator."""
        parts = [part for part in parts]
        if not parts:
            return cls.zero(profile or DEFAULT_PROFILE)
        names = set()
        for part in parts:
            names.update(part.variables)
        variables = canonical_variables(names)
        if profile is None:
            profile = parts[0].profile
            for part in parts[1:]:
                profile = profile.intersect(part.profile)
        layout = _layout(variables, profile)
        terms: Terms = {}
        for part in parts:
            for exps, value in part._embedded_terms(variables):
                if not layout.admits(exps):
                    continue
                total = terms.get(exps, ZERO) + value
                if total:
                    terms[exps] = total
                else:
                    terms.pop(exps, None)
        return cls._raw(variables, terms, profile)

    # -- inspection -------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _exponent_map(self, exps: Exponents) -> Dict[str, int]:
        return {name: e for name, e in zip(self.variables, exps) if e}

    def _vector(self, exps: Mapping[str, int]) -> Optional[Exponents]:
        vector = [0] * len(self.variables)
        position = self._layout.position
        for name, e in exps.items():
            if name not in position:
                if e:
                    return None
                continue
            vector[position[name]] = e
        return tuple(vector)

    def monomials(self) -> Iterator[Tuple[Dict[str, int], ExactRational]]:
        """(exponent map, coefficient) pairs in graded-lexicographic order."""
        for exps in sorted(self._terms, key=_graded_lex):
            yield self._exponent_map(exps), self._terms[exps]

    def coefficient(self, exps: Mapping[str, int]) -> ExactRational:
        """Coefficient of a monomial given as {variable: exponent}."""
        vector = self._vector(exps)
        if vector is None:
            return ZERO
        return self._terms.get(vector, ZERO)

    def constant_term(self) -> ExactRational:
        return self._terms.get((0,) * len(self.variables), ZERO)

    def degree_in(self, name: str) -> int:
        """Maximum exponent of a variable (0 if absent or zero series)."""
        if name not in self._layout.position:
            return 0
        i = self._layout.position[name]
        return max((exps[i] for exps in self._terms), default=0)

    def min_degree_in(self, name: str) -> int:
        if name not in self._layout.position:
            return 0
        i = self._layout.position[name]
        return min((exps[i] for exps in self._terms), default=0)

    def grade(self, exps: Mapping[str, int]) -> int:
        vector = self._vector(exps)
        return self._layout.grade(vector) if vector is not None else 0

    def min_grade(self) -> Optional[int]:
        """Smallest grade present, or None for the zero series."""
        if not self._terms:
            return None
        return min(self._layout.grade(exps) for exps in self._terms)

    def grade_part(self, n: int) -> "MultiSeries":
        layout = self._layout
        return self._raw(
            self.variables,
            {exps: v for exps, v in self._terms.items() if layout.grade(exps) == n},
            self.profile,
        )

    def graded_parts(self) -> List["MultiSeries"]:
        """Parts of grade 0..max_grade."""
        layout = self._layout
        buckets: List[Terms] = [dict() for _ in range(layout.max_grade + 1)]
        for exps, value in self._terms.items():
            buckets[layout.grade(exps)][exps] = value
        return [self._raw(self.variables, bucket, self.profile) for bucket in buckets]

    @property
    def grading_variables(self) -> Tuple[str, ...]:
        return tuple(self.variables[i] for i in self._layout.grade_positions)

    # -- structural -------------------------------------------------------

    def _embedded_terms(self, variables: Tuple[str, ...]) -> Iterator[Tuple[Exponents, ExactRational]]:
        if variables == self.variables:
            yield from self._terms.items()
            return
        position = {name: i for i, name in enumerate(variables)}
        try:
            targets = [position[name] for name in self.variables]
        except KeyError as exc:
            raise IncompatibleSeriesError(f"cannot embed {self.variables} into {variables}") from exc
        width = len(variables)
        for exps, value in self._terms.items():
            vector = [0] * width
            for target, e in zip(targets, exps):
                vector[target] = e
            yield tuple(vector), value

    def embed(self, variables: Iterable[str]) -> "MultiSeries":
        """
        Re-express over a superset of variables.

        Raises:
            IncompatibleSeriesError: If a used variable is missing from the target set
        """
        variables = canonical_variables(set(variables) | set(self.variables))
        layout = _layout(variables, self.profile)
        return self._raw(
            variables,
            {exps: v for exps, v in self._embedded_terms(variables) if layout.admits(exps)},
            self.profile,
        )

    def trim(self) -> "MultiSeries":
        """Drop variables that occur with exponent zero everywhere."""
        used = [i for i in range(len(self.variables)) if any(exps[i] for exps in self._terms)]
        if len(used) == len(self.variables):
            return self
        variables = tuple(self.variables[i] for i in used)
        return self._raw(variables, {tuple(exps[i] for i in used): v for exps, v in self._terms.items()}, self.profile)

    def with_profile(self, profile: TruncProfile) -> "MultiSeries":
        """Re-truncate under another profile (never restores dropped terms)."""
        return MultiSeries(self.variables, self._terms, profile)

    def rename(self, mapping: Mapping[str, str]) -> "MultiSeries":
        """
        Rename variables simultaneously (for example a permutation of x's).

        Raises:
            IncompatibleSeriesError: If two variables would collide
        """
        renamed = [mapping.get(name, name) for name in self.variables]
        if len(set(renamed)) != len(renamed):
            raise IncompatibleSeriesError(f"renaming {dict(mapping)} merges variables of {self.variables}")
        variables = canonical_variables(renamed)
        position = {name: i for i, name in enumerate(variables)}
        targets = [position[name] for name in renamed]
        terms: Terms = {}
        for exps, value in self._terms.items():
            vector = [0] * len(variables)
            for target, e in zip(targets, exps):
                vector[target] = e
            terms[tuple(vector)] = value
        return MultiSeries(variables, terms, self.profile)

    def filter(self, keep: Callable[[Dict[str, int]], bool]) -> "MultiSeries":
        """Keep the monomials whose exponent map satisfies keep."""
        return self._raw(
            self.variables,
            {exps: v for exps, v in self._terms.items() if keep(self._exponent_map(exps))},
            self.profile,
        )

    def extract(self, name: str, exponent: int) -> "MultiSeries":
        """[name^exponent] of the series, with the variable removed."""
        if name not in self._layout.position:
            return self if exponent == 0 else self.zero(self.profile, self.variables)
        i = self._layout.position[name]
        variables = self.variables[:i] + self.variables[i + 1:]
        terms = {exps[:i] + exps[i + 1:]: v for exps, v in self._terms.items() if exps[i] == exponent}
        return self._raw(variables, terms, self.profile)

    def terms_by(self, name: str) -> Dict[int, "MultiSeries"]:
        """Split into {k: coefficient of name^k} with the variable removed."""
        if name not in self._layout.position:
            return {0: self} if self._terms else {}
        i = self._layout.position[name]
        variables = self.variables[:i] + self.variables[i + 1:]
        groups: Dict[int, Terms] = {}
        for exps, value in self._terms.items():
            groups.setdefault(exps[i], {})[exps[:i] + exps[i + 1:]] = value
        return {k: self._raw(variables, terms, self.profile) for k, terms in groups.items()}

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiSeries":
        if isinstance(other, MultiSeries):
            return other
        return MultiSeries.constant(as_rational(other), self.profile)

    def _unify(self, other: "MultiSeries"):
        profile = self.profile.intersect(other.profile)
        if self.variables == other.variables:
            return self.variables, self._terms, other._terms, profile
        variables = canonical_variables(set(self.variables) | set(other.variables))
        return variables, dict(self._embedded_terms(variables)), dict(other._embedded_terms(variables)), profile

    def __add__(self, other) -> "MultiSeries":
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        variables, left, right, profile = self._unify(other)
        layout = _layout(variables, profile)
        terms = {exps: v for exps, v in left.items() if layout.admits(exps)}
        for exps, value in right.items():
            if not layout.admits(exps):
                continue
            total = terms.get(exps, ZERO) + value
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        return self._raw(variables, terms, profile)

    __radd__ = __add__

    def __neg__(self) -> "MultiSeries":
        return self._raw(self.variables, {exps: -v for exps, v in self._terms.items()}, self.profile)

    def __sub__(self, other) -> "MultiSeries":
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiSeries":
        return (-self) + other

    def scale(self, factor: RationalLike) -> "MultiSeries":
        factor = as_rational(factor)
        if not factor:
            return self._raw(self.variables, {}, self.profile)
        return self._raw(self.variables, {exps: v * factor for exps, v in self._terms.items()}, self.profile)

    def __mul__(self, other) -> "MultiSeries":
        if not isinstance(other, MultiSeries):
            try:
                return self.scale(other)
            except (TypeError, ValueError):
                return NotImplemented
        variables, left, right, profile = self._unify(other)
        return self._raw(variables, _truncated_product(left, right, _layout(variables, profile)), profile)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiSeries":
        if isinstance(other, MultiSeries):
            return self * other.inverse()
        return self.scale(ONE / as_rational(other))

    def __pow__(self, n: int) -> "MultiSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = MultiSeries.constant(1, self.profile, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiSeries):
            if self.variables == other.variables:
                return self._terms == other._terms
            return (self - other).is_zero()
        try:
            value = as_rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - value).is_zero()

    __hash__ = None

    # -- calculus ---------------------------------------------------------

    def _position_of(self, name: str) -> int:
        variable_sort_key(name)
        if name not in self._layout.position:
            raise IncompatibleSeriesError(f"variable {name} is not declared in {self.variables}")
        return self._layout.position[name]

    def derive(self, name: str) -> "MultiSeries":
        """
        Formal partial derivative.

        Raises:
            IncompatibleSeriesError: If name is not declared
        """
        i = self._position_of(name)
        terms: Terms = {}
        for exps, value in self._terms.items():
            e = exps[i]
            if e:
                shifted = exps[:i] + (e - 1,) + exps[i + 1:]
                terms[shifted] = value * e
        return MultiSeries(self.variables, terms, self.profile)

    def euler(self, name: str, times: int = 1) -> "MultiSeries":
        """(name·∂/∂name)^times: multiply each monomial by its exponent to the given power."""
        i = self._position_of(name)
        terms = {exps: value * exps[i] ** times for exps, value in self._terms.items() if exps[i]}
        return self._raw(self.variables, terms, self.profile)

    def total_euler(self, names: Sequence[str]) -> "MultiSeries":
        """Σ_v v·∂/∂v over the given variables."""
        positions = [self._position_of(name) for name in names]
        terms = {}
        for exps, value in self._terms.items():
            weight = sum(exps[i] for i in positions)
            if weight:
                terms[exps] = value * weight
        return self._raw(self.variables, terms, self.profile)

    # -- graded functions -------------------------------------------------

    def _grade_zero_inverse(self, part: "MultiSeries") -> "MultiSeries":
        """Inverse of a Laurent polynomial in u alone."""
        u_position = self._layout.position.get("u")
        series: Dict[int, ExactRational] = {}
        for exps, value in part._terms.items():
            if any(e for i, e in enumerate(exps) if i != u_position):
                raise TruncationError(f"cannot invert: grade-0 part involves variables other than u ({part})")
            series[exps[u_position] if u_position is not None else 0] = value
        if not series:
            raise ZeroDivisionError("series has no invertible grade-0 part")
        low = min(series)
        lead = series[low]
        u_max = self.profile.u_max
        count = u_max + low
        inverse = [ONE / lead]
        for n in range(1, count + 1):
            acc = ZERO
            for k in range(1, n + 1):
                c = series.get(low + k)
                if c:
                    acc += c * inverse[n - k]
            inverse.append(-acc / lead)
        monomials = []
        for n, value in enumerate(inverse):
            if value:
                monomials.append(({"u": n - low} if u_position is not None else {}, value))
        return MultiSeries.from_monomials(monomials, self.profile, self.variables)

    def inverse(self) -> "MultiSeries":
        """
        Multiplicative inverse, grade by grade: I_n = −I_0·Σ_{k≥1} f_k·I_{n−k}.

        Raises:
            ZeroDivisionError: If the grade-0 part vanishes
            TruncationError: If the grade-0 part is not a Laurent polynomial in u
        """
        parts = self.graded_parts()
        first = self._grade_zero_inverse(parts[0])
        result = [first]
        for n in range(1, len(parts)):
            acc = MultiSeries.sum_of(
                (parts[k] * result[n - k] for k in range(1, n + 1) if parts[k]), self.profile
            )
            result.append(-(first * acc))
        return MultiSeries.sum_of(result, self.profile).embed(self.variables)

    def exp(self) -> "MultiSeries":
        """
        Exponential E with E_n = (1/n)·Σ_{k=1}^n k·X_k·E_{n−k}.

        Raises:
            TruncationError: If the grade-0 part is nonzero
        """
        parts = self.graded_parts()
        if parts[0]:
            raise TruncationError("exp needs a series without grade-0 terms")
        result = [MultiSeries.constant(1, self.profile, self.variables)]
        for n in range(1, len(parts)):
            acc = MultiSeries.sum_of(
                ((parts[k] * result[n - k]).scale(k) for k in range(1, n + 1) if parts[k]), self.profile
            )
            result.append(acc.scale(rational(1, n)))
        return MultiSeries.sum_of(result, self.profile).embed(self.variables)

    def log(self) -> "MultiSeries":
        """
        Logarithm L with L_n = D_n − (1/n)·Σ_{k<n} k·L_k·D_{n−k}.

        Raises:
            TruncationError: If the grade-0 part is not exactly 1
        """
        parts = self.graded_parts()
        if parts[0] != 1:
            raise TruncationError("log needs a series whose grade-0 part is 1")
        result = [MultiSeries.zero(self.profile, self.variables)]
        for n in range(1, len(parts)):
            acc = MultiSeries.sum_of(
                ((result[k] * parts[n - k]).scale(k) for k in range(1, n) if result[k] and parts[n - k]),
                self.profile,
            )
            result.append(parts[n] - acc.scale(rational(1, n)))
        return MultiSeries.sum_of(result, self.profile).embed(self.variables)

    # -- composition ------------------------------------------------------

    def substitute(self, bindings: Mapping[str, Union["MultiSeries", RationalLike]]) -> "MultiSeries":
        """
        Simultaneous substitution var -> series.

        Bindings are applied one variable at a time in an order where every
        variable occurring inside another binding is replaced first; when the
        bindings form a cycle the substitution is expanded term by term.

        Raises:
            TruncationError: If a grading variable is bound to a series with
                a grade-0 part while it occurs to unbounded powers
        """
        bound = {
            name: (value if isinstance(value, MultiSeries) else MultiSeries.constant(value, self.profile))
            for name, value in bindings.items()
            if name in self._layout.position
        }
        if not bound:
            return self
        for name, value in bound.items():
            if name in self.grading_variables and value:
                if value.min_grade() == 0:
                    raise TruncationError(
                        f"substituting {name} by a series with a grade-0 part needs infinitely many terms"
                    )
        graph = nx.DiGraph()
        graph.add_nodes_from(bound)
        for name, value in bound.items():
            for other in value.variables:
                if other in bound and other != name:
                    graph.add_edge(other, name)
        if nx.is_directed_acyclic_graph(graph):
            result = self
            for name in nx.topological_sort(graph):
                result = result._substitute_one(name, bound[name])
            return result
        logger.debug("cyclic substitution over %s; expanding term by term", sorted(bound))
        return self._substitute_simultaneous(bound)

    def _substitute_one(self, name: str, value: "MultiSeries") -> "MultiSeries":
        groups = self.terms_by(name)
        if not groups:
            return self.zero(self.profile.intersect(value.profile), set(self.variables) - {name})
        pieces = []
        powers = _PowerCache(value)
        for k in sorted(groups):
            pieces.append(groups[k] * powers.get(k))
        return MultiSeries.sum_of(pieces, self.profile.intersect(value.profile))

    def _substitute_simultaneous(self, bound: Mapping[str, "MultiSeries"]) -> "MultiSeries":
        caches = {name: _PowerCache(value) for name, value in bound.items()}
        free = tuple(name for name in self.variables if name not in bound)
        pieces = []
        for exps, value in self._terms.items():
            exponent_map = self._exponent_map(exps)
            rest = {name: e for name, e in exponent_map.items() if name in free}
            piece = MultiSeries.monomial(rest, value, self.profile)
            for name, e in exponent_map.items():
                if name in caches:
                    piece = piece * caches[name].get(e)
            pieces.append(piece)
        return MultiSeries.sum_of(pieces, self.profile)

    def divide_difference(self, first: str, second: str) -> "MultiSeries":
        """
        Exact quotient h/(first − second).

        Raises:
            NotInImageError: If the series is not divisible by first − second
        """
        i = self._position_of(first)
        j = self._position_of(second)
        groups: Dict[Tuple, Dict[int, ExactRational]] = {}
        for exps, value in self._terms.items():
            rest = tuple(e for k, e in enumerate(exps) if k not in (i, j))
            groups.setdefault((rest, exps[i] + exps[j]), {})[exps[i]] = value
        terms: Terms = {}
        for (rest, total), coefficients in groups.items():
            running = ZERO
            for a in range(total + 1):
                running += coefficients.get(a, ZERO)
                if a < total and running:
                    vector = list(rest)
                    low, high = sorted((i, j))
                    vector.insert(low, 0)
                    vector.insert(high, 0)
                    vector[i] = a
                    vector[j] = total - 1 - a
                    terms[tuple(vector)] = -running
            if running:
                raise NotInImageError(f"series is not divisible by {first} - {second}")
        return self._raw(self.variables, terms, self.profile)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> List[Dict]:
        """Stable JSON form sorted by graded-lexicographic monomial order."""
        rows = []
        for exps, value in self.monomials():
            row = {"exponents": exps}
            row.update(rational_to_json(value))
            rows.append(row)
        return rows

    def __repr__(self) -> str:
        pieces = []
        for exps, value in self.monomials():
            monomial = "*".join(f"{n}^{e}" if e != 1 else n for n, e in exps.items())
            pieces.append(f"{value}*{monomial}" if monomial else str(value))
            if len(pieces) >= 8:
                pieces.append("...")
                break
        return "MultiSeries(" + (" + ".join(pieces) or "0") + ")"


def _graded_lex(exps: Exponents) -> Tuple:
    return (sum(exps), exps)


def _truncated_product(left: Terms, right: Terms, layout: _Layout) -> Terms:
    if not left or not right:
        return {}
    if len(left) < len(right):
        left, right = right, left
    grade = layout.grade
    ordered = sorted(((grade(e), e, v) for e, v in right.items()), key=lambda item: item[0])
    grades = [item[0] for item in ordered]
    max_grade = layout.max_grade if layout.grade_positions else None
    admits = layout.admits
    result: Terms = {}
    for a, va in left.items():
        if max_grade is None:
            stop = len(ordered)
        else:
            stop = bisect_right(grades, max_grade - grade(a))
        for _, b, vb in ordered[:stop]:
            e = tuple(x + y for x, y in zip(a, b))
            if not admits(e):
                continue
            total = result.get(e, ZERO) + va * vb
            if total:
                result[e] = total
            else:
                del result[e]
    return result


class _PowerCache:
    """Powers B^k of one series, built incrementally; negative k through the inverse."""

    def __init__(self, base: MultiSeries):
        self.base = base
        self.positive = [MultiSeries.constant(1, base.profile, base.variables), base]
        self.negative: List[MultiSeries] = []

    def get(self, k: int) -> MultiSeries:
        if k >= 0:
            while len(self.positive) <= k:
                self.positive.append(self.positive[-1] * self.base)
            return self.positive[k]
        if not self.negative:
            self.negative = [MultiSeries.constant(1, self.base.profile, self.base.variables), self.base.inverse()]
        while len(self.negative) <= -k:
            self.negative.append(self.negative[-1] * self.negative[1])
        return self.negative[-k]
