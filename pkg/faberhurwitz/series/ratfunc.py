"""
Series in one variable (t or u) whose coefficients are exact rational
functions of y_1..y_m.

The closed-form generating functions are power series in t with coefficients
in Q(y_1..y_m). Their intermediate pieces (products with 1/(y_1 − y_2) and
similar) are not polynomials, but once symmetrized they are. Coefficients are
sympy FracField elements; two series are compared by subtracting them, since
sympy's reduced form of a fraction is not guaranteed to be unique.

Key Concepts:
    - RationalFunctionSeries: sparse {exponent: FracElement} with an order
      (highest exponent known exactly); Laurent exponents are allowed
    - sym: sum over ordered set partitions of the variables into labelled
      blocks of given sizes
    - Δ_k = Σ_i y_i^k ∂/∂y_i and its inverse on polynomials

Example:
    >>> from faberhurwitz.series.ratfunc import rational_field, ab_series
    >>> K = rational_field(1)
    >>> ab = ab_series(K, order=4)
    >>> ab.b_inverse(0).coefficient(1)
    2*y1**2
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache, reduce
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.fields import FracElement, FracField, field

from faberhurwitz.core.errors import IncompatibleSeriesError, NotInImageError, TruncationError
from faberhurwitz.core.rational import ExactRational, as_rational, rational_binomial
from faberhurwitz.series.multiseries import MultiSeries, y_var

logger = logging.getLogger(__name__)

Scalar = Union[int, ExactRational, FracElement]


@lru_cache(maxsize=None)
def rational_field(m: int, extra: Tuple[str, ...] = ()) -> FracField:
    """
    The field Q(y_1..y_m[, extra...]).

    Args:
        m: Number of y variables
        extra: Additional generator names appended after the y's
    """
    names = [y_var(i) for i in range(1, m + 1)] + list(extra)
    if not names:
        raise IncompatibleSeriesError("a rational function field needs at least one generator")
    return field(",".join(names), QQ)[0]


def _y_positions(K: FracField) -> Tuple[int, ...]:
    return tuple(i for i, gen in enumerate(K.symbols) if str(gen).startswith("y"))


def generator(K: FracField, name: str) -> FracElement:
    for symbol, gen in zip(K.symbols, K.gens):
        if str(symbol) == name:
            return gen
    raise IncompatibleSeriesError(f"{name} is not a generator of {K}")


def _coerce(K: FracField, value: Scalar) -> FracElement:
    if isinstance(value, FracElement):
        if value.field != K:
            raise IncompatibleSeriesError("coefficients belong to different fields")
        return value
    return K.ground_new(as_rational(value))


class RationalFunctionSeries:
    """
    Truncated Laurent series Σ_k c_k v^k with c_k in a FracField.

    Attributes:
        field: Coefficient field
        order: Highest exponent whose coefficient is exact
        variable: Name of the series variable ("t" or "u")
    """

    __slots__ = ("field", "order", "variable", "_coeffs")

    def __init__(
        self,
        K: FracField,
        coefficients: Mapping[int, Scalar],
        order: int,
        variable: str = "t",
    ):
        self.field = K
        self.order = order
        self.variable = variable
        self._coeffs: Dict[int, FracElement] = {}
        for k, c in coefficients.items():
            if k > order:
                continue
            c = _coerce(K, c)
            if c:
                self._coeffs[k] = c

    @classmethod
    def constant(cls, K: FracField, value: Scalar, order: int, variable: str = "t") -> "RationalFunctionSeries":
        return cls(K, {0: value}, order, variable)

    @classmethod
    def monomial(
        cls, K: FracField, exponent: int, value: Scalar, order: int, variable: str = "t"
    ) -> "RationalFunctionSeries":
        return cls(K, {exponent: value}, order, variable)

    @classmethod
    def from_multiseries(
        cls,
        f: MultiSeries,
        K: FracField,
        variable: str = "t",
        order: Optional[int] = None,
    ) -> "RationalFunctionSeries":
        """
        Convert a MultiSeries in `variable` and generators of K.

        The MultiSeries' own bound in `variable` is used as the order unless
        given.

        Raises:
            IncompatibleSeriesError: If f has variables outside K and `variable`
        """
        names = {str(s): i for i, s in enumerate(K.symbols)}
        for name in f.variables:
            if name != variable and name not in names:
                raise IncompatibleSeriesError(f"variable {name} has no place in {K}")
        if order is None:
            if variable == "t":
                order = f.profile.t_max
            elif variable == "u":
                order = f.profile.exact_u_max
            else:
                raise IncompatibleSeriesError(f"give an explicit order for variable {variable}")
        ring = K.ring
        buckets: Dict[int, Dict[Tuple[int, ...], ExactRational]] = {}
        for exps, coeff in f.monomials():
            k = exps.get(variable, 0)
            monom = [0] * len(K.symbols)
            for name, e in exps.items():
                if name != variable:
                    monom[names[name]] = e
            bucket = buckets.setdefault(k, {})
            key = tuple(monom)
            bucket[key] = bucket.get(key, QQ(0)) + coeff
        coeffs = {k: K.new(ring.from_dict(bucket)) for k, bucket in buckets.items()}
        return cls(K, coeffs, order, variable)

    def _like(self, coeffs: Mapping[int, FracElement], order: int) -> "RationalFunctionSeries":
        return RationalFunctionSeries(self.field, coeffs, order, self.variable)

    # -- inspection

    def coefficient(self, k: int) -> FracElement:
        if k > self.order:
            raise TruncationError(
                f"coefficient of {self.variable}^{k} requested beyond order {self.order}", required=k
            )
        return self._coeffs.get(k, self.field.zero)

    def items(self) -> Iterator[Tuple[int, FracElement]]:
        for k in sorted(self._coeffs):
            yield k, self._coeffs[k]

    @property
    def valuation(self) -> Optional[int]:
        return min(self._coeffs) if self._coeffs else None

    def is_zero(self) -> bool:
        return not any(self._coeffs.values())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def truncate(self, order: int) -> "RationalFunctionSeries":
        return self._like(self._coeffs, min(order, self.order))

    # -- arithmetic

    def _check(self, other: "RationalFunctionSeries"):
        if other.field != self.field or other.variable != self.variable:
            raise IncompatibleSeriesError(
                f"cannot combine series in {self.variable} over {self.field} with {other.variable} over {other.field}"
            )

    def _as_series(self, other) -> "RationalFunctionSeries":
        if isinstance(other, RationalFunctionSeries):
            self._check(other)
            return other
        return RationalFunctionSeries.constant(self.field, other, self.order, self.variable)

    def __add__(self, other) -> "RationalFunctionSeries":
        other = self._as_series(other)
        coeffs = dict(self._coeffs)
        for k, c in other._coeffs.items():
            coeffs[k] = coeffs[k] + c if k in coeffs else c
        return self._like(coeffs, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self) -> "RationalFunctionSeries":
        return self._like({k: -c for k, c in self._coeffs.items()}, self.order)

    def __sub__(self, other) -> "RationalFunctionSeries":
        return self + (-self._as_series(other))

    def __rsub__(self, other) -> "RationalFunctionSeries":
        return self._as_series(other) - self

    def scale(self, factor: Scalar) -> "RationalFunctionSeries":
        factor = _coerce(self.field, factor)
        return self._like({k: factor * c for k, c in self._coeffs.items()}, self.order)

    def shift(self, k: int) -> "RationalFunctionSeries":
        """Multiply by v^k (k may be negative)."""
        return self._like({e + k: c for e, c in self._coeffs.items()}, self.order + k)

    def __mul__(self, other) -> "RationalFunctionSeries":
        if not isinstance(other, RationalFunctionSeries):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return self._like({}, min(self.order, other.order))
        order = min(self.order + other.valuation, other.order + self.valuation)
        coeffs: Dict[int, FracElement] = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                k = i + j
                if k > order:
                    continue
                coeffs[k] = coeffs[k] + a * b if k in coeffs else a * b
        return self._like(coeffs, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RationalFunctionSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = RationalFunctionSeries.constant(self.field, 1, self.order, self.variable)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "RationalFunctionSeries":
        """
        Multiplicative inverse.

        Raises:
            NotInImageError: If the series is zero to its order
        """
        v = self.valuation
        if v is None:
            raise NotInImageError("cannot invert a zero series")
        head = self._coeffs[v]
        head_inv = self.field.one / head
        order = self.order - 2 * v
        tail = {k - v: c for k, c in self._coeffs.items()}
        inv: Dict[int, FracElement] = {0: head_inv}
        for n in range(1, order + v + 1):
            acc = self.field.zero
            for k in range(1, n + 1):
                if k in tail and (n - k) in inv:
                    acc += tail[k] * inv[n - k]
            if acc:
                inv[n] = -acc * head_inv
        return self._like({k - v: c for k, c in inv.items()}, order)

    def __truediv__(self, other) -> "RationalFunctionSeries":
        if isinstance(other, RationalFunctionSeries):
            return self * other.inverse()
        return self.scale(self.field.one / _coerce(self.field, other))

    def binomial_power(self, exponent) -> "RationalFunctionSeries":
        """
        (1 + h)^a for a series with constant term 1 and rational a.

        Raises:
            NotInImageError: If the constant term is not 1
        """
        if self.valuation != 0 or self._coeffs[0] != self.field.one:
            raise NotInImageError("binomial_power needs constant term 1")
        a = as_rational(exponent)
        h = self - 1
        result = RationalFunctionSeries.constant(self.field, 1, self.order, self.variable)
        power = RationalFunctionSeries.constant(self.field, 1, self.order, self.variable)
        for n in range(1, self.order + 1):
            power = power * h
            if power.is_zero():
                break
            result = result + power.scale(rational_binomial(a, n))
        return result

    def compose(self, inner: "RationalFunctionSeries") -> "RationalFunctionSeries":
        """
        self(inner) for a power series self (any variable) and inner with
        positive valuation; the result lives in inner's variable.
        """
        if self.field != inner.field:
            raise IncompatibleSeriesError("compose needs a common coefficient field")
        if self.valuation is not None and self.valuation < 0:
            raise NotInImageError("compose needs a power series on the outside")
        if inner.valuation is not None and inner.valuation < 1:
            raise NotInImageError("compose needs an inner series with positive valuation")
        result = RationalFunctionSeries(inner.field, {}, inner.order, inner.variable)
        top = min(self.order, max(self._coeffs, default=0))
        for k in range(top, -1, -1):
            result = result * inner + self._coeffs.get(k, self.field.zero)
        if self.order < inner.order:
            result = result.truncate(self.order)
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunctionSeries):
            if other.field != self.field or other.variable != self.variable:
                return False
        try:
            return (self - other).is_zero()
        except IncompatibleSeriesError:
            return False

    __hash__ = None

    # -- operators on coefficients

    def map_coefficients(self, fn: Callable[[FracElement], FracElement]) -> "RationalFunctionSeries":
        return self._like({k: fn(c) for k, c in self._coeffs.items()}, self.order)

    def derive(self, gen: FracElement) -> "RationalFunctionSeries":
        """Partial derivative in a coefficient generator."""
        return self.map_coefficients(lambda c: c.diff(gen))

    def variable_derive(self) -> "RationalFunctionSeries":
        """d/dv of the series itself."""
        return self._like({k - 1: c * k for k, c in self._coeffs.items() if k}, self.order - 1)

    def delta(self, k: int) -> "RationalFunctionSeries":
        """Apply Δ_k = Σ_i y_i^k ∂/∂y_i coefficientwise."""
        return self.map_coefficients(lambda c: delta(k, c))

    def even_part(self) -> "RationalFunctionSeries":
        """The operator E: keep even powers of the series variable."""
        return self._like({k: c for k, c in self._coeffs.items() if k % 2 == 0}, self.order)

    def permute(self, images: Sequence[int]) -> "RationalFunctionSeries":
        """Rename y_{i+1} → y_{images[i]+1} in every coefficient."""
        return self.map_coefficients(lambda c: permute_generators(c, images))

    def polynomial_coefficient(self, k: int):
        """
        The coefficient of v^k as a PolyElement.

        Raises:
            NotInImageError: If it has a non-constant denominator
        """
        return as_polynomial(self.coefficient(k))

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})*{self.variable}^{k}" for k, c in self.items())
        return f"RationalFunctionSeries({shown or '0'} + O({self.variable}^{self.order + 1}))"


# -- coefficient-level helpers


def as_polynomial(c: FracElement):
    """
    The PolyElement equal to c.

    Raises:
        NotInImageError: If c's denominator is not constant
    """
    if not c.denom.is_ground:
        raise NotInImageError(f"{c} is not a polynomial")
    return c.numer.mul_ground(QQ(1) / c.denom.LC)


def permute_generators(c: FracElement, images: Sequence[int]) -> FracElement:
    """Send generator i to generator images[i]; others stay fixed."""
    K = c.field
    n = len(K.gens)
    target = list(range(n))
    for i, j in enumerate(images):
        target[i] = j

    def move(poly):
        moved = {}
        for monom, coeff in poly.items():
            out = [0] * n
            for i, e in enumerate(monom):
                out[target[i]] += e
            moved[tuple(out)] = coeff
        return K.ring.from_dict(moved)

    return K.new(move(c.numer), move(c.denom))


def delta(k: int, c: FracElement) -> FracElement:
    """Δ_k c = Σ_i y_i^k ∂c/∂y_i over the y generators of c's field."""
    K = c.field
    total = K.zero
    for i in _y_positions(K):
        gen = K.gens[i]
        total += gen ** k * c.diff(gen)
    return total


def invert_delta(k: int, value):
    """
    The unique polynomial P without constant term such that Δ_k P = value.

    Δ_1 is the Euler operator and divides by total degree. For k ≥ 2,
    Δ_k y^a = Σ_i a_i y^{a + (k−1)e_i}; its lex-largest monomial is
    a + (k−1)e_i for the first index i with a_i > 0, so the lex-largest
    monomial of the remainder determines one preimage term at a time.

    Args:
        k: Operator index, k ≥ 1
        value: A FracElement or a RationalFunctionSeries (inverted
            coefficientwise)

    Raises:
        NotInImageError: If value is not a polynomial or not in the image
    """
    if isinstance(value, RationalFunctionSeries):
        return value.map_coefficients(lambda c: invert_delta(k, c))
    if k < 1:
        raise NotInImageError(f"Δ_{k} is not invertible on polynomials")
    K = value.field
    positions = set(_y_positions(K))
    if len(positions) != len(K.gens):
        raise NotInImageError("invert_delta needs a field of y generators only")
    remainder = dict(as_polynomial(value).items())
    if k == 1:
        if remainder.get((0,) * len(K.gens)):
            raise NotInImageError("a nonzero constant is not in the image of Δ_1")
        return K.new(K.ring.from_dict({monom: c / sum(monom) for monom, c in remainder.items()}))
    preimage: Dict[Tuple[int, ...], ExactRational] = {}
    while remainder:
        top = max(remainder)
        coeff = remainder[top]
        i = next((j for j, e in enumerate(top) if e), None)
        if i is None:
            raise NotInImageError("a nonzero constant is not in the image of Δ_k")
        a = list(top)
        a[i] -= k - 1
        if a[i] < 1:
            raise NotInImageError(f"monomial {top} is not in the image of Δ_{k}")
        c = coeff / a[i]
        key = tuple(a)
        preimage[key] = preimage.get(key, QQ(0)) + c
        for j, e in enumerate(a):
            if not e:
                continue
            b = list(a)
            b[j] += k - 1
            b = tuple(b)
            remainder[b] = remainder.get(b, QQ(0)) - c * e
            if not remainder[b]:
                del remainder[b]
    return K.new(K.ring.from_dict(preimage))


# -- symmetrization over set partitions


def ordered_set_partitions(m: int, sizes: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """
    Ordered set partitions of {0..m−1} into labelled blocks of the given sizes.

    Each block lists its elements in increasing order.

    Raises:
        IncompatibleSeriesError: If the sizes do not add up to m
    """
    if sum(sizes) != m or any(s < 0 for s in sizes):
        raise IncompatibleSeriesError(f"block sizes {tuple(sizes)} do not partition {m} variables")

    def walk(remaining: Tuple[int, ...], rest: Sequence[int]):
        if not rest:
            yield ()
            return
        for block in combinations(remaining, rest[0]):
            left = tuple(i for i in remaining if i not in block)
            for tail in walk(left, rest[1:]):
                yield (block,) + tail

    yield from walk(tuple(range(m)), list(sizes))


def sym(sizes: Sequence[int], builder: Callable[[Tuple[int, ...]], object], m: Optional[int] = None):
    """
    sym_{i_1..i_n}: Σ over ordered set partitions of builder(indices).

    builder receives the concatenation of the blocks, so position p of its
    argument is the variable index playing the role of y_{p+1}.
    """
    m = sum(sizes) if m is None else m
    terms = [builder(sum(blocks, ())) for blocks in ordered_set_partitions(m, sizes)]
    return reduce(lambda a, b: a + b, terms)


# -- the series B, A, Y and Ŷ


@dataclass
class ABSeries:
    """
    B_i = (1 − 4y_i² t)^{1/2}, A_i = (1 − B_i)/(2y_i) and Ŷ_j = Y_j(A_i) as
    t-series over a field, cached per generator.
    """
    field: FracField
    order: int
    _b: Dict[int, RationalFunctionSeries] = dataclass_field(default_factory=dict)
    _a: Dict[int, RationalFunctionSeries] = dataclass_field(default_factory=dict)
    _y_hat: Dict[Tuple[int, int], RationalFunctionSeries] = dataclass_field(default_factory=dict)
    _b_powers: Dict[Tuple[int, int], RationalFunctionSeries] = dataclass_field(default_factory=dict)

    def t(self) -> RationalFunctionSeries:
        return RationalFunctionSeries.monomial(self.field, 1, 1, self.order)

    def one(self) -> RationalFunctionSeries:
        return RationalFunctionSeries.constant(self.field, 1, self.order)

    def b(self, i: int) -> RationalFunctionSeries:
        if i not in self._b:
            y = self.field.gens[i]
            radicand = RationalFunctionSeries(self.field, {0: 1, 1: -4 * y ** 2}, self.order)
            self._b[i] = radicand.binomial_power(QQ(1, 2))
        return self._b[i]

    def b_power(self, i: int, n: int) -> RationalFunctionSeries:
        """B_i^n for any integer n, from (1 − 4y_i² t)^{n/2}."""
        key = (i, n)
        if key not in self._b_powers:
            y = self.field.gens[i]
            radicand = RationalFunctionSeries(self.field, {0: 1, 1: -4 * y ** 2}, self.order)
            self._b_powers[key] = radicand.binomial_power(QQ(n, 2))
        return self._b_powers[key]

    def b_inverse(self, i: int) -> RationalFunctionSeries:
        return self.b_power(i, -1)

    def a(self, i: int) -> RationalFunctionSeries:
        if i not in self._a:
            y = self.field.gens[i]
            self._a[i] = (self.one() - self.b(i)).scale(self.field.one / (2 * y))
        return self._a[i]

    def y_hat(self, j: int, base: int) -> RationalFunctionSeries:
        """Ŷ_j = y_j/(1 − A_base·y_j)."""
        key = (j, base)
        if key not in self._y_hat:
            y = self.field.gens[j]
            self._y_hat[key] = (self.one() - self.a(base).scale(y)).inverse().scale(y)
        return self._y_hat[key]


def ab_series(K: FracField, order: int) -> ABSeries:
    """The B/A/Ŷ series over K through t^order."""
    return ABSeries(K, order)


def y_of_u(K: FracField, i: int, order: int) -> RationalFunctionSeries:
    """Y_i(u) = y_i/(1 − u·y_i) = Σ_n y_i^{n+1} u^n."""
    y = K.gens[i]
    return RationalFunctionSeries(K, {n: y ** (n + 1) for n in range(order + 1)}, order, "u")


def even_t_part(f: RationalFunctionSeries) -> RationalFunctionSeries:
    """E: the even part of a t-series."""
    return f.even_part()


def build_AB_Y(m: int, profile) -> ABSeries:
    """The B/A/Ŷ records over Q(y_1..y_m) through t^profile.t_max."""
    return ab_series(rational_field(m), profile.t_max)
