"""
Affine-linear combinations of symbolic unknowns with exact coefficients.

SymbolLinear carries the linear dependence of predicted Faber–Hurwitz numbers
(and of the localization tree series) on the unknown Faber symbols. Keys are
any hashable objects exposing ``sort_key()`` and ``label()``; in practice they
are FaberKey instances, defined at the end of this module so that the
localization and faber layers share one key type.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from faberhurwitz.core.errors import DimensionError, MissingSymbolError
from faberhurwitz.core.rational import ZERO, ExactRational, RationalLike, as_rational, rational_to_json


def _key_order(key) -> Tuple:
    sort_key = getattr(key, "sort_key", None)
    return sort_key() if callable(sort_key) else (str(key),)


def _key_label(key) -> str:
    label = getattr(key, "label", None)
    return label() if callable(label) else str(key)


class SymbolLinear:
    """
    constant + Σ coefficient·key over ExactRational.

    Zero coefficients are never stored; iteration follows the keys' canonical
    order so that printing and serialization are deterministic.
    """

    __slots__ = ("_terms", "constant")

    def __init__(
        self,
        terms: Optional[Mapping[Hashable, RationalLike]] = None,
        constant: RationalLike = 0,
    ):
        self._terms: Dict[Hashable, ExactRational] = {}
        for key, value in (terms or {}).items():
            value = as_rational(value)
            if value:
                self._terms[key] = value
        self.constant = as_rational(constant)

    @classmethod
    def symbol(cls, key: Hashable, coefficient: RationalLike = 1) -> "SymbolLinear":
        return cls({key: coefficient})

    @classmethod
    def zero(cls) -> "SymbolLinear":
        return cls()

    def keys(self) -> List[Hashable]:
        return sorted(self._terms, key=_key_order)

    def items(self) -> Iterator[Tuple[Hashable, ExactRational]]:
        for key in self.keys():
            yield key, self._terms[key]

    def coefficient(self, key: Hashable) -> ExactRational:
        return self._terms.get(key, ZERO)

    def is_zero(self) -> bool:
        return not self._terms and not self.constant

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolLinear):
            return self._terms == other._terms and self.constant == other.constant
        try:
            value = as_rational(other)
        except (ValueError, TypeError):
            return NotImplemented
        return not self._terms and self.constant == value

    __hash__ = None

    def __add__(self, other: Union["SymbolLinear", RationalLike]) -> "SymbolLinear":
        if not isinstance(other, SymbolLinear):
            return SymbolLinear(self._terms, self.constant + as_rational(other))
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms.get(key, ZERO) + value
        return SymbolLinear(terms, self.constant + other.constant)

    __radd__ = __add__

    def __neg__(self) -> "SymbolLinear":
        return self.scale(-1)

    def __sub__(self, other) -> "SymbolLinear":
        return self + (-other)

    def __rsub__(self, other) -> "SymbolLinear":
        return (-self) + other

    def scale(self, factor: RationalLike) -> "SymbolLinear":
        factor = as_rational(factor)
        if not factor:
            return SymbolLinear()
        return SymbolLinear(
            {key: value * factor for key, value in self._terms.items()},
            self.constant * factor,
        )

    def __mul__(self, factor: RationalLike) -> "SymbolLinear":
        if isinstance(factor, SymbolLinear):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def substitute(self, replacements: Callable[[Hashable], "SymbolLinear"]) -> "SymbolLinear":
        """Replace every key by the SymbolLinear that replacements(key) returns."""
        result = SymbolLinear(constant=self.constant)
        for key, value in self._terms.items():
            result = result + replacements(key).scale(value)
        return result

    def evaluate(self, values: Union[Mapping[Hashable, RationalLike], Callable]) -> ExactRational:
        """
        Evaluate with a mapping (or callable) from keys to values.

        Raises:
            MissingSymbolError: If a key has no value
        """
        total = self.constant
        for key, coefficient in self._terms.items():
            if callable(values):
                value = values(key)
            else:
                if key not in values:
                    raise MissingSymbolError(f"no value for symbol {_key_label(key)}")
                value = values[key]
            total += coefficient * as_rational(value)
        return total

    def to_json(self) -> Dict[str, Dict[str, str]]:
        data = {_key_label(key): rational_to_json(value) for key, value in self.items()}
        if self.constant:
            data["1"] = rational_to_json(self.constant)
        return data

    def __repr__(self) -> str:
        pieces = [f"{value}*{_key_label(key)}" for key, value in self.items()]
        if self.constant or not pieces:
            pieces.append(str(self.constant))
        return "SymbolLinear(" + " + ".join(pieces) + ")"


@dataclass(frozen=True)
class FaberKey:
    """
    Index of a Faber symbol ⟨τ_{a_1}⋯τ_{a_n} λ_k⟩_g.

    Attributes:
        genus: g ≥ 1
        indices: The τ-indices, stored weakly decreasing
        k: λ-index, 0 ≤ k ≤ g

    Raises:
        DimensionError: If an index is negative, n = 0, or
            k + Σa_i ≠ g − 2 + n
    """
    genus: int
    indices: Tuple[int, ...]
    k: int = 0

    def __post_init__(self):
        indices = tuple(sorted((int(a) for a in self.indices), reverse=True))
        object.__setattr__(self, "indices", indices)
        if not self.is_valid(self.genus, indices, self.k):
            raise DimensionError(
                f"no Faber symbol with g={self.genus}, indices={indices}, k={self.k}"
            )

    @staticmethod
    def is_valid(genus: int, indices: Sequence[int], k: int = 0) -> bool:
        """True when (g; a; k) names a symbol that is not forced to vanish."""
        if genus < 1 or not indices or k < 0 or k > genus:
            return False
        if any(a < 0 for a in indices):
            return False
        return k + sum(indices) == genus - 2 + len(indices)

    @classmethod
    def parse(cls, label: str) -> "FaberKey":
        """
        Parse the "g;a1,...,an;k" form produced by label().

        Raises:
            DimensionError: If the text is malformed or the indices are invalid
        """
        try:
            genus, indices, k = label.strip().split(";")
            parsed = tuple(int(a) for a in indices.split(",") if a.strip())
            return cls(int(genus), parsed, int(k))
        except ValueError as exc:
            if isinstance(exc, DimensionError):
                raise
            raise DimensionError(f"cannot parse Faber key {label!r}") from exc

    @property
    def n(self) -> int:
        return len(self.indices)

    def is_top(self) -> bool:
        """k = 0 and every τ-index at least 1 (the symbols the closed form predicts)."""
        return self.k == 0 and all(a >= 1 for a in self.indices)

    def is_reducible(self) -> bool:
        """String or dilaton applies: two or more points and an index 0 or 1."""
        return self.n >= 2 and self.indices[-1] <= 1

    def label(self) -> str:
        return f"{self.genus};{','.join(str(a) for a in self.indices)};{self.k}"

    def sort_key(self) -> Tuple:
        return (self.genus, self.n, self.k, tuple(-a for a in self.indices))

    def __str__(self) -> str:
        taus = "".join(f"τ{a}" for a in self.indices)
        lam = f"λ{self.k}" if self.k else ""
        return f"<{taus}{lam}>_{self.genus}"
