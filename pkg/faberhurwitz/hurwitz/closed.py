"""
Closed formulas for genus-0 Hurwitz numbers.

Example:
    >>> from faberhurwitz.core.partitions import Partition
    >>> from faberhurwitz.hurwitz.closed import single_closed
    >>> single_closed(Partition.of(2, 1)) == 4
    True
"""

import math
from dataclasses import dataclass
from typing import Optional

from faberhurwitz.core.errors import PartitionError
from faberhurwitz.core.partitions import Partition, r_double, r_single
from faberhurwitz.core.rational import ExactRational, rational


@dataclass(frozen=True)
class HurwitzQuery:
    """
    Indices of a single (beta None) or double Hurwitz number.

    Attributes:
        genus: g ≥ 0
        alpha: Ramification over ∞ (single) or over 0 (double)
        beta: Ramification over the second point, |β| = |α|
        connected: Count connected covers only
    """
    genus: int
    alpha: Partition
    beta: Optional[Partition] = None
    connected: bool = True

    def __post_init__(self):
        if self.genus < 0:
            raise PartitionError(f"genus must be nonnegative, got {self.genus}")
        if self.alpha.is_empty():
            raise PartitionError("a Hurwitz number needs a nonempty partition")
        if self.beta is not None and self.beta.size != self.alpha.size:
            raise PartitionError(f"size mismatch: |{self.alpha}| != |{self.beta}|")

    @property
    def is_double(self) -> bool:
        return self.beta is not None

    @property
    def branch_points(self) -> int:
        """Number r of simple branch points."""
        if self.beta is None:
            return r_single(self.genus, self.alpha)
        return r_double(self.genus, self.alpha, self.beta)


def single_closed(alpha: Partition) -> ExactRational:
    """
    H⁰_α = (d − 2 + l(α))!·d^{l(α)−3}·Π α_i^{α_i}/α_i!.

    Raises:
        PartitionError: If α is empty
    """
    if alpha.is_empty():
        raise PartitionError("single_closed needs a nonempty partition")
    d, l = alpha.size, alpha.length
    num = math.factorial(d - 2 + l)
    den = 1
    for part in alpha:
        num *= part ** part
        den *= math.factorial(part)
    if l >= 3:
        num *= d ** (l - 3)
    else:
        den *= d ** (3 - l)
    return rational(num, den)


def double_one_part_closed(d: int, beta: Partition) -> ExactRational:
    """
    Genus-0 double Hurwitz number with one part over 0: H⁰_{(d),β} = r!·d^{r−1},
    r = l(β) − 1.

    Raises:
        PartitionError: If |β| ≠ d
    """
    if beta.size != d or d < 1:
        raise PartitionError(f"size mismatch: |{beta}| != {d}")
    r = beta.length - 1
    if r == 0:
        return rational(1, d)
    return rational(math.factorial(r) * d ** (r - 1))
