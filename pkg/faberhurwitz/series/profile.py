"""
Truncation profiles.

A TruncProfile bounds every direction in which the package's series are
truncated. Profiles are immutable and hashable so they can key caches.

Resolution order for configuration: built-in defaults, then the JSON file
named by the FABERHURWITZ_PROFILE environment variable, then explicit
overrides (for example CLI flags).

Example:
    >>> from faberhurwitz.series.profile import TruncProfile
    >>> small = TruncProfile(z_max=4, u_min=-8, u_max=8)
    >>> small.capped("z", 2).z_max
    2
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from faberhurwitz.core.errors import TruncationError

logger = logging.getLogger(__name__)

PROFILE_ENV_VAR = "FABERHURWITZ_PROFILE"


@dataclass(frozen=True)
class TruncProfile:
    """
    Truncation bounds for every series variable.

    Attributes:
        z_max: Maximum degree in z
        index_max: Maximum index N of p_1..p_N and q_1..q_N
        t_max: Maximum order in t
        u_min: Lowest kept power of u (may be negative)
        u_max: Highest kept power of u
        y_max: Maximum total degree in the x/y/s variables
        b_max: Maximum power of the branch-point marker b; derived when None
    """
    z_max: int = 6
    index_max: int = 6
    t_max: int = 8
    u_min: int = -12
    u_max: int = 12
    y_max: int = 40
    b_max: Optional[int] = None

    def __post_init__(self):
        for name in ("z_max", "index_max", "t_max", "y_max"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise TruncationError(f"{name} must be a nonnegative integer, got {value!r}")
        if self.u_min > 0 or self.u_min > self.u_max:
            raise TruncationError(
                f"u-window must satisfy u_min <= 0 and u_min <= u_max, got [{self.u_min}, {self.u_max}]"
            )
        if self.b_max is not None and self.b_max < 0:
            raise TruncationError(f"b_max must be nonnegative, got {self.b_max}")

    @property
    def branch_bound(self) -> int:
        """Bound for the branch-point marker (enough for genus ≤ 1 at degree z_max)."""
        if self.b_max is not None:
            return self.b_max
        return 2 * self.z_max + 2

    @property
    def exact_u_max(self) -> int:
        """Highest u-power that stays exact under products of z-graded tree series."""
        return self.u_max - self.z_max

    def with_bounds(self, **changes: Any) -> "TruncProfile":
        return replace(self, **changes)

    def capped(self, kind: str, cap: int) -> "TruncProfile":
        """
        Lower the bound of one grading direction.

        Args:
            kind: "z", "y" (x/y/s total degree) or "t"
            cap: New bound; never raised above the current one
        """
        attr = {"z": "z_max", "y": "y_max", "x": "y_max", "s": "y_max", "t": "t_max"}[kind]
        return replace(self, **{attr: min(cap, getattr(self, attr))})

    def intersect(self, other: "TruncProfile") -> "TruncProfile":
        """The tightest profile satisfying both."""
        if other is self or other == self:
            return self
        b_max = self.b_max if other.b_max is None else (
            other.b_max if self.b_max is None else min(self.b_max, other.b_max)
        )
        return TruncProfile(
            z_max=min(self.z_max, other.z_max),
            index_max=min(self.index_max, other.index_max),
            t_max=min(self.t_max, other.t_max),
            u_min=max(self.u_min, other.u_min),
            u_max=min(self.u_max, other.u_max),
            y_max=min(self.y_max, other.y_max),
            b_max=b_max,
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], base: Optional["TruncProfile"] = None) -> "TruncProfile":
        """
        Build a profile from a mapping of field names, on top of base.

        Raises:
            TruncationError: On unknown keys or invalid bounds
        """
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise TruncationError(f"unknown profile keys: {', '.join(unknown)}")
        values = (base or cls()).to_dict()
        for key, value in data.items():
            if value is not None or key == "b_max":
                values[key] = None if value is None else int(value)
        return cls(**values)

    @classmethod
    def from_file(cls, path: Union[str, Path], base: Optional["TruncProfile"] = None) -> "TruncProfile":
        """
        Load a JSON profile file.

        Raises:
            TruncationError: If the file is unreadable or not a JSON object
        """
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise TruncationError(f"cannot read profile file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise TruncationError(f"profile file {path} must contain a JSON object")
        logger.debug("loaded truncation profile from %s", path)
        return cls.from_mapping(data, base)


DEFAULT_PROFILE = TruncProfile()


def load_profile(
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> TruncProfile:
    """
    Resolve the effective profile: defaults < FABERHURWITZ_PROFILE file < overrides.

    Args:
        overrides: Explicit values; None entries are ignored
        environ: Environment mapping (defaults to os.environ)

    Raises:
        TruncationError: If a bound is invalid, or z_max or index_max is below 1
    """
    environ = os.environ if environ is None else environ
    profile = DEFAULT_PROFILE
    path = environ.get(PROFILE_ENV_VAR)
    if path:
        profile = TruncProfile.from_file(path, profile)
    if overrides:
        given = {key: value for key, value in overrides.items() if value is not None}
        if given:
            profile = TruncProfile.from_mapping(given, profile)
    for name in ("z_max", "index_max"):
        if getattr(profile, name) < 1:
            raise TruncationError(f"{name} must be at least 1, got {getattr(profile, name)}")
    return profile
