"""Core value types and difference-sequence utilities.

A sequence here is a finite, immutable list of real numbers u[0], ..., u[m-1].
Its difference sequence has entries u[n] - u[n-1] for n = 1, ..., m-1, and the
sequence is convex exactly when those differences are nondecreasing.

Every predicate in this package compares against a small absolute tolerance
(default ``DEFAULT_TOL``) applied on the permissive side of the inequality, so
that analytically tight cases survive floating-point rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

#: Absolute tolerance used by all classification predicates unless overridden.
DEFAULT_TOL = 1e-9


class SeqConvexError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SeqConvexError, ValueError):
    """An input value violates a documented precondition."""


class TooShortError(ValidationError):
    """A sequence has too few entries for the requested operation."""


class DomainError(SeqConvexError, ValueError):
    """An evaluation point lies outside the valid domain."""


class QuantifierMode(Enum):
    """How the index n in the slack inequality is quantified.

    The approximate-convexity inequality compares two first differences with
    slack eps/(n - i) for an index n in the half-open range ]i, j].  EXISTS
    requires the inequality to hold for at least one such n (equivalent to
    the n = i + 1 case, where the slack is largest); FORALL requires it for
    every n (equivalent to the n = j case, where the slack is smallest).
    """

    EXISTS = "exists"
    FORALL = "forall"


@dataclass(frozen=True)
class Sequence:
    """Immutable finite sequence of real values, indexed from 0.

    Entries are validated once at construction: every value must be finite
    (NaN and infinities are rejected) and the sequence must be nonempty.
    """

    values: tuple[float, ...]

    def __init__(self, values: Iterable[float]) -> None:
        coerced = []
        for k, v in enumerate(values):
            try:
                f = float(v)
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"entry {k} is not a real number: {v!r}") from exc
            if not math.isfinite(f):
                raise ValidationError(f"entry {k} is not finite: {f!r}")
            coerced.append(f)
        if not coerced:
            raise ValidationError("a sequence needs at least one value")
        object.__setattr__(self, "values", tuple(coerced))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, idx):
        return self.values[idx]

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __neg__(self) -> "Sequence":
        return Sequence(tuple(-v for v in self.values))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def as_sequence(values) -> Sequence:
    """Coerce an iterable of reals into a ``Sequence`` (no-op if already one)."""
    return values if isinstance(values, Sequence) else Sequence(values)


@dataclass(frozen=True)
class DeltaSequence:
    """First differences of a sequence: entry k stores u[k+1] - u[k].

    Conceptually the difference at position n = k + 1 of the parent sequence,
    so a parent of length m yields m - 1 entries.  Prefix-summing the entries
    from u[0] reconstructs the parent (up to rounding of the same arithmetic).
    """

    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, idx):
        return self.values[idx]

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def is_nondecreasing(self, tol: float = 0.0) -> bool:
        v = self.values
        return all(v[k + 1] >= v[k] - tol for k in range(len(v) - 1))


def deltas(u: Sequence | Iterable[float]) -> DeltaSequence:
    """First differences of ``u``.

    Raises:
        TooShortError: if ``u`` has fewer than two entries.
    """
    u = as_sequence(u)
    if len(u) < 2:
        raise TooShortError("sequence too short for differences")
    v = u.values
    return DeltaSequence(tuple(v[n] - v[n - 1] for n in range(1, len(v))))


def check_eps(eps: float) -> float:
    """Validate a nonnegative slack parameter, returning it as a float."""
    eps = float(eps)
    if not math.isfinite(eps) or eps < 0.0:
        raise ValidationError(f"eps must be a finite nonnegative real, got {eps!r}")
    return eps


def mediant_bounds(a: Iterable[float], b: Iterable[float]) -> tuple[float, float]:
    """Smallest and largest of the ratios a[k] / b[k].

    For positive denominators the combined ratio sum(a) / sum(b) always lies
    between the two returned values, which is the caller-checkable contract.

    Raises:
        ValidationError: on empty input, length mismatch, non-finite entries,
            or any nonpositive denominator.
    """
    num = [float(x) for x in a]
    den = [float(x) for x in b]
    if not num:
        raise ValidationError("mediant bounds need at least one term")
    if len(num) != len(den):
        raise ValidationError(
            f"numerators and denominators differ in length: {len(num)} vs {len(den)}"
        )
    for k, (x, y) in enumerate(zip(num, den)):
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValidationError(f"term {k} is not finite")
        if y <= 0.0:
            raise ValidationError(f"denominator {k} must be positive, got {y!r}")
    ratios = [x / y for x, y in zip(num, den)]
    return min(ratios), max(ratios)
