"""Independent brute-force references and seeded sequence generators.

The references deliberately avoid every shortcut the fast paths use: the
minimal-eps oracle enumerates all (i, j, n) index triples of the slack
inequality, and the Wright oracle enumerates all index quadruples.  Both are
guarded against accidentally quadratic-plus workloads.

Generators are pure functions of their spec (numpy PCG64 seeded from the
spec's seed), so identical specs always reproduce identical sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .classify import VIOLATION, Certificate, Verdict
from .core import (
    DEFAULT_TOL,
    QuantifierMode,
    Sequence,
    ValidationError,
    as_sequence,
    check_eps,
)
from .decompose import gcm

#: Length guards for the brute-force enumerations.
MAX_BRUTE_EPS_LENGTH = 500
MAX_BRUTE_WRIGHT_LENGTH = 100


class Family(Enum):
    """Generator families for property sweeps."""

    RANDOM_UNIFORM = "random-uniform"
    CONVEX_PLUS_NOISE = "convex-plus-noise"
    ARITHMETIC_PLUS_NOISE = "arithmetic-plus-noise"
    INTEGER_GRID = "integer-grid"


@dataclass(frozen=True)
class GeneratorSpec:
    """Reproducible description of one generated sequence.

    ``eps`` is the noise budget for the two noise families (entries drawn
    uniformly from [-eps/2, eps/2] on top of the structured base);
    ``grid_range`` bounds the integer entries of INTEGER_GRID.
    """

    seed: int
    length: int
    family: Family
    eps: float | None = None
    grid_range: int | None = None

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValidationError(f"length must be positive, got {self.length!r}")
        if self.family in (Family.CONVEX_PLUS_NOISE, Family.ARITHMETIC_PLUS_NOISE):
            if self.eps is None:
                raise ValidationError(f"{self.family.value} requires eps")
            check_eps(self.eps)
        if self.family is Family.INTEGER_GRID:
            if self.grid_range is None or self.grid_range < 0:
                raise ValidationError(
                    f"{self.family.value} requires a nonnegative grid_range"
                )


def generate(spec: GeneratorSpec) -> Sequence:
    """Deterministically generate the sequence a spec describes."""
    rng = np.random.default_rng(spec.seed)
    m = spec.length
    if spec.family is Family.RANDOM_UNIFORM:
        return Sequence(rng.uniform(-1.0, 1.0, m))
    if spec.family is Family.CONVEX_PLUS_NOISE:
        base = gcm(Sequence(rng.uniform(-1.0, 1.0, m)))
        noise = rng.uniform(-spec.eps / 2.0, spec.eps / 2.0, m)
        return Sequence(base.as_array() + noise)
    if spec.family is Family.ARITHMETIC_PLUS_NOISE:
        slope = rng.uniform(-1.0, 1.0)
        intercept = rng.uniform(-1.0, 1.0)
        noise = rng.uniform(-spec.eps / 2.0, spec.eps / 2.0, m)
        return Sequence(intercept + slope * np.arange(m) + noise)
    if spec.family is Family.INTEGER_GRID:
        r = spec.grid_range
        return Sequence(rng.integers(-r, r + 1, m).astype(float))
    raise ValidationError(f"unknown family {spec.family!r}")


def brute_min_eps(u, mode: QuantifierMode = QuantifierMode.EXISTS) -> float:
    """Exact minimal eps by literal enumeration of every (i, j, n) triple.

    For each difference pair i < j the inequality at index n needs
    eps >= (d[i] - d[j]) * (n - i); EXISTS takes the cheapest n of the pair,
    FORALL the costliest, and the result is the maximum over pairs.

    Raises:
        ValidationError: for sequences longer than ``MAX_BRUTE_EPS_LENGTH``
            (use classify.min_eps_convex instead).
    """
    u = as_sequence(u)
    m = len(u)
    if m > MAX_BRUTE_EPS_LENGTH:
        raise ValidationError(
            f"sequence of length {m} exceeds the brute-force guard "
            f"({MAX_BRUTE_EPS_LENGTH}); use classify.min_eps_convex"
        )
    if m < 3:
        return 0.0
    v = u.values
    d = [v[n] - v[n - 1] for n in range(1, m)]
    exists = mode is QuantifierMode.EXISTS
    eps_req = 0.0
    for i in range(1, m - 1):
        di = d[i - 1]
        for j in range(i + 1, m):
            diff = di - d[j - 1]
            needs = [max(0.0, diff * (n - i)) for n in range(i + 1, j + 1)]
            pair_req = min(needs) if exists else max(needs)
            if pair_req > eps_req:
                eps_req = pair_req
    return eps_req


def brute_wright(u, *, tol: float = DEFAULT_TOL) -> Verdict:
    """Ground-truth Wright convexity by full quadruple enumeration.

    Every p < q <= r < s is visited and tested whenever q + r = p + s.

    Raises:
        ValidationError: for sequences longer than ``MAX_BRUTE_WRIGHT_LENGTH``.
    """
    u = as_sequence(u)
    m = len(u)
    if m > MAX_BRUTE_WRIGHT_LENGTH:
        raise ValidationError(
            f"sequence of length {m} exceeds the brute-force guard "
            f"({MAX_BRUTE_WRIGHT_LENGTH}); use classify.is_wright_convex"
        )
    v = u.values
    worst = math.inf
    at = None
    for p in range(m):
        for q in range(p + 1, m):
            for r in range(q, m):
                for s in range(r + 1, m):
                    if q + r != p + s:
                        continue
                    margin = (v[p] + v[s]) - (v[q] + v[r])
                    if margin < worst:
                        worst = margin
                        at = (p, q, s)
    if at is None or worst >= -tol:
        return Verdict(True)
    p, q, s = at
    return Verdict(False, Certificate(VIOLATION, "wright", i=p, j=s, n=q, margin=worst))


def bisect_convex_bound(u, *, accuracy: float = 1e-10) -> float:
    """Optimal uniform distance to a convex sequence, found by bisection.

    A radius t is feasible exactly when the greatest convex minorant of the
    lifted sequence u + t dominates u - t pointwise; feasibility is monotone
    in t, so bisection over [0, range(u)] pins the optimum to ``accuracy``.
    Independent of the closed-form construction in decompose.
    """
    u = as_sequence(u)
    arr = u.as_array()

    def feasible(t: float) -> bool:
        lifted = gcm(Sequence(arr + t))
        return bool(np.all(lifted.as_array() >= arr - t))

    lo, hi = 0.0, float(arr.max() - arr.min())
    if hi == 0.0 or feasible(0.0):
        return 0.0
    while hi - lo > accuracy:
        mid = (lo + hi) / 2.0
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi
