"""Constructive decompositions of approximately convex and affine sequences.

The workhorse is the greatest convex minorant (lower convex hull sampled on
the integer grid).  Shifting it up by half the minimal eps-convexity slack
gives a convex approximant whose residual stays inside [-eps/2, eps/2]
whenever the hull gap does not exceed eps; shifting by half the maximal hull
gap gives the best possible uniform convex approximant outright.  For the
affine case a Chebyshev line fit minimizes the uniform error directly, and a
separating line threads any concave lower envelope and convex upper envelope
that do not cross.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classify import is_convex, min_eps_affine, min_eps_convex
from .core import (
    DEFAULT_TOL,
    QuantifierMode,
    SeqConvexError,
    Sequence,
    ValidationError,
    as_sequence,
)

#: Slope bracket refinement target for the Chebyshev line fit.
SLOPE_TOL = 1e-10


class ConvexGapError(SeqConvexError):
    """The hull gap exceeds the eps budget, so the eps/2 residual bound fails.

    Signals that the sequence is farther from convex (in the hull-gap sense)
    than its minimal eps suggests under the chosen quantifier mode; this is a
    property of the input, not a numerical failure.
    """

    def __init__(self, index: int, gap: float, eps: float, mode: QuantifierMode):
        self.index = index
        self.gap = gap
        self.eps = eps
        self.mode = mode
        super().__init__(
            f"hull gap {gap!r} at index {index} exceeds eps={eps!r} "
            f"({mode.value} mode); the eps/2 residual bound is not certified"
        )


class SeparationInfeasibleError(SeqConvexError):
    """No line fits between the envelopes beyond tolerance."""

    def __init__(self, pairs: tuple[tuple[int, int], ...], detail: str):
        self.pairs = pairs
        super().__init__(f"no separating line exists: {detail} (witness pairs {pairs})")


@dataclass(frozen=True)
class Line:
    """Affine function x -> slope * x + intercept."""

    slope: float
    intercept: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.slope) and math.isfinite(self.intercept)):
            raise ValidationError("line coefficients must be finite")

    def at(self, x: float) -> float:
        return self.slope * x + self.intercept

    def sample(self, m: int) -> Sequence:
        return Sequence(tuple(self.at(n) for n in range(m)))


@dataclass(frozen=True)
class Decomposition:
    """A structured part plus the residual that reassembles the input.

    ``bound`` is the achieved uniform norm of the residual.  ``eps`` records
    the slack budget the construction was measured against (when there is
    one), ``slack`` the leftover eps - bound, and ``line`` the fitted affine
    function for arithmetic targets.
    """

    structured: Sequence
    residual: Sequence
    bound: float
    eps: float | None = None
    slack: float | None = None
    line: Line | None = None


def gcm(u) -> Sequence:
    """Greatest convex minorant of the sequence, sampled at every index.

    The pointwise-largest convex sequence lying below the input: the lower
    convex hull of the points (n, u[n]) evaluated back on the integer grid.
    Single monotone-chain pass, O(m).  Collinear hull points are kept, so any
    grid point lying on the hull is returned bit-exactly; in particular a
    convex input is a fixed point.
    """
    u = as_sequence(u)
    m = len(u)
    if m <= 2:
        return u
    hx: list[int] = []
    hy: list[float] = []
    for x in range(m):
        y = u[x]
        while len(hx) >= 2:
            turn = (hx[-1] - hx[-2]) * (y - hy[-2]) - (hy[-1] - hy[-2]) * (x - hx[-2])
            if turn < 0.0:
                hx.pop()
                hy.pop()
            else:
                break
        hx.append(x)
        hy.append(y)
    out = list(u.values)
    for k in range(len(hx) - 1):
        x0, x1 = hx[k], hx[k + 1]
        if x1 - x0 > 1:
            slope = (hy[k + 1] - hy[k]) / (x1 - x0)
            for x in range(x0 + 1, x1):
                out[x] = hy[k] + slope * (x - x0)
    return Sequence(out)


def convex_approx_hyers(
    u,
    mode: QuantifierMode = QuantifierMode.EXISTS,
    *,
    tol: float = DEFAULT_TOL,
) -> Decomposition:
    """Convex approximant with residual inside [-eps/2, eps/2].

    With eps the minimal slack of the chosen mode, the structured part is the
    greatest convex minorant shifted up by eps/2.  The construction is valid
    exactly when the hull gap u - gcm(u) stays within eps pointwise, which is
    asserted; a failure raises :class:`ConvexGapError` carrying the offending
    index (this can happen in EXISTS mode, never for the FORALL slack).
    """
    u = as_sequence(u)
    eps, _ = min_eps_convex(u, mode)
    base = gcm(u)
    gaps = u.as_array() - base.as_array()
    worst = int(np.argmax(gaps))
    if gaps[worst] > eps + tol:
        raise ConvexGapError(worst, float(gaps[worst]), eps, mode)
    half = eps / 2.0
    structured = Sequence(tuple(b + half for b in base))
    residual = Sequence(tuple(a - b for a, b in zip(u, structured)))
    bound = max(abs(r) for r in residual)
    return Decomposition(structured, residual, bound, eps=eps, slack=eps / 2.0 - bound)


def convex_approx_optimal(u) -> Decomposition:
    """Best uniform convex approximant.

    The structured part is gcm(u) + t with t = max(u - gcm(u)) / 2, and no
    convex sequence comes closer in the uniform norm: any convex v with
    ||u - v|| <= t satisfies v <= u + t, hence v <= gcm(u) + t by hull
    maximality, hence u - gcm(u) <= 2t pointwise.
    """
    u = as_sequence(u)
    base = gcm(u)
    t = max(a - b for a, b in zip(u, base)) / 2.0
    structured = Sequence(tuple(b + t for b in base))
    residual = Sequence(tuple(a - b for a, b in zip(u, structured)))
    return Decomposition(structured, residual, t)


def _band_width(res: np.ndarray) -> float:
    return float(res.max() - res.min())


def affine_approx(u) -> Decomposition:
    """Best uniform fit by an arithmetic sequence (Chebyshev line fit).

    Minimizes the band width w(s) = max(u - s*n) - min(u - s*n) over the
    slope s; w is convex and piecewise linear, and the optimal slope always
    lies between the smallest and largest first difference, so a
    golden-section search over that bracket (refined to ``SLOPE_TOL``)
    converges.  The intercept centers the final band and the bound is half
    its width.  ``eps`` reports the minimal two-sided slack (EXISTS mode) and
    ``slack`` its headroom over the achieved bound; the bound never exceeds
    eps on sequences whose difference spread controls their drift, but the
    slack is reported rather than enforced.
    """
    u = as_sequence(u)
    m = len(u)
    arr = u.as_array()
    ns = np.arange(m, dtype=float)
    if m == 1:
        line = Line(0.0, u[0])
        return Decomposition(u, Sequence((0.0,)), 0.0, eps=0.0, slack=0.0, line=line)
    d = np.diff(arr)
    lo, hi = float(d.min()), float(d.max())
    if hi - lo <= 0.0:
        s = lo
    else:
        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        c = b - invphi * (b - a)
        e = a + invphi * (b - a)
        fc = _band_width(arr - c * ns)
        fe = _band_width(arr - e * ns)
        while b - a > SLOPE_TOL:
            if fc <= fe:
                b, e, fe = e, c, fc
                c = b - invphi * (b - a)
                fc = _band_width(arr - c * ns)
            else:
                a, c, fc = c, e, fe
                e = a + invphi * (b - a)
                fe = _band_width(arr - e * ns)
        s = (a + b) / 2.0
    res = arr - s * ns
    intercept = (float(res.max()) + float(res.min())) / 2.0
    line = Line(s, intercept)
    structured = line.sample(m)
    residual = Sequence(tuple(a - b for a, b in zip(u, structured)))
    bound = max(abs(r) for r in residual)
    eps, _ = min_eps_affine(u, QuantifierMode.EXISTS)
    return Decomposition(structured, residual, bound, eps=eps, slack=eps - bound, line=line)


def separating_line(lower, upper, *, tol: float = DEFAULT_TOL) -> Line:
    """Line threaded between a concave lower and a convex upper envelope.

    Requires equal lengths, lower concave, upper convex and lower <= upper
    pointwise (all within tolerance).  The feasible slopes form the interval
    between the steepest required secant from a lower point to a later upper
    point and the shallowest allowed one to an earlier upper point; the
    returned line takes the midpoint slope, then centers the intercept in the
    remaining feasible band.

    Raises:
        SeparationInfeasibleError: when no line fits beyond tolerance, with
            the certifying index pairs.
        ValidationError: on length mismatch or an envelope of the wrong shape.
    """
    lower = as_sequence(lower)
    upper = as_sequence(upper)
    if len(lower) != len(upper):
        raise ValidationError(
            f"envelope lengths differ: {len(lower)} vs {len(upper)}"
        )
    if not is_convex(-lower, tol=tol).holds:
        raise ValidationError("lower envelope is not concave")
    if not is_convex(upper, tol=tol).holds:
        raise ValidationError("upper envelope is not convex")
    lo = lower.as_array()
    up = upper.as_array()
    crossing = lo - up
    worst = int(np.argmax(crossing))
    if crossing[worst] > tol:
        raise SeparationInfeasibleError(
            ((worst, worst),),
            f"envelopes cross at index {worst}: lower={lo[worst]!r} > upper={up[worst]!r}",
        )
    m = len(lower)
    if m == 1:
        return Line(0.0, (lo[0] + up[0]) / 2.0)

    idx = np.arange(m, dtype=float)
    # ratio[n, k] = (lower[n] - upper[k]) / (n - k); a feasible slope a must
    # sit above every ratio with n > k and below every ratio with n < k.
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (lo[:, None] - up[None, :]) / (idx[:, None] - idx[None, :])
    tri_lo = np.tril(np.ones((m, m), dtype=bool), k=-1)
    tri_hi = np.triu(np.ones((m, m), dtype=bool), k=1)
    need = np.where(tri_lo, ratio, -np.inf)
    allow = np.where(tri_hi, ratio, np.inf)
    p = int(np.argmax(need))
    q = int(np.argmin(allow))
    a_lo = float(need.flat[p])
    a_hi = float(allow.flat[q])
    pair_lo = (p // m, p % m)
    pair_hi = (q // m, q % m)
    if a_lo > a_hi + tol:
        raise SeparationInfeasibleError(
            (pair_lo, pair_hi),
            f"slope interval empty: need >= {a_lo!r} but <= {a_hi!r}",
        )
    slope = (a_lo + a_hi) / 2.0
    b_lo = lo - slope * idx
    b_hi = up - slope * idx
    bn = int(np.argmax(b_lo))
    bk = int(np.argmin(b_hi))
    if b_lo[bn] > b_hi[bk] + tol:
        raise SeparationInfeasibleError(
            ((bn, bk),),
            f"intercept band empty at slope {slope!r}",
        )
    return Line(slope, (float(b_lo[bn]) + float(b_hi[bk])) / 2.0)
