"""The wedge family on the de Sitter hyperboloid.

A wedge is g*W0 for proper orthochronous g, with W0 = {x^1 > |x^0|} on the
hyperboloid.  Wedge equality is decided through the stabilizer of W0, which
is exactly (boosts in the 01 plane) x SO(3) acting on the edge directions,
so the test is a block-structure check on frame2^-1 @ frame1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import minkowski_form, sample_hyperboloid
from .spin_group import is_proper_orthochronous, reflection_base

MEMBERSHIP_MARGIN = 1e-12
ON_SHELL_TOL = 1e-6

_J5 = reflection_base()


class OffShellPointError(ValueError):
    """Point is not on the hyperboloid within tolerance."""


@dataclass(frozen=True)
class Wedge:
    """gW0, represented by the transformation g (the frame)."""

    frame: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.frame, dtype=float)
        if f.shape != (5, 5) or not is_proper_orthochronous(f):
            raise ValueError("wedge frame must be proper orthochronous 5x5")
        object.__setattr__(self, "frame", f)

    @staticmethod
    def reference() -> "Wedge":
        return Wedge(np.eye(5))

    def transformed(self, g: np.ndarray) -> "Wedge":
        return Wedge(np.asarray(g, dtype=float) @ self.frame)


def _check_on_shell(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    defect = abs(minkowski_form(x, x) + 1.0)
    if defect > ON_SHELL_TOL:
        raise OffShellPointError(f"|eta(x,x)+1| = {defect:.3e}")
    return x


def wedge_contains(w: Wedge, x, margin: float = MEMBERSHIP_MARGIN) -> bool:
    """True iff y = frame^-1 x satisfies y1 > |y0| (strictly, with margin)."""
    x = _check_on_shell(x)
    y = np.linalg.solve(w.frame, x)
    return bool(y[1] - abs(y[0]) > margin)


def _membership_mask(w: Wedge, points: np.ndarray, margin: float) -> np.ndarray:
    y = np.linalg.solve(w.frame, points.T).T
    return y[:, 1] - np.abs(y[:, 0]) > margin


def causal_complement(w: Wedge) -> Wedge:
    """The opposite wedge gW0' = (g j_W0) W0."""
    return Wedge(w.frame @ _J5)


def stabilizes_reference(h: np.ndarray, tol: float = 1e-8) -> bool:
    """h in (01-boosts) x SO(3): block-diagonal with a symmetric unit boost block."""
    if np.max(np.abs(h[0:2, 2:5])) > tol or np.max(np.abs(h[2:5, 0:2])) > tol:
        return False
    a, b = h[0, 0], h[0, 1]
    if abs(h[1, 0] - b) > tol or abs(h[1, 1] - a) > tol:
        return False
    if abs(a * a - b * b - 1.0) > tol or a < 1.0 - tol:
        return False
    r = h[2:5, 2:5]
    if np.max(np.abs(r.T @ r - np.eye(3))) > tol:
        return False
    return abs(np.linalg.det(r) - 1.0) <= tol


def wedges_equal(w1: Wedge, w2: Wedge, tol: float = 1e-8) -> bool:
    return stabilizes_reference(np.linalg.solve(w2.frame, w1.frame), tol)


@dataclass(frozen=True)
class RegionSample:
    """Seeded hyperboloid points inside one region."""

    points: np.ndarray
    seed: int


def sample_wedge_points(w: Wedge, n: int, seed: int,
                        margin: float = MEMBERSHIP_MARGIN,
                        max_trials: int = 200_000) -> RegionSample:
    """n interior points of w, rejection-sampled from the seeded patch."""
    rng = np.random.default_rng(seed)
    collected = []
    total = 0
    needed = n
    while needed > 0 and total < max_trials:
        batch = max(4 * needed, 256)
        pts = sample_hyperboloid(batch, rng)
        total += batch
        mask = _membership_mask(w, pts, margin)
        hits = pts[mask]
        if hits.size:
            collected.append(hits[:needed])
            needed -= len(collected[-1])
    if needed > 0:
        raise RuntimeError(f"could not sample {n} wedge points in {max_trials} trials")
    return RegionSample(np.vstack(collected), seed)


def edge_points(w: Wedge, n: int, seed: int = 0) -> RegionSample:
    """n points on the wedge edge: the frame image of {x0 = x1 = 0, |vec x| = 1}."""
    if n < 1:
        raise ValueError("need at least one edge point")
    rng = np.random.default_rng(seed)
    direction = rng.normal(size=(n, 3))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    pts = np.zeros((n, 5))
    pts[:, 2:] = direction
    return RegionSample((w.frame @ pts.T).T, seed)


def spacelike_separated(x, y) -> bool:
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    return minkowski_form(d, d) < 0.0


@dataclass(frozen=True)
class ProbeResult:
    verdict: str                     # EQUAL | WITNESS | INCONCLUSIVE
    witness: np.ndarray | None = None
    trials: int = 0
    metadata: dict = field(default_factory=dict)


def inclusion_rigidity_probe(w1: Wedge, w2: Wedge, n: int = 100_000,
                             seed: int = 0) -> ProbeResult:
    """Search for a point of w1 outside w2.

    Distinct wedges never strictly include one another, so for unequal inputs
    a witness must exist; failing to find one within n trials is reported as
    INCONCLUSIVE and treated as a failure by the verification suites.
    """
    if wedges_equal(w1, w2):
        return ProbeResult("EQUAL")
    rng = np.random.default_rng(seed)
    trials = 0
    while trials < n:
        batch = min(2048, n - trials)
        pts = sample_hyperboloid(batch, rng)
        trials += batch
        in_w1 = _membership_mask(w1, pts, MEMBERSHIP_MARGIN)
        if not np.any(in_w1):
            continue
        candidates = pts[in_w1]
        outside_w2 = ~_membership_mask(w2, candidates, -MEMBERSHIP_MARGIN)
        if np.any(outside_w2):
            return ProbeResult("WITNESS", candidates[outside_w2][0], trials)
    return ProbeResult("INCONCLUSIVE", None, trials)
