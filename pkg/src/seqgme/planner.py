"""Sharpness schedules that let every observer in a sequence detect.

Each lambda_k is placed a factor (1+epsilon) above the detection threshold
implied by its predecessors, so the corresponding witness value is strictly
negative by construction. Generation stops once the next value would leave
(0, 1), which is the point where no admissible sharpness can detect anymore.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import PrecisionError

DEFAULT_EPSILON = 0.05
DEFAULT_CAP = 64

# Below this lambda_1 the second-step threshold scales like lambda_1^2 and
# quickly leaves the range of double precision.
_FEASIBILITY_FLOOR = 1e-120


@dataclass(frozen=True)
class SharpnessSchedule:
    """Generated sharpness sequence; `terminated` means the next value left (0,1)."""

    lambda_1: float
    epsilon: float
    values: tuple[float, ...]
    terminated: bool
    scale: float = 1.0

    def __len__(self) -> int:
        return len(self.values)


def _loss_step(lam: float, loss: float) -> float:
    root = math.sqrt(1.0 - lam * lam)
    return loss + (lam * lam / (2.0 * (1.0 + root))) * (1.0 - loss)


def _build_schedule(lambda_1: float, epsilon: float, scale: float, max_k: int) -> SharpnessSchedule:
    if not 0.0 < lambda_1 < 1.0:
        raise ValueError(f"lambda_1 {lambda_1} outside (0, 1)")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon {epsilon} must be positive")
    if max_k < 1:
        raise ValueError(f"max_k {max_k} must be >= 1")
    values = [lambda_1]
    loss = _loss_step(lambda_1, 0.0)
    terminated = False
    for k in range(2, max_k + 1):
        lam = (1.0 + epsilon) * scale * 2.0 ** (k - 1) * loss
        if lam >= 1.0:
            terminated = True
            break
        if lam <= 0.0:
            raise PrecisionError(
                f"sharpness underflowed to {lam} at step {k}; lambda_1 too small"
            )
        values.append(lam)
        loss = _loss_step(lam, loss)
    return SharpnessSchedule(lambda_1, epsilon, tuple(values), terminated, scale)


def generate_schedule(lambda_1: float, epsilon: float, max_k: int) -> SharpnessSchedule:
    """Schedule for GHZ or cluster initial states."""
    return _build_schedule(lambda_1, epsilon, 1.0, max_k)


def scaled_schedule(
    lambda_1: float, epsilon: float, p1: float, alpha: float, max_k: int
) -> SharpnessSchedule:
    """Schedule for the mixed generalized-GHZ family; thresholds scale up."""
    if not 0.0 < p1 <= 1.0:
        raise ValueError(f"p1 {p1} outside (0, 1]")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha {alpha} outside (0, 1)")
    scale = 1.0 / (2.0 * p1 * math.sqrt(alpha * (1.0 - alpha)))
    return _build_schedule(lambda_1, epsilon, scale, max_k)


def max_detections(lambda_1: float, epsilon: float, cap: int = DEFAULT_CAP) -> int:
    """How many consecutive observers detect when starting at lambda_1."""
    return len(generate_schedule(lambda_1, epsilon, cap).values)


class PlanResult(NamedTuple):
    lambda_1: float
    bracket_low: float
    bracket_high: float
    detections: int


def min_sharpness_for(n: int, epsilon: float, tol: float = 1e-9) -> PlanResult:
    """A lambda_1 whose schedule reaches n detections, found by bisection.

    The returned value is the low end of the final bracket (guaranteed to
    reach n); the high end is the smallest probed value that failed. When
    every admissible lambda_1 works the bracket degenerates to the upper end.
    """
    if n < 1:
        raise ValueError(f"n {n} must be >= 1")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon {epsilon} must be positive")

    def reaches(lam1: float) -> bool:
        return max_detections(lam1, epsilon, cap=n) >= n

    high = 1.0 - tol
    if reaches(high):
        return PlanResult(high, high, 1.0, n)
    low = 0.5
    while not reaches(low):
        low /= 2.0
        if low < _FEASIBILITY_FLOOR:
            raise PrecisionError(
                f"no lambda_1 above {_FEASIBILITY_FLOOR} reaches {n} detections "
                f"at double precision (epsilon={epsilon})"
            )
    while high - low > tol:
        mid = (low + high) / 2.0
        if reaches(mid):
            low = mid
        else:
            high = mid
    return PlanResult(low, low, high, n)
