"""Saturation attempt probabilities for k contending DCF nodes.

Classical decoupled fixed point: a saturated node attempts in a slot
with probability beta, collides with probability p = 1 - (1-beta)^(k-1),
and beta is the mean-backoff attempt rate of the binary-exponential
process with uniform draws from [0, CW], doubling capped at cw_max and
infinite retries.  beta(k) feeds the per-state cycle lengths of the
analytical model and is cross-checked against the simulator's measured
attempt frequency.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

from .phy import PhyProfile, _is_pow2


class FixedPointError(RuntimeError):
    """Raised when the bisection fails to meet the residual bound."""


def _attempt_rate(p: float, cw_min: int, cw_max: int) -> float:
    """Attempt probability per slot given collision probability p.

    With W = cw_min + 1 backoff slots at stage 0 and m doublings to
    cw_max, the mean residence between attempts gives

        beta = 2 / (1 + W + p*W*sum_{i<m} (2p)^i),

    algebraically identical to the familiar closed form
    2(1-2p) / ((1-2p)(W+1) + pW(1-(2p)^m)) but free of the removable
    singularity at p = 1/2.
    """
    W = cw_min + 1
    m = (cw_max + 1).bit_length() - (cw_min + 1).bit_length()
    geom = sum((2.0 * p) ** i for i in range(m))
    return 2.0 / (1.0 + W + p * W * geom)


def solve_beta(k: int, cw_min: int, cw_max: int, *,
               tol: float = 1e-14, max_iter: int = 200) -> float:
    """Solve beta = G(1 - (1-beta)^(k-1)) by bisection.

    The map is strictly monotone in beta, so the root is unique.  For a
    sole contender (k = 1) there are no collisions and the root is the
    closed form 2 / (cw_min + 2).
    """
    if k < 1:
        raise ValueError("need at least one contender")
    if not 0 < cw_min < cw_max:
        raise ValueError("need 0 < cw_min < cw_max")
    if not (_is_pow2(cw_min + 1) and _is_pow2(cw_max + 1)):
        raise ValueError("cw_min+1 and cw_max+1 must be powers of two")

    def residual(beta: float) -> float:
        p = 1.0 - (1.0 - beta) ** (k - 1)
        return beta - _attempt_rate(p, cw_min, cw_max)

    lo, hi = 1e-12, 1.0 - 1e-12
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if residual(lo) * residual(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo < tol:
            break
    beta = 0.5 * (lo + hi)
    p = 1.0 - (1.0 - beta) ** (k - 1)
    if abs(beta - _attempt_rate(p, cw_min, cw_max)) >= 1e-12:
        raise FixedPointError(
            f"bisection left residual >= 1e-12 for k={k}, "
            f"cw=({cw_min},{cw_max})")
    return beta


@dataclass
class AccessProbTable:
    """Memoized beta(k) for one contention-window pair."""

    cw_min: int
    cw_max: int
    betas: dict[int, float] = field(default_factory=dict)

    def beta(self, k: int) -> float:
        if k not in self.betas:
            self.betas[k] = solve_beta(k, self.cw_min, self.cw_max)
        return self.betas[k]

    def residual(self, k: int) -> float:
        beta = self.beta(k)
        p = 1.0 - (1.0 - beta) ** (k - 1)
        return abs(beta - _attempt_rate(p, self.cw_min, self.cw_max))


def build_table(k_max: int, profile: PhyProfile) -> AccessProbTable:
    """Precompute beta(1..k_max) for a profile's contention windows."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    table = AccessProbTable(cw_min=profile.cw_min, cw_max=profile.cw_max)
    for k in range(1, k_max + 1):
        table.beta(k)
    return table


def dump_csv(table: AccessProbTable, path: str) -> None:
    """Write (k, beta, residual) rows for every solved k."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "beta", "residual"])
        for k in sorted(table.betas):
            writer.writerow([k, repr(table.betas[k]), repr(table.residual(k))])
