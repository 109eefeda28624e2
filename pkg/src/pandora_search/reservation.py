"""Reservation values and amortized (kappa) distributions.

The reservation value sigma of a box is the unique solution of
E[(v - sigma)^+] = c.  The map sigma -> E[(v - sigma)^+] is piecewise linear,
continuous and nonincreasing, so we solve by scanning support pieces from the
top.  Two edge conventions:

* c = 0: every sigma >= max support solves the equation; we define sigma as
  the max support value, which makes kappa = v.
* c >= E[v]: the solution lies in the linear region below the support minimum,
  sigma = E[v] - c, and may be negative.  No clamping is applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .core import Box, DiscreteDist, Instance, Num


def reservation_value(box: Box) -> Num:
    """Solve E[(v - sigma)^+] = cost for sigma."""
    c = box.cost
    if c < 0:
        raise ValueError("inspection cost must be nonnegative")
    support = box.dist.support
    if c == 0:
        return support[-1][0]
    tail_p = 0
    tail_s = 0
    # On [low, v_i) with tail = {values >= v_i}: excess(s) = tail_s - s * tail_p.
    for i in range(len(support) - 1, -1, -1):
        v, p = support[i]
        tail_p += p
        tail_s += p * v
        low = support[i - 1][0] if i > 0 else None
        sigma = (tail_s - c) / tail_p
        if low is None or sigma >= low:
            return sigma
    raise AssertionError("unreachable: excess is unbounded below the support")


@dataclass(frozen=True)
class ReservationProfile:
    """Per-box sigma, the law of kappa = min(v, sigma), and E[v]."""

    sigmas: Tuple[Num, ...]
    kappa_dists: Tuple[DiscreteDist, ...]
    expected_values: Tuple[Num, ...]

    @property
    def n(self) -> int:
        return len(self.sigmas)


def profile(inst: Instance) -> ReservationProfile:
    sigmas = []
    kappas = []
    evs = []
    for box in inst.boxes:
        sigma = reservation_value(box)
        sigmas.append(sigma)
        kappas.append(box.dist.min_with(sigma))
        evs.append(box.dist.expectation())
    return ReservationProfile(tuple(sigmas), tuple(kappas), tuple(evs))


def amortized_bound(result, prof: ReservationProfile) -> Tuple[Tuple[Num, Num], ...]:
    """Both sides of the amortization inequality per box.

    For an exactly evaluated policy, returns (lhs, rhs) per box with
    lhs = E[x_i v_i - I_i c_i] and rhs = E[x_i kappa~_i]; lhs <= rhs always,
    with equality for every box iff the policy is non-exposed.
    """
    out = []
    for i in range(prof.n):
        lhs = result.selected_value[i] - result.inspection_cost[i]
        rhs = result.selected_amortized[i]
        out.append((lhs, rhs))
    return tuple(out)
