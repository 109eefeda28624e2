"""Closed-form analysis of the two-box problem.

For two boxes the optimal adaptive policy falls into one of three
categories: it always selects an open box (equivalent to the Weitzman
index policy), it always selects a closed box, or it mixes: it inspects one
box first and selects the other closed exactly when the amortized value of
the first falls below a threshold t solving E[v_other] = E[max(t, kappa_other)].

In the mixed case, with y = P(kappa_first >= t) and kappa' the law of
kappa_first conditioned on kappa_first >= t,

    opt = y * E[max(kappa', kappa_other)] + (1 - y) * E[v_other],

which matches the dynamic program exactly, and the best committing policy is
certified to be within 1/(1 + y(1-y)) >= 4/5 of opt.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Box, DiscreteDist, Instance, Num, max_of_independents
from . import adaptive, reservation

ALWAYS_OPEN = "always-open"
ALWAYS_CLOSED = "always-closed"
MIXED = "mixed"


@dataclass(frozen=True)
class TwoBoxAnalysis:
    category: str
    opt_value: Num
    first_box: Optional[int] = None  # box inspected first (mixed only)
    t: Optional[Num] = None
    y: Optional[Num] = None
    kappa_prime: Optional[DiscreteDist] = None
    a: Optional[Num] = None  # E[max(kappa', kappa_j)] / E[v_j]
    nonadapt_lb: Optional[Num] = None


def _require_two(inst: Instance) -> None:
    if inst.n != 2:
        raise ValueError(f"two-box analysis needs exactly 2 boxes, got {inst.n}")


def two_box_threshold(inst: Instance, first: int) -> Num:
    """Smallest t with E[v_j] = E[max(t, kappa_j)], j the box not inspected
    first.  The map t -> E[max(t, kappa_j)] is continuous, nondecreasing and
    piecewise linear on the kappa_j support grid; if it is already flat at
    E[v_j] (zero-cost box j), the minimum support value is returned."""
    _require_two(inst)
    j = 1 - first
    prof = reservation.profile(inst)
    kappa = prof.kappa_dists[j]
    target = prof.expected_values[j]
    if target <= kappa.expectation():
        # cost 0 means E[kappa] = E[v]; flat-region convention.
        return kappa.min_value()
    values = kappa.values()
    # h(t) = sum_{v < t} p*t + sum_{v >= t} p*v, slope P(kappa < t).
    def h(t):
        return sum(p * (t if v < t else v) for v, p in kappa.support)

    for k in range(len(values)):
        lo = values[k]
        hi = values[k + 1] if k + 1 < len(values) else None
        slope = kappa.cdf_at(lo)
        if hi is not None and h(hi) < target:
            continue
        # solution in [lo, hi) (or [max, inf) with slope 1 at the top)
        if hi is None:
            slope = 1
        return lo + (target - h(lo)) / slope
    raise AssertionError("unreachable: h is unbounded above")


def analyze_two_box(inst: Instance) -> TwoBoxAnalysis:
    _require_two(inst)
    sol = adaptive.solve_dp(inst)
    prof = reservation.profile(inst)
    root_action = sol.table[(frozenset({0, 1}), None)][0]

    if root_action[0] in ("halt", "select_closed"):
        return TwoBoxAnalysis(category=ALWAYS_CLOSED, opt_value=sol.value)

    first = root_action[1]
    j = 1 - first
    closed_prob = 0
    for v, p in inst.boxes[first].dist.support:
        act = sol.table[(frozenset({j}), v)][0]
        if act[0] == "select_closed":
            closed_prob += p
    if closed_prob == 0:
        return TwoBoxAnalysis(category=ALWAYS_OPEN, opt_value=sol.value)

    t = two_box_threshold(inst, first)
    kappa_first = prof.kappa_dists[first]
    y = kappa_first.prob_at_least(t)
    if y == 0:
        # All amortized mass below the threshold: the closed box always wins.
        return TwoBoxAnalysis(category=ALWAYS_CLOSED, opt_value=sol.value)
    kappa_prime = kappa_first.conditioned_at_least(t)
    ev_j = prof.expected_values[j]
    e_max = max_of_independents([kappa_prime, prof.kappa_dists[j]]).expectation()
    opt = y * e_max + (1 - y) * ev_j
    analysis = TwoBoxAnalysis(
        category=MIXED,
        opt_value=opt,
        first_box=first,
        t=t,
        y=y,
        kappa_prime=kappa_prime,
        a=e_max / ev_j if ev_j > 0 else None,
        nonadapt_lb=max(ev_j, (1 - y) ** 2 * ev_j + y * e_max),
    )
    return analysis


def nonadapt_lower_bound(analysis: TwoBoxAnalysis) -> Num:
    """max(E[v_j], (1-y)^2 E[v_j] + y E[max(kappa', kappa_j)]) — a lower bound
    on the best committing policy for a mixed instance."""
    if analysis.category != MIXED:
        raise ValueError(f"lower bound only defined for mixed category, got {analysis.category}")
    return analysis.nonadapt_lb


def ratio_certificate(analysis: TwoBoxAnalysis):
    """(ratio, bound) with ratio = nonadapt_lb / opt >= bound = 1/(1+y(1-y)) >= 4/5."""
    if analysis.category != MIXED:
        raise ValueError(f"certificate only defined for mixed category, got {analysis.category}")
    ratio = analysis.nonadapt_lb / analysis.opt_value
    y = analysis.y
    bound = 1 / (1 + y * (1 - y))
    return ratio, bound


def tight_example(big_n: int) -> Instance:
    """Two-box family whose committing-vs-adaptive ratio 1/(5/4 - 1/(4N))
    decreases to 4/5: a free fair coin worth 0 or 1, and a long shot worth N
    with probability 1/N at inspection cost (N-1)/(2N)."""
    if big_n < 2:
        raise ValueError("need N >= 2")
    n = Fraction(big_n)
    box_a = Box(DiscreteDist([(0, Fraction(1, 2)), (1, Fraction(1, 2))]), 0)
    box_b = Box(DiscreteDist([(0, 1 - 1 / n), (n, 1 / n)]), (n - 1) / (2 * n))
    return Instance([box_a, box_b])
