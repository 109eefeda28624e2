"""Optimization over committing policies.

The optimal committing policy always lies in the (n+1)-element candidate set
{empty reservation set, each singleton}; every candidate is scored by the
closed form E[max_i kappa~_i] rather than path enumeration, so the search is
poly(n, s).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Tuple

from .core import Box, DiscreteDist, Instance, Num
from .evaluator import evaluate_nonexposed_closed_form
from .policies import CommittingPolicy


@dataclass(frozen=True)
class CommittingSolution:
    best_set: FrozenSet[int]
    best_value: Num
    candidate_values: Tuple[Tuple[FrozenSet[int], Num], ...]
    baseline_policy_a: Num  # Weitzman value, E[max kappa]
    baseline_policy_b: Num  # best closed box, max_i E[v_i]


def modified_instance(inst: Instance, reservation_set) -> Instance:
    """Boxes in the reservation set become zero-cost point masses at E[v]."""
    s = frozenset(reservation_set)
    boxes = []
    for i, box in enumerate(inst.boxes):
        if i in s:
            boxes.append(Box(DiscreteDist.point(box.dist.expectation()), 0))
        else:
            boxes.append(box)
    return Instance(boxes)


def committing_policy(inst: Instance, reservation_set) -> CommittingPolicy:
    return CommittingPolicy(inst, reservation_set)


def best_committing(inst: Instance) -> CommittingSolution:
    """Evaluate the empty set and all singletons; ties break toward the empty
    set, then the lowest index."""
    candidates = [frozenset()] + [frozenset({i}) for i in range(inst.n)]
    values = tuple((s, evaluate_nonexposed_closed_form(inst, s)) for s in candidates)
    best_set, best_value = values[0]
    for s, v in values[1:]:
        if v > best_value:
            best_set, best_value = s, v
    baseline_a = values[0][1]
    baseline_b = max(box.dist.expectation() for box in inst.boxes)
    return CommittingSolution(
        best_set=best_set,
        best_value=best_value,
        candidate_values=values,
        baseline_policy_a=baseline_a,
        baseline_policy_b=baseline_b,
    )
