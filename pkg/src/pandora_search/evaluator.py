"""Exact policy evaluation by exhaustive path enumeration, plus the
closed-form value of non-exposed committing policies.

Path enumeration branches only on the values of boxes the policy actually
inspects; a box selected closed contributes its mean, integrating out the
unobserved draw.  This shrinks the tree from s^n leaves to s^(#inspected)
per path and is exact by independence.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .core import Instance, Num, SizeGuardError, max_of_independents, DiscreteDist
from .policies import (
    Halt,
    Inspect,
    Policy,
    SearchState,
    SelectClosed,
    SelectOpen,
    Trace,
    apply_action,
    check_legal,
    initial_state,
)
from . import reservation

DEFAULT_PATH_LIMIT = 10_000_000
PATH_LIMIT_ENV = "PANDORA_PATH_LIMIT"


class PathLimitError(SizeGuardError):
    """Exact enumeration exceeded the configured number of sample paths."""


def path_limit(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(PATH_LIMIT_ENV)
    return int(env) if env else DEFAULT_PATH_LIMIT


@dataclass(frozen=True)
class EvalResult:
    """Exact expectation of a policy plus its per-box decomposition."""

    utility: Num
    inspect_probs: Tuple[Num, ...]       # P(I_i = 1)
    select_probs: Tuple[Num, ...]        # P(x_i = 1)
    selected_value: Tuple[Num, ...]      # E[x_i v_i]
    inspection_cost: Tuple[Num, ...]     # E[I_i c_i]
    selected_amortized: Tuple[Num, ...]  # E[x_i kappa~_i]
    path_count: int


def iter_traces(inst: Instance, pol: Policy, limit: Optional[int] = None) -> Iterator[Trace]:
    """Enumerate every execution path of a deterministic policy with its
    probability and expected utility.  Raises PathLimitError past the guard
    and IllegalActionError on a bad policy action."""
    lim = path_limit(limit)
    count = 0

    def walk(state: SearchState, prob: Num, cost: Num):
        nonlocal count
        action = pol.decide(state)
        check_legal(state, action)
        if isinstance(action, Inspect):
            for v, p in inst.boxes[action.box].dist.support:
                yield from walk(
                    apply_action(state, action, v),
                    prob * p,
                    cost + inst.boxes[action.box].cost,
                )
            return
        count += 1
        if count > lim:
            raise PathLimitError(f"path enumeration exceeded limit of {lim}")
        if isinstance(action, SelectOpen):
            value = dict(state.observed)[action.box]
        elif isinstance(action, SelectClosed):
            value = inst.boxes[action.box].dist.expectation()
        else:
            value = 0
        yield Trace(state.observed, action, prob, value - cost)

    yield from walk(initial_state(inst), 1, 0)


def evaluate_exact(inst: Instance, pol: Policy, limit: Optional[int] = None) -> EvalResult:
    n = inst.n
    prof = reservation.profile(inst)
    utility = 0
    inspect_probs = [0] * n
    select_probs = [0] * n
    selected_value = [0] * n
    inspection_cost = [0] * n
    selected_amortized = [0] * n
    paths = 0
    for tr in iter_traces(inst, pol, limit):
        paths += 1
        utility += tr.probability * tr.utility
        opened = {}
        for i, v in tr.steps:
            opened[i] = v
            inspect_probs[i] += tr.probability
            inspection_cost[i] += tr.probability * inst.boxes[i].cost
        if isinstance(tr.final, SelectOpen):
            i = tr.final.box
            v = opened[i]
            select_probs[i] += tr.probability
            selected_value[i] += tr.probability * v
            selected_amortized[i] += tr.probability * min(v, prof.sigmas[i])
        elif isinstance(tr.final, SelectClosed):
            i = tr.final.box
            select_probs[i] += tr.probability
            selected_value[i] += tr.probability * prof.expected_values[i]
            selected_amortized[i] += tr.probability * prof.expected_values[i]
    return EvalResult(
        utility=utility,
        inspect_probs=tuple(inspect_probs),
        select_probs=tuple(select_probs),
        selected_value=tuple(selected_value),
        inspection_cost=tuple(inspection_cost),
        selected_amortized=tuple(selected_amortized),
        path_count=paths,
    )


def amortized_kappa_dists(inst: Instance, reservation_set) -> Tuple[DiscreteDist, ...]:
    """Per-box law of kappa~ under a committing policy: a point mass at E[v]
    for boxes in the reservation set, kappa = min(v, sigma) otherwise."""
    prof = reservation.profile(inst)
    s = frozenset(reservation_set)
    return tuple(
        DiscreteDist.point(prof.expected_values[i]) if i in s else prof.kappa_dists[i]
        for i in range(inst.n)
    )


def evaluate_nonexposed_closed_form(inst: Instance, reservation_set=frozenset()) -> Num:
    """E[max_i kappa~_i] for the committing policy with the given reservation
    set; equals evaluate_exact(CommittingPolicy(inst, S)).utility.

    With S empty this is the Weitzman value E[max_i kappa_i]."""
    dists = amortized_kappa_dists(inst, reservation_set)
    return max_of_independents(dists).expectation()
