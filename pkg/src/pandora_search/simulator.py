"""Seeded Monte Carlo execution of policies.

Values are drawn up front for every box from a counter-based PRNG (Philox)
keyed by (seed, box index), so the value stream of a box never depends on the
policy being run or on which boxes it inspects — comparisons between policies
on the same seed use common random numbers.

For instances whose joint support is small, each distinct joint outcome is
resolved by a single policy execution and trials are mapped onto outcomes
vectorized; otherwise trials run one by one.  Both paths are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Optional, Tuple

import numpy as np

from .core import Instance, Num
from .policies import (
    Halt,
    Inspect,
    Policy,
    SearchState,
    SelectClosed,
    SelectOpen,
    apply_action,
    check_legal,
)

OUTCOME_TABLE_LIMIT = 1 << 14


@dataclass(frozen=True)
class SimReport:
    trials: int
    seed: int
    mean_utility: float
    std_error: float
    inspect_freq: Tuple[float, ...]
    select_freq: Tuple[float, ...]


def run_once(inst: Instance, pol: Policy, values) -> Tuple[Num, Tuple[int, ...], Optional[int]]:
    """Execute a policy against fixed realized values.

    Returns (utility, inspected indicator, selected box or None).  A box
    selected closed contributes its realized (unobserved) draw.
    """
    state = SearchState(observed=(), uninspected=frozenset(range(inst.n)))
    cost = 0
    while True:
        action = pol.decide(state)
        check_legal(state, action)
        if isinstance(action, Inspect):
            cost += inst.boxes[action.box].cost
            state = apply_action(state, action, values[action.box])
            continue
        inspected = tuple(1 if i in dict(state.observed) else 0 for i in range(inst.n))
        if isinstance(action, Halt):
            return -cost, inspected, None
        return values[action.box] - cost, inspected, action.box


def _draw_value_indices(inst: Instance, trials: int, seed: int) -> np.ndarray:
    """(trials, n) array of support indices, one independent Philox stream
    per box."""
    idx = np.empty((trials, inst.n), dtype=np.int64)
    for i, box in enumerate(inst.boxes):
        gen = np.random.Generator(np.random.Philox(key=[seed, i]))
        u = gen.random(trials)
        cum = np.cumsum(np.array([float(p) for p in box.dist.probs()]))
        idx[:, i] = np.minimum(np.searchsorted(cum, u, side="right"), len(cum) - 1)
    return idx


def simulate(inst: Instance, pol: Policy, trials: int, seed: int) -> SimReport:
    if trials < 1:
        raise ValueError("need at least one trial")
    n = inst.n
    sizes = inst.support_sizes()
    idx = _draw_value_indices(inst, trials, seed)

    joint = math.prod(sizes)
    if joint <= OUTCOME_TABLE_LIMIT:
        # One policy run per joint outcome, then a vectorized gather.
        util = np.empty(joint)
        insp = np.empty((joint, n))
        sel = np.zeros((joint, n))
        supports = [b.dist.values() for b in inst.boxes]
        for oid, combo in enumerate(product(*(range(s) for s in sizes))):
            values = [supports[i][combo[i]] for i in range(n)]
            u, inspected, chosen = run_once(inst, pol, values)
            util[oid] = float(u)
            insp[oid] = inspected
            if chosen is not None:
                sel[oid, chosen] = 1.0
        strides = np.empty(n, dtype=np.int64)
        acc = 1
        for i in range(n - 1, -1, -1):
            strides[i] = acc
            acc *= sizes[i]
        oids = idx @ strides
        utils = util[oids]
        inspect_freq = insp[oids].mean(axis=0)
        select_freq = sel[oids].mean(axis=0)
    else:
        supports = [b.dist.values() for b in inst.boxes]
        utils = np.empty(trials)
        insp_count = np.zeros(n)
        sel_count = np.zeros(n)
        for t in range(trials):
            values = [supports[i][idx[t, i]] for i in range(n)]
            u, inspected, chosen = run_once(inst, pol, values)
            utils[t] = float(u)
            insp_count += inspected
            if chosen is not None:
                sel_count[chosen] += 1
        inspect_freq = insp_count / trials
        select_freq = sel_count / trials

    mean = float(utils.mean())
    std_error = float(utils.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return SimReport(
        trials=trials,
        seed=seed,
        mean_utility=mean,
        std_error=std_error,
        inspect_freq=tuple(float(f) for f in inspect_freq),
        select_freq=tuple(float(f) for f in select_freq),
    )
