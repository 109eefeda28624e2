"""Exact optimal adaptive policies by dynamic programming.

States are (uninspected set, best observed value); independence of box values
plus the fact that an open selection always takes the maximum make this
compression sufficient (the test suite cross-checks it against exhaustive
full-history policy trees at tiny scale).

Variants:
  * "nonobligatory": actions are select-best-open / halt, select any closed
    box, or inspect.
  * "required": selection requires prior inspection; no closed selection and
    no halting, so the value equals E[max_i kappa_i].

Deterministic tie-breaking: stopping (halt or select best open) beats a
closed selection beats an inspection; within a class the lowest box index
wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from .core import Instance, Num, SizeGuardError
from .policies import DecisionTablePolicy

NONOBLIGATORY = "nonobligatory"
REQUIRED = "required"

DEFAULT_MAX_BOXES = 20

# Abstract action: ("halt"|"select_open"|"select_closed"|"inspect", box or None)
AbstractAction = Tuple[str, Optional[int]]
DPState = Tuple[FrozenSet[int], Optional[Num]]

_RANK = {"halt": 0, "select_open": 0, "select_closed": 1, "inspect": 2}


@dataclass(frozen=True)
class DPSolution:
    value: Num
    table: Dict[DPState, Tuple[AbstractAction, Num]]
    variant: str
    instance: Instance


def solve_dp(inst: Instance, variant: str = NONOBLIGATORY, max_boxes: int = DEFAULT_MAX_BOXES) -> DPSolution:
    if variant not in (NONOBLIGATORY, REQUIRED):
        raise ValueError(f"unknown variant {variant!r}")
    if inst.n > max_boxes:
        raise SizeGuardError(f"instance has {inst.n} boxes, guard is {max_boxes}")

    boxes = inst.boxes
    table: Dict[DPState, Tuple[AbstractAction, Num]] = {}

    def value(uninspected: FrozenSet[int], best: Optional[Num]) -> Num:
        key = (uninspected, best)
        hit = table.get(key)
        if hit is not None:
            return hit[1]
        candidates = []  # (value, rank, index, action)
        if best is not None:
            candidates.append((best, 0, -1, ("select_open", None)))
        elif variant == NONOBLIGATORY:
            candidates.append((0, 0, -1, ("halt", None)))
        if variant == NONOBLIGATORY:
            for j in sorted(uninspected):
                ev = boxes[j].dist.expectation()
                candidates.append((ev, 1, j, ("select_closed", j)))
        for i in sorted(uninspected):
            rest = uninspected - {i}
            cont = -boxes[i].cost
            for v, p in boxes[i].dist.support:
                nb = v if best is None or v > best else best
                cont += p * value(rest, nb)
            candidates.append((cont, 2, i, ("inspect", i)))
        if not candidates:
            raise AssertionError("no legal action: empty state with nothing observed")
        best_val = max(c[0] for c in candidates)
        chosen = min(c for c in candidates if c[0] == best_val)
        table[key] = (chosen[3], best_val)
        return best_val

    root = (frozenset(range(inst.n)), None)
    v = value(*root)
    return DPSolution(value=v, table=table, variant=variant, instance=inst)


def dp_policy(sol: DPSolution) -> DecisionTablePolicy:
    """Executable policy reading actions off the solved table; its exact
    evaluation equals sol.value."""
    return DecisionTablePolicy(sol.instance, sol.table)
