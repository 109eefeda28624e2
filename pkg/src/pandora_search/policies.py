"""Search policies and the execution-trace model.

A policy is a deterministic map from the current information state (which
boxes are still uninspected, which values have been observed) to an action:
inspect a box, select an opened box, select a box without opening it, or
halt with nothing.  Randomized policies are modeled as mixtures at the
harness level, never inside a policy object.

Tie conventions inside Weitzman-style execution: stopping is *weak* (stop and
select the best opened box as soon as its value is >= every remaining
reservation value), among equal reservation values the lower index is
inspected first, and among equal observed values the lower index is selected.
Weak stopping preserves non-exposure, which only constrains values strictly
above sigma.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, FrozenSet, Mapping, Optional, Tuple, Union

from .core import Instance, Num
from . import reservation


class IllegalActionError(RuntimeError):
    """A policy emitted an action that is not legal in its current state."""


# --- actions ---------------------------------------------------------------

@dataclass(frozen=True)
class Inspect:
    box: int


@dataclass(frozen=True)
class SelectOpen:
    box: int


@dataclass(frozen=True)
class SelectClosed:
    box: int


@dataclass(frozen=True)
class Halt:
    pass


Action = Union[Inspect, SelectOpen, SelectClosed, Halt]
TerminalAction = Union[SelectOpen, SelectClosed, Halt]


@dataclass(frozen=True)
class SearchState:
    """Information available to a policy: observations so far, boxes left."""

    observed: Tuple[Tuple[int, Num], ...]  # (box, value) in inspection order
    uninspected: FrozenSet[int]

    def observed_map(self) -> Mapping[int, Num]:
        return dict(self.observed)

    def best_open(self) -> Optional[Tuple[int, Num]]:
        """Lowest-index opened box achieving the maximum observed value."""
        best = None
        for i, v in self.observed:
            if best is None or v > best[1]:
                best = (i, v)
        return best


def initial_state(inst: Instance) -> SearchState:
    return SearchState(observed=(), uninspected=frozenset(range(inst.n)))


def apply_action(state: SearchState, action: Action, value: Num = None) -> SearchState:
    if not isinstance(action, Inspect):
        raise ValueError("only Inspect transitions produce a new state")
    return SearchState(
        observed=state.observed + ((action.box, value),),
        uninspected=state.uninspected - {action.box},
    )


def check_legal(state: SearchState, action: Action) -> None:
    if isinstance(action, (Inspect, SelectClosed)):
        if action.box not in state.uninspected:
            raise IllegalActionError(f"{action} targets an inspected/unknown box")
    elif isinstance(action, SelectOpen):
        if action.box not in dict(state.observed):
            raise IllegalActionError(f"{action} targets a box that was never opened")
    elif not isinstance(action, Halt):
        raise IllegalActionError(f"not an action: {action!r}")


@dataclass(frozen=True)
class Trace:
    """One complete execution path of a policy.

    The utility field is the *expected* utility of the path: the value of a
    closed-selected box enters as its distribution mean, since the realized
    draw is unobserved and integrates out.
    """

    steps: Tuple[Tuple[int, Num], ...]  # inspections as (box, realized value)
    final: TerminalAction
    probability: Num
    utility: Num

    def inspected(self, n: int) -> Tuple[int, ...]:
        opened = {i for i, _ in self.steps}
        return tuple(1 if i in opened else 0 for i in range(n))

    def selected(self, n: int) -> Tuple[int, ...]:
        chosen = self.final.box if not isinstance(self.final, Halt) else None
        return tuple(1 if i == chosen else 0 for i in range(n))


# --- concrete policies -----------------------------------------------------

class Policy:
    def decide(self, state: SearchState) -> Action:
        raise NotImplementedError


class WeitzmanPolicy(Policy):
    """Index policy: inspect in decreasing reservation-value order, stop and
    select the best opened box once its value is >= every remaining sigma.

    Ignores the option of selecting a closed box (Policy A baseline)."""

    def __init__(self, inst: Instance):
        self.instance = inst
        self.sigmas = reservation.profile(inst).sigmas
        self.order = sorted(range(inst.n), key=lambda i: (-self.sigmas[i], i))

    def decide(self, state: SearchState) -> Action:
        remaining = [i for i in self.order if i in state.uninspected]
        best = state.best_open()
        if best is not None and (not remaining or best[1] >= self.sigmas[remaining[0]]):
            return SelectOpen(best[0])
        if not remaining:
            return Halt()  # unreachable for n >= 1: something was opened
        return Inspect(remaining[0])


class CommittingPolicy(Policy):
    """The optimal committing policy with a given reservation set S.

    Simulates Weitzman's policy on the modified instance where every box in S
    becomes a zero-cost point mass at its mean; "inspecting" such a box is
    realized as selecting it closed.
    """

    def __init__(self, inst: Instance, reservation_set):
        self.instance = inst
        self.reservation_set = frozenset(reservation_set)
        if not self.reservation_set <= set(range(inst.n)):
            raise ValueError("reservation set contains unknown box indices")
        prof = reservation.profile(inst)
        # Modified sigma: boxes in S have cost 0 and a point mass at E[v],
        # hence sigma = E[v]; boxes outside S keep their sigma.
        self.sigmas = tuple(
            prof.expected_values[i] if i in self.reservation_set else prof.sigmas[i]
            for i in range(inst.n)
        )
        self.order = sorted(range(inst.n), key=lambda i: (-self.sigmas[i], i))

    def decide(self, state: SearchState) -> Action:
        remaining = [i for i in self.order if i in state.uninspected]
        best = state.best_open()
        if best is not None and (not remaining or best[1] >= self.sigmas[remaining[0]]):
            return SelectOpen(best[0])
        if not remaining:
            return Halt()
        nxt = remaining[0]
        if nxt in self.reservation_set:
            # Simulation "inspects" the point mass, sees E[v] = sigma, and
            # stops immediately; realized here as a closed selection.
            return SelectClosed(nxt)
        return Inspect(nxt)


class DecisionTablePolicy(Policy):
    """Policy read off a solved dynamic-programming table.

    Table keys are (uninspected set, best observed value or None); entries
    are abstract actions as produced by the DP solver.
    """

    def __init__(self, inst: Instance, table):
        self.instance = inst
        self.table = table

    def decide(self, state: SearchState) -> Action:
        best = state.best_open()
        key = (state.uninspected, None if best is None else best[1])
        try:
            kind, box = self.table[key][0]
        except KeyError:
            raise IllegalActionError(f"state {key} not covered by the decision table")
        if kind == "inspect":
            return Inspect(box)
        if kind == "select_closed":
            return SelectClosed(box)
        if kind == "select_open":
            return SelectOpen(best[0])
        return Halt()


class CallbackPolicy(Policy):
    """Wraps an untrusted decision function; legality is enforced by the
    evaluator's monitor, which fails fast on an illegal action."""

    def __init__(self, fn: Callable[[SearchState], Action]):
        self.fn = fn

    def decide(self, state: SearchState) -> Action:
        return self.fn(state)
