"""Reduction to stochastic submodular probing over paired variables.

Each box i contributes a pair of variables: index (i, 0) with the law of
kappa_i and index (i, 1) a point mass at E[v_i]; the partition matroid allows
probing at most one variable per pair, and the objective is the maximum of
the probed values (unprobed variables count as 0).

Probing (i, 0) corresponds to inspecting box i, probing (i, 1) to selecting
it uninspected, so a probe set B maps to the committing policy whose
reservation set is the boxes whose kappa-side variable is *not* probed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterator, Sequence, Tuple

from .core import DiscreteDist, Instance, Num, SizeGuardError, max_of_independents
from .evaluator import iter_traces
from .policies import CommittingPolicy, Policy
from . import reservation

MAX_VARIABLES = 20


@dataclass(frozen=True)
class AssociatedProblem:
    """2n-variable probing problem; variable index 2*i + j is X_{i,j}."""

    instance: Instance
    variables: Tuple[DiscreteDist, ...]

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def pair(self, box: int) -> Tuple[int, int]:
        return (2 * box, 2 * box + 1)

    def is_independent(self, probe_set) -> bool:
        probe_set = set(probe_set)
        if not probe_set <= set(range(self.num_variables)):
            return False
        return all(
            not {2 * i, 2 * i + 1} <= probe_set
            for i in range(self.instance.n)
        )

    def independent_sets(self) -> Iterator[FrozenSet[int]]:
        """All independent probe sets (0, 1, or 2 choices per pair)."""
        def rec(i, acc):
            if i == self.instance.n:
                yield frozenset(acc)
                return
            yield from rec(i + 1, acc)
            yield from rec(i + 1, acc + [2 * i])
            yield from rec(i + 1, acc + [2 * i + 1])
        yield from rec(0, [])


def build_associated(inst: Instance) -> AssociatedProblem:
    prof = reservation.profile(inst)
    variables = []
    for i in range(inst.n):
        variables.append(prof.kappa_dists[i])
        variables.append(DiscreteDist.point(prof.expected_values[i]))
    return AssociatedProblem(instance=inst, variables=tuple(variables))


def _expected_max(prob: AssociatedProblem, probe_set) -> Num:
    """E[max of probed variables], unprobed counting as 0."""
    dists = [prob.variables[b] for b in probe_set]
    dists.append(DiscreteDist.point(0))
    return max_of_independents(dists).expectation()


def nonadaptive_value(prob: AssociatedProblem, probe_set) -> Num:
    if not prob.is_independent(probe_set):
        raise ValueError(f"probe set {sorted(probe_set)} is not independent")
    return _expected_max(prob, probe_set)


def psi_transform(prob: AssociatedProblem, probe_set) -> CommittingPolicy:
    """Committing policy dominating the non-adaptive probe set: reservation
    set = boxes whose kappa-side variable is unprobed."""
    if not prob.is_independent(probe_set):
        raise ValueError(f"probe set {sorted(probe_set)} is not independent")
    probe_set = set(probe_set)
    s = frozenset(i for i in range(prob.instance.n) if 2 * i not in probe_set)
    return CommittingPolicy(prob.instance, s)


def phi_value_bound(inst: Instance, pol: Policy, limit=None) -> Tuple[Num, Num]:
    """(u_pi, u_phi): the policy's exact utility and the value of its image
    in the associated problem under the kappa-coupling, u_phi = E[max kappa~].
    u_phi >= u_pi for every policy."""
    prof = reservation.profile(inst)
    u_pi = 0
    u_phi = 0
    for tr in iter_traces(inst, pol, limit):
        u_pi += tr.probability * tr.utility
        opened = dict(tr.steps)
        best = max(
            min(opened[i], prof.sigmas[i]) if i in opened else prof.expected_values[i]
            for i in range(inst.n)
        )
        u_phi += tr.probability * best
    return u_pi, u_phi


def multilinear_value(prob: AssociatedProblem, y: Sequence[Num]) -> Num:
    """Multilinear extension F(y): expected objective when each variable is
    probed independently with probability y_i.  Exact sum over the subsets of
    coordinates with fractional y; matroid feasibility of y is not required
    (that is a separate base-polytope question)."""
    m = prob.num_variables
    if len(y) != m:
        raise ValueError(f"expected {m} probabilities, got {len(y)}")
    if any(p < 0 or p > 1 for p in y):
        raise ValueError("probe probabilities must lie in [0, 1]")
    if m > MAX_VARIABLES:
        raise SizeGuardError(f"{m} variables exceeds the enumeration guard {MAX_VARIABLES}")
    fixed_in = [i for i in range(m) if y[i] == 1]
    free = [i for i in range(m) if 0 < y[i] < 1]
    total = 0
    for r in range(len(free) + 1):
        for chosen in combinations(free, r):
            weight = 1
            for i in free:
                weight *= y[i] if i in chosen else 1 - y[i]
            total += weight * _expected_max(prob, fixed_in + list(chosen))
    return total
