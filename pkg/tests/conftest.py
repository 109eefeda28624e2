"""Shared helpers: independent brute-force oracles and seeded batches."""

from __future__ import annotations

from fractions import Fraction

from pandora_search import Instance, random_instance


def tree_opt(inst: Instance, uninspected=None, observed=None, allow_closed=True):
    """Optimal value by exhaustive recursion over *full histories* (the
    observed-value map), with no state compression.  Independent oracle for
    the dynamic program."""
    if uninspected is None:
        uninspected = frozenset(range(inst.n))
        observed = {}
    cands = [max(observed.values())] if observed else ([Fraction(0)] if allow_closed else [])
    if allow_closed:
        for j in uninspected:
            cands.append(inst.boxes[j].dist.expectation())
    for i in uninspected:
        rest = uninspected - {i}
        val = -inst.boxes[i].cost
        for v, p in inst.boxes[i].dist.support:
            nxt = dict(observed)
            nxt[i] = v
            val += p * tree_opt(inst, rest, nxt, allow_closed)
        cands.append(val)
    if not cands:
        # required variant, nothing observed, nothing to inspect
        raise AssertionError("no legal action")
    return max(cands)


def random_batch(count: int, n_max: int, max_support: int, value_max: int = 10, seed0: int = 0):
    """Deterministic batch of instances with n cycling through 1..n_max."""
    out = []
    for k in range(count):
        n = (k % n_max) + 1
        out.append(random_instance(n, max_support, value_max, seed=seed0 + k))
    return out
