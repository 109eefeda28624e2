"""Seeded random instance generation with exact rational data.

Instances are reproducible from (parameters, seed): values are distinct
integers on a grid, probabilities come from a random integer composition,
and costs are a random rational multiple of the box mean.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Box, DiscreteDist, Instance


def random_instance(
    n: int,
    max_support: int = 4,
    value_max: int = 10,
    cost_grid: int = 8,
    seed: int = 0,
    cost_scale_max: Fraction = Fraction(1),
) -> Instance:
    """Random n-box instance.  Costs are uniform on a grid over
    [0, cost_scale_max * E[v]] per box, so c > E[v] (negative sigma) only
    occurs when cost_scale_max > 1."""
    rng = random.Random(seed)
    boxes = []
    for _ in range(n):
        s = rng.randint(1, max_support)
        values = sorted(rng.sample(range(value_max + 1), s))
        weights = [rng.randint(1, 6) for _ in range(s)]
        total = sum(weights)
        dist = DiscreteDist((v, Fraction(w, total)) for v, w in zip(values, weights))
        ev = dist.expectation()
        cost = ev * cost_scale_max * Fraction(rng.randint(0, cost_grid), cost_grid)
        boxes.append(Box(dist, cost))
    return Instance(boxes)
