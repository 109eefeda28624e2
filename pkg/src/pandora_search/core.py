"""Exact discrete distributions, boxes, and problem instances.

All analysis code works on `fractions.Fraction` values so that every identity
in the library is an equality, not a tolerance check.  Floats are accepted as
a fallback backend (probabilities then only need to sum to 1 within 1e-12);
the Monte Carlo simulator is the only module that relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Num = Union[int, Fraction, float]

FLOAT_PROB_TOL = 1e-12


class InvalidDistributionError(ValueError):
    """Raised when support/probability data does not form a distribution."""


class SizeGuardError(RuntimeError):
    """Raised when an exact computation would exceed its configured size limit."""


def as_num(x) -> Num:
    """Canonicalize a numeric literal: ints become Fractions, floats stay floats."""
    if isinstance(x, float):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"unsupported numeric type: {type(x).__name__}")


def is_exact(x: Num) -> bool:
    return not isinstance(x, float)


class DiscreteDist:
    """Finite discrete distribution in canonical form.

    Support is stored sorted ascending by value with duplicate values merged,
    zero-probability points dropped, and probabilities summing to one.
    Instances are immutable and hashable.
    """

    __slots__ = ("_support",)

    def __init__(self, pairs: Iterable[Tuple[Num, Num]]):
        merged: dict = {}
        for v, p in pairs:
            v = as_num(v)
            p = as_num(p)
            if p < 0:
                raise InvalidDistributionError(f"negative probability {p} at value {v}")
            if p == 0:
                continue
            merged[v] = merged.get(v, 0) + p
        if not merged:
            raise InvalidDistributionError("distribution has empty support")
        total = sum(merged.values())
        if is_exact(total):
            if total != 1:
                raise InvalidDistributionError(f"probabilities sum to {total}, not 1")
        elif abs(total - 1.0) > FLOAT_PROB_TOL:
            raise InvalidDistributionError(f"probabilities sum to {total}, not 1")
        self._support = tuple(sorted(merged.items()))

    @classmethod
    def point(cls, value: Num) -> "DiscreteDist":
        return cls([(value, 1)])

    @property
    def support(self) -> Tuple[Tuple[Num, Num], ...]:
        return self._support

    def values(self) -> Tuple[Num, ...]:
        return tuple(v for v, _ in self._support)

    def probs(self) -> Tuple[Num, ...]:
        return tuple(p for _, p in self._support)

    def min_value(self) -> Num:
        return self._support[0][0]

    def max_value(self) -> Num:
        return self._support[-1][0]

    def expectation(self) -> Num:
        return sum(v * p for v, p in self._support)

    def cdf_at(self, t: Num) -> Num:
        """P(X <= t)."""
        return sum(p for v, p in self._support if v <= t)

    def prob_at_least(self, t: Num) -> Num:
        """P(X >= t)."""
        return sum(p for v, p in self._support if v >= t)

    def expected_excess(self, sigma: Num) -> Num:
        """E[(X - sigma)^+]."""
        return sum((v - sigma) * p for v, p in self._support if v > sigma)

    def min_with(self, sigma: Num) -> "DiscreteDist":
        """Distribution of min(X, sigma): mass above sigma collapses onto sigma."""
        return DiscreteDist((min(v, sigma), p) for v, p in self._support)

    def conditioned_at_least(self, t: Num) -> "DiscreteDist":
        """Distribution of X conditioned on X >= t."""
        y = self.prob_at_least(t)
        if y == 0:
            raise InvalidDistributionError(f"conditioning on null event X >= {t}")
        return DiscreteDist((v, p / y) for v, p in self._support if v >= t)

    def __eq__(self, other) -> bool:
        return isinstance(other, DiscreteDist) and self._support == other._support

    def __hash__(self) -> int:
        return hash(self._support)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}: {p}" for v, p in self._support)
        return f"DiscreteDist({{{inner}}})"


def max_of_independents(dists: Sequence[DiscreteDist]) -> DiscreteDist:
    """Distribution of the max of independent draws, one per input distribution.

    Computed as P(max <= t) = prod_i P(X_i <= t) on the merged support grid;
    works for arbitrary (including negative) support values.
    """
    if not dists:
        raise ValueError("need at least one distribution")
    grid = sorted({v for d in dists for v in d.values()})
    pairs = []
    prev = 0
    for t in grid:
        cdf = 1
        for d in dists:
            cdf *= d.cdf_at(t)
        if cdf > prev:
            pairs.append((t, cdf - prev))
            prev = cdf
    return DiscreteDist(pairs)


@dataclass(frozen=True)
class Box:
    """A prize distribution together with its inspection cost."""

    dist: DiscreteDist
    cost: Num

    def __post_init__(self):
        object.__setattr__(self, "cost", as_num(self.cost))
        if self.cost < 0:
            raise ValueError(f"inspection cost must be nonnegative, got {self.cost}")


@dataclass(frozen=True)
class Instance:
    """A search problem: n boxes with nonnegative prize values."""

    boxes: Tuple[Box, ...]

    def __init__(self, boxes: Iterable[Box]):
        boxes = tuple(boxes)
        if not boxes:
            raise ValueError("instance needs at least one box")
        for i, b in enumerate(boxes):
            if b.dist.min_value() < 0:
                raise ValueError(f"box {i} has a negative prize value")
        object.__setattr__(self, "boxes", boxes)

    @property
    def n(self) -> int:
        return len(self.boxes)

    def support_sizes(self) -> Tuple[int, ...]:
        return tuple(len(b.dist.support) for b in self.boxes)
