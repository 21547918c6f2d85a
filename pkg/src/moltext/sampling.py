"""Seeded, bit-exact splitting and cohort sampling.

Randomness is pinned at the algorithm level so any implementation can
reproduce the artifacts: a splitmix64 stream drives a Fisher-Yates
shuffle over positions 0..N-1, draws reduced modulo the remaining range.
A cohort of size n is the first n positions of that shuffle, which gives
cohorts of increasing size under one seed the nested-prefix property.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, TypeVar

from .errors import CohortTooLarge, EmptyParent

T = TypeVar("T")

__all__ = ["SplitMix64", "shuffled_prefix", "split_parent", "sample_cohort"]

_MASK = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator; 64-bit wrapping arithmetic throughout."""

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Draw in [0, bound) by modulo reduction (frozen, documented bias)."""
        return self.next_u64() % bound


def shuffled_prefix(n: int, k: int, seed: int) -> list[int]:
    """First k positions of the seeded Fisher-Yates shuffle of range(n)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    rng = SplitMix64(seed)
    indices = list(range(n))
    for i in range(k):
        j = i + rng.below(n - i)
        indices[i], indices[j] = indices[j], indices[i]
    return indices[:k]


def finetune_size(n: int, ratio: float) -> int:
    """floor(ratio * n) with the ratio read as its decimal literal."""
    return math.floor(Fraction(str(ratio)) * n)


def split_parent(
    parent: Sequence[T], ratio: float, seed: int
) -> tuple[list[T], list[T]]:
    """Disjoint, exhaustive split into (fine-tune pool, test pool).

    The fine-tune pool holds floor(ratio * N) items; membership comes
    from the seeded shuffle, so the same seed always reproduces the same
    partition. Pools keep the shuffled order. The floor is taken over the
    ratio's decimal representation so 0.7 of 10 is 7, not a float hair
    below it.
    """
    n = len(parent)
    if n == 0:
        raise EmptyParent("cannot split an empty parent dataset")
    if not 0 < ratio < 1:
        raise ValueError(f"split ratio must be in (0, 1), got {ratio}")
    k = finetune_size(n, ratio)
    order = shuffled_prefix(n, n, seed)
    finetune = [parent[i] for i in order[:k]]
    test = [parent[i] for i in order[k:]]
    return finetune, test


def sample_cohort(pool: Sequence[T], n: int, seed: int) -> list[T]:
    """n distinct items from the pool, order randomized, seed-deterministic."""
    if n > len(pool):
        raise CohortTooLarge(f"cohort of {n} from pool of {len(pool)}")
    return [pool[i] for i in shuffled_prefix(len(pool), n, seed)]
