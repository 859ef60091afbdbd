"""Monotone access structures over participants 1..n.

A structure is stored as the antichain of its minimal authorized
coalitions; the authorized family is the upward closure. Coalitions are
bitmasks with participant i at bit i-1, and coalition lists are always
ordered by ascending mask so reports come out deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import (
    BadThresholdError,
    EmptyCoalitionError,
    EmptyCoalitionListError,
    OutOfRangeParticipantError,
)

# Every analysis enumerates up to 2^n subsets; 2^20 keeps that exact and fast.
MAX_PARTICIPANTS = 20


def mask_of(members: Iterable[int], n: int) -> int:
    """Bitmask of a participant set; ids are 1-based and must lie in 1..n."""
    mask = 0
    for i in members:
        if not 1 <= i <= n:
            raise OutOfRangeParticipantError(f"participant {i} outside 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def members_of(mask: int) -> tuple[int, ...]:
    """Ascending participant ids present in a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class AccessStructure:
    """Participant count plus the antichain of minimal authorized coalitions."""

    n: int
    min_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_PARTICIPANTS:
            raise ValueError(f"participant count must be in 1..{MAX_PARTICIPANTS}, got {self.n}")
        if not self.min_masks:
            raise EmptyCoalitionListError("an access structure needs at least one minimal coalition")
        full = (1 << self.n) - 1
        for m in self.min_masks:
            if m == 0:
                raise EmptyCoalitionError("minimal coalitions must be nonempty")
            if m & ~full:
                raise OutOfRangeParticipantError(f"coalition mask {m:#b} exceeds participants 1..{self.n}")
        if tuple(sorted(set(self.min_masks))) != self.min_masks:
            raise ValueError("minimal coalitions must be sorted, duplicate-free masks")
        for a in self.min_masks:
            for b in self.min_masks:
                if a != b and a & b == a:
                    raise ValueError("minimal coalitions must form an antichain")

    def authorized_mask(self, mask: int) -> bool:
        """True iff the coalition given as a bitmask contains a minimal coalition."""
        return any(m & mask == m for m in self.min_masks)

    def is_authorized(self, coalition: Iterable[int]) -> bool:
        return self.authorized_mask(mask_of(coalition, self.n))

    def is_self_sufficient(self, i: int) -> bool:
        """True iff participant i can recover alone, i.e. {i} is minimal."""
        if not 1 <= i <= self.n:
            raise OutOfRangeParticipantError(f"participant {i} outside 1..{self.n}")
        return (1 << (i - 1)) in self.min_masks

    @property
    def min_coalitions(self) -> tuple[tuple[int, ...], ...]:
        """Minimal coalitions as ascending id tuples, in canonical mask order."""
        return tuple(members_of(m) for m in self.min_masks)

    @property
    def threshold_k(self) -> int | None:
        """k if this is exactly the k-of-n threshold structure, else None."""
        sizes = {bin(m).count("1") for m in self.min_masks}
        if len(sizes) != 1:
            return None
        k = sizes.pop()
        expected = [mask_of(c, self.n) for c in combinations(range(1, self.n + 1), k)]
        return k if sorted(expected) == list(self.min_masks) else None

    def __repr__(self) -> str:
        k = self.threshold_k
        if k is not None:
            return f"threshold({self.n},{k})"
        sets = ",".join("{" + ",".join(map(str, c)) + "}" for c in self.min_coalitions)
        return f"general({self.n},[{sets}])"


def make_threshold(n: int, k: int) -> AccessStructure:
    """The k-of-n structure: minimal coalitions are all size-k subsets."""
    if not 1 <= n <= MAX_PARTICIPANTS:
        raise ValueError(f"participant count must be in 1..{MAX_PARTICIPANTS}, got {n}")
    if k < 1 or k > n:
        raise BadThresholdError(f"threshold {k} outside 1..{n}")
    masks = sorted(mask_of(c, n) for c in combinations(range(1, n + 1), k))
    return AccessStructure(n, tuple(masks))


def make_general(n: int, coalitions: Iterable[Iterable[int]]) -> AccessStructure:
    """Structure with the given authorized coalitions, reduced to minimal ones.

    Any coalition that is a superset of another in the list is dropped, so
    the stored family is an antichain.
    """
    masks = []
    for c in coalitions:
        m = mask_of(c, n)
        if m == 0:
            raise EmptyCoalitionError("coalitions must be nonempty")
        masks.append(m)
    if not masks:
        raise EmptyCoalitionListError("need at least one coalition")
    minimal = sorted(
        {a for a in masks if not any(b != a and b & a == b for b in masks)}
    )
    return AccessStructure(n, tuple(minimal))
