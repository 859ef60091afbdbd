"""Pure Nash equilibria of the one-shot disclosure games, by brute force.

Profiles are 0/1 vectors (reveal/abstain); the whole 2^n profile space is
tabulated, so every result here is an exact enumeration, not a solver.
Two payoff maps are supported: the common-good game on an arbitrary
access structure, and the greedy broadcast game on a threshold structure.

The predicted equilibrium set for the common-good game is the
characteristic vectors of minimal authorized coalitions whose members all
value the good above the cost, plus the zero vector when no
self-sufficient participant does. `characterization_report` checks the
brute-forced set against that prediction and against survival of iterated
weak-dominance deletion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .access import AccessStructure, make_threshold, members_of
from .errors import AxiomViolationError, DegenerateTieError, TooLargeError
from .game import (
    CommonGoodUtilities,
    GreedyUtilities,
    Profile,
    broadcast_learners,
    check_profile,
    common_good_utility,
    greedy_axiom_audit,
    greedy_utility,
    others_alpha,
    pivotal_probability,
    recovery_outcome,
)

TOL = 1e-9

MAX_N_COMMON_GOOD = 20
MAX_N_GREEDY = 12

PureProfile = tuple[int, ...]


class BestResponseKind(enum.Enum):
    REVEAL = "reveal"
    ABSTAIN = "abstain"
    INESSENTIAL = "inessential"


@dataclass(frozen=True)
class BestResponse:
    kind: BestResponseKind
    margin: float  # pivotal probability * good value - cost


def best_response(
    gamma: AccessStructure,
    u: CommonGoodUtilities,
    alpha: Profile,
    i: int,
    tol: float = TOL,
) -> BestResponse:
    """Classify participant i's best response against the others' profile.

    Expected utility is linear in the own probability, so the sign of
    f * N_i - c decides everything; a margin within tol means the player's
    payoff does not depend on her own strategy at all.
    """
    check_profile(alpha, gamma.n)
    f = pivotal_probability(gamma, i, others_alpha(alpha, i))
    margin = f * u.good_values[i - 1] - u.cost
    if margin > tol:
        kind = BestResponseKind.REVEAL
    elif margin < -tol:
        kind = BestResponseKind.ABSTAIN
    else:
        kind = BestResponseKind.INESSENTIAL
    return BestResponse(kind=kind, margin=margin)


def inessential_players(
    gamma: AccessStructure, u: CommonGoodUtilities, alpha: Profile, tol: float = TOL
) -> list[int]:
    """Participants whose payoff is flat in their own strategy at this profile."""
    return [
        i
        for i in range(1, gamma.n + 1)
        if best_response(gamma, u, alpha, i, tol).kind is BestResponseKind.INESSENTIAL
    ]


def profile_of_mask(mask: int, n: int) -> PureProfile:
    return tuple((mask >> i) & 1 for i in range(n))


def mask_of_profile(profile: Sequence[int]) -> int:
    return sum(1 << i for i, v in enumerate(profile) if v)


def _check_model(gamma: AccessStructure, utilities) -> int:
    """Validate the (structure, utilities) pairing; returns n."""
    n = gamma.n
    if isinstance(utilities, CommonGoodUtilities):
        if utilities.n != n:
            raise ValueError(f"utilities cover {utilities.n} participants, structure has {n}")
        if n > MAX_N_COMMON_GOOD:
            raise TooLargeError(f"common-good enumeration bounded to n <= {MAX_N_COMMON_GOOD}")
    elif isinstance(utilities, GreedyUtilities):
        if utilities.n != n:
            raise ValueError(f"utilities cover {utilities.n} participants, structure has {n}")
        if gamma.threshold_k is None:
            raise ValueError("the broadcast game is defined for threshold structures only")
        if n > MAX_N_GREEDY:
            raise TooLargeError(f"broadcast-game enumeration bounded to n <= {MAX_N_GREEDY}")
    else:
        raise TypeError(f"unsupported utility model {type(utilities).__name__}")
    return n


def payoff_row(gamma: AccessStructure, utilities, i: int) -> np.ndarray:
    """Participant i's payoff over all 2^n pure profiles, indexed by mask."""
    n = _check_model(gamma, utilities)
    masks = np.arange(1 << n, dtype=np.uint32)
    s_i = ((masks >> (i - 1)) & 1).astype(np.float64)
    if isinstance(utilities, CommonGoodUtilities):
        authorized = np.zeros(1 << n, dtype=bool)
        for m in gamma.min_masks:
            authorized |= (masks & np.uint32(m)) == np.uint32(m)
        return authorized * utilities.good_values[i - 1] - utilities.cost * s_i
    # Greedy broadcast game: payoff depends only on the revealer count and
    # whether i revealed.
    k = gamma.threshold_k
    a, b = utilities.learning_reward, utilities.exclusivity_penalty
    pop = np.bitwise_count(masks).astype(np.int64)
    t_i = np.where(pop >= k, 1.0, np.where(pop == k - 1, 1.0 - s_i, 0.0))
    learners = np.where(pop >= k, float(n), np.where(pop == k - 1, float(n - k + 1), 0.0))
    return a * t_i - b * (learners - t_i)


def profile_payoffs(gamma: AccessStructure, utilities, profile: Sequence[int]) -> tuple[float, ...]:
    """Payoff vector for one pure profile, straight from the definitions."""
    n = _check_model(gamma, utilities)
    s = tuple(int(v) for v in profile)
    if isinstance(utilities, CommonGoodUtilities):
        out = recovery_outcome(gamma, s)
        return tuple(common_good_utility(out, utilities, i) for i in range(1, n + 1))
    revealers = [i for i in range(1, n + 1) if s[i - 1]]
    out = broadcast_learners(revealers, gamma.threshold_k, n)
    return tuple(greedy_utility(out, utilities, i) for i in range(1, n + 1))


@dataclass
class PureEquilibria:
    """All pure Nash profiles, split by whether some deviation ties exactly."""

    equilibria: tuple[PureProfile, ...]
    strict: tuple[PureProfile, ...]
    payoff_equivalent: tuple[PureProfile, ...]  # NE with at least one indifferent deviation


def enumerate_pure_ne(gamma: AccessStructure, utilities, tol: float = TOL) -> PureEquilibria:
    """Every pure profile where no unilateral flip strictly improves the mover.

    Also flags equilibria held together only by indifference: profiles
    where some player's flip leaves her payoff exactly unchanged.
    """
    n = _check_model(gamma, utilities)
    size = 1 << n
    masks = np.arange(size, dtype=np.uint32)
    is_ne = np.ones(size, dtype=bool)
    is_strict = np.ones(size, dtype=bool)
    for i in range(1, n + 1):
        row = payoff_row(gamma, utilities, i)
        flipped = row[masks ^ np.uint32(1 << (i - 1))]
        is_ne &= flipped <= row + tol
        is_strict &= flipped < row - tol
    eq = tuple(profile_of_mask(int(m), n) for m in masks[is_ne])
    strict = tuple(profile_of_mask(int(m), n) for m in masks[is_ne & is_strict])
    ties = tuple(profile_of_mask(int(m), n) for m in masks[is_ne & ~is_strict])
    return PureEquilibria(equilibria=eq, strict=strict, payoff_equivalent=ties)


def predicted_equilibria(gamma: AccessStructure, u: CommonGoodUtilities) -> tuple[PureProfile, ...]:
    """The predicted pure equilibrium set of the common-good game.

    Characteristic vectors of minimal authorized coalitions whose members
    all have N_i > c, plus the zero vector unless some self-sufficient
    participant has N_i > c. Exact ties N_i = c make the prediction
    ill-defined and raise DegenerateTieError.
    """
    if u.n != gamma.n:
        raise ValueError(f"utilities cover {u.n} participants, structure has {gamma.n}")
    for i, v in enumerate(u.good_values, start=1):
        if v == u.cost:
            raise DegenerateTieError(f"N[{i}] = {v} exactly equals the cost")
    predicted: set[int] = set()
    for m in gamma.min_masks:
        if all(u.good_values[i - 1] > u.cost for i in members_of(m)):
            predicted.add(m)
    zero_excluded = any(
        gamma.is_self_sufficient(i) and u.good_values[i - 1] > u.cost
        for i in range(1, gamma.n + 1)
    )
    if not zero_excluded:
        predicted.add(0)
    return tuple(profile_of_mask(m, gamma.n) for m in sorted(predicted))


@dataclass
class DominanceResult:
    """Fixed point of iterated deletion of weakly dominated pure actions."""

    surviving_actions: tuple[tuple[int, ...], ...]  # per player, subset of (0, 1)
    surviving_profiles: tuple[PureProfile, ...]
    deletions: tuple[tuple[int, int], ...]  # (player, deleted action) in deletion order


def iterated_weak_dominance(gamma: AccessStructure, utilities, tol: float = TOL) -> DominanceResult:
    """Repeatedly delete weakly dominated actions until none remains.

    Weak dominance is judged against the surviving opponent profiles: the
    other action is never worse and strictly better at least once. Each
    pass scans players in ascending index order and deletes the first
    dominated action found, so the outcome is reproducible (no claim of
    order-independence is made).
    """
    n = _check_model(gamma, utilities)
    masks = np.arange(1 << n, dtype=np.uint32)
    rows = [payoff_row(gamma, utilities, i) for i in range(1, n + 1)]
    surviving: list[set[int]] = [{0, 1} for _ in range(n)]
    deletions: list[tuple[int, int]] = []

    def opponent_masks(i: int) -> np.ndarray:
        keep = ((masks >> (i - 1)) & 1) == 0
        for j in range(n):
            if j == i - 1:
                continue
            bit_j = (masks >> j) & 1
            if surviving[j] == {0}:
                keep &= bit_j == 0
            elif surviving[j] == {1}:
                keep &= bit_j == 1
        return masks[keep]

    while True:
        deleted = False
        for i in range(1, n + 1):
            if len(surviving[i - 1]) < 2:
                continue
            opp = opponent_masks(i)
            row = rows[i - 1]
            u_abstain = row[opp]
            u_reveal = row[opp | np.uint32(1 << (i - 1))]
            if np.all(u_abstain >= u_reveal - tol) and np.any(u_abstain > u_reveal + tol):
                surviving[i - 1] = {0}
                deletions.append((i, 1))
                deleted = True
                break
            if np.all(u_reveal >= u_abstain - tol) and np.any(u_reveal > u_abstain + tol):
                surviving[i - 1] = {1}
                deletions.append((i, 0))
                deleted = True
                break
        if not deleted:
            break

    keep = np.ones(1 << n, dtype=bool)
    for j in range(n):
        bit_j = (masks >> j) & 1
        if surviving[j] == {0}:
            keep &= bit_j == 0
        elif surviving[j] == {1}:
            keep &= bit_j == 1
    profiles = tuple(profile_of_mask(int(m), n) for m in masks[keep])
    return DominanceResult(
        surviving_actions=tuple(tuple(sorted(s)) for s in surviving),
        surviving_profiles=profiles,
        deletions=tuple(deletions),
    )


@dataclass
class EquilibriumReport:
    """Brute-forced vs predicted equilibria for the common-good game."""

    brute_force_ne: tuple[PureProfile, ...]
    predicted_ne: tuple[PureProfile, ...]
    survives_dominance: dict[PureProfile, bool]
    degenerate_flags: list[str]
    match: bool

    def to_json_dict(self) -> dict:
        return {
            "brute_force_ne": [list(p) for p in self.brute_force_ne],
            "predicted_ne": [list(p) for p in self.predicted_ne],
            "survives_dominance": {
                "".join(map(str, p)): ok for p, ok in self.survives_dominance.items()
            },
            "match": self.match,
            "flags": list(self.degenerate_flags),
        }


def characterization_report(gamma: AccessStructure, u: CommonGoodUtilities) -> EquilibriumReport:
    """Check the predicted equilibrium set against brute force and dominance.

    match is true iff the brute-forced pure NE set equals the prediction
    exactly and every predicted profile survives iterated weak dominance.
    """
    predicted = predicted_equilibria(gamma, u)  # raises on exact ties
    brute = enumerate_pure_ne(gamma, u)
    dominance = iterated_weak_dominance(gamma, u)
    surviving = set(dominance.surviving_profiles)
    survives = {p: p in surviving for p in predicted}
    match = set(brute.equilibria) == set(predicted) and all(survives.values())
    return EquilibriumReport(
        brute_force_ne=brute.equilibria,
        predicted_ne=predicted,
        survives_dominance=survives,
        degenerate_flags=u.degenerate_flags(),
        match=match,
    )


@dataclass
class BroadcastReport:
    """Weak-dominance collapse of the greedy broadcast game."""

    n: int
    k: int
    abstain_dominates: tuple[bool, ...]  # per player, over the full opponent space
    surviving_profiles: tuple[PureProfile, ...]
    all_abstain_unique_survivor: bool
    nobody_learns: bool
    brute_force_ne: tuple[PureProfile, ...]
    payoff_equivalent_ne: tuple[PureProfile, ...]
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "abstain_dominates": list(self.abstain_dominates),
            "surviving_profiles": [list(p) for p in self.surviving_profiles],
            "all_abstain_unique_survivor": self.all_abstain_unique_survivor,
            "nobody_learns": self.nobody_learns,
            "brute_force_ne": [list(p) for p in self.brute_force_ne],
            "payoff_equivalent_ne": [list(p) for p in self.payoff_equivalent_ne],
            "pass": self.passed,
        }


def broadcast_impossibility_report(n: int, k: int, u: GreedyUtilities) -> BroadcastReport:
    """Verify the no-reconstruction conclusion for the broadcast game.

    Passes iff abstaining weakly dominates revealing for every player,
    iterated deletion leaves exactly the all-abstain profile, and nobody
    learns the secret there. Requires utility parameters that satisfy the
    ordinal axioms.
    """
    if u.n != n:
        raise ValueError(f"utilities cover {u.n} participants, expected {n}")
    if not greedy_axiom_audit(u):
        raise AxiomViolationError(
            f"reward {u.learning_reward} <= penalty * (n - 1) = {u.exclusivity_penalty * (n - 1)}"
        )
    gamma = make_threshold(n, k)
    masks = np.arange(1 << n, dtype=np.uint32)

    dominates = []
    for i in range(1, n + 1):
        row = payoff_row(gamma, u, i)
        opp = masks[((masks >> (i - 1)) & 1) == 0]
        u_abstain = row[opp]
        u_reveal = row[opp | np.uint32(1 << (i - 1))]
        dominates.append(
            bool(np.all(u_abstain >= u_reveal - TOL) and np.any(u_abstain > u_reveal + TOL))
        )

    dominance = iterated_weak_dominance(gamma, u)
    zero = tuple(0 for _ in range(n))
    unique_survivor = dominance.surviving_profiles == (zero,)
    nobody = all(v == 0 for v in broadcast_learners([], k, n).learned)
    brute = enumerate_pure_ne(gamma, u)
    passed = all(dominates) and unique_survivor and nobody
    return BroadcastReport(
        n=n,
        k=k,
        abstain_dominates=tuple(dominates),
        surviving_profiles=dominance.surviving_profiles,
        all_abstain_unique_survivor=unique_survivor,
        nobody_learns=nobody,
        brute_force_ne=brute.equilibria,
        payoff_equivalent_ne=brute.payoff_equivalent,
        passed=passed,
    )
