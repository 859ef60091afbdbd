"""The one-shot reconstruction game.

Each participant independently discloses her share with some probability.
Under the common-good model a participant gets her good value whenever an
authorized coalition disclosed, minus a cost if she disclosed herself.
Under the greedy model payoffs depend on who ends up knowing the secret
after a simultaneous broadcast round.

The expected utility of participant i at own disclosure probability x is

    E_i(x) = -c*x + (x*f + g) * N_i

where f is the probability that the other disclosers alone are not
authorized but become authorized with i (i is pivotal), and g the
probability they are authorized without i. Both are computed by exact
enumeration over the 2^(n-1) subsets of the others.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .access import AccessStructure, mask_of
from .errors import AuditTooLargeError, BadProbabilityError

Profile = Sequence[float]

AXIOM_AUDIT_MAX_N = 12


def check_probability(value: float, what: str = "probability") -> float:
    if not 0.0 <= value <= 1.0:
        raise BadProbabilityError(f"{what} must lie in [0, 1], got {value}")
    return float(value)


def check_profile(alpha: Profile, n: int) -> tuple[float, ...]:
    if len(alpha) != n:
        raise BadProbabilityError(f"profile has length {len(alpha)}, expected {n}")
    return tuple(check_probability(a, f"alpha[{i + 1}]") for i, a in enumerate(alpha))


@dataclass(frozen=True)
class RecoveryOutcome:
    """Whether the secret was recovered, and who participated."""

    recovered: bool
    participated: tuple[int, ...]  # 0/1 flags, index i-1 for participant i


@dataclass(frozen=True)
class LearnedOutcome:
    """Who knows the secret after a broadcast round."""

    learned: tuple[int, ...]  # 0/1 flags


@dataclass(frozen=True)
class CommonGoodUtilities:
    """Per-participant good values and one shared participation cost.

    Values <= cost are legal inputs; exact ties and non-positive values are
    degenerate for the equilibrium characterization and get flagged in
    reports rather than rejected here.
    """

    good_values: tuple[float, ...]
    cost: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "good_values", tuple(float(v) for v in self.good_values))
        if not self.cost > 0:
            raise ValueError(f"participation cost must be positive, got {self.cost}")

    @property
    def n(self) -> int:
        return len(self.good_values)

    def degenerate_flags(self) -> list[str]:
        flags = []
        for i, v in enumerate(self.good_values, start=1):
            if v == self.cost:
                flags.append(f"N[{i}] equals the cost {self.cost} (tie)")
            elif v <= 0:
                flags.append(f"N[{i}] = {v} is not positive")
        return flags


@dataclass(frozen=True)
class GreedyUtilities:
    """Reward for learning the secret, penalty per other learner.

    u_i = reward * t_i - penalty * (number of j != i that learned).
    The ordinal axioms hold exactly when reward > penalty * (n - 1);
    greedy_axiom_audit checks that mechanically.
    """

    learning_reward: float
    exclusivity_penalty: float
    n: int

    def __post_init__(self) -> None:
        if not self.learning_reward > 0:
            raise ValueError("learning reward must be positive")
        if not self.exclusivity_penalty > 0:
            raise ValueError("exclusivity penalty must be positive")
        if self.n < 1:
            raise ValueError("need at least one participant")

    @classmethod
    def default(cls, n: int) -> GreedyUtilities:
        return cls(learning_reward=float(n), exclusivity_penalty=1.0, n=n)


def recovery_outcome(gamma: AccessStructure, participation: Sequence[int]) -> RecoveryOutcome:
    """Outcome of a pure participation vector: recovered iff disclosers authorized."""
    s = tuple(int(v) for v in participation)
    if len(s) != gamma.n or any(v not in (0, 1) for v in s):
        raise ValueError(f"participation must be a 0/1 vector of length {gamma.n}")
    mask = sum(1 << i for i, v in enumerate(s) if v)
    return RecoveryOutcome(recovered=gamma.authorized_mask(mask), participated=s)


def common_good_utility(outcome: RecoveryOutcome, u: CommonGoodUtilities, i: int) -> float:
    """N_i - c*s_i on recovery, -c*s_i otherwise."""
    s_i = outcome.participated[i - 1]
    if outcome.recovered:
        return u.good_values[i - 1] - u.cost * s_i
    return -u.cost * s_i


def broadcast_learners(revealers: Sequence[int], k: int, n: int) -> LearnedOutcome:
    """Who learns the secret when a set of participants broadcasts shares.

    With r = number of revealers: r >= k means the shares are public and
    everybody learns; r = k-1 means exactly the abstainers learn (each
    holds her own share on top of the k-1 broadcast ones); r < k-1 means
    nobody does.
    """
    rset = set(revealers)
    mask = mask_of(rset, n)
    r = bin(mask).count("1")
    if r >= k:
        learned = tuple(1 for _ in range(n))
    elif r == k - 1:
        learned = tuple(0 if (i + 1) in rset else 1 for i in range(n))
    else:
        learned = tuple(0 for _ in range(n))
    return LearnedOutcome(learned=learned)


def greedy_utility(outcome: LearnedOutcome, u: GreedyUtilities, i: int) -> float:
    t = outcome.learned
    others = sum(t) - t[i - 1]
    return u.learning_reward * t[i - 1] - u.exclusivity_penalty * others


def greedy_axiom_audit(u: GreedyUtilities) -> bool:
    """Exhaustively check the ordinal axioms over all pairs of learned vectors.

    Checked properties: utilities are a function of the learned vector
    (true by construction here), learning is strictly preferred to not
    learning, strictly fewer other learners is strictly preferred, and
    the all-zero vector gives everybody utility zero.
    """
    n = u.n
    if n > AXIOM_AUDIT_MAX_N:
        raise AuditTooLargeError(f"axiom audit bounded to n <= {AXIOM_AUDIT_MAX_N}")
    masks = np.arange(1 << n, dtype=np.uint32)
    pop = np.bitwise_count(masks).astype(np.int64)

    # Zero normalization.
    for i in range(n):
        t_i = (masks >> i) & 1
        ui = u.learning_reward * t_i - u.exclusivity_penalty * (pop - t_i)
        if ui[0] != 0.0:
            return False

    for i in range(n):
        bit = np.uint32(1 << i)
        t_i = ((masks >> i) & 1).astype(bool)
        others = masks & ~bit
        ui = u.learning_reward * t_i - u.exclusivity_penalty * (pop - t_i)
        # Pairwise in row blocks to bound the 2^n x 2^n temporaries.
        block = 1024
        for lo in range(0, len(masks), block):
            hi = min(lo + block, len(masks))
            # Learning beats not learning against any background.
            u2_pairs = t_i[lo:hi, None] & ~t_i[None, :]
            if np.any(u2_pairs & ~(ui[lo:hi, None] > ui[None, :])):
                return False
            # Same own flag, strictly fewer other learners, must be strictly better.
            same_own = t_i[lo:hi, None] == t_i[None, :]
            subset = (others[lo:hi, None] & ~others[None, :]) == 0
            strict = others[lo:hi, None] != others[None, :]
            u3_pairs = same_own & subset & strict
            if np.any(u3_pairs & ~(ui[lo:hi, None] > ui[None, :])):
                return False
    return True


def _pivot_probabilities(
    gamma: AccessStructure, i: int, alpha_others: Sequence[float]
) -> tuple[float, float, float]:
    """(pivotal, authorized-without, neither) for participant i.

    Exact enumeration: each subset S of the others occurs with probability
    prod_{j in S} alpha_j * prod_{j not in S} (1 - alpha_j); the three
    returned numbers are the total mass of subsets where S is unauthorized
    but S + i is authorized, where S is authorized already, and the rest.
    """
    n = gamma.n
    if not 1 <= i <= n:
        raise ValueError(f"participant {i} outside 1..{n}")
    others = [j for j in range(1, n + 1) if j != i]
    if len(alpha_others) != len(others):
        raise BadProbabilityError(
            f"expected {len(others)} probabilities for the others, got {len(alpha_others)}"
        )
    alphas = [check_probability(a) for a in alpha_others]
    bit_i = 1 << (i - 1)
    pivotal = 0.0
    without = 0.0
    neither = 0.0
    for subset in range(1 << len(others)):
        prob = 1.0
        mask = 0
        for idx, j in enumerate(others):
            if subset >> idx & 1:
                prob *= alphas[idx]
                mask |= 1 << (j - 1)
            else:
                prob *= 1.0 - alphas[idx]
        if prob == 0.0:
            continue
        if gamma.authorized_mask(mask):
            without += prob
        elif gamma.authorized_mask(mask | bit_i):
            pivotal += prob
        else:
            neither += prob
    return pivotal, without, neither


def pivotal_probability(gamma: AccessStructure, i: int, alpha_others: Sequence[float]) -> float:
    """Probability the other disclosers are unauthorized but become authorized with i."""
    return _pivot_probabilities(gamma, i, alpha_others)[0]


def freeride_probability(gamma: AccessStructure, i: int, alpha_others: Sequence[float]) -> float:
    """Probability the other disclosers are authorized without i."""
    return _pivot_probabilities(gamma, i, alpha_others)[1]


def others_alpha(alpha: Profile, i: int) -> tuple[float, ...]:
    """Profile entries of everyone but i, in ascending participant order."""
    return tuple(a for j, a in enumerate(alpha, start=1) if j != i)


def expected_utility(
    gamma: AccessStructure,
    u: CommonGoodUtilities,
    alpha: Profile,
    i: int,
    x: float,
) -> float:
    """Exact expected utility of participant i disclosing with probability x.

    The other participants play their entries of alpha; alpha's own entry
    for i is ignored in favor of x.
    """
    check_profile(alpha, gamma.n)
    x = check_probability(x, "own disclosure probability")
    f, g, _ = _pivot_probabilities(gamma, i, others_alpha(alpha, i))
    return x * (-u.cost) + (x * f + g) * u.good_values[i - 1]
