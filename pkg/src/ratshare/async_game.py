"""Depth-bounded sequential disclosure game, solved by backward induction.

Participants move one at a time in a prescribed round-robin order. A move
discloses a subset of the shares the mover knows to a subset of the other
participants; the mover herself never gains information. The game stops
as soon as somebody holds a threshold's worth of shares, or when the
depth bound is hit, in which case nobody has learned and everybody's
payoff is the zero of the greedy normalization.

Shares are interchangeable under a threshold structure, so knowledge
compresses to one share-index bitmask per participant; the solver
memoizes on (knowledge, mover, depth).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidMoveError, TooLargeError
from .game import GreedyUtilities, LearnedOutcome, greedy_utility

MAX_N = 3
MAX_DEPTH = 6

# (knowledge masks per participant, index into the move order, moves made)
State = tuple[tuple[int, ...], int, int]


@dataclass(frozen=True)
class Move:
    """Disclose a share subset to a recipient subset; (0, 0) is a pass."""

    disclosed: int  # share j at bit j-1
    recipients: int  # participant j at bit j-1

    @property
    def is_pass(self) -> bool:
        return self.disclosed == 0 or self.recipients == 0


PASS = Move(0, 0)


@dataclass(frozen=True)
class DisclosureGame:
    n: int
    k: int
    depth_bound: int
    utilities: GreedyUtilities
    order: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n > MAX_N or self.depth_bound > MAX_DEPTH:
            raise TooLargeError(f"solver bounded to n <= {MAX_N}, depth <= {MAX_DEPTH}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"threshold {self.k} outside 1..{self.n}")
        if self.depth_bound < 0:
            raise ValueError("depth bound must be nonnegative")
        if self.utilities.n != self.n:
            raise ValueError("utility participant count disagrees with n")
        if not self.order:
            object.__setattr__(self, "order", tuple(range(1, self.n + 1)))
        if sorted(self.order) != list(range(1, self.n + 1)):
            raise ValueError(f"move order must be a permutation of 1..{self.n}")

    def initial_state(self) -> State:
        return (tuple(1 << i for i in range(self.n)), 0, 0)

    def mover(self, state: State) -> int:
        return self.order[state[1]]

    def learned_vector(self, state: State) -> tuple[int, ...]:
        return tuple(int(bin(m).count("1") >= self.k) for m in state[0])

    def is_terminal(self, state: State) -> bool:
        return any(self.learned_vector(state)) or state[2] >= self.depth_bound

    def is_learning_terminal(self, state: State) -> bool:
        return any(self.learned_vector(state))

    def payoffs(self, state: State) -> tuple[float, ...]:
        out = LearnedOutcome(self.learned_vector(state))
        return tuple(greedy_utility(out, self.utilities, i) for i in range(1, self.n + 1))

    def legal_moves(self, state: State) -> Iterator[Move]:
        """All moves of the current mover, pass first, in canonical order."""
        mover = self.mover(state)
        known = state[0][mover - 1]
        others = ((1 << self.n) - 1) & ~(1 << (mover - 1))
        disclosable = _submasks(known)
        recipient_sets = _submasks(others)
        for d in disclosable:
            for r in recipient_sets:
                yield Move(d, r)

    def apply_move(self, state: State, move: Move) -> State:
        """Recipients gain the disclosed shares; the turn and depth advance."""
        if self.is_terminal(state):
            raise InvalidMoveError("no moves at a terminal node")
        mover = self.mover(state)
        known = state[0][mover - 1]
        if move.disclosed & ~known:
            raise InvalidMoveError(f"mover {mover} does not know all of {move.disclosed:#b}")
        if move.recipients & (1 << (mover - 1)):
            raise InvalidMoveError("mover cannot be a recipient of her own move")
        if move.recipients & ~((1 << self.n) - 1):
            raise InvalidMoveError("recipient outside 1..n")
        knowledge = list(state[0])
        for j in range(self.n):
            if move.recipients >> j & 1:
                knowledge[j] |= move.disclosed
        return (tuple(knowledge), (state[1] + 1) % self.n, state[2] + 1)


def _submasks(mask: int) -> list[int]:
    """All submasks of mask in ascending order (0 first)."""
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    out = [0]
    for b in bits:
        out += [m | b for m in out]
    return sorted(out)


@dataclass(frozen=True)
class NodeSolution:
    value: tuple[float, ...]  # continuation payoffs under canonical tie-breaking
    best_moves: tuple[Move, ...]  # every payoff-maximizing move for the mover


class SolvedGame:
    """Backward-induction solution over the reachable state space.

    Ties between moves are kept as sets; the node value is taken from the
    first optimal move in canonical order (a pass, whenever passing is
    optimal), which makes reported values deterministic.
    """

    def __init__(self, game: DisclosureGame):
        self.game = game
        self.nodes: dict[State, NodeSolution] = {}
        self._solve(game.initial_state())

    def _solve(self, state: State) -> tuple[float, ...]:
        found = self.nodes.get(state)
        if found is not None:
            return found.value
        game = self.game
        if game.is_terminal(state):
            sol = NodeSolution(value=game.payoffs(state), best_moves=())
            self.nodes[state] = sol
            return sol.value
        mover = game.mover(state)
        best: float | None = None
        best_moves: list[Move] = []
        best_value: tuple[float, ...] | None = None
        for move in game.legal_moves(state):
            child_value = self._solve(game.apply_move(state, move))
            own = child_value[mover - 1]
            if best is None or own > best:
                best = own
                best_moves = [move]
                best_value = child_value
            elif own == best:
                best_moves.append(move)
        sol = NodeSolution(value=best_value, best_moves=tuple(best_moves))
        self.nodes[state] = sol
        return sol.value

    @property
    def root_value(self) -> tuple[float, ...]:
        return self.nodes[self.game.initial_state()].value

    def spe_reachable(self) -> set[State]:
        """States reachable from the root along any optimal move."""
        game = self.game
        seen: set[State] = set()
        frontier = [game.initial_state()]
        while frontier:
            state = frontier.pop()
            if state in seen:
                continue
            seen.add(state)
            for move in self.nodes[state].best_moves:
                frontier.append(game.apply_move(state, move))
        return seen


def backward_induction(
    n: int, k: int, depth_bound: int, utilities: GreedyUtilities, order: tuple[int, ...] = ()
) -> SolvedGame:
    return SolvedGame(DisclosureGame(n=n, k=k, depth_bound=depth_bound,
                                     utilities=utilities, order=order))


@dataclass
class SequentialReport:
    """Whether ending the game is ever worthwhile for the participant who ends it."""

    n: int
    k: int
    depth_bound: int
    nodes: int
    root_value: tuple[float, ...]
    counterexamples: list[str]
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "pass": self.passed,
            "n": self.n,
            "k": self.k,
            "depth_bound": self.depth_bound,
            "nodes": self.nodes,
            "root_value": list(self.root_value),
            "counterexamples": list(self.counterexamples),
        }


def verify_no_profitable_ending(
    n: int, k: int, depth_bound: int, utilities: GreedyUtilities, order: tuple[int, ...] = ()
) -> SequentialReport:
    """Mechanical check that nobody has an incentive to end the game.

    Over the full reachable tree: every move that makes somebody learn the
    secret gives its mover a strictly negative payoff, and the mover's
    continuation value after passing instead is strictly higher. On top of
    that, no learning-terminal node may sit on any optimal path, and the
    root value must be the all-zero vector.
    """
    solved = backward_induction(n, k, depth_bound, utilities, order)
    game = solved.game
    counterexamples: list[str] = []

    for state, sol in solved.nodes.items():
        if not sol.best_moves:  # terminal
            continue
        mover = game.mover(state)
        pass_value = None
        for move in game.legal_moves(state):
            child = game.apply_move(state, move)
            if not game.is_learning_terminal(child):
                continue
            payoff = game.payoffs(child)[mover - 1]
            if payoff >= 0:
                counterexamples.append(
                    f"state {state}: mover {mover} ends the game via {move} with payoff {payoff}"
                )
            if pass_value is None:
                pass_value = solved.nodes[game.apply_move(state, PASS)].value
            if not pass_value[mover - 1] > payoff:
                counterexamples.append(
                    f"state {state}: passing ({pass_value[mover - 1]}) does not beat "
                    f"ending ({payoff}) for mover {mover}"
                )

    for state in solved.spe_reachable():
        if game.is_learning_terminal(state):
            counterexamples.append(f"learning-terminal state {state} lies on an optimal path")

    if any(v != 0 for v in solved.root_value):
        counterexamples.append(f"root value {solved.root_value} is not the zero vector")

    return SequentialReport(
        n=n,
        k=k,
        depth_bound=depth_bound,
        nodes=len(solved.nodes),
        root_value=solved.root_value,
        counterexamples=counterexamples,
        passed=not counterexamples,
    )
