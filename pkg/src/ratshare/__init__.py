"""Secret-sharing reconstruction as a game.

Shamir dealing and reconstruction over small prime fields, monotone
access structures, exact expected utilities of the one-shot disclosure
game under common-good and greedy utility models, brute-force pure Nash
enumeration with weak-dominance deletion, a depth-bounded sequential
disclosure game solved by backward induction, and Monte Carlo
cross-validation. Everything is exact or seed-deterministic and sized for
desk-scale verification.
"""

from .access import AccessStructure, make_general, make_threshold
from .async_game import DisclosureGame, Move, backward_induction, verify_no_profitable_ending
from .equilibrium import (
    BestResponse,
    BestResponseKind,
    EquilibriumReport,
    best_response,
    broadcast_impossibility_report,
    characterization_report,
    enumerate_pure_ne,
    inessential_players,
    iterated_weak_dominance,
    predicted_equilibria,
)
from .field import FieldElement, PrimeField, interpolate_at_zero, poly_eval
from .game import (
    CommonGoodUtilities,
    GreedyUtilities,
    broadcast_learners,
    common_good_utility,
    expected_utility,
    freeride_probability,
    greedy_axiom_audit,
    greedy_utility,
    pivotal_probability,
    recovery_outcome,
)
from .montecarlo import SimResult, simulate
from .shamir import Dealing, Share, deal, perfectness_audit, reconstruct

__version__ = "0.1.0"

__all__ = [
    "AccessStructure",
    "BestResponse",
    "BestResponseKind",
    "CommonGoodUtilities",
    "Dealing",
    "DisclosureGame",
    "EquilibriumReport",
    "FieldElement",
    "GreedyUtilities",
    "Move",
    "PrimeField",
    "Share",
    "SimResult",
    "backward_induction",
    "best_response",
    "broadcast_impossibility_report",
    "broadcast_learners",
    "characterization_report",
    "common_good_utility",
    "deal",
    "enumerate_pure_ne",
    "expected_utility",
    "freeride_probability",
    "greedy_axiom_audit",
    "greedy_utility",
    "inessential_players",
    "interpolate_at_zero",
    "iterated_weak_dominance",
    "make_general",
    "make_threshold",
    "perfectness_audit",
    "pivotal_probability",
    "poly_eval",
    "predicted_equilibria",
    "reconstruct",
    "recovery_outcome",
    "simulate",
    "verify_no_profitable_ending",
]
