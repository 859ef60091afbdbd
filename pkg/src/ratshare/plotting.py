"""Figure rendering for analysis and simulation reports.

Everything draws on the Agg backend and is written straight to files, so
the CLI can emit figures next to its JSON/CSV output on headless hosts.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .access import AccessStructure
from .equilibrium import payoff_row
from .game import CommonGoodUtilities, GreedyUtilities, Profile, expected_utility
from .montecarlo import SimResult

FIG_SIZE = (6.4, 4.0)


def expected_utility_figure(
    gamma: AccessStructure, u: CommonGoodUtilities, alpha: Profile
) -> plt.Figure:
    """Each participant's expected utility as a line in her own disclosure probability.

    The others play their entries of alpha; the marker sits at the
    participant's own current probability.
    """
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    xs = np.array([0.0, 1.0])
    for i in range(1, gamma.n + 1):
        ys = [expected_utility(gamma, u, alpha, i, float(x)) for x in xs]
        (line,) = ax.plot(xs, ys, label=f"participant {i}")
        own = float(alpha[i - 1])
        ax.plot([own], [expected_utility(gamma, u, alpha, i, own)], "o",
                color=line.get_color(), markersize=5)
    ax.set_xlabel("own disclosure probability")
    ax.set_ylabel("expected utility")
    ax.set_title(f"{gamma!r}, c={u.cost}")
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def broadcast_payoff_figure(gamma: AccessStructure, u: GreedyUtilities) -> plt.Figure:
    """Reveal vs abstain payoff for one player against r other revealers.

    Visualizes why abstaining weakly dominates in the broadcast game: the
    abstain line is never below the reveal line.
    """
    n, k = gamma.n, gamma.threshold_k
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    row = payoff_row(gamma, u, 1)
    rs = np.arange(n)
    # Payoffs depend only on the count of other revealers; realize each
    # count with the lexicographically first revealer set.
    reveal, abstain = [], []
    for r in rs:
        others_mask = 0
        picked = 0
        for j in range(1, n):
            if picked == r:
                break
            others_mask |= 1 << j
            picked += 1
        abstain.append(row[others_mask])
        reveal.append(row[others_mask | 1])
    ax.plot(rs, abstain, "o-", label="abstain")
    ax.plot(rs, reveal, "s--", label="reveal")
    ax.set_xlabel("other participants revealing")
    ax.set_ylabel("payoff")
    ax.set_xticks(rs)
    ax.set_title(f"broadcast game, n={n}, k={k}, A={u.learning_reward}, B={u.exclusivity_penalty}")
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def simulation_figure(result: SimResult, exact: Profile) -> plt.Figure:
    """Monte Carlo estimates with error bars against the exact values."""
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    ids = np.arange(1, len(result.means) + 1)
    ax.errorbar(ids, result.means, yerr=result.stderr, fmt="o", capsize=4,
                label=f"estimate ({result.samples} samples)")
    ax.plot(ids, exact, "x", markersize=10, label="exact")
    ax.set_xlabel("participant")
    ax.set_ylabel("expected utility")
    ax.set_xticks(ids)
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def save_figure(fig: plt.Figure, directory: str | Path, name: str) -> Path:
    """Write a figure as PNG into directory (created if missing)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{name}.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
