"""Deterministic verification sweeps behind the `verify` CLI command.

Each suite runs a family of desk-scale instances and reports one line per
check. All randomness flows from the caller's seed, so two runs with the
same flags produce byte-identical reports.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .access import AccessStructure, make_general, make_threshold
from .async_game import verify_no_profitable_ending
from .equilibrium import broadcast_impossibility_report, characterization_report
from .field import PrimeField
from .game import (
    CommonGoodUtilities,
    GreedyUtilities,
    expected_utility,
    freeride_probability,
    pivotal_probability,
)
from .shamir import deal, perfectness_audit, reconstruct

LINEARITY_TOL = 1e-12

SUITE_NAMES = ("shamir", "lemma1", "theorem3", "ht", "async")

# (n, k, depth bounds) envelope for the sequential-game sweep.
SEQUENTIAL_ENVELOPE = (
    (2, 2, range(1, 6)),
    (3, 2, range(1, 5)),
    (3, 3, range(1, 5)),
)


@dataclass
class SuiteResult:
    name: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append((label, ok, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        out = []
        for label, ok, detail in self.checks:
            mark = "ok  " if ok else "FAIL"
            out.append(f"{mark} {label}" + (f": {detail}" if detail and not ok else ""))
        good = sum(1 for _, ok, _ in self.checks if ok)
        status = "PASS" if self.passed else "FAIL"
        out.append(f"suite {self.name}: {status} ({good}/{len(self.checks)} checks)")
        return out


def _random_structure(rng: random.Random, n: int) -> AccessStructure:
    """Either a threshold structure or up to four random minimal coalitions."""
    if rng.random() < 0.4:
        return make_threshold(n, rng.randint(1, n))
    count = rng.randint(1, 4)
    coalitions = []
    for _ in range(count):
        mask = rng.randrange(1, 1 << n)
        coalitions.append([i + 1 for i in range(n) if mask >> i & 1])
    return make_general(n, coalitions)


def shamir_suite(max_n: int = 4, seed: int = 0) -> SuiteResult:
    """Round-trip reconstruction plus the perfectness audit at small parameters."""
    result = SuiteResult("shamir")
    for p in (5, 7, 11):
        for n in range(1, min(max_n, p - 1) + 1):
            for k in range(1, n + 1):
                fld = PrimeField(p)
                rng = random.Random(seed * 1_000_003 + p * 10_007 + k * 101 + n)
                ok = True
                detail = ""
                for secret in range(p):
                    dealing = deal(fld.element(secret), k, n, rng)
                    for subset in itertools.combinations(dealing.shares, k):
                        got = reconstruct(list(subset), p)
                        if got.value != secret:
                            ok = False
                            detail = f"secret {secret} reconstructed as {got.value}"
                            break
                    if not ok:
                        break
                audit = perfectness_audit(p, k, n)
                if not audit.passed:
                    ok = False
                    detail = audit.failures[0]
                counts = ",".join(
                    f"|S|={s}:{c}" for s, c in sorted(audit.uniform_counts.items())
                )
                result.add(f"shamir p={p} k={k} n={n} uniform[{counts}]", ok, detail)
    return result


def _two_of_three_bracket(a1: float, a2: float) -> tuple[float, float]:
    """Closed-form pivotal and free-ride probabilities for player 3 of 2-of-3."""
    return a1 * (1 - a2) + a2 * (1 - a1), a1 * a2


def lemma1_suite(instances: int = 200, max_n: int = 6, seed: int = 0) -> SuiteResult:
    """Linearity of the expected utility in the own disclosure probability.

    Random structures and profiles: E(0), E(1/2), E(1) must be collinear
    and the slope must equal pivotal probability * N_i - c, both to 1e-12.
    Also pins the 2-of-3 worked example: the closed-form bracket for
    player 3 and the flat profile that makes every player inessential.
    """
    result = SuiteResult("lemma1")
    rng = random.Random(seed)
    for idx in range(instances):
        n = rng.randint(2, max_n)
        gamma = _random_structure(rng, n)
        alpha = tuple(round(rng.random(), 6) for _ in range(n))
        i = rng.randint(1, n)
        values = tuple(round(rng.uniform(0.25, 5.0), 6) for _ in range(n))
        cost = round(rng.uniform(0.25, 2.0), 6)
        u = CommonGoodUtilities(good_values=values, cost=cost)
        e0 = expected_utility(gamma, u, alpha, i, 0.0)
        eh = expected_utility(gamma, u, alpha, i, 0.5)
        e1 = expected_utility(gamma, u, alpha, i, 1.0)
        others = tuple(a for j, a in enumerate(alpha, start=1) if j != i)
        margin = pivotal_probability(gamma, i, others) * values[i - 1] - cost
        bend = abs(eh - (e0 + e1) / 2)
        slope_err = abs((e1 - e0) - margin)
        ok = bend <= LINEARITY_TOL and slope_err <= LINEARITY_TOL
        result.add(
            f"lemma1[{idx:03d}] {gamma!r} i={i} bend={bend:.2e} slope_err={slope_err:.2e}", ok
        )

    gamma = make_threshold(3, 2)
    worked = random.Random(seed + 1)
    bracket_ok = True
    worst = 0.0
    for _ in range(100):
        a1, a2 = worked.random(), worked.random()
        f_expected, g_expected = _two_of_three_bracket(a1, a2)
        f = pivotal_probability(gamma, 3, (a1, a2))
        g = freeride_probability(gamma, 3, (a1, a2))
        worst = max(worst, abs(f - f_expected), abs(g - g_expected))
        if worst > LINEARITY_TOL:
            bracket_ok = False
    result.add(f"lemma1 2-of-3 bracket, 100 points, worst_err={worst:.2e}", bracket_ok)

    # N = 1, c = 1/2 against both others at 1/2 makes the pivot term cancel
    # the cost, so the expected utility must be flat in x.
    u = CommonGoodUtilities(good_values=(1.0, 1.0, 1.0), cost=0.5)
    es = [expected_utility(gamma, u, (0.5, 0.5, 0.5), 3, x) for x in (0.0, 0.5, 1.0)]
    spread = max(es) - min(es)
    result.add(f"lemma1 inessential profile spread={spread:.2e}", spread < LINEARITY_TOL)
    return result


def theorem3_suite(max_n: int = 5, generals: int = 100, seed: int = 0) -> SuiteResult:
    """Brute-forced pure equilibria must equal the predicted set exactly.

    Sweeps every threshold structure up to max_n and a seed-fixed batch of
    random general structures, with good values drawn from {0.5, 2, 5} and
    cost 1; every predicted equilibrium must also survive iterated weak
    dominance.
    """
    result = SuiteResult("theorem3")
    rng = random.Random(seed)
    choices = (0.5, 2.0, 5.0)

    def run(gamma: AccessStructure, values: tuple[float, ...], label: str) -> None:
        u = CommonGoodUtilities(good_values=values, cost=1.0)
        report = characterization_report(gamma, u)
        detail = ""
        if not report.match:
            detail = (
                f"brute={report.brute_force_ne} predicted={report.predicted_ne} "
                f"dominance={report.survives_dominance}"
            )
        result.add(f"{label} N={values}", report.match, detail)

    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            gamma = make_threshold(n, k)
            for _ in range(3):
                values = tuple(rng.choice(choices) for _ in range(n))
                run(gamma, values, f"theorem3 {gamma!r}")
    for idx in range(generals):
        n = rng.randint(2, max_n)
        gamma = _random_structure(rng, n)
        values = tuple(rng.choice(choices) for _ in range(n))
        run(gamma, values, f"theorem3[{idx:03d}] {gamma!r}")
    return result


def ht_suite(max_n: int = 5) -> SuiteResult:
    """Broadcast game collapse: abstain dominates, only all-abstain survives."""
    result = SuiteResult("ht")
    for n in range(2, max_n + 1):
        for k in range(2, n + 1):
            report = broadcast_impossibility_report(n, k, GreedyUtilities.default(n))
            detail = "" if report.passed else repr(report.to_json_dict())
            result.add(
                f"ht n={n} k={k} A={n} B=1 survivors={len(report.surviving_profiles)}",
                report.passed,
                detail,
            )
    return result


def async_suite() -> SuiteResult:
    """Sequential-game envelope: ending the game never pays, root value zero."""
    result = SuiteResult("async")
    for n, k, depths in SEQUENTIAL_ENVELOPE:
        for depth in depths:
            u = GreedyUtilities(learning_reward=3.0, exclusivity_penalty=1.0, n=n)
            report = verify_no_profitable_ending(n, k, depth, u)
            detail = "; ".join(report.counterexamples[:3])
            result.add(
                f"async n={n} k={k} depth={depth} nodes={report.nodes} "
                f"root={report.root_value}",
                report.passed,
                detail,
            )
    return result


def run_suite(name: str, max_n: int | None = None, seed: int = 0) -> list[SuiteResult]:
    """Run one named suite, or all of them in a fixed order."""
    if name == "shamir":
        return [shamir_suite(max_n=max_n or 4, seed=seed)]
    if name == "lemma1":
        return [lemma1_suite(max_n=max_n or 6, seed=seed)]
    if name == "theorem3":
        return [theorem3_suite(max_n=max_n or 5, seed=seed)]
    if name == "ht":
        return [ht_suite(max_n=max_n or 5)]
    if name == "async":
        return [async_suite()]
    if name == "all":
        out = []
        for suite in SUITE_NAMES:
            out.extend(run_suite(suite, max_n=None, seed=seed))
        return out
    raise ValueError(f"unknown suite {name!r}")
