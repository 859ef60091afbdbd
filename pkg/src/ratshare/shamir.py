"""Shamir threshold sharing over GF(p), plus an exhaustive perfectness audit.

Participant i's share is the evaluation of a random degree < k polynomial
at x = i (0 is reserved for the secret), so any k shares interpolate back
to the secret and fewer reveal nothing. The audit proves the "reveal
nothing" half by brute force at small parameters: it enumerates every
polynomial and checks the posterior over secrets is uniform for every
sub-threshold coalition.
"""

from __future__ import annotations

import csv
import itertools
import json
import random
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Sequence

from .errors import (
    AuditTooLargeError,
    BadThresholdError,
    DuplicateXError,
    TooManyParticipantsError,
)
from .field import FieldElement, PrimeField, interpolate_at_zero, poly_eval

AUDIT_MAX_P = 101
AUDIT_MAX_N = 6

SHARE_CSV_HEADER = ["participant", "x", "y"]


@dataclass(frozen=True)
class Share:
    participant: int
    x: FieldElement
    y: FieldElement


@dataclass(frozen=True)
class Dealing:
    p: int
    k: int
    n: int
    shares: tuple[Share, ...]


def deal(secret: FieldElement, k: int, n: int, rng: random.Random) -> Dealing:
    """Split a secret into n shares with threshold k.

    Draws the k-1 non-constant coefficients uniformly from GF(p) via rng,
    so the dealing is fully determined by the rng seed.
    """
    p = secret.field.p
    if n >= p:
        raise TooManyParticipantsError(f"need n < p for distinct nonzero points, got n={n}, p={p}")
    if k < 1 or k > n:
        raise BadThresholdError(f"threshold {k} outside 1..{n}")
    fld = secret.field
    coeffs = [secret] + [fld.element(rng.randrange(p)) for _ in range(k - 1)]
    shares = tuple(
        Share(i, fld.element(i), poly_eval(coeffs, fld.element(i))) for i in range(1, n + 1)
    )
    return Dealing(p=p, k=k, n=n, shares=shares)


def reconstruct(shares: Sequence[Share], p: int) -> FieldElement:
    """Interpolate the shares at zero.

    Equals the dealt secret whenever at least k genuine shares from one
    dealing are supplied; fewer shares produce an unrelated value.
    """
    if not shares:
        raise ValueError("need at least one share")
    for s in shares:
        if s.x.field.p != p or s.y.field.p != p:
            raise ValueError(f"share for participant {s.participant} is not over GF({p})")
    return interpolate_at_zero([(s.x, s.y) for s in shares])


@dataclass
class PerfectnessReport:
    """Outcome of the exhaustive audit for one (p, k, n)."""

    p: int
    k: int
    n: int
    passed: bool
    # For each sub-threshold coalition size, the number of polynomials
    # consistent with any observed share-tuple, per candidate secret.
    uniform_counts: dict[int, int] = dataclass_field(default_factory=dict)
    failures: list[str] = dataclass_field(default_factory=list)


def perfectness_audit(p: int, k: int, n: int) -> PerfectnessReport:
    """Brute-force check that sub-threshold coalitions learn nothing.

    Enumerates all p^k polynomials of degree < k. For every coalition S
    with |S| < k and every share-tuple on S, the number of polynomials
    with f(0) = s consistent with the tuple must not depend on s; every
    coalition with |S| >= k must reconstruct f(0) exactly.
    """
    if p > AUDIT_MAX_P or n > AUDIT_MAX_N:
        raise AuditTooLargeError(f"audit bounded to p <= {AUDIT_MAX_P}, n <= {AUDIT_MAX_N}")
    if n >= p:
        raise TooManyParticipantsError(f"need n < p, got n={n}, p={p}")
    if k < 1 or k > n:
        raise BadThresholdError(f"threshold {k} outside 1..{n}")

    fld = PrimeField(p)
    xs = [fld.element(i) for i in range(1, n + 1)]
    participants = list(range(1, n + 1))
    small = [tuple(c) for size in range(k) for c in itertools.combinations(participants, size)]
    large = [tuple(c) for size in range(k, n + 1) for c in itertools.combinations(participants, size)]

    # counts[S][share_tuple][secret] built in one pass over all polynomials
    counts: dict[tuple[int, ...], dict[tuple[int, ...], dict[int, int]]] = {S: {} for S in small}
    failures: list[str] = []

    for secret in range(p):
        for tail in itertools.product(range(p), repeat=k - 1):
            coeffs = [fld.element(secret)] + [fld.element(a) for a in tail]
            ys = [poly_eval(coeffs, x) for x in xs]
            for S in small:
                key = tuple(ys[i - 1].value for i in S)
                per_secret = counts[S].setdefault(key, {})
                per_secret[secret] = per_secret.get(secret, 0) + 1
            for S in large:
                got = interpolate_at_zero([(xs[i - 1], ys[i - 1]) for i in S])
                if got.value != secret:
                    failures.append(
                        f"coalition {S} reconstructed {got.value} instead of {secret}"
                    )

    uniform_counts: dict[int, int] = {}
    for S in small:
        for key, per_secret in counts[S].items():
            vals = [per_secret.get(s, 0) for s in range(p)]
            if len(set(vals)) != 1:
                failures.append(
                    f"coalition {S} with shares {key} has a non-uniform posterior: {vals}"
                )
            else:
                uniform_counts.setdefault(len(S), vals[0])

    return PerfectnessReport(p=p, k=k, n=n, passed=not failures,
                             uniform_counts=uniform_counts, failures=failures)


def save_shares(dealing: Dealing, csv_path: str | Path, sidecar_path: str | Path | None = None) -> None:
    """Write `participant,x,y` rows plus a JSON sidecar carrying p, k, n.

    The sidecar defaults to the CSV path with a .json suffix.
    """
    csv_path = Path(csv_path)
    if sidecar_path is None:
        sidecar_path = csv_path.with_suffix(".json")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SHARE_CSV_HEADER)
        for s in dealing.shares:
            writer.writerow([s.participant, s.x.value, s.y.value])
    Path(sidecar_path).write_text(
        json.dumps({"p": dealing.p, "k": dealing.k, "n": dealing.n}) + "\n"
    )


def load_shares(csv_path: str | Path, p: int) -> list[Share]:
    """Read a share CSV back into Share objects over GF(p)."""
    fld = PrimeField(p)
    shares: list[Share] = []
    seen_x: set[int] = set()
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != SHARE_CSV_HEADER:
            raise ValueError(f"expected header {SHARE_CSV_HEADER}, got {reader.fieldnames}")
        for row in reader:
            x = int(row["x"])
            if x % p in seen_x:
                raise DuplicateXError(f"duplicate x coordinate {x}")
            seen_x.add(x % p)
            shares.append(Share(int(row["participant"]), fld.element(x), fld.element(int(row["y"]))))
    if not shares:
        raise ValueError("share file contains no shares")
    return shares


def load_sidecar(csv_path: str | Path) -> dict | None:
    """Parameters from the JSON sidecar next to a share CSV, if present."""
    sidecar = Path(csv_path).with_suffix(".json")
    if not sidecar.exists():
        return None
    return json.loads(sidecar.read_text())
