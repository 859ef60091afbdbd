"""Exact arithmetic in GF(p) for small primes.

Backs share dealing, Lagrange reconstruction, and the exhaustive
perfectness audit. Only prime fields are supported; everything here is
immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DuplicateXError, MixedFieldsError, ZeroInverseError

# Keeps trial division cheap and p*p inside 64 bits on any host.
MAX_MODULUS = 2**31 - 1


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test for small n."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of residues modulo a prime p."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.p!r}")
        if self.p > MAX_MODULUS:
            raise ValueError(f"modulus {self.p} exceeds the supported bound {MAX_MODULUS}")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def element(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.p):
            yield FieldElement(v, self)

    def __repr__(self) -> str:
        return f"GF({self.p})"


@dataclass(frozen=True)
class FieldElement:
    """A residue in [0, p). Arithmetic never mixes distinct fields."""

    value: int
    field: PrimeField

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"value {self.value} out of range for {self.field}")

    def _same_field(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field.p != self.field.p:
            raise MixedFieldsError(
                f"cannot combine elements of GF({self.field.p}) and GF({other.field.p})"
            )

    def __add__(self, other: FieldElement) -> FieldElement:
        self._same_field(other)
        return FieldElement((self.value + other.value) % self.field.p, self.field)

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._same_field(other)
        return FieldElement((self.value - other.value) % self.field.p, self.field)

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._same_field(other)
        return FieldElement((self.value * other.value) % self.field.p, self.field)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._same_field(other)
        return self * other.inv()

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value % self.field.p, self.field)

    def inv(self) -> FieldElement:
        """Multiplicative inverse; raises ZeroInverseError on zero."""
        if self.value == 0:
            raise ZeroInverseError(f"zero has no inverse in {self.field}")
        return FieldElement(pow(self.value, self.field.p - 2, self.field.p), self.field)

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inv() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.field.p), self.field)

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.p})"


def poly_eval(coeffs: Sequence[FieldElement], x: FieldElement) -> FieldElement:
    """Evaluate a polynomial given constant-first coefficients, by Horner."""
    if not coeffs:
        raise ValueError("need at least one coefficient")
    for c in coeffs:
        x._same_field(c)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def interpolate_at_zero(points: Sequence[tuple[FieldElement, FieldElement]]) -> FieldElement:
    """Value at zero of the unique polynomial of degree < len(points) through the points.

    Uses Lagrange coefficients prod_{j != i} x_j / (x_j - x_i). All x must be
    distinct and all elements must share one field.
    """
    if not points:
        raise ValueError("need at least one point")
    field = points[0][0].field
    seen: set[int] = set()
    for x, y in points:
        points[0][0]._same_field(x)
        points[0][0]._same_field(y)
        if x.value in seen:
            raise DuplicateXError(f"duplicate x coordinate {x.value}")
        seen.add(x.value)
    total = field.zero
    for i, (xi, yi) in enumerate(points):
        num = field.one
        den = field.one
        for j, (xj, _) in enumerate(points):
            if j != i:
                num = num * xj
                den = den * (xj - xi)
        total = total + yi * num * den.inv()
    return total
