"""Exact coefficient rings: integers, rationals, and Z/ell^M.

Every computation in this package is exact.  A Ring value normalizes
coefficients (reduction mod ell^M for the modular ring) and knows how to
invert units.  Ring elements are plain ints or fractions.Fraction; the
Ring object itself is immutable and hashable so series and Lie elements
can carry it around and compare compatibility cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Ring:
    """One of Z, Q, or Z/ell^M (ell prime, M >= 1)."""

    kind: str  # "Z" | "Q" | "Zmod"
    ell: int | None = None
    M: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zmod"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zmod":
            if self.ell is None or self.M is None:
                raise ValueError("modular ring needs ell and M")
            if self.M < 1:
                raise ValueError("M must be >= 1")
            if self.ell < 2 or not _is_prime(self.ell):
                raise ValueError(f"ell={self.ell} is not prime")

    @property
    def modulus(self) -> int | None:
        if self.kind == "Zmod":
            return self.ell ** self.M
        return None

    def normalize(self, x):
        """Canonical representative of x in this ring."""
        if self.kind == "Zmod":
            return int(x) % self.modulus
        if self.kind == "Q":
            f = Fraction(x)
            return int(f) if f.denominator == 1 else f
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x)
        return int(x)

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def mul(self, a, b):
        return self.normalize(a * b)

    def neg(self, a):
        return self.normalize(-a)

    def is_zero(self, a) -> bool:
        return self.normalize(a) == 0

    def is_unit(self, a) -> bool:
        a = self.normalize(a)
        if self.kind == "Q":
            return a != 0
        if self.kind == "Z":
            return a in (1, -1)
        return a % self.ell != 0

    def inv(self, a):
        a = self.normalize(a)
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        if self.kind == "Q":
            return self.normalize(Fraction(1, 1) / a)
        if self.kind == "Z":
            return a
        return pow(a, -1, self.modulus)

    def __str__(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "Q":
            return "Q"
        return f"Z/{self.ell}^{self.M}"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


ZZ = Ring("Z")
QQ = Ring("Q")


def Zmod(ell: int, M: int) -> Ring:
    """The ring Z/ell^M, the working truncation of the ell-adic integers."""
    return Ring("Zmod", ell, M)
