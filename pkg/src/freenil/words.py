"""Free group elements as freely reduced words with integer exponents.

A Word on generators x_1..x_n is stored run-length encoded: a tuple of
(generator index, nonzero exponent) syllables with no two adjacent
syllables sharing a generator.  Words are immutable and hashable; all
operations are pure functions, so values can be shared freely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Tuple

Syllable = Tuple[int, int]


@dataclass(frozen=True)
class Word:
    """Freely reduced word in the free group on n generators."""

    n: int
    syllables: Tuple[Syllable, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("generator count n must be >= 1")
        prev = None
        for gen, exp in self.syllables:
            if not 1 <= gen <= self.n:
                raise ValueError(f"generator index {gen} out of range 1..{self.n}")
            if exp == 0:
                raise ValueError("zero exponent syllable")
            if gen == prev:
                raise ValueError("adjacent syllables share a generator; not reduced")
            prev = gen

    def is_identity(self) -> bool:
        return not self.syllables

    def length(self) -> int:
        """Total letter count, counting multiplicity."""
        return sum(abs(e) for _, e in self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, m: int) -> "Word":
        if m == 0:
            return identity(self.n)
        base = self if m > 0 else invert(self)
        out = identity(self.n)
        for _ in range(abs(m)):
            out = multiply(out, base)
        return out

    def __str__(self):
        if not self.syllables:
            return "1"
        parts = []
        for gen, exp in self.syllables:
            parts.append(f"x{gen}" if exp == 1 else f"x{gen}^{exp}")
        return " ".join(parts)

    def __repr__(self):
        return f"Word(n={self.n}, {self})"


def identity(n: int) -> Word:
    return Word(n)


def generator(n: int, i: int, exp: int = 1) -> Word:
    """The word x_i^exp."""
    if exp == 0:
        return Word(n)
    return Word(n, ((i, exp),))


def reduce(raw: Iterable[Syllable], n: int) -> Word:
    """Freely reduce a raw syllable list.  Idempotent."""
    if n < 1:
        raise ValueError("generator count n must be >= 1")
    stack: list[list[int]] = []
    for gen, exp in raw:
        if not 1 <= gen <= n:
            raise ValueError(f"generator index {gen} out of range 1..{n}")
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return Word(n, tuple((g, e) for g, e in stack))


def multiply(a: Word, b: Word) -> Word:
    if a.n != b.n:
        raise ValueError(f"mismatched generator counts {a.n} != {b.n}")
    return reduce(a.syllables + b.syllables, a.n)


def invert(a: Word) -> Word:
    return Word(a.n, tuple((g, -e) for g, e in reversed(a.syllables)))


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    if a.n != b.n:
        raise ValueError(f"mismatched generator counts {a.n} != {b.n}")
    return reduce(
        a.syllables + b.syllables + invert(a).syllables + invert(b).syllables, a.n
    )


def abelianization(w: Word) -> Tuple[int, ...]:
    """Exponent sums per generator, the image in Z^n."""
    out = [0] * w.n
    for gen, exp in w.syllables:
        out[gen - 1] += exp
    return tuple(out)


_SYLLABLE_RE = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, n: int) -> Word:
    """Parse the text syntax `x1^2 x2^-1` (whitespace-separated syllables).

    `1` or an empty string parses to the identity.
    """
    text = text.strip()
    if text in ("", "1"):
        return identity(n)
    syllables = []
    for token in text.split():
        m = _SYLLABLE_RE.match(token)
        if not m:
            raise ValueError(f"cannot parse syllable {token!r}")
        gen = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        syllables.append((gen, exp))
    return reduce(syllables, n)
