"""Profiles (compositions) and the combinatorics attached to them.

Indices are 1-based to match the usual notation: ``c.part(1)`` is the first
entry and ``c.part(0)`` wraps around to the last one.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Profile",
    "ExponentMultiset",
    "as_profile",
    "parse_profile",
    "compositions",
    "s",
    "rotate",
    "move_cJ",
    "borodin_exponents",
    "hook_exponents",
    "subsets_of_Ic",
    "hook_lengths",
]

MAX_K = 8
MAX_ELL = 64


@dataclass(frozen=True, order=True)
class Profile:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("a profile needs at least one part")
        if any(p < 0 for p in parts):
            raise ValueError(f"profile parts must be nonnegative: {parts}")
        if len(parts) > MAX_K or sum(parts) > MAX_ELL:
            raise ValueError(f"profile {parts} outside supported range k<={MAX_K}, l<={MAX_ELL}")

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def ell(self) -> int:
        return sum(self.parts)

    @property
    def t(self) -> int:
        return self.k + self.ell

    def part(self, i: int) -> int:
        """``c_i`` with cyclic indexing, so ``part(0) == part(k)``."""
        return self.parts[(i - 1) % self.k]

    def support(self) -> tuple[int, ...]:
        """``I_c``: the 1-based indices with a positive entry."""
        return tuple(i for i in range(1, self.k + 1) if self.parts[i - 1] > 0)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return self.k

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def label(self) -> str:
        return "".join(map(str, self.parts))


def as_profile(c) -> Profile:
    if isinstance(c, Profile):
        return c
    if isinstance(c, str):
        return parse_profile(c)
    return Profile(tuple(c))


def parse_profile(text: str) -> Profile:
    """Parse ``"3,1,1"`` (parentheses and spaces tolerated)."""
    body = text.strip().strip("()").strip()
    pieces = body.split(",")
    if len(pieces) > 1 and not pieces[-1].strip():
        pieces.pop()  # "(2,)"
    try:
        parts = tuple(int(x) for x in pieces)
    except ValueError:
        raise ValueError(f"bad profile string {text!r}") from None
    return Profile(parts)


def compositions(ell: int, k: int) -> list[Profile]:
    """All weak compositions of ``ell`` into ``k`` parts, lexicographically descending."""
    out = []
    for bars in itertools.combinations(range(ell + k - 1), k - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(ell + k - 2 - prev)
        out.append(Profile(tuple(parts)))
    return sorted(out, reverse=True)


def s(c: Profile, i: int, j: int) -> int:
    """``c_i + ... + c_j``; zero for an empty range ``j < i``."""
    if j < i:
        return 0
    return sum(c.parts[i - 1:j])


def rotate(c: Profile) -> Profile:
    return Profile(c.parts[1:] + c.parts[:1])


def move_cJ(c: Profile, J: Iterable[int]) -> Profile:
    """The composition ``c(J)`` reached from ``c`` by the move on ``J``."""
    J = frozenset(J)
    if not J:
        raise ValueError("J must be nonempty")
    support = set(c.support())
    if not J <= support:
        raise ValueError(f"J={sorted(J)} not contained in I_c={sorted(support)}")
    k = c.k
    new = []
    for i in range(1, k + 1):
        prev = k if i == 1 else i - 1
        if i in J and prev not in J:
            new.append(c.part(i) - 1)
        elif i not in J and prev in J:
            new.append(c.part(i) + 1)
        else:
            new.append(c.part(i))
    return Profile(tuple(new))


def subsets_of_Ic(c: Profile) -> list[tuple[int, ...]]:
    """Nonempty subsets of ``I_c`` by increasing size, then lexicographically."""
    support = c.support()
    return [J for r in range(1, len(support) + 1) for J in itertools.combinations(support, r)]


@dataclass(frozen=True)
class ExponentMultiset:
    modulus: int
    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_counter(cls, modulus: int, counts: Counter) -> ExponentMultiset:
        items = tuple(sorted((e, m) for e, m in counts.items() if m))
        for e, _ in items:
            if not 1 <= e <= modulus:
                raise ValueError(f"exponent {e} outside [1, {modulus}]")
        return cls(modulus, items)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def total(self) -> int:
        return sum(m for _, m in self.counts)

    def factors(self) -> list[tuple[int, int]]:
        """Expanded ``(start, modulus)`` list, one entry per multiplicity."""
        return [(e, self.modulus) for e, m in self.counts for _ in range(m)]

    def to_json(self) -> dict[str, int]:
        return {str(e): m for e, m in self.counts}


def borodin_exponents(c: Profile) -> ExponentMultiset:
    """Exponents of Borodin's product, read off the triple-product index ranges.

    Includes one copy of ``t`` for the ``1/(q^t;q^t)_oo`` prefactor.
    """
    k, t = c.k, c.t
    counts: Counter = Counter({t: 1})
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            for m in range(1, c.part(i) + 1):
                counts[m + j - i + s(c, i + 1, j)] += 1
    for i in range(2, k + 1):
        for j in range(2, i + 1):
            for m in range(1, c.part(i) + 1):
                counts[t - m + j - i - s(c, j, i - 1)] += 1
    return ExponentMultiset.from_counter(t, counts)


def hook_lengths(shape: Iterable[int]) -> list[int]:
    """Hook lengths of every cell of a partition (rows weakly decreasing)."""
    rows = [r for r in shape if r > 0]
    cols = [sum(1 for r in rows if r > j) for j in range(rows[0])] if rows else []
    return [
        (row - j - 1) + (cols[j] - i - 1) + 1
        for i, row in enumerate(rows)
        for j in range(row)
    ]


def hook_exponents(c: Profile) -> ExponentMultiset:
    """Borodin's exponents via hooks of ``mu`` and its rectangle complement.

    ``mu`` has rows ``s(1,1), ..., s(1,k)`` inside the ``k x ell`` rectangle;
    the complement is read as a partition after a half-turn, i.e. rows
    ``ell - s(1,i)``.
    """
    k, ell, t = c.k, c.ell, c.t
    partial = [s(c, 1, i) for i in range(1, k + 1)]
    mu = sorted(partial, reverse=True)
    comp = sorted((ell - p for p in partial), reverse=True)
    counts: Counter = Counter({t: 1})
    counts.update(hook_lengths(mu))
    counts.update(t - h for h in hook_lengths(comp))
    return ExponentMultiset.from_counter(t, counts)
