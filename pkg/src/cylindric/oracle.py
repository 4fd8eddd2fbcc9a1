"""Brute-force enumeration of cylindric partitions.

This is the ground truth for small windows. Rows are generated top to
bottom and each row left to right; every part is clipped by the row above
(shifted by the profile entry) and the last row is additionally bounded
below by the first row, which closes the cylinder.
"""
from __future__ import annotations

from dataclasses import dataclass

from .profiles import Profile, as_profile
from .qalg import ZQSeries

__all__ = ["CountTable", "BudgetExceeded", "enumerate_cylindric", "oracle_F", "iter_cylindric", "is_cylindric"]

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CountTable:
    """``counts[m][n]``: cylindric partitions with ``max == m`` and size ``n``."""

    profile: Profile
    max_part: int
    max_size: int
    counts: tuple[tuple[int, ...], ...]

    def totals(self) -> list[int]:
        """Counts by size, summed over the largest part."""
        return [sum(row[n] for row in self.counts) for n in range(self.max_size + 1)]

    def to_json(self) -> dict:
        return {
            "profile": list(self.profile.parts),
            "max_part": self.max_part,
            "max_size": self.max_size,
            "counts": [[str(v) for v in row] for row in self.counts],
        }


def is_cylindric(c: Profile, rows) -> bool:
    """Check both inequality chains, absent parts read as zero."""
    k = c.k
    get = lambda r, j: rows[r][j - 1] if j - 1 < len(rows[r]) else 0  # noqa: E731
    for r in rows:
        if any(x <= 0 for x in r) or any(r[i] < r[i + 1] for i in range(len(r) - 1)):
            return False
    longest = max((len(r) for r in rows), default=0) + max(c.parts) + 1
    for j in range(1, longest + 1):
        for i in range(k - 1):
            if get(i, j) < get(i + 1, j + c.parts[i + 1]):
                return False
        if get(k - 1, j) < get(0, j + c.parts[0]):
            return False
    return True


def _rows(upper, lower, cap_size, max_part, counter, budget):
    """Partitions with ``lower[p] <= part[p] <= upper(p)`` and size <= cap_size.

    ``upper`` is a callable of the 0-based position and the previous part;
    ``lower`` is a weakly decreasing list (implicitly zero past its end).
    Yields ``(parts_tuple, size)``.
    """
    suffix = [0] * (len(lower) + 1)
    for p in range(len(lower) - 1, -1, -1):
        suffix[p] = suffix[p + 1] + lower[p]

    def rec(pos, prev, remaining, acc):
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded(f"generation budget {budget} exceeded")
        lb = lower[pos] if pos < len(lower) else 0
        if lb == 0:
            yield tuple(acc), sum(acc)
        hi = min(prev, upper(pos), remaining)
        rest = suffix[pos + 1] if pos + 1 < len(suffix) else 0
        for v in range(max(lb, 1), hi + 1):
            if remaining - v < rest:
                break
            acc.append(v)
            yield from rec(pos + 1, v, remaining - v, acc)
            acc.pop()

    yield from rec(0, max_part, cap_size, [])


def iter_cylindric(c, max_part: int, max_size: int, budget: int = DEFAULT_BUDGET):
    """Yield every cylindric partition of profile ``c`` in the window as a tuple of rows."""
    c = as_profile(c)
    k = c.k
    counter = [0]

    def fill(i, rows, remaining):
        if i == k:
            yield tuple(rows)
            return
        above = rows[i - 1] if i > 0 else None
        shift = c.parts[i]

        def upper(pos, above=above, shift=shift):
            if above is None or pos < shift:
                return max_part
            j = pos - shift
            return above[j] if j < len(above) else 0

        lower: list[int] = []
        # k == 1: lambda_j >= lambda_{j + c_1} holds for any partition
        if i == k - 1 and k > 1:
            lower = list(rows[0][c.parts[0]:])
        for row, size in _rows(upper, lower, remaining, max_part, counter, budget):
            rows.append(row)
            yield from fill(i + 1, rows, remaining - size)
            rows.pop()

    yield from fill(0, [], max_size)


def enumerate_cylindric(c, max_part: int, max_size: int, budget: int = DEFAULT_BUDGET) -> CountTable:
    """Exhaustive count table for ``max(Lambda) <= max_part``, ``|Lambda| <= max_size``."""
    c = as_profile(c)
    if max_part < 0 or max_size < 0:
        raise ValueError("window bounds must be nonnegative")
    counts = [[0] * (max_size + 1) for _ in range(max_part + 1)]
    for rows in iter_cylindric(c, max_part, max_size, budget):
        m = max((r[0] for r in rows if r), default=0)
        counts[m][sum(sum(r) for r in rows)] += 1
    return CountTable(c, max_part, max_size, tuple(tuple(r) for r in counts))


def oracle_F(c, max_part: int, max_size: int, budget: int = DEFAULT_BUDGET) -> ZQSeries:
    """The count table as a bivariate series: z-degree ``max_part+1``, order ``max_size+1``."""
    return ZQSeries.from_table(enumerate_cylindric(c, max_part, max_size, budget).counts)
