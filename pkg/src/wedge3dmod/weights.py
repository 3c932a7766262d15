"""Integral weights of GL_n.

A weight is stored as a tuple of ints.  ``Weight`` enforces dominance
(nonincreasing entries); ``IntVector`` is an arbitrary integer vector, used for
the unsorted sequences that appear before Bott's exchange rule is applied.
Entries may be negative: these are GL weights, not partitions.
"""

from __future__ import annotations

import re
from typing import Iterable, Union

DEFAULT_RANK = 6


class RankMismatch(ValueError):
    pass


class IntVector(tuple):
    """An integer n-tuple with no ordering constraint."""

    def __new__(cls, entries: Iterable[int]):
        vals = tuple(int(x) for x in entries)
        if not vals:
            raise ValueError("a weight needs at least one entry")
        return super().__new__(cls, vals)

    @property
    def n(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_weight(self)})"


class Weight(IntVector):
    """A dominant integral weight (lambda_1 >= ... >= lambda_n)."""

    def __new__(cls, entries: Iterable[int]):
        self = super().__new__(cls, entries)
        if not is_dominant(self):
            raise ValueError(f"weight {tuple(self)} is not dominant")
        return self

    def is_partition(self) -> bool:
        return self[-1] >= 0


AnyWeight = Union[Weight, IntVector, tuple]


def is_dominant(v: Iterable[int]) -> bool:
    v = tuple(v)
    return all(v[i] >= v[i + 1] for i in range(len(v) - 1))


def const(a: int, n: int = DEFAULT_RANK) -> Weight:
    """The central weight (a^n)."""
    return Weight((a,) * n)


def zero(n: int = DEFAULT_RANK) -> Weight:
    return const(0, n)


def degree(lam: AnyWeight) -> int:
    return sum(lam)


def dual(lam: AnyWeight) -> Weight:
    """lambda* = (-lambda_n, ..., -lambda_1)."""
    return Weight(-x for x in reversed(lam))


def _check_rank(a: AnyWeight, b: AnyWeight) -> None:
    if len(a) != len(b):
        raise RankMismatch(f"rank mismatch: {len(a)} vs {len(b)}")


def add(lam: AnyWeight, mu: AnyWeight) -> IntVector:
    """Componentwise sum; a Weight when both summands are dominant."""
    _check_rank(lam, mu)
    s = tuple(x + y for x, y in zip(lam, mu))
    if is_dominant(lam) and is_dominant(mu):
        return Weight(s)
    return IntVector(s)


def sub(lam: AnyWeight, mu: AnyWeight) -> IntVector:
    _check_rank(lam, mu)
    s = tuple(x - y for x, y in zip(lam, mu))
    return Weight(s) if is_dominant(s) else IntVector(s)


def scale(lam: AnyWeight, k: int) -> IntVector:
    s = tuple(k * x for x in lam)
    return Weight(s) if is_dominant(s) else IntVector(s)


def sort_desc(v: Iterable[int]) -> Weight:
    return Weight(sorted(v, reverse=True))


def inversions(v: Iterable[int]) -> int:
    """Number of pairs i < j with v_i < v_j (length of the sorting permutation)."""
    v = tuple(v)
    return sum(1 for i in range(len(v)) for j in range(i + 1, len(v)) if v[i] < v[j])


_POWER = re.compile(r"^\s*(-?\d+)\s*\^\s*(\d+)\s*$")


def parse_weight(text: str, n: int | None = None, dominant: bool = True) -> IntVector:
    """Parse "3,3,2,2,1,1", "(2^6)" or "(-1^2,-2^2,-3^2)".

    ``a^k`` means the entry ``a`` repeated ``k`` times.
    """
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    entries: list[int] = []
    for chunk in body.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty entry in weight {text!r}")
        m = _POWER.match(chunk)
        if m:
            entries.extend([int(m.group(1))] * int(m.group(2)))
        else:
            entries.append(int(chunk))
    if n is not None and len(entries) != n:
        raise RankMismatch(f"expected {n} entries, got {len(entries)} in {text!r}")
    return Weight(entries) if dominant else IntVector(entries)


def format_weight(v: Iterable[int]) -> str:
    return ",".join(str(x) for x in v)
