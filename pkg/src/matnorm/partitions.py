"""Integer partitions, cycle-type constants ``z_beta`` and symmetric-power dimensions."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import Overflow, ValidationError

__all__ = ["Partition", "partitions_of", "partitions_by_length", "z_beta", "dim_sym", "MAX_K"]

MAX_K = 64
_U128 = 1 << 128


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]
    k: int = field(init=False)
    multiplicities: dict[int, int] = field(init=False, compare=False, hash=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValidationError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValidationError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "k", sum(parts))
        object.__setattr__(self, "multiplicities", dict(Counter(parts)))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def z(self) -> int:
        return z_beta(self)

    def __iter__(self):
        return iter(self.parts)


def _check_k(k: int) -> None:
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    if k > MAX_K:
        raise Overflow(f"k = {k} exceeds the enumeration cap {MAX_K}")


def _descending(k: int, largest: int):
    # reverse-lexicographic generation of partitions of k with parts <= largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _descending(k - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _all_partitions(k: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _descending(k, k))


def partitions_by_length(k: int) -> dict[int, list[Partition]]:
    """Partitions of ``k`` keyed by number of parts ``l = 1..k``.

    Within each group the order is reverse-lexicographic, e.g. for ``k = 6``
    and ``l = 2``: ``(5,1), (4,2), (3,3)``.
    """
    _check_k(k)
    groups: dict[int, list[Partition]] = {l: [] for l in range(1, k + 1)}
    for p in _all_partitions(k):
        groups[p.length].append(p)
    return groups


def partitions_of(k: int) -> list[Partition]:
    """All partitions of ``k``, grouped by length (ascending), reverse-lex within a group."""
    groups = partitions_by_length(k)
    return [p for l in range(1, k + 1) for p in groups[l]]


def z_beta(beta) -> int:
    """Cycle-type constant ``prod_i i^{m_i} m_i!`` (size of the centralizer in S_k)."""
    if not isinstance(beta, Partition):
        beta = Partition(tuple(beta))
    z = 1
    for size, mult in beta.multiplicities.items():
        z *= size**mult * math.factorial(mult)
    return z


def dim_sym(n: int, k: int) -> int:
    """Dimension ``C(n+k-1, k)`` of the k-th symmetric power of ``C^n`` (exact)."""
    if n < 1 or k < 0:
        raise ValidationError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    c = math.comb(n + k - 1, k)
    if c >= _U128:
        raise Overflow(f"C({n + k - 1}, {k}) exceeds the 128-bit unsigned range")
    return c
