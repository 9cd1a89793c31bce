"""Exact integer combinatorics: Bell numbers, binomials, and set partitions.

Everything here is computed on Python's arbitrary-precision integers, so
the closed-form weights stay exact far beyond the range where explicit
enumeration is feasible.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator

DEFAULT_ENUMERATION_CAP = 12
_CAP_ENV_VAR = "COALITION_FORECAST_ENUM_CAP"


class EnumerationTooLarge(ValueError):
    """Raised when a full set-partition enumeration would exceed the cap."""


def enumeration_cap() -> int:
    """Effective enumeration cap: the env override if set, else the default."""
    raw = os.environ.get(_CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_ENUMERATION_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"{_CAP_ENV_VAR} must be a positive integer, got {raw!r}")
    return cap


@dataclass(frozen=True)
class BellTable:
    """Bell numbers B_0..B_max_index, exact.

    values[i] is the number of partitions of an i-element set.
    """

    max_index: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.max_index < 0:
            raise ValueError("max_index must be non-negative")
        if len(self.values) != self.max_index + 1:
            raise ValueError("values length must be max_index + 1")
        if self.values[0] != 1 or (self.max_index >= 1 and self.values[1] != 1):
            raise ValueError("Bell numbers must start 1, 1")

    def __getitem__(self, i: int) -> int:
        return self.values[i]


def build_bell_table(max_index: int) -> BellTable:
    """Bell numbers via the Bell triangle.

    Each row of the triangle starts with the last entry of the previous row
    and accumulates partial sums; the row head is the next Bell number.
    """
    if max_index < 0:
        raise ValueError("max_index must be non-negative")
    values = [1]
    row = [1]
    for _ in range(max_index):
        nxt = [row[-1]]
        for entry in row:
            nxt.append(nxt[-1] + entry)
        row = nxt
        values.append(row[0])
    return BellTable(max_index=max_index, values=tuple(values[: max_index + 1]))


def binomial(n: int, k: int) -> int:
    """C(n, k), exact; 0 when k > n."""
    return math.comb(n, k)


@dataclass(frozen=True)
class SetPartition:
    """One partition of {0,..,m-1} in canonical restricted-growth form.

    labels[i] is the block index of element i; labels[0] == 0 and each new
    block index is introduced in order, so equal partitions have equal
    label sequences.
    """

    m: int
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be positive")
        if len(self.labels) != self.m:
            raise ValueError("labels length must equal m")
        if self.labels[0] != 0:
            raise ValueError("restricted-growth labels must start at 0")
        prefix_max = 0
        for lab in self.labels[1:]:
            if lab < 0 or lab > prefix_max + 1:
                raise ValueError(f"labels {self.labels} violate restricted growth")
            if lab > prefix_max:
                prefix_max = lab

    @property
    def num_blocks(self) -> int:
        return max(self.labels) + 1

    def blocks(self) -> list[list[int]]:
        """Blocks as element lists, indexed by block label."""
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for elem, lab in enumerate(self.labels):
            out[lab].append(elem)
        return out

    def block_sizes(self) -> tuple[int, ...]:
        """Size of each block, indexed by block label."""
        sizes = [0] * self.num_blocks
        for lab in self.labels:
            sizes[lab] += 1
        return tuple(sizes)


def _iter_rgs(m: int) -> Iterator[list[int]]:
    """All restricted-growth strings of length m, lexicographically.

    Yields the same working list each time; callers must copy if they keep
    a reference past the current iteration.
    """
    a = [0] * m
    b = [0] * m  # b[i] = max(a[:i]) for i >= 1
    while True:
        yield a
        i = m - 1
        while i > 0 and a[i] == b[i] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        top = b[i] if b[i] >= a[i] else a[i]
        for j in range(i + 1, m):
            a[j] = 0
            b[j] = top


def _check_cap(m: int, cap: int | None) -> None:
    effective = enumeration_cap() if cap is None else cap
    if m > effective:
        bell_m = build_bell_table(m)[m]
        raise EnumerationTooLarge(
            f"enumeration too large: m={m} has B_{m} = {bell_m} partitions "
            f"(cap is m={effective})"
        )


def enumerate_partitions(m: int, cap: int | None = None) -> Iterator[SetPartition]:
    """All partitions of {0,..,m-1}, lexicographic in restricted-growth form.

    Yields exactly B_m canonical partitions, deterministically. Raises
    EnumerationTooLarge up front when m exceeds the cap (default 12,
    overridable via the COALITION_FORECAST_ENUM_CAP environment variable
    or the cap argument).
    """
    if m < 1:
        raise ValueError("m must be positive")
    _check_cap(m, cap)

    def generate() -> Iterator[SetPartition]:
        for labels in _iter_rgs(m):
            yield SetPartition(m=m, labels=tuple(labels))

    return generate()


@dataclass(frozen=True)
class PartitionStats:
    """Exact occurrence counts over all B_m partitions of m elements.

    multiplicity[k-1] counts size-k blocks across every partition;
    choice_counts[k-1] counts the partitions that place a fixed element
    in a size-k block.
    """

    m: int
    multiplicity: tuple[int, ...]
    choice_counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be positive")
        if len(self.multiplicity) != self.m or len(self.choice_counts) != self.m:
            raise ValueError("multiplicity and choice_counts must have length m")


def partition_stats(m: int, bell: BellTable) -> PartitionStats:
    """Closed-form block counts: no enumeration involved.

    A size-k block can be chosen C(m,k) ways and the remaining m-k
    elements partition freely, so size-k blocks appear C(m,k)*B_{m-k}
    times overall. Fixing one element cuts the choice to C(m-1,k-1).
    """
    if m < 1:
        raise ValueError("m must be positive")
    if bell.max_index < m:
        raise ValueError(f"Bell table covers indices up to {bell.max_index}, need {m}")
    multiplicity = tuple(binomial(m, k) * bell[m - k] for k in range(1, m + 1))
    choice_counts = tuple(binomial(m - 1, k - 1) * bell[m - k] for k in range(1, m + 1))
    return PartitionStats(m=m, multiplicity=multiplicity, choice_counts=choice_counts)
