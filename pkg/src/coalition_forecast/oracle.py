"""Brute-force ground truth at desk scale.

Everything here works by enumerating coalition structures outright, never
through the closed-form weights, so it can referee them. The exhaustive
best-structure search doubles as a diagnostic companion to the distance
prediction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .combinatorics import (
    BellTable,
    PartitionStats,
    SetPartition,
    _check_cap,
    _iter_rgs,
    build_bell_table,
    partition_stats,
)
from .predictor import average_worth, predict
from .worth import CharacteristicFunction, SymmetricWorth, SymmetryViolation, reduce_to_symmetric


@lru_cache(maxsize=None)
def _size_profiles(m: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Distinct block-size histograms over all partitions, with counts.

    profile[k-1] = number of size-(k) blocks in the structure. The counts
    come from a full enumeration scan; structures sharing a histogram
    contribute identical per-structure sums, so grouping them is an exact
    regrouping of the enumeration, not a formula shortcut.
    """
    counts: dict[tuple[int, ...], int] = {}
    for labels in _iter_rgs(m):
        sizes = [0] * m
        for lab in labels:
            sizes[lab] += 1
        profile = [0] * m
        for sz in sizes:
            if sz == 0:
                break
            profile[sz - 1] += 1
        key = tuple(profile)
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


def brute_force_average(worth: SymmetricWorth, cap: int | None = None) -> float:
    """Mean per-agent worth over every enumerated coalition structure.

    Each structure contributes the sum of its block worths divided by m;
    the accumulation is exact rational so the result is the correctly
    rounded float of the true mean.
    """
    m = worth.m
    _check_cap(m, cap)
    values = [Fraction(v) for v in worth.by_size]
    total = Fraction(0)
    structures = 0
    for profile, count in _size_profiles(m):
        structure_sum = sum(n_blocks * values[k] for k, n_blocks in enumerate(profile) if n_blocks)
        total += count * structure_sum
        structures += count
    return float(total / (m * structures))


def brute_force_multiplicities(m: int, cap: int | None = None) -> PartitionStats:
    """Block-size and fixed-agent counts recomputed by raw enumeration."""
    if m < 1:
        raise ValueError("m must be positive")
    _check_cap(m, cap)
    multiplicity = [0] * (m + 1)
    choice_counts = [0] * (m + 1)
    for labels in _iter_rgs(m):
        sizes = [0] * m
        for lab in labels:
            sizes[lab] += 1
        for sz in sizes:
            if sz == 0:
                break
            multiplicity[sz] += 1
        choice_counts[sizes[0]] += 1  # element 0 always sits in block 0
    return PartitionStats(
        m=m,
        multiplicity=tuple(multiplicity[1:]),
        choice_counts=tuple(choice_counts[1:]),
    )


@dataclass(frozen=True)
class OptimalStructureResult:
    """Best coalition structure found by exhaustive scan."""

    partition: SetPartition
    total_worth: float
    predicted_size: int | None  # distance prediction, when the game is symmetric


def optimal_structure(cf: CharacteristicFunction, cap: int | None = None) -> OptimalStructureResult:
    """Exhaustive search for the structure maximizing total block worth.

    Ties break to the first maximizer in enumeration order. Symmetry is
    not required for the scan; when the game is symmetric the distance
    prediction is attached for side-by-side comparison.
    """
    m = cf.m
    _check_cap(m, cap)
    best_labels: tuple[int, ...] | None = None
    best_total = -float("inf")
    for labels in _iter_rgs(m):
        masks = [0] * m
        n_blocks = 0
        for elem, lab in enumerate(labels):
            masks[lab] |= 1 << elem
            if lab >= n_blocks:
                n_blocks = lab + 1
        total = sum(cf.entries[masks[b]] for b in range(n_blocks))
        if total > best_total:
            best_total = total
            best_labels = tuple(labels)
    assert best_labels is not None

    try:
        symmetric = reduce_to_symmetric(cf)
        bell = build_bell_table(m)
        predicted = predict(symmetric, bell).chosen_size
    except SymmetryViolation:
        predicted = None
    return OptimalStructureResult(
        partition=SetPartition(m=m, labels=best_labels),
        total_worth=best_total,
        predicted_size=predicted,
    )


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the oracle suite for one m."""

    m: int
    trials: int
    seed: int
    partitions_enumerated: int
    bell_value: int
    count_matches: bool
    multiplicity_matches: bool
    choice_counts_match: bool
    max_average_rel_err: float
    averages_match: bool

    @property
    def passed(self) -> bool:
        return (self.count_matches and self.multiplicity_matches
                and self.choice_counts_match and self.averages_match)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "trials": self.trials,
            "seed": self.seed,
            "partitions_enumerated": self.partitions_enumerated,
            "bell_value": self.bell_value,
            "count_matches": self.count_matches,
            "multiplicity_matches": self.multiplicity_matches,
            "choice_counts_match": self.choice_counts_match,
            "max_average_rel_err": self.max_average_rel_err,
            "averages_match": self.averages_match,
            "passed": self.passed,
        }


def _relative_gap(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return 0.0
    return abs(a - b) / scale


def oracle_suite(m: int, trials: int = 1000, seed: int = 0,
                 rel_tolerance: float = 1e-12, cap: int | None = None) -> VerificationReport:
    """Run the full enumeration-vs-closed-form check for one m.

    Compares enumerated block counts against the closed forms and the
    brute-force average against the weighted-mean average on `trials`
    worth vectors drawn uniform on [-1, 1] per coordinate.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    bell = build_bell_table(m)
    enumerated = brute_force_multiplicities(m, cap=cap)
    closed = partition_stats(m, bell)
    n_partitions = sum(enumerated.choice_counts)

    rng = np.random.default_rng(seed)
    worst = 0.0
    for row in rng.uniform(-1.0, 1.0, size=(trials, m)):
        w = SymmetricWorth(m=m, by_size=tuple(float(v) for v in row))
        gap = _relative_gap(brute_force_average(w, cap=cap), average_worth(w, bell))
        worst = max(worst, gap)

    return VerificationReport(
        m=m,
        trials=trials,
        seed=seed,
        partitions_enumerated=n_partitions,
        bell_value=bell[m],
        count_matches=(n_partitions == bell[m]),
        multiplicity_matches=(enumerated.multiplicity == closed.multiplicity),
        choice_counts_match=(enumerated.choice_counts == closed.choice_counts),
        max_average_rel_err=worst,
        averages_match=(worst <= rel_tolerance),
    )
