"""Average worth, the equilibrium hyperplane system, and the min-distance rule.

A representative outsider choosing a coalition size k earns v(k)/k; the
population-average worth over uniformly random coalition structures is a
fixed weighted mean of the v(j). Setting each per-capita worth equal to
that average yields m linear equations in (v(1),..,v(m)): one hyperplane
per size. The predicted size is the plane closest (in normalized Euclidean
distance) to the actual worth vector.

All coefficients are assembled in exact integer/rational arithmetic and
converted to float only at the final step, so algebraic identities between
the residual and matrix paths survive at full precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import BellTable, binomial
from .worth import SymmetricWorth

DEFAULT_TIE_TOLERANCE = 1e-9


def _weights(m: int, bell: BellTable) -> list[int]:
    """Occurrence weights of each coalition size across all structures."""
    if bell.max_index < m:
        raise ValueError(f"Bell table covers indices up to {bell.max_index}, need {m}")
    return [binomial(m, j) * bell[m - j] for j in range(1, m + 1)]


def _average_worth_exact(worth: SymmetricWorth, bell: BellTable) -> Fraction:
    m = worth.m
    weights = _weights(m, bell)
    total = sum(Fraction(v) * w for v, w in zip(worth.by_size, weights))
    return total / (m * bell[m])


def average_worth(worth: SymmetricWorth, bell: BellTable) -> float:
    """Population-average per-agent worth under uniform structure formation.

    Weighted mean of the v(j) with exact integer weights; the single
    division happens at the end.
    """
    return float(_average_worth_exact(worth, bell))


def _exact_rows(m: int, bell: BellTable) -> tuple[tuple[Fraction, ...], ...]:
    """Row k is the linear form v -> v(k)/k - (average worth of v)."""
    weights = _weights(m, bell)
    denom = m * bell[m]
    rows = []
    for k in range(1, m + 1):
        row = [-Fraction(w, denom) for w in weights]
        row[k - 1] += Fraction(1, k)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class HyperplaneSystem:
    """The m equilibrium hyperplanes in worth space.

    coefficients holds float rows; exact_rows the same rows as exact
    rationals; row_norms the Euclidean norms used to normalize distances.
    For m=1 the single row is identically zero and the system is flagged
    degenerate (row norm 0).
    """

    m: int
    coefficients: tuple[tuple[float, ...], ...]
    exact_rows: tuple[tuple[Fraction, ...], ...]
    row_norms: tuple[float, ...]
    degenerate: bool


def hyperplane_system(m: int, bell: BellTable) -> HyperplaneSystem:
    """Coefficient matrix of the per-size equilibrium conditions."""
    if m < 1:
        raise ValueError("m must be positive")
    exact = _exact_rows(m, bell)
    coefficients = tuple(tuple(float(a) for a in row) for row in exact)
    row_norms = tuple(
        math.sqrt(float(sum(a * a for a in row))) for row in exact
    )
    return HyperplaneSystem(
        m=m,
        coefficients=coefficients,
        exact_rows=exact,
        row_norms=row_norms,
        degenerate=(m == 1),
    )


def residuals(worth: SymmetricWorth, bell: BellTable) -> tuple[float, ...]:
    """Per-size deviations v(k)/k - average worth, exact core."""
    avg = _average_worth_exact(worth, bell)
    return tuple(
        float(Fraction(v) / k - avg)
        for k, v in enumerate(worth.by_size, start=1)
    )


def evaluate_planes(point: SymmetricWorth, system: HyperplaneSystem) -> tuple[float, ...]:
    """Signed value of each plane's linear form at the point (row dot product)."""
    if point.m != system.m:
        raise ValueError(f"point has m={point.m} but system has m={system.m}")
    out = []
    for row in system.exact_rows:
        acc = sum(a * Fraction(p) for a, p in zip(row, point.by_size))
        out.append(float(acc))
    return tuple(out)


def distances(point: SymmetricWorth, system: HyperplaneSystem) -> tuple[float, ...]:
    """Euclidean point-to-hyperplane distances, one per coalition size.

    For the degenerate m=1 system the lone plane is all of worth space;
    the distance is defined as 0 (system.degenerate signals the case).
    """
    if system.degenerate:
        if point.m != system.m:
            raise ValueError(f"point has m={point.m} but system has m={system.m}")
        return (0.0,)
    values = evaluate_planes(point, system)
    return tuple(abs(v) / n for v, n in zip(values, system.row_norms))


@dataclass(frozen=True)
class PredictionReport:
    """Outcome of the min-distance prediction for one worth vector.

    distances and residuals are indexed by coalition size (k ascending);
    argmin_set collects the sizes within tie_tolerance of the minimum
    distance; chosen_size is its smallest element.
    """

    m: int
    average_worth: float
    residuals: tuple[float, ...]
    distances: tuple[float, ...]
    argmin_set: frozenset[int]
    chosen_size: int
    degenerate: bool
    notes: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "average_worth": self.average_worth,
            "residuals": list(self.residuals),
            "distances": list(self.distances),
            "argmin_set": sorted(self.argmin_set),
            "chosen_size": self.chosen_size,
            "degenerate": self.degenerate,
            "notes": list(self.notes),
        }


def predict(point: SymmetricWorth, bell: BellTable,
            tie_tolerance: float = DEFAULT_TIE_TOLERANCE) -> PredictionReport:
    """Predict the coalition size a representative outsider joins.

    The worth vector is treated as a point in m-space; the predicted size
    minimizes the normalized distance to the corresponding hyperplane.
    Ties within tie_tolerance are all reported; the smallest size wins.
    """
    if tie_tolerance < 0:
        raise ValueError("tie_tolerance must be non-negative")
    system = hyperplane_system(point.m, bell)
    eps = residuals(point, bell)
    dists = distances(point, system)
    best = min(dists)
    argmin = frozenset(k for k, d in enumerate(dists, start=1)
                       if d <= best + tie_tolerance)
    chosen = min(argmin)
    notes = []
    if system.degenerate:
        notes.append("degenerate: with one outsider the single equation is vacuous")
    if point.m % chosen != 0:
        notes.append(
            f"chosen size {chosen} does not divide m={point.m}; no complete "
            f"structure of equal-size coalitions exists"
        )
    return PredictionReport(
        m=point.m,
        average_worth=average_worth(point, bell),
        residuals=eps,
        distances=dists,
        argmin_set=argmin,
        chosen_size=chosen,
        degenerate=system.degenerate,
        notes=tuple(notes),
    )
