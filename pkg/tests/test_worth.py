"""Characteristic functions and their reduction to per-size worths."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coalition_forecast.worth import (
    CharacteristicFunction,
    SymmetricWorth,
    SymmetryViolation,
    characteristic_from_coalitions,
    expand_to_characteristic,
    per_capita,
    per_capita_vector,
    reduce_to_symmetric,
)

finite_floats = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def synergy_game():
    """Three outsiders: singletons worth 0, pairs 1, the triple 1."""
    entries = {mask: 0.0 if mask.bit_count() == 1 else 1.0 for mask in range(1, 8)}
    return CharacteristicFunction(m=3, entries=entries)


class TestCharacteristicFunction:
    def test_requires_all_subsets(self):
        with pytest.raises(ValueError, match="7"):
            CharacteristicFunction(m=3, entries={1: 0.0, 2: 0.0})

    def test_rejects_nonfinite_worth(self):
        entries = {mask: 0.0 for mask in range(1, 8)}
        entries[3] = math.inf
        with pytest.raises(ValueError, match="finite"):
            CharacteristicFunction(m=3, entries=entries)

    def test_worth_lookup(self):
        assert synergy_game().worth([0, 1]) == 1.0

    def test_from_coalition_records(self):
        records = [{"members": [0], "worth": 2.0}, {"members": [1], "worth": 2.0},
                   {"members": [0, 1], "worth": 5.0}]
        cf = characteristic_from_coalitions(2, records)
        assert cf.worth([0, 1]) == 5.0

    def test_duplicate_coalition_rejected(self):
        records = [{"members": [0], "worth": 1.0}, {"members": [0], "worth": 2.0},
                   {"members": [1], "worth": 1.0}, {"members": [0, 1], "worth": 1.0}]
        with pytest.raises(ValueError, match="twice"):
            characteristic_from_coalitions(2, records)

    def test_member_out_of_range(self):
        with pytest.raises(ValueError, match="outside"):
            characteristic_from_coalitions(2, [{"members": [2], "worth": 1.0}])


class TestReduceToSymmetric:
    def test_synergy_reduces_to_per_size(self):
        assert reduce_to_symmetric(synergy_game()).by_size == (0.0, 1.0, 1.0)

    def test_single_outsider(self):
        cf = CharacteristicFunction(m=1, entries={1: 7.0})
        assert reduce_to_symmetric(cf).by_size == (7.0,)

    def test_violation_names_coalitions_and_gap(self):
        cf = CharacteristicFunction(m=2, entries={1: 0.0, 2: 1.0, 3: 0.5})
        with pytest.raises(SymmetryViolation) as excinfo:
            reduce_to_symmetric(cf, tolerance=0.5)
        err = excinfo.value
        assert err.gap == 1.0
        assert {err.coalition_a, err.coalition_b} == {(0,), (1,)}
        assert "gap" in str(err)

    def test_within_tolerance_takes_mean(self):
        cf = CharacteristicFunction(m=2, entries={1: 1.0, 2: 1.0 + 1e-12, 3: 4.0})
        worth = reduce_to_symmetric(cf)
        assert worth.by_size[0] == pytest.approx(1.0 + 5e-13, abs=1e-15)

    @given(st.lists(finite_floats, min_size=1, max_size=6))
    def test_idempotent_on_symmetric_games(self, by_size):
        worth = SymmetricWorth(m=len(by_size), by_size=tuple(by_size))
        assert reduce_to_symmetric(expand_to_characteristic(worth)).by_size == worth.by_size


class TestPerCapita:
    def test_synergy_triple_share(self):
        worth = SymmetricWorth(m=3, by_size=(0.0, 1.0, 1.0))
        assert per_capita(worth, 3) == pytest.approx(1 / 3)

    def test_size_one_is_identity(self):
        worth = SymmetricWorth(m=2, by_size=(3.5, 1.0))
        assert per_capita(worth, 1) == 3.5

    def test_synergy_vector(self):
        worth = SymmetricWorth(m=3, by_size=(0.0, 1.0, 1.0))
        assert per_capita_vector(worth) == (0.0, 0.5, 1 / 3)

    def test_out_of_range(self):
        worth = SymmetricWorth(m=2, by_size=(1.0, 1.0))
        with pytest.raises(IndexError):
            per_capita(worth, 3)
        with pytest.raises(IndexError):
            per_capita(worth, 0)

    @given(st.lists(finite_floats, min_size=1, max_size=6), st.floats(-100, 100))
    def test_scaling_linearity(self, by_size, lam):
        m = len(by_size)
        worth = SymmetricWorth(m=m, by_size=tuple(by_size))
        scaled = SymmetricWorth(m=m, by_size=tuple(lam * v for v in by_size))
        for k in range(1, m + 1):
            assert per_capita(scaled, k) == pytest.approx(lam * per_capita(worth, k),
                                                          rel=1e-12, abs=1e-300)


class TestSymmetricWorth:
    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            SymmetricWorth(m=3, by_size=(1.0, 2.0))

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            SymmetricWorth(m=1, by_size=(math.nan,))
