from __future__ import annotations

import pytest

from oracles import (
    NoCandidateError,
    oracle_cost,
    oracle_fifo_starts,
    oracle_great_circle_km,
    oracle_station_choice,
)


class TestCostOracle:
    def test_single_band_is_energy_times_price(self):
        result = oracle_cost(100, 160, 30.0, [(0, 1440, 0.8)])
        assert result.value == pytest.approx(30.0 * 0.8, abs=1e-12)
        assert result.method == "minute-integration"

    def test_band_crossing_by_hand(self):
        # 30 minutes, 20 kWh, price steps 1.0 -> 0.5 at the midpoint:
        # 10 kWh at 1.0 plus 10 kWh at 0.5.
        bands = [(0, 720, 1.0), (720, 1440, 0.5)]
        assert oracle_cost(705, 735, 20.0, bands).value == pytest.approx(15.0, abs=1e-9)

    def test_zero_energy_is_free(self):
        assert oracle_cost(0, 60, 0.0, [(0, 1440, 2.0)]).value == 0.0


class TestStationChoiceOracle:
    def test_empty_candidates_raise(self):
        with pytest.raises(NoCandidateError):
            oracle_station_choice([], (0.5, 0.3, 0.2))

    def test_single_candidate_returned(self):
        only = [{"station_id": "st-42", "distance_km": 3.0, "price_per_kwh": 1.0,
                 "predicted_queue_minutes": 10}]
        assert oracle_station_choice(only, (0.5, 0.3, 0.2)) == "st-42"

    def test_tie_break_prefers_smaller_id(self):
        twins = [
            {"station_id": "st-b", "distance_km": 1.0, "price_per_kwh": 1.0,
             "predicted_queue_minutes": 0},
            {"station_id": "st-a", "distance_km": 1.0, "price_per_kwh": 1.0,
             "predicted_queue_minutes": 0},
        ]
        assert oracle_station_choice(twins, (0.5, 0.3, 0.2)) == "st-a"


class TestGreatCircleOracle:
    def test_one_degree_of_longitude_at_the_equator(self):
        got = oracle_great_circle_km(0.0, 0.0, 0.0, 1.0).value
        assert got == pytest.approx(111.195, abs=0.01)

    def test_same_point_is_zero(self):
        assert oracle_great_circle_km(31.2, 121.4, 31.2, 121.4).value == 0.0


class TestFifoOracle:
    def test_single_busy_pile(self):
        # pile frees at 50; the only job arrived at 10
        assert oracle_fifo_starts([50], [(10, 30)]) == [50]

    def test_two_piles_three_jobs(self):
        starts = oracle_fifo_starts([0, 0], [(0, 30), (0, 30), (0, 30)])
        assert starts == [0, 0, 30]

    def test_queue_respects_arrival_order(self):
        starts = oracle_fifo_starts([0], [(0, 10), (2, 10), (4, 10)])
        assert starts == [0, 10, 20]

    def test_no_jobs(self):
        assert oracle_fifo_starts([0, 0], []) == []
