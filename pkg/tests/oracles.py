"""Independent brute-force oracles used by the test suite.

These deliberately share no code with the production paths they check:
the distance oracle uses the Vincenty special-case formula instead of the
haversine, the cost oracle integrates minute by minute instead of by band
overlap, the station scorer is an explicit exhaustive loop, and the queue
oracle is a minute-stepping FIFO simulation rather than greedy pile
reservation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_KM = 6371.0088
MINUTES_PER_DAY = 1440


class NoCandidateError(ValueError):
    """Station choice was asked for with an empty candidate list."""


@dataclass(frozen=True)
class OracleResult:
    value: float
    method: str


def oracle_great_circle_km(lat1: float, lon1: float, lat2: float, lon2: float) -> OracleResult:
    """Great-circle distance via the Vincenty sphere formula (atan2 form)."""
    p1 = math.radians(lat1)
    p2 = math.radians(lat2)
    dl = math.radians(lon2 - lon1)
    y = math.sqrt(
        (math.cos(p2) * math.sin(dl)) ** 2
        + (math.cos(p1) * math.sin(p2) - math.sin(p1) * math.cos(p2) * math.cos(dl)) ** 2
    )
    x = math.sin(p1) * math.sin(p2) + math.cos(p1) * math.cos(p2) * math.cos(dl)
    return OracleResult(EARTH_RADIUS_KM * math.atan2(y, x), "vincenty-sphere")


def oracle_cost(
    start: int, end: int, energy_kwh: float, band_prices: list[tuple[int, int, float]]
) -> OracleResult:
    """Minute-by-minute integration of a uniform charge over tariff bands.

    band_prices is a list of (start_minute, end_minute, price) tuples tiling
    [0, 1440); start and end are absolute minutes.
    """
    if end <= start or energy_kwh == 0.0:
        return OracleResult(0.0, "minute-integration")
    kwh_per_minute = energy_kwh / (end - start)
    total = 0.0
    for minute in range(start, end):
        tod = minute % MINUTES_PER_DAY
        for band_start, band_end, price in band_prices:
            if band_start <= tod < band_end:
                total += kwh_per_minute * price
                break
        else:
            raise AssertionError(f"no band covers minute {tod}")
    return OracleResult(total, "minute-integration")


def oracle_station_choice(
    candidates: list[dict], weights: tuple[float, float, float]
) -> str:
    """Exhaustively score candidates and return the best station id.

    Each candidate is a dict with distance_km, price_per_kwh,
    predicted_queue_minutes and station_id; weights are (distance, price,
    wait). Ties go to the lexicographically smaller station id.
    """
    if not candidates:
        raise NoCandidateError("no candidate stations to score")
    w_d, w_p, w_q = weights
    best_id: str | None = None
    best_score = math.inf
    for candidate in candidates:
        score = (
            w_d * candidate["distance_km"]
            + w_p * candidate["price_per_kwh"]
            + w_q * candidate["predicted_queue_minutes"]
        )
        if score < best_score or (score == best_score and candidate["station_id"] < best_id):
            best_score = score
            best_id = candidate["station_id"]
    return best_id


def oracle_fifo_starts(
    pile_busy_until: list[int], jobs: list[tuple[int, int]]
) -> list[int]:
    """Start times for FIFO jobs on a multi-pile station, by minute stepping.

    jobs are (arrival_minute, service_minutes) in enqueue order. Walks time
    one minute at a time, admitting the queue head whenever a pile is free,
    so it never reuses the production code's greedy reservation arithmetic.
    """
    piles = list(pile_busy_until)
    starts: list[int] = [-1] * len(jobs)
    waiting: list[int] = []
    next_job = 0
    if not jobs:
        return starts
    t = min(arrival for arrival, _ in jobs)
    while next_job < len(jobs) or waiting:
        while next_job < len(jobs) and jobs[next_job][0] <= t:
            waiting.append(next_job)
            next_job += 1
        progressed = True
        while waiting and progressed:
            progressed = False
            for index in range(len(piles)):
                if piles[index] <= t and waiting:
                    job = waiting.pop(0)
                    starts[job] = t
                    piles[index] = t + jobs[job][1]
                    progressed = True
        t += 1
    return starts
