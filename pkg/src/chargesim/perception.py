"""Builds the five-dimension view an agent sees before deciding.

A snapshot groups what the agent knows about its own travel situation
(scenario, time, space, energy) and about each reachable charging station
(scenario, time, space, energy, price). It is a pure function of the
environment, the clock and the agent, so identical inputs always serialize
to identical bytes; the cognition provider consumes the serialized form.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Protocol

from .domain import GeoPoint, Persona, SimClock
from .environment import Environment, EvState


class PerceivingAgent(Protocol):
    """What perceive() needs to know about an agent."""

    persona: Persona

    @property
    def state(self) -> EvState: ...

    @property
    def next_event_start(self) -> int | None: ...

    @property
    def next_destination(self) -> GeoPoint | None: ...


@dataclass(frozen=True)
class StationPerception:
    station_id: str
    free_piles: int  # scenario: availability right now
    travel_minutes: int  # time: getting there
    predicted_queue_minutes: int  # time: waiting once there
    charge_minutes: int  # time: charging to the agent's usual target
    distance_km: float  # space
    pile_power_kw: float  # energy
    price_per_kwh: float  # price, at the current tariff band
    off_peak: bool  # price context: current band is the day's cheapest

    def to_dict(self) -> dict:
        return {
            "station_id": self.station_id,
            "scenario": {"free_piles": self.free_piles},
            "time": {
                "travel_minutes": self.travel_minutes,
                "predicted_queue_minutes": self.predicted_queue_minutes,
                "charge_minutes": self.charge_minutes,
            },
            "space": {"distance_km": self.distance_km},
            "energy": {"pile_power_kw": self.pile_power_kw},
            "price": {"price_per_kwh": self.price_per_kwh, "off_peak": self.off_peak},
        }


@dataclass(frozen=True)
class TravelPerception:
    congestion_multiplier: float  # scenario
    now: int  # time
    next_event_start: int | None  # time
    location: GeoPoint  # space
    next_destination: GeoPoint | None  # space
    distance_to_next_km: float  # space
    soc_kwh: float  # energy
    soc_fraction: float  # energy

    def to_dict(self) -> dict:
        return {
            "scenario": {"congestion_multiplier": self.congestion_multiplier},
            "time": {"now": self.now, "next_event_start": self.next_event_start},
            "space": {
                "location": [self.location.latitude, self.location.longitude],
                "next_destination": (
                    [self.next_destination.latitude, self.next_destination.longitude]
                    if self.next_destination is not None
                    else None
                ),
                "distance_to_next_km": self.distance_to_next_km,
            },
            "energy": {"soc_kwh": self.soc_kwh, "soc_fraction": self.soc_fraction},
        }


@dataclass(frozen=True)
class PerceptionSnapshot:
    travel: TravelPerception
    stations: tuple[StationPerception, ...]

    def to_dict(self) -> dict:
        return {
            "travel": self.travel.to_dict(),
            "stations": [station.to_dict() for station in self.stations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()

    def station(self, station_id: str) -> StationPerception | None:
        for entry in self.stations:
            if entry.station_id == station_id:
                return entry
        return None


def perceive(
    agent: PerceivingAgent,
    env: Environment,
    clock: SimClock,
    radius_km: float,
) -> PerceptionSnapshot:
    """Assemble the agent's current view of travel and nearby stations.

    Stations come back sorted by distance (ties by station id). Queue
    predictions are optimistic FIFO over the jobs stations have already
    accepted; future arrivals are unknowable and ignored.
    """
    ev = agent.state
    persona = agent.persona
    multiplier = env.speed_multiplier(clock.time_of_day)

    next_destination = agent.next_destination
    if next_destination is not None:
        distance_to_next = env.router.route(ev.location, next_destination, multiplier).distance_km
    else:
        distance_to_next = 0.0

    travel = TravelPerception(
        congestion_multiplier=multiplier,
        now=clock.sim_time,
        next_event_start=agent.next_event_start,
        location=ev.location,
        next_destination=next_destination,
        distance_to_next_km=distance_to_next,
        soc_kwh=ev.soc_kwh,
        soc_fraction=ev.soc_fraction,
    )

    target_kwh = max(0.0, persona.habits.typical_target_soc * ev.capacity_kwh - ev.soc_kwh)
    entries: list[StationPerception] = []
    for station in env.stations.values():
        estimate = env.router.route(ev.location, station.location, multiplier)
        if estimate.distance_km > radius_km:
            continue
        power_kw = min(station.pile_power_kw, ev.max_charge_power_kw)
        charge_minutes = math.ceil(target_kwh / power_kw * 60.0) if target_kwh > 0.0 else 0
        entries.append(
            StationPerception(
                station_id=station.station_id,
                free_piles=station.free_piles(clock.sim_time),
                travel_minutes=estimate.travel_minutes,
                predicted_queue_minutes=station.predicted_wait(clock.sim_time),
                charge_minutes=charge_minutes,
                distance_km=estimate.distance_km,
                pile_power_kw=station.pile_power_kw,
                price_per_kwh=env.station_price_now(station, clock),
                off_peak=env.tariff_for(station).is_off_peak(clock.time_of_day),
            )
        )
    entries.sort(key=lambda entry: (entry.distance_km, entry.station_id))
    return PerceptionSnapshot(travel=travel, stations=tuple(entries))
