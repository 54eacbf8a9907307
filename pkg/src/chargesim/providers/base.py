"""Cognition provider interface and the payloads that cross it.

A provider produces personas, daily plans, charging decisions and
end-of-day reflections. Implementations range from a deterministic mock to
a live LLM endpoint; the engine treats them identically and never lets an
unvalidated response touch environment state. Decision payloads therefore
go through two gates: a syntactic parse (parse_decision_payload) and a
semantic check against the snapshot the decision was made from
(validate_decision).
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass

from ..domain import (
    BehaviorRecord,
    ChargeScenario,
    DailyPlan,
    DecisionQuintuple,
    Persona,
    ReflectionReport,
    SimClock,
)
from ..environment import EvState
from ..perception import PerceptionSnapshot


class ProviderError(RuntimeError):
    """Transport or availability failure after the retry budget is spent."""


class SchemaError(ValueError):
    """A provider response that does not conform to the expected schema."""


@dataclass(frozen=True)
class DecisionRequest:
    """Everything a provider may consider when making one charging decision."""

    persona: Persona
    plan_events: tuple  # remaining PlanEvents for the current day
    snapshot: PerceptionSnapshot
    short_records: tuple[BehaviorRecord, ...]
    long_aggregates: tuple[dict, ...]
    clock: SimClock

    def to_payload(self) -> dict:
        return {
            "persona": self.persona.to_dict(),
            "plan_events": [event.to_dict() for event in self.plan_events],
            "perception": self.snapshot.to_dict(),
            "short_memory": [record.to_dict() for record in self.short_records],
            "long_memory_daily": list(self.long_aggregates),
            "clock": {
                "sim_time": self.clock.sim_time,
                "day_index": self.clock.day_index,
                "time_of_day": self.clock.time_of_day,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class DecisionResponse:
    """A charging decision: the quintuple fields plus the stated reason."""

    quintuple: DecisionQuintuple
    reason: str

    @property
    def decision(self) -> bool:
        return self.quintuple.decision

    def to_dict(self) -> dict:
        data = self.quintuple.to_dict()
        data["reason"] = self.reason
        return data


_REQUIRED_DECISION_KEYS = (
    "decision",
    "scenario",
    "time_minutes",
    "station_id",
    "amount_kwh",
    "power_kw",
    "price_per_kwh",
    "reason",
)


def parse_decision_payload(data: object) -> DecisionResponse:
    """Parse a raw decision payload, raising SchemaError on any malformation."""
    if not isinstance(data, dict):
        raise SchemaError(f"decision payload must be an object, got {type(data).__name__}")
    missing = [key for key in _REQUIRED_DECISION_KEYS if key not in data]
    if missing:
        raise SchemaError(f"decision payload missing keys: {', '.join(missing)}")
    if not isinstance(data["decision"], bool):
        raise SchemaError("decision must be a boolean")
    try:
        scenario = ChargeScenario(data["scenario"])
    except ValueError as exc:
        raise SchemaError(f"unknown scenario {data['scenario']!r}") from exc
    station_id = data["station_id"]
    if station_id is not None and not isinstance(station_id, str):
        raise SchemaError("station_id must be a string or null")
    if not isinstance(data["reason"], str):
        raise SchemaError("reason must be a string")
    try:
        quintuple = DecisionQuintuple(
            decision=data["decision"],
            scenario=scenario,
            time_minutes=int(data["time_minutes"]),
            station_id=station_id,
            amount_kwh=float(data["amount_kwh"]),
            power_kw=float(data["power_kw"]),
            price_per_kwh=float(data["price_per_kwh"]),
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"invalid quintuple: {exc}") from exc
    return DecisionResponse(quintuple=quintuple, reason=data["reason"])


def validate_decision(
    response: DecisionResponse, snapshot: PerceptionSnapshot, ev: EvState
) -> None:
    """Check a parsed decision against the snapshot it was made from.

    A positive decision must name a station present in the snapshot and may
    not request more energy than the battery can still take. Raises
    SchemaError so the caller's fallback path handles both gates uniformly.
    """
    q = response.quintuple
    if not q.decision:
        return
    if q.station_id is None:
        raise SchemaError("positive decision must name a station")
    if snapshot.station(q.station_id) is None:
        raise SchemaError(f"station {q.station_id!r} is not in the perceived candidate list")
    headroom = ev.capacity_kwh - ev.soc_kwh
    if q.amount_kwh > headroom + 1e-9:
        raise SchemaError(
            f"amount {q.amount_kwh:.3f} kWh exceeds remaining capacity {headroom:.3f} kWh"
        )
    if q.amount_kwh <= 0.0:
        raise SchemaError("positive decision must request a positive amount")
    if q.time_minutes < snapshot.travel.now:
        raise SchemaError("charging time may not lie in the past")


class CognitionProvider(ABC):
    """The pluggable reasoning component behind every agent."""

    @abstractmethod
    def generate_persona(self, seed: int | str, template_config: dict) -> Persona:
        """Produce a valid persona; deterministic in seed for mock providers."""

    @abstractmethod
    def plan_day(self, persona: Persona, day_index: int, seed: int | str) -> DailyPlan:
        """Produce the day's schedule of events."""

    @abstractmethod
    def decide(self, request: DecisionRequest) -> DecisionResponse:
        """Make one charging decision from the assembled request."""

    @abstractmethod
    def reflect(
        self,
        day_records: list[BehaviorRecord],
        persona: Persona,
        plans: list[DailyPlan],
    ) -> ReflectionReport:
        """Evaluate one completed day; called exactly once per agent per day."""
