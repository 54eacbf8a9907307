"""Shared domain types for the EV charging behavior simulator.

Pure values only: no I/O, no provider calls, no clock access. Every type
checks its own invariants on construction, with one deliberate exception:
``Persona`` is a plain record and its field-level rules are reported by
:func:`validate_persona`, so callers can collect every violation at once
(useful when the persona came from an external generator) instead of
failing on the first bad field.

Time is integer minutes since scenario start; currency is CNY per kWh
with four fractional digits by convention.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from enum import Enum

MINUTES_PER_DAY = 1440
CURRENCY_PLACES = 4


def round_currency(value: float) -> float:
    """Quantize a currency amount to the conventional 4 fractional digits."""
    return round(value, CURRENCY_PLACES)


class ActionType(str, Enum):
    START_CHARGING = "start_charging"
    STOP_CHARGING = "stop_charging"
    SKIP_CHARGING = "skip_charging"
    TRAVEL = "travel"
    IDLE = "idle"


class ChargeScenario(str, Enum):
    HOME = "home"
    WORK = "work"
    PUBLIC = "public"
    EN_ROUTE = "en_route"


class IncomeLevel(str, Enum):
    LOW = "low"
    MID = "mid"
    HIGH = "high"


class Gender(str, Enum):
    FEMALE = "female"
    MALE = "male"
    NONBINARY = "nonbinary"
    UNSPECIFIED = "unspecified"


class PlanEventKind(str, Enum):
    WORK_SHIFT = "work_shift"
    TRIP = "trip"
    BREAK = "break"
    LEISURE = "leisure"


@dataclass(frozen=True, order=True)
class SimClock:
    """Simulation time in whole minutes since scenario start.

    Integer minutes keep replay bit-exact and queue arithmetic exact.
    Monotonicity across a run is enforced by the engine, not here.
    """

    sim_time: int

    def __post_init__(self) -> None:
        if not isinstance(self.sim_time, int) or isinstance(self.sim_time, bool):
            raise ValueError(f"sim_time must be an integer, got {self.sim_time!r}")
        if self.sim_time < 0:
            raise ValueError(f"sim_time must be >= 0, got {self.sim_time}")

    @property
    def day_index(self) -> int:
        return self.sim_time // MINUTES_PER_DAY

    @property
    def time_of_day(self) -> int:
        return self.sim_time % MINUTES_PER_DAY

    def plus(self, minutes: int) -> "SimClock":
        return SimClock(self.sim_time + int(minutes))


@dataclass(frozen=True)
class GeoPoint:
    """A WGS84 coordinate; bounds are validated on construction."""

    latitude: float
    longitude: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.latitude <= 90.0:
            raise ValueError(f"latitude out of [-90, 90]: {self.latitude}")
        if not -180.0 <= self.longitude <= 180.0:
            raise ValueError(f"longitude out of [-180, 180]: {self.longitude}")

    def to_lonlat(self) -> list[float]:
        """GeoJSON-style [longitude, latitude] pair."""
        return [self.longitude, self.latitude]


# ---------------------------------------------------------------------------
# Persona
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Demographics:
    age: int
    gender: Gender
    occupation: str


@dataclass(frozen=True)
class Economics:
    income_level: IncomeLevel
    price_sensitivity: float  # 0 (indifferent) .. 1 (highly price driven)


@dataclass(frozen=True)
class Psychology:
    risk_aversion: float
    range_anxiety_threshold: float  # SoC fraction below which charging is sought
    patience: float


@dataclass(frozen=True)
class VehicleSpec:
    battery_capacity_kwh: float
    consumption_kwh_per_km: float
    max_charge_power_kw: float


@dataclass(frozen=True)
class ChargingHabits:
    preferred_window: tuple[int, int]  # time-of-day minutes, half-open
    preferred_scenario: ChargeScenario
    typical_target_soc: float  # fraction in (0, 1]


@dataclass(frozen=True)
class Persona:
    """Profile driving an agent's prompts and baseline decisions.

    Deliberately not self-validating; run :func:`validate_persona` and
    check the result before trusting externally produced personas.
    """

    id: str
    demographics: Demographics
    economics: Economics
    psychology: Psychology
    vehicle: VehicleSpec
    habits: ChargingHabits

    def to_dict(self) -> dict:
        data = asdict(self)
        data["demographics"]["gender"] = self.demographics.gender.value
        data["economics"]["income_level"] = self.economics.income_level.value
        data["habits"]["preferred_scenario"] = self.habits.preferred_scenario.value
        data["habits"]["preferred_window"] = list(self.habits.preferred_window)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Persona":
        d = data["demographics"]
        e = data["economics"]
        p = data["psychology"]
        v = data["vehicle"]
        h = data["habits"]
        return cls(
            id=str(data["id"]),
            demographics=Demographics(int(d["age"]), Gender(d["gender"]), str(d["occupation"])),
            economics=Economics(IncomeLevel(e["income_level"]), float(e["price_sensitivity"])),
            psychology=Psychology(
                float(p["risk_aversion"]),
                float(p["range_anxiety_threshold"]),
                float(p["patience"]),
            ),
            vehicle=VehicleSpec(
                float(v["battery_capacity_kwh"]),
                float(v["consumption_kwh_per_km"]),
                float(v["max_charge_power_kw"]),
            ),
            habits=ChargingHabits(
                (int(h["preferred_window"][0]), int(h["preferred_window"][1])),
                ChargeScenario(h["preferred_scenario"]),
                float(h["typical_target_soc"]),
            ),
        )


def validate_persona(persona: Persona) -> list[str]:
    """Return every violated persona invariant, as "field.path: problem" strings.

    An empty list means the persona is valid. This never raises: it is a
    diagnostic, not a constructor guard.
    """
    violations: list[str] = []

    def check(ok: bool, path: str, problem: str) -> None:
        if not ok:
            violations.append(f"{path}: {problem}")

    check(bool(persona.id), "id", "must be non-empty")
    check(persona.demographics.age > 0, "demographics.age", "must be positive")
    check(
        isinstance(persona.demographics.gender, Gender),
        "demographics.gender",
        "must be a Gender value",
    )
    check(bool(persona.demographics.occupation), "demographics.occupation", "must be non-empty")
    check(
        isinstance(persona.economics.income_level, IncomeLevel),
        "economics.income_level",
        "must be an IncomeLevel value",
    )
    check(
        0.0 <= persona.economics.price_sensitivity <= 1.0,
        "economics.price_sensitivity",
        "must be within [0, 1]",
    )
    check(
        0.0 <= persona.psychology.risk_aversion <= 1.0,
        "psychology.risk_aversion",
        "must be within [0, 1]",
    )
    check(
        0.0 < persona.psychology.range_anxiety_threshold < 1.0,
        "psychology.range_anxiety_threshold",
        "must be within (0, 1)",
    )
    check(0.0 <= persona.psychology.patience <= 1.0, "psychology.patience", "must be within [0, 1]")
    check(
        persona.vehicle.battery_capacity_kwh > 0.0,
        "vehicle.battery_capacity_kwh",
        "must be strictly positive",
    )
    check(
        persona.vehicle.consumption_kwh_per_km > 0.0,
        "vehicle.consumption_kwh_per_km",
        "must be strictly positive",
    )
    check(
        persona.vehicle.max_charge_power_kw > 0.0,
        "vehicle.max_charge_power_kw",
        "must be strictly positive",
    )
    window = persona.habits.preferred_window
    check(
        0 <= window[0] < MINUTES_PER_DAY and 0 < window[1] <= MINUTES_PER_DAY and window[0] < window[1],
        "habits.preferred_window",
        "must be an ascending time-of-day range within [0, 1440]",
    )
    check(
        isinstance(persona.habits.preferred_scenario, ChargeScenario),
        "habits.preferred_scenario",
        "must be a ChargeScenario value",
    )
    check(
        0.0 < persona.habits.typical_target_soc <= 1.0,
        "habits.typical_target_soc",
        "must be within (0, 1]",
    )
    return violations


# ---------------------------------------------------------------------------
# Behavior records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecisionQuintuple:
    """The labeled bundle of decision outputs attached to every record.

    Named "quintuple" by convention even though it carries seven fields.
    """

    decision: bool
    scenario: ChargeScenario
    time_minutes: int
    station_id: str | None
    amount_kwh: float
    power_kw: float
    price_per_kwh: float

    def __post_init__(self) -> None:
        if self.time_minutes < 0:
            raise ValueError(f"time_minutes must be >= 0, got {self.time_minutes}")
        if self.amount_kwh < 0.0:
            raise ValueError(f"amount_kwh must be >= 0, got {self.amount_kwh}")
        if self.power_kw < 0.0:
            raise ValueError(f"power_kw must be >= 0, got {self.power_kw}")
        if self.price_per_kwh < 0.0:
            raise ValueError(f"price_per_kwh must be >= 0, got {self.price_per_kwh}")
        if not self.decision:
            if self.station_id is not None:
                raise ValueError("station_id must be absent when decision is false")
            if self.amount_kwh != 0.0:
                raise ValueError("amount_kwh must be 0 when decision is false")

    def to_dict(self) -> dict:
        return {
            "decision": self.decision,
            "scenario": self.scenario.value,
            "time_minutes": self.time_minutes,
            "station_id": self.station_id,
            "amount_kwh": self.amount_kwh,
            "power_kw": self.power_kw,
            "price_per_kwh": self.price_per_kwh,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DecisionQuintuple":
        return cls(
            decision=bool(data["decision"]),
            scenario=ChargeScenario(data["scenario"]),
            time_minutes=int(data["time_minutes"]),
            station_id=data["station_id"],
            amount_kwh=float(data["amount_kwh"]),
            power_kw=float(data["power_kw"]),
            price_per_kwh=float(data["price_per_kwh"]),
        )


@dataclass(frozen=True)
class BehaviorRecord:
    """One logged behavior: the action taken, its object, and when.

    This is the simulator's unit of output; the engine emits a stream of
    these and the memory store persists them.
    """

    action: ActionType
    object_id: str
    timestamp: int
    quintuple: DecisionQuintuple
    reason: str

    def __post_init__(self) -> None:
        if self.timestamp < 0:
            raise ValueError(f"timestamp must be >= 0, got {self.timestamp}")

    def to_dict(self) -> dict:
        return {
            "action": self.action.value,
            "object_id": self.object_id,
            "timestamp": self.timestamp,
            "quintuple": self.quintuple.to_dict(),
            "reason": self.reason,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BehaviorRecord":
        return cls(
            action=ActionType(data["action"]),
            object_id=str(data["object_id"]),
            timestamp=int(data["timestamp"]),
            quintuple=DecisionQuintuple.from_dict(data["quintuple"]),
            reason=str(data["reason"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Daily plans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanEvent:
    kind: PlanEventKind
    origin: GeoPoint
    destination: GeoPoint
    start: int  # time-of-day minutes
    expected_distance_km: float

    def __post_init__(self) -> None:
        if not 0 <= self.start < MINUTES_PER_DAY:
            raise ValueError(f"event start must be within [0, 1440), got {self.start}")
        if self.expected_distance_km < 0.0:
            raise ValueError("expected_distance_km must be >= 0")
        same_place = self.origin == self.destination
        if same_place and self.expected_distance_km != 0.0:
            raise ValueError("expected_distance_km must be 0 when origin == destination")
        if not same_place and self.expected_distance_km == 0.0:
            raise ValueError("expected_distance_km must be > 0 when origin != destination")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "origin": [self.origin.latitude, self.origin.longitude],
            "destination": [self.destination.latitude, self.destination.longitude],
            "start": self.start,
            "expected_distance_km": self.expected_distance_km,
        }


@dataclass(frozen=True)
class DailyPlan:
    """An ordered, non-overlapping schedule of events for one simulated day."""

    day_index: int
    events: tuple[PlanEvent, ...]

    def __post_init__(self) -> None:
        if self.day_index < 0:
            raise ValueError("day_index must be >= 0")
        starts = [event.start for event in self.events]
        if any(later <= earlier for earlier, later in zip(starts, starts[1:])):
            raise ValueError("plan events must have strictly increasing start times")

    @property
    def total_expected_km(self) -> float:
        return sum(event.expected_distance_km for event in self.events)

    def to_dict(self) -> dict:
        return {
            "day_index": self.day_index,
            "events": [event.to_dict() for event in self.events],
        }


# ---------------------------------------------------------------------------
# Reflection reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScoredNote:
    """A [0, 1] score with the explanatory text that justifies it."""

    score: float
    text: str

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must be within [0, 1], got {self.score}")

    def to_dict(self) -> dict:
        return {"score": self.score, "text": self.text}


@dataclass(frozen=True)
class ReflectionReport:
    """End-of-day self evaluation: plan adherence, satisfaction, consistency."""

    day_index: int
    plan_adherence: ScoredNote
    satisfaction: ScoredNote
    persona_consistency: ScoredNote
    fallback: bool = False

    def __post_init__(self) -> None:
        if self.day_index < 0:
            raise ValueError("day_index must be >= 0")

    def to_dict(self) -> dict:
        return {
            "day_index": self.day_index,
            "plan_adherence": self.plan_adherence.to_dict(),
            "satisfaction": self.satisfaction.to_dict(),
            "persona_consistency": self.persona_consistency.to_dict(),
            "fallback": self.fallback,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReflectionReport":
        def note(key: str) -> ScoredNote:
            return ScoredNote(float(data[key]["score"]), str(data[key]["text"]))

        return cls(
            day_index=int(data["day_index"]),
            plan_adherence=note("plan_adherence"),
            satisfaction=note("satisfaction"),
            persona_consistency=note("persona_consistency"),
            fallback=bool(data.get("fallback", False)),
        )
