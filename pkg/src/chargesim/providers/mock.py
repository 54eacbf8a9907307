"""Deterministic cognition provider.

Everything here is a pure function of its inputs plus the caller-supplied
seed, which is what makes whole-simulation replays byte-identical. Personas
and plans are sampled from template dictionaries with seeded RNGs; the
charging decision is the shared rule-based policy; reflection scores are
closed-form functions of the day's records.
"""

from __future__ import annotations

import math
import random

from ..domain import (
    MINUTES_PER_DAY,
    ActionType,
    BehaviorRecord,
    ChargeScenario,
    ChargingHabits,
    DailyPlan,
    Demographics,
    Economics,
    Gender,
    GeoPoint,
    IncomeLevel,
    Persona,
    PlanEvent,
    PlanEventKind,
    Psychology,
    ReflectionReport,
    ScoredNote,
    VehicleSpec,
    validate_persona,
)
from ..georoute import great_circle_km
from .base import CognitionProvider, DecisionRequest, DecisionResponse, SchemaError
from .baseline import BaselineWeights, baseline_decision

DEG_PER_KM = 0.008993  # degrees of latitude per kilometre

DEFAULT_PERSONA_TEMPLATE: dict = {
    "id_prefix": "driver",
    "occupations": [
        "day-shift taxi driver",
        "night-shift taxi driver",
        "ride-hailing driver",
        "fleet taxi driver",
        "airport-route taxi driver",
    ],
    "age_range": [26, 58],
    "genders": ["female", "male"],
    "income_levels": ["low", "mid", "high"],
    "price_sensitivity_range": [0.2, 0.9],
    "risk_aversion_range": [0.2, 0.8],
    "range_anxiety_range": [0.12, 0.3],
    "patience_range": [0.3, 0.9],
    "battery_capacity_choices": [75.0],
    "consumption_range": [0.13, 0.18],
    "max_charge_power_choices": [60.0, 120.0],
    "preferred_windows": [[1260, 1440], [0, 360], [660, 780]],
    "preferred_scenarios": ["public"],
    "target_soc_range": [0.75, 0.95],
}

DEFAULT_PLAN_TEMPLATE: dict = {
    "center": [31.2304, 121.4737],  # central Shanghai
    "area_radius_km": 8.0,
    "shifts": [[420, 720], [780, 1140]],
    "evening_shift": [1290, 1410],
    "evening_shift_probability": 0.5,
    "trip_km_range": [5.0, 18.0],
    "gap_minutes_range": [4, 15],
    "detour_factor": 1.3,
    "speed_kmh": 30.0,
}


def home_point_for(persona_id: str, center: GeoPoint, area_radius_km: float) -> GeoPoint:
    """Deterministic home location near the scenario center.

    Shared between the engine (initial vehicle placement, towing) and the
    plan generator so both agree on where an agent's day begins.
    """
    rng = random.Random(f"home|{persona_id}")
    bearing = rng.uniform(0.0, 2.0 * math.pi)
    distance = rng.uniform(0.0, area_radius_km * 0.6)
    return _offset(center, distance, bearing)


def _offset(origin: GeoPoint, distance_km: float, bearing_rad: float) -> GeoPoint:
    lat = origin.latitude + distance_km * math.cos(bearing_rad) * DEG_PER_KM
    lon = origin.longitude + distance_km * math.sin(bearing_rad) * DEG_PER_KM / math.cos(
        math.radians(origin.latitude)
    )
    return GeoPoint(lat, lon)


def _random_point_near(
    rng: random.Random,
    origin: GeoPoint,
    distance_km: float,
    center: GeoPoint,
    max_radius_km: float,
) -> GeoPoint:
    for _ in range(20):
        candidate = _offset(origin, distance_km, rng.uniform(0.0, 2.0 * math.pi))
        if great_circle_km(candidate, center) <= max_radius_km:
            return candidate
    # Deep in a corner of the area: head back toward the center instead.
    bearing = math.atan2(
        center.longitude - origin.longitude, center.latitude - origin.latitude
    )
    return _offset(origin, distance_km, bearing)


def _clamp01(value: float) -> float:
    return max(0.0, min(1.0, value))


class MockProvider(CognitionProvider):
    """Seed-deterministic provider used for tests, CI and offline runs."""

    def __init__(
        self,
        weights: BaselineWeights | None = None,
        plan_template: dict | None = None,
    ):
        self.weights = weights if weights is not None else BaselineWeights()
        self.plan_template = {**DEFAULT_PLAN_TEMPLATE, **(plan_template or {})}

    # -- persona ------------------------------------------------------------

    def generate_persona(self, seed: int | str, template_config: dict) -> Persona:
        template = {**DEFAULT_PERSONA_TEMPLATE, **(template_config or {})}
        rng = random.Random(f"persona|{seed}")
        window = rng.choice(template["preferred_windows"])
        persona = Persona(
            id=f"{template['id_prefix']}-{rng.randrange(10**8):08d}",
            demographics=Demographics(
                age=rng.randint(*template["age_range"]),
                gender=Gender(rng.choice(template["genders"])),
                occupation=rng.choice(template["occupations"]),
            ),
            economics=Economics(
                income_level=IncomeLevel(rng.choice(template["income_levels"])),
                price_sensitivity=rng.uniform(*template["price_sensitivity_range"]),
            ),
            psychology=Psychology(
                risk_aversion=rng.uniform(*template["risk_aversion_range"]),
                range_anxiety_threshold=rng.uniform(*template["range_anxiety_range"]),
                patience=rng.uniform(*template["patience_range"]),
            ),
            vehicle=VehicleSpec(
                battery_capacity_kwh=rng.choice(template["battery_capacity_choices"]),
                consumption_kwh_per_km=rng.uniform(*template["consumption_range"]),
                max_charge_power_kw=rng.choice(template["max_charge_power_choices"]),
            ),
            habits=ChargingHabits(
                preferred_window=(int(window[0]), int(window[1])),
                preferred_scenario=ChargeScenario(rng.choice(template["preferred_scenarios"])),
                typical_target_soc=rng.uniform(*template["target_soc_range"]),
            ),
        )
        violations = validate_persona(persona)
        if violations:
            raise SchemaError(f"template produced an invalid persona: {violations}")
        return persona

    # -- planning -----------------------------------------------------------

    def plan_day(self, persona: Persona, day_index: int, seed: int | str) -> DailyPlan:
        template = self.plan_template
        rng = random.Random(f"plan|{seed}|{persona.id}|{day_index}")
        center = GeoPoint(*template["center"])
        area_radius = float(template["area_radius_km"])
        detour = float(template["detour_factor"])
        speed = float(template["speed_kmh"])

        shifts = [tuple(window) for window in template["shifts"]]
        if rng.random() < float(template["evening_shift_probability"]):
            shifts.append(tuple(template["evening_shift"]))

        events: list[PlanEvent] = []
        location = home_point_for(persona.id, center, area_radius)
        for shift_start, shift_end in shifts:
            t = int(shift_start)
            while True:
                hop_km = rng.uniform(*template["trip_km_range"])
                destination = _random_point_near(rng, location, hop_km, center, area_radius)
                route_km = great_circle_km(location, destination) * detour
                travel_minutes = int(round(route_km / speed * 60.0))
                if t + travel_minutes > shift_end or travel_minutes == 0:
                    break
                events.append(
                    PlanEvent(
                        kind=PlanEventKind.TRIP,
                        origin=location,
                        destination=destination,
                        start=t,
                        expected_distance_km=route_km,
                    )
                )
                location = destination
                t += travel_minutes + rng.randint(*template["gap_minutes_range"])
        return DailyPlan(day_index=day_index, events=tuple(events))

    # -- deciding -----------------------------------------------------------

    def decide(self, request: DecisionRequest) -> DecisionResponse:
        return baseline_decision(request, self.weights)

    # -- reflecting ----------------------------------------------------------

    def reflect(
        self,
        day_records: list[BehaviorRecord],
        persona: Persona,
        plans: list[DailyPlan],
    ) -> ReflectionReport:
        day_plan = plans[-1] if plans else None
        if day_plan is not None:
            day_index = day_plan.day_index
        elif day_records:
            day_index = day_records[0].timestamp // MINUTES_PER_DAY
        else:
            day_index = 0

        trips_planned = len(day_plan.events) if day_plan is not None else 0
        trips_done = sum(1 for r in day_records if r.action is ActionType.TRAVEL)
        stranded = any(
            r.action is ActionType.IDLE and "strand" in r.reason.lower() for r in day_records
        )
        if trips_planned == 0:
            adherence = 1.0 if not stranded else 0.5
        else:
            adherence = _clamp01(trips_done / trips_planned - (0.3 if stranded else 0.0))
        adherence_text = (
            f"completed {trips_done} of {trips_planned} planned trips"
            + ("; ran out of charge mid-plan" if stranded else "")
        )

        charges = [
            r
            for r in day_records
            if r.action is ActionType.START_CHARGING and r.quintuple.decision
        ]
        if not charges:
            satisfaction = 0.75
            satisfaction_text = (
                "no charging was needed today: no time lost at stations, no station "
                "visits, no energy bought, no power constraints, nothing paid"
            )
        else:
            waits = [max(0, r.quintuple.time_minutes - r.timestamp) for r in charges]
            prices = [r.quintuple.price_per_kwh for r in charges]
            amounts = [r.quintuple.amount_kwh for r in charges]
            powers = [r.quintuple.power_kw for r in charges]
            mean_wait = sum(waits) / len(waits)
            mean_price = sum(prices) / len(prices)
            mean_amount = sum(amounts) / len(amounts)
            mean_power = sum(powers) / len(powers)
            target_kwh = persona.habits.typical_target_soc * persona.vehicle.battery_capacity_kwh
            time_score = _clamp01(1.0 - mean_wait / 180.0)
            station_score = 1.0  # every chosen station was available and served the charge
            amount_score = _clamp01(mean_amount / target_kwh) if target_kwh > 0 else 1.0
            power_score = _clamp01(mean_power / persona.vehicle.max_charge_power_kw)
            price_score = _clamp01(1.0 - persona.economics.price_sensitivity * mean_price / 1.5)
            satisfaction = (
                time_score + station_score + amount_score + power_score + price_score
            ) / 5.0
            satisfaction_text = (
                f"time: waited {mean_wait:.0f} min on average to start; "
                f"stations: all {len(charges)} chosen stations served the charge; "
                f"amount: {mean_amount:.1f} kWh per session against a "
                f"{target_kwh:.0f} kWh target; "
                f"power: drew {mean_power:.0f} kW of the vehicle's "
                f"{persona.vehicle.max_charge_power_kw:.0f} kW limit; "
                f"price: paid {mean_price:.2f} per kWh on average"
            )

        window = persona.habits.preferred_window
        if charges:
            in_window = sum(
                1
                for r in charges
                if window[0] <= r.quintuple.time_minutes % MINUTES_PER_DAY < window[1]
            )
            window_fraction = in_window / len(charges)
            consistency = _clamp01(0.7 + 0.3 * window_fraction)
            consistency_text = (
                f"{in_window} of {len(charges)} charges fell inside the preferred "
                f"{window[0] // 60:02d}:{window[0] % 60:02d}-"
                f"{window[1] // 60:02d}:{window[1] % 60:02d} window"
            )
        else:
            consistency = 1.0
            consistency_text = "no charges to weigh against stated habits"

        return ReflectionReport(
            day_index=day_index,
            plan_adherence=ScoredNote(adherence, adherence_text),
            satisfaction=ScoredNote(satisfaction, satisfaction_text),
            persona_consistency=ScoredNote(consistency, consistency_text),
        )
