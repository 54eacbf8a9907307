"""Scenario configuration: defaults, YAML loading, validation.

A scenario bundles everything a run needs: fleet size and horizon, initial
battery levels, station and tariff fixtures, routing parameters, provider
selection and the baseline policy weights. The shipped default mirrors the
reference setup of ten taxi drivers driving central Shanghai for a week,
starting at 60 of 75 kWh.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from .domain import GeoPoint
from .environment import (
    ChargingStation,
    CongestionSchedule,
    SpeedBand,
    TariffBand,
    TariffSchedule,
)
from .georoute import OfflineRouter
from .providers.live import LiveSettings
from .providers.mock import DEFAULT_PERSONA_TEMPLATE, DEFAULT_PLAN_TEMPLATE


@dataclass
class ScenarioConfig:
    seed: int = 42
    num_agents: int = 10
    horizon_days: int = 7
    initial_soc_kwh: float = 60.0
    provider: str = "mock"
    station_radius_km: float = 6.0
    detour_factor: float = 1.3
    base_speed_kmh: float = 30.0
    memory_fsync: bool = False
    baseline_weights: dict = field(
        default_factory=lambda: {"distance": 0.5, "price": 0.3, "wait": 0.2}
    )
    congestion_bands: list = field(
        default_factory=lambda: [
            {"start": 0, "end": 420, "multiplier": 1.2},
            {"start": 420, "end": 600, "multiplier": 0.7},
            {"start": 600, "end": 1020, "multiplier": 0.9},
            {"start": 1020, "end": 1200, "multiplier": 0.7},
            {"start": 1200, "end": 1440, "multiplier": 1.1},
        ]
    )
    tariffs: dict = field(
        default_factory=lambda: {
            "shanghai-tou": [
                {"start": 0, "end": 360, "price_per_kwh": 0.35, "label": "valley"},
                {"start": 360, "end": 480, "price_per_kwh": 0.62, "label": "flat"},
                {"start": 480, "end": 660, "price_per_kwh": 1.07, "label": "peak"},
                {"start": 660, "end": 1080, "price_per_kwh": 0.62, "label": "flat"},
                {"start": 1080, "end": 1260, "price_per_kwh": 1.07, "label": "peak"},
                {"start": 1260, "end": 1440, "price_per_kwh": 0.35, "label": "valley"},
            ]
        }
    )
    stations: list = field(
        default_factory=lambda: [
            {"station_id": "st-01", "latitude": 31.2330, "longitude": 121.4690,
             "pile_count": 4, "pile_power_kw": 60.0, "tariff_id": "shanghai-tou"},
            {"station_id": "st-02", "latitude": 31.2397, "longitude": 121.4998,
             "pile_count": 6, "pile_power_kw": 120.0, "tariff_id": "shanghai-tou"},
            {"station_id": "st-03", "latitude": 31.1956, "longitude": 121.4380,
             "pile_count": 4, "pile_power_kw": 60.0, "tariff_id": "shanghai-tou"},
            {"station_id": "st-04", "latitude": 31.1979, "longitude": 121.3363,
             "pile_count": 6, "pile_power_kw": 120.0, "tariff_id": "shanghai-tou"},
            {"station_id": "st-05", "latitude": 31.3020, "longitude": 121.5150,
             "pile_count": 3, "pile_power_kw": 60.0, "tariff_id": "shanghai-tou"},
            {"station_id": "st-06", "latitude": 31.2610, "longitude": 121.4480,
             "pile_count": 2, "pile_power_kw": 7.0, "tariff_id": "shanghai-tou"},
            {"station_id": "st-07", "latitude": 31.2190, "longitude": 121.5520,
             "pile_count": 4, "pile_power_kw": 60.0, "tariff_id": "shanghai-tou"},
        ]
    )
    persona_template: dict = field(default_factory=lambda: dict(DEFAULT_PERSONA_TEMPLATE))
    plan_template: dict = field(default_factory=lambda: dict(DEFAULT_PLAN_TEMPLATE))
    live: dict = field(
        default_factory=lambda: {
            "base_url": "https://api.openai.com/v1",
            "model": "gpt-4o-mini",
            "temperature": 0.0,
            "timeout_s": 60.0,
            "prompts_dir": None,
        }
    )

    # -- construction helpers -------------------------------------------------

    def build_tariffs(self) -> dict[str, TariffSchedule]:
        return {
            tariff_id: TariffSchedule(
                tuple(
                    TariffBand(
                        start=int(b["start"]),
                        end=int(b["end"]),
                        price_per_kwh=float(b["price_per_kwh"]),
                        label=str(b.get("label", "")),
                    )
                    for b in bands
                )
            )
            for tariff_id, bands in self.tariffs.items()
        }

    def build_stations(self) -> dict[str, ChargingStation]:
        stations = {}
        for spec in self.stations:
            station = ChargingStation(
                station_id=str(spec["station_id"]),
                location=GeoPoint(float(spec["latitude"]), float(spec["longitude"])),
                pile_count=int(spec["pile_count"]),
                pile_power_kw=float(spec["pile_power_kw"]),
                tariff_id=str(spec["tariff_id"]),
            )
            stations[station.station_id] = station
        return stations

    def build_congestion(self) -> CongestionSchedule:
        return CongestionSchedule(
            tuple(
                SpeedBand(int(b["start"]), int(b["end"]), float(b["multiplier"]))
                for b in self.congestion_bands
            )
        )

    def build_router(self) -> OfflineRouter:
        return OfflineRouter(detour_factor=self.detour_factor, speed_kmh=self.base_speed_kmh)

    def build_live_settings(self) -> LiveSettings:
        return LiveSettings(
            base_url=str(self.live.get("base_url", "https://api.openai.com/v1")),
            model=str(self.live.get("model", "gpt-4o-mini")),
            api_key=self.live.get("api_key"),
            temperature=float(self.live.get("temperature", 0.0)),
            timeout_s=float(self.live.get("timeout_s", 60.0)),
            prompts_dir=self.live.get("prompts_dir"),
        )

    def effective_plan_template(self) -> dict:
        """Plan template with routing parameters kept in sync with the scenario."""
        template = dict(DEFAULT_PLAN_TEMPLATE)
        template.update(self.plan_template)
        template["detour_factor"] = self.detour_factor
        template["speed_kmh"] = self.base_speed_kmh
        return template

    # -- validation -------------------------------------------------------------

    def validate(self) -> list[str]:
        """Collect every configuration problem; an empty list means runnable."""
        problems: list[str] = []
        if self.num_agents < 1:
            problems.append("num_agents must be >= 1")
        if self.horizon_days < 1:
            problems.append("horizon_days must be >= 1")
        if self.provider not in ("mock", "live"):
            problems.append(f"provider must be 'mock' or 'live', got {self.provider!r}")
        if self.station_radius_km <= 0:
            problems.append("station_radius_km must be > 0")
        if self.detour_factor < 1.0:
            problems.append("detour_factor must be >= 1")
        if self.base_speed_kmh <= 0:
            problems.append("base_speed_kmh must be > 0")
        for key in ("distance", "price", "wait"):
            if float(self.baseline_weights.get(key, -1.0)) < 0.0:
                problems.append(f"baseline_weights.{key} must be >= 0")

        capacities = [float(c) for c in self.persona_template.get(
            "battery_capacity_choices", DEFAULT_PERSONA_TEMPLATE["battery_capacity_choices"]
        )]
        if not capacities:
            problems.append("persona_template.battery_capacity_choices must be non-empty")
        elif not 0.0 <= self.initial_soc_kwh <= min(capacities):
            problems.append(
                f"initial_soc_kwh {self.initial_soc_kwh} outside [0, {min(capacities)}]"
            )

        tariffs: dict[str, TariffSchedule] = {}
        try:
            tariffs = self.build_tariffs()
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"tariffs invalid: {exc}")
        try:
            stations = self.build_stations()
            if len(stations) != len(self.stations):
                problems.append("station_id values must be unique")
            for station in stations.values():
                if tariffs and station.tariff_id not in tariffs:
                    problems.append(
                        f"station {station.station_id} references unknown tariff "
                        f"{station.tariff_id!r}"
                    )
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"stations invalid: {exc}")
        try:
            self.build_congestion()
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"congestion_bands invalid: {exc}")
        return problems

    # -- serialization ------------------------------------------------------------

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
        return cls(**data)

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=True, default_flow_style=False)


def load_config(path: Path | str) -> ScenarioConfig:
    """Load a YAML scenario file; missing keys fall back to the defaults."""
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ValueError("configuration file must contain a mapping")
    return ScenarioConfig.from_dict(data)
