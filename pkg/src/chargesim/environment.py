"""Physical world state: EV batteries, charging stations, time-of-use tariffs.

Stations hand out reservations under strict FIFO: a charge request is
assigned to the pile that frees up earliest, so each pile's committed
schedule (busy_until) always reflects every accepted job. Charging runs at
constant power; durations round up to whole minutes to match the integer
clock. Costs apportion the delivered energy uniformly across the charging
window and price each slice by the tariff band it falls in.

All mutation happens single-threaded inside the engine's event loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .domain import MINUTES_PER_DAY, GeoPoint, SimClock
from .georoute import OfflineRouter


class StrandedError(Exception):
    """Raised when a movement would require more energy than the battery holds.

    The state of charge is left untouched; the caller decides how to report
    and recover from the rejected event.
    """

    def __init__(self, agent_id: str, required_kwh: float, available_kwh: float):
        super().__init__(
            f"{agent_id} needs {required_kwh:.3f} kWh but only {available_kwh:.3f} kWh remain"
        )
        self.agent_id = agent_id
        self.required_kwh = required_kwh
        self.available_kwh = available_kwh


class ZeroChargeError(Exception):
    """Raised when a charge is requested for an already-full battery."""


class EvStatus(str, Enum):
    IDLE = "idle"
    DRIVING = "driving"
    QUEUED = "queued"
    CHARGING = "charging"


@dataclass(frozen=True)
class EvState:
    """Battery and position of one vehicle.

    Carries its own capacity and charging limit (copied from the owning
    persona) so the SoC invariant is checkable without a persona lookup.
    """

    agent_id: str
    location: GeoPoint
    soc_kwh: float
    status: EvStatus
    capacity_kwh: float
    max_charge_power_kw: float

    def __post_init__(self) -> None:
        if self.capacity_kwh <= 0.0:
            raise ValueError("capacity_kwh must be > 0")
        if self.max_charge_power_kw <= 0.0:
            raise ValueError("max_charge_power_kw must be > 0")
        if not 0.0 <= self.soc_kwh <= self.capacity_kwh:
            raise ValueError(
                f"soc_kwh {self.soc_kwh} outside [0, {self.capacity_kwh}] for {self.agent_id}"
            )

    @property
    def soc_fraction(self) -> float:
        return self.soc_kwh / self.capacity_kwh


def consume_energy(ev: EvState, distance_km: float, rate_kwh_per_km: float) -> EvState:
    """Drain the battery for a trip of distance_km; location is the caller's job.

    Raises StrandedError when the trip needs more than the battery holds;
    the SoC is never clamped.
    """
    if distance_km < 0.0:
        raise ValueError("distance_km must be >= 0")
    if rate_kwh_per_km <= 0.0:
        raise ValueError("rate_kwh_per_km must be > 0")
    required = distance_km * rate_kwh_per_km
    if required > ev.soc_kwh:
        raise StrandedError(ev.agent_id, required, ev.soc_kwh)
    return replace(ev, soc_kwh=ev.soc_kwh - required)


# ---------------------------------------------------------------------------
# Tariffs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TariffBand:
    start: int  # time-of-day minutes, inclusive
    end: int  # exclusive
    price_per_kwh: float
    label: str = ""

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end <= MINUTES_PER_DAY:
            raise ValueError(f"band [{self.start}, {self.end}) must sit within [0, 1440)")
        if self.price_per_kwh < 0.0:
            raise ValueError("price_per_kwh must be >= 0")


@dataclass(frozen=True)
class TariffSchedule:
    """Time-of-use prices; the bands must partition [0, 1440) exactly."""

    bands: tuple[TariffBand, ...]

    def __post_init__(self) -> None:
        if not self.bands:
            raise ValueError("tariff needs at least one band")
        ordered = sorted(self.bands, key=lambda band: band.start)
        if ordered[0].start != 0:
            raise ValueError("tariff bands must start at minute 0")
        for earlier, later in zip(ordered, ordered[1:]):
            if earlier.end != later.start:
                raise ValueError(
                    f"tariff bands must tile the day: [{earlier.start},{earlier.end}) then "
                    f"[{later.start},{later.end})"
                )
        if ordered[-1].end != MINUTES_PER_DAY:
            raise ValueError("tariff bands must end at minute 1440")
        object.__setattr__(self, "bands", tuple(ordered))

    @property
    def min_price(self) -> float:
        return min(band.price_per_kwh for band in self.bands)

    def is_off_peak(self, time_of_day: int) -> bool:
        """Off-peak means the current band has the schedule's lowest price."""
        return price_at(self, time_of_day) == self.min_price


def price_at(tariff: TariffSchedule, time_of_day: int) -> float:
    """Price of the unique band containing time_of_day (bands are [start, end))."""
    if not 0 <= time_of_day < MINUTES_PER_DAY:
        raise ValueError(f"time_of_day must be within [0, 1440), got {time_of_day}")
    for band in tariff.bands:
        if band.start <= time_of_day < band.end:
            return band.price_per_kwh
    raise AssertionError("bands partition the day; unreachable")


def charge_cost(start: int, end: int, energy_kwh: float, tariff: TariffSchedule) -> float:
    """Cost of delivering energy_kwh uniformly over the window [start, end).

    Times are absolute simulation minutes; windows may wrap any number of
    midnights. Each band is charged for its overlap with the window at the
    uniform per-minute energy rate.
    """
    if end < start:
        raise ValueError("end must be >= start")
    if energy_kwh < 0.0:
        raise ValueError("energy_kwh must be >= 0")
    if energy_kwh == 0.0 or end == start:
        return 0.0
    duration = end - start
    kwh_per_minute = energy_kwh / duration
    total = 0.0
    for day in range(start // MINUTES_PER_DAY, (end - 1) // MINUTES_PER_DAY + 1):
        base = day * MINUTES_PER_DAY
        window_lo = max(start, base)
        window_hi = min(end, base + MINUTES_PER_DAY)
        for band in tariff.bands:
            overlap_lo = max(window_lo, base + band.start)
            overlap_hi = min(window_hi, base + band.end)
            if overlap_hi > overlap_lo:
                total += (overlap_hi - overlap_lo) * kwh_per_minute * band.price_per_kwh
    return total


# ---------------------------------------------------------------------------
# Charging stations
# ---------------------------------------------------------------------------


@dataclass
class ChargingStation:
    station_id: str
    location: GeoPoint
    pile_count: int
    pile_power_kw: float
    tariff_id: str
    busy_until: list[int] = field(default_factory=list)  # absolute minutes, one per pile
    queue: list[tuple[str, int]] = field(default_factory=list)  # (agent_id, enqueue_time)

    def __post_init__(self) -> None:
        if self.pile_count < 1:
            raise ValueError("pile_count must be >= 1")
        if self.pile_power_kw <= 0.0:
            raise ValueError("pile_power_kw must be > 0")
        if not self.busy_until:
            self.busy_until = [0] * self.pile_count
        if len(self.busy_until) != self.pile_count:
            raise ValueError("busy_until must have one entry per pile")

    def free_piles(self, now: int) -> int:
        return sum(1 for t in self.busy_until if t <= now)

    def predicted_wait(self, now: int) -> int:
        """Minutes until a pile frees up for a newcomer, given current commitments.

        Optimistic FIFO: only jobs already accepted count, future arrivals do
        not. Zero whenever any pile is free.
        """
        return max(0, min(self.busy_until) - now)

    def release_queued(self, agent_id: str) -> None:
        self.queue = [entry for entry in self.queue if entry[0] != agent_id]

    def check_queue_order(self) -> None:
        times = [enqueue for _, enqueue in self.queue]
        if times != sorted(times):
            raise AssertionError(f"{self.station_id} queue out of FIFO order: {self.queue}")


@dataclass(frozen=True)
class ChargeTicket:
    """The committed outcome of one accepted charge request."""

    start_wait: int
    start_charge: int
    end_charge: int
    energy_kwh: float
    power_kw: float
    cost: float

    def __post_init__(self) -> None:
        if not self.start_wait <= self.start_charge <= self.end_charge:
            raise ValueError("ticket times must be ordered: wait <= start <= end")
        if self.energy_kwh < 0.0 or self.power_kw <= 0.0 or self.cost < 0.0:
            raise ValueError("ticket energy, power and cost must be non-negative")


def begin_charge(
    station: ChargingStation,
    ev: EvState,
    target_kwh: float,
    clock: SimClock,
    tariff: TariffSchedule,
) -> ChargeTicket:
    """Reserve a pile for ev and commit to a charging window.

    The delivered energy clamps at remaining headroom, power at the lesser
    of pile and vehicle limits, and the duration rounds up to whole minutes.
    The earliest-freeing pile is taken (lowest index on ties), so FIFO order
    over successive calls is guaranteed by construction.
    """
    if target_kwh <= 0.0:
        raise ValueError("target_kwh must be > 0")
    headroom = ev.capacity_kwh - ev.soc_kwh
    if headroom <= 0.0:
        raise ZeroChargeError(f"{ev.agent_id} battery already full at {ev.soc_kwh} kWh")
    energy_kwh = min(target_kwh, headroom)
    power_kw = min(station.pile_power_kw, ev.max_charge_power_kw)
    duration = math.ceil(energy_kwh / power_kw * 60.0)

    arrival = clock.sim_time
    pile = min(range(station.pile_count), key=lambda i: station.busy_until[i])
    start_charge = max(arrival, station.busy_until[pile])
    end_charge = start_charge + duration
    station.busy_until[pile] = end_charge
    if start_charge > arrival:
        station.queue.append((ev.agent_id, arrival))

    cost = charge_cost(start_charge, end_charge, energy_kwh, tariff)
    return ChargeTicket(
        start_wait=arrival,
        start_charge=start_charge,
        end_charge=end_charge,
        energy_kwh=energy_kwh,
        power_kw=power_kw,
        cost=cost,
    )


# ---------------------------------------------------------------------------
# Congestion schedule and the aggregate environment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpeedBand:
    start: int
    end: int
    multiplier: float

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end <= MINUTES_PER_DAY:
            raise ValueError("speed band must sit within [0, 1440)")
        if self.multiplier <= 0.0:
            raise ValueError("speed multiplier must be > 0")


@dataclass(frozen=True)
class CongestionSchedule:
    """Per-time-of-day speed multipliers standing in for live traffic data."""

    bands: tuple[SpeedBand, ...]

    def __post_init__(self) -> None:
        ordered = sorted(self.bands, key=lambda band: band.start)
        if not ordered or ordered[0].start != 0 or ordered[-1].end != MINUTES_PER_DAY:
            raise ValueError("speed bands must tile [0, 1440)")
        for earlier, later in zip(ordered, ordered[1:]):
            if earlier.end != later.start:
                raise ValueError("speed bands must tile [0, 1440) without gaps or overlaps")
        object.__setattr__(self, "bands", tuple(ordered))

    def multiplier_at(self, time_of_day: int) -> float:
        for band in self.bands:
            if band.start <= time_of_day < band.end:
                return band.multiplier
        raise AssertionError("speed bands partition the day; unreachable")


FREE_FLOW = CongestionSchedule((SpeedBand(0, MINUTES_PER_DAY, 1.0),))


@dataclass
class Environment:
    """Everything physical the agents share: vehicles, stations, tariffs, roads."""

    stations: dict[str, ChargingStation]
    tariffs: dict[str, TariffSchedule]
    router: OfflineRouter
    congestion: CongestionSchedule = FREE_FLOW
    evs: dict[str, EvState] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for station in self.stations.values():
            if station.tariff_id not in self.tariffs:
                raise ValueError(
                    f"station {station.station_id} references unknown tariff {station.tariff_id!r}"
                )

    def tariff_for(self, station: ChargingStation) -> TariffSchedule:
        return self.tariffs[station.tariff_id]

    def speed_multiplier(self, time_of_day: int) -> float:
        return self.congestion.multiplier_at(time_of_day)

    def station_price_now(self, station: ChargingStation, clock: SimClock) -> float:
        return price_at(self.tariff_for(station), clock.time_of_day)
