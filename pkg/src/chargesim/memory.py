"""Rolling behavior memory with append-only persistence.

Each agent owns one store holding its behavior records plus end-of-day
reflections. Retrieval is window-based: the short horizon covers the last
three days, the long horizon the last seven, both as half-open intervals
(now - window, now]. Persistence is a JSON-lines log, one entry per line,
replayed verbatim on load so a reloaded store compares equal to the
original.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import IO, Literal

from .domain import MINUTES_PER_DAY, BehaviorRecord, ReflectionReport, SimClock

SHORT_WINDOW_DAYS = 3
LONG_WINDOW_DAYS = 7


class OutOfOrderError(ValueError):
    """Raised when an append would move a store's timeline backwards."""


class MemoryStore:
    """Append-only behavior and reflection memory for a single agent.

    Pass a log path to persist every append before it returns; pass None
    for a purely in-memory store (unit tests, scratch work).
    """

    def __init__(self, log_path: Path | str | None = None, fsync: bool = False):
        self.records: list[BehaviorRecord] = []
        self.reflections: list[ReflectionReport] = []
        self._log_path = Path(log_path) if log_path is not None else None
        self._fsync = fsync
        self._fh: IO[str] | None = None
        if self._log_path is not None:
            self._log_path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = self._log_path.open("a", encoding="utf-8")

    def append(self, record: BehaviorRecord) -> None:
        """Add a record; timestamps must be non-decreasing, ties keep insertion order."""
        if self.records and record.timestamp < self.records[-1].timestamp:
            raise OutOfOrderError(
                f"record at t={record.timestamp} after t={self.records[-1].timestamp}"
            )
        self.records.append(record)
        self._write({"type": "behavior", "data": record.to_dict()})

    def append_reflection(self, report: ReflectionReport) -> None:
        if self.reflections and report.day_index < self.reflections[-1].day_index:
            raise OutOfOrderError(
                f"reflection for day {report.day_index} after day {self.reflections[-1].day_index}"
            )
        self.reflections.append(report)
        self._write({"type": "reflection", "data": report.to_dict()})

    def retrieve(self, clock: SimClock, horizon: Literal["short", "long"]) -> list[BehaviorRecord]:
        """Records within the horizon window (now - days*1440, now], order preserved."""
        if horizon == "short":
            days = SHORT_WINDOW_DAYS
        elif horizon == "long":
            days = LONG_WINDOW_DAYS
        else:
            raise ValueError(f"horizon must be 'short' or 'long', got {horizon!r}")
        cutoff = clock.sim_time - days * MINUTES_PER_DAY
        return [r for r in self.records if cutoff < r.timestamp <= clock.sim_time]

    def daily_aggregates(self, clock: SimClock) -> list[dict]:
        """Per-day charging summaries over the long window: count, kWh, mean price.

        Derived on demand from start_charging records, never stored; meant to
        keep long-horizon prompt payloads compact.
        """
        buckets: dict[int, dict] = {}
        for record in self.retrieve(clock, "long"):
            if record.action.value != "start_charging" or not record.quintuple.decision:
                continue
            day = record.timestamp // MINUTES_PER_DAY
            bucket = buckets.setdefault(
                day, {"day_index": day, "charge_count": 0, "total_kwh": 0.0, "_price_sum": 0.0}
            )
            bucket["charge_count"] += 1
            bucket["total_kwh"] += record.quintuple.amount_kwh
            bucket["_price_sum"] += record.quintuple.price_per_kwh
        out = []
        for day in sorted(buckets):
            bucket = buckets[day]
            price_sum = bucket.pop("_price_sum")
            bucket["mean_price_per_kwh"] = price_sum / bucket["charge_count"]
            out.append(bucket)
        return out

    @classmethod
    def load(cls, log_path: Path | str, fsync: bool = False) -> "MemoryStore":
        """Rebuild a store by replaying its log; the result equals the original."""
        path = Path(log_path)
        store = cls.__new__(cls)
        store.records = []
        store.reflections = []
        store._log_path = path
        store._fsync = fsync
        store._fh = None
        if path.exists():
            with path.open("r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    entry = json.loads(line)
                    if entry["type"] == "behavior":
                        store.records.append(BehaviorRecord.from_dict(entry["data"]))
                    elif entry["type"] == "reflection":
                        store.reflections.append(ReflectionReport.from_dict(entry["data"]))
                    else:
                        raise ValueError(f"unknown memory log entry type {entry['type']!r}")
        store._fh = path.open("a", encoding="utf-8")
        return store

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def _write(self, entry: dict) -> None:
        if self._fh is None:
            return
        self._fh.write(json.dumps(entry, sort_keys=True, separators=(",", ":")) + "\n")
        self._fh.flush()
        if self._fsync:
            os.fsync(self._fh.fileno())

    def __enter__(self) -> "MemoryStore":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()
