"""Instance and schedule documents: integer-only JSON, deterministic bytes.

Instance document: ``{"m": int, "d": int, "jobs": [int, ...]}``.
Schedule document: ``{"assignment": [machine per job], "loads": [...],
"early_work_total": int, "algorithm": str, "parameters": {...}}``.
Exact fractions (accuracy parameters) travel as ``"P/Q"`` strings, never as
floats.  Dumps are key-sorted with a trailing newline so identical content
is byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import ValidationError
from .instance import Instance, Schedule

__all__ = [
    "dumps_canonical",
    "instance_to_doc",
    "instance_from_doc",
    "read_instance",
    "write_instance",
    "schedule_to_doc",
    "read_schedule_doc",
    "write_schedule",
]


def dumps_canonical(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def instance_to_doc(instance: Instance) -> dict:
    return {"m": instance.machine_count, "d": instance.due_date, "jobs": list(instance.jobs)}


def _require_int(doc: dict, key: str) -> int:
    if key not in doc:
        raise ValidationError(f"instance document is missing field {key!r}")
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise ValidationError(f"instance field {key!r} must be an integer, got {v!r}")
    return v


def instance_from_doc(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise ValidationError("instance document must be a JSON object")
    m = _require_int(doc, "m")
    d = _require_int(doc, "d")
    if m < 1:
        raise ValidationError("instance field 'm' must be at least 1")
    jobs = doc.get("jobs")
    if not isinstance(jobs, list):
        raise ValidationError("instance field 'jobs' must be an array of positive integers")
    for p in jobs:
        if not isinstance(p, int) or isinstance(p, bool) or p < 1:
            raise ValidationError(f"instance job sizes must be positive integers, got {p!r}")
    return Instance(jobs=tuple(jobs), machine_count=m, due_date=d)


def read_instance(path: str | Path) -> Instance:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read instance file {path}: {exc}") from exc
    return instance_from_doc(doc)


def write_instance(path: str | Path, instance: Instance) -> None:
    Path(path).write_text(dumps_canonical(instance_to_doc(instance)))


def schedule_to_doc(schedule: Schedule, algorithm: str, parameters: dict) -> dict:
    return {
        "assignment": list(schedule.assignment),
        "loads": list(schedule.machine_loads),
        "early_work_total": schedule.early_work_total,
        "algorithm": algorithm,
        "parameters": parameters,
    }


def read_schedule_doc(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read schedule file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("schedule document must be a JSON object")
    for key in ("assignment", "loads", "early_work_total"):
        if key not in doc:
            raise ValidationError(f"schedule document is missing field {key!r}")
    return doc


def write_schedule(path: str | Path, schedule: Schedule, algorithm: str, parameters: dict) -> None:
    Path(path).write_text(dumps_canonical(schedule_to_doc(schedule, algorithm, parameters)))
