"""Task execution and report rendering."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .annihilation import annihilation_table, check_rep, default_sample
from .classify import DEFAULT_DEGREE_BOUND, classify_rank_one
from .core import AlgebraPresentation, Residual, center_candidates, check_jacobi, check_skew, nonzero
from .dsl import TaskDecl, Workspace
from .expr import parse_fraction
from .extensions import NoReduction, check_cocycle, reduce_extension
from .modules import FreeModulePresentation, ModuleMorphism, TorsionModule, check_module_axioms, check_morphism
from .polyring import render

STATUSES = ("pass", "fail", "no-reduction", "solution-space")
MAX_LISTED = 10


@dataclass
class Entry:
    task: str
    status: str
    payload: object = field(default_factory=dict)
    millis: int = 0
    expected: str | None = None

    @property
    def ok(self) -> bool:
        if self.expected is not None:
            return self.status == self.expected
        return self.status != "fail"

    def to_dict(self) -> dict:
        return {"task": self.task, "status": self.status, "payload": self.payload, "millis": self.millis}


@dataclass
class Config:
    degree_bound: int = DEFAULT_DEGREE_BOUND
    max_index: int = 10
    timings: bool = False

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        cfg = cls()
        env = os.environ.get("LCAC_DEGREE_BOUND")
        if env:
            cfg.degree_bound = int(env)
        for k, v in overrides.items():
            if v is not None:
                setattr(cfg, k, v)
        return cfg


def residual_payload(residuals: Sequence[Residual]) -> dict:
    bad = nonzero(residuals)
    return {
        "checked": len(residuals),
        "nonzero": len(bad),
        "witnesses": [
            {"at": " ".join(r.where), "value": [render(p) for p in r.value]} for r in bad[:MAX_LISTED]
        ],
    }


def _residual_entry(label: str, residuals) -> Entry:
    payload = residual_payload(residuals)
    return Entry(label, "fail" if payload["nonzero"] else "pass", payload)


def timed(entry_fn: Callable[[], Entry], timings: bool) -> Entry:
    start = time.perf_counter()
    entry = entry_fn()
    if timings:
        entry.millis = int(round((time.perf_counter() - start) * 1000))
    return entry


# -- task kinds ------------------------------------------------------------


def _bindings(task: TaskDecl) -> dict:
    return {k: parse_fraction(v) for k, v in task.bindings().items()}


def _specialized(obj, task: TaskDecl):
    b = _bindings(task)
    return obj.specialize(b) if b and hasattr(obj, "specialize") else obj


def _need(obj, kinds, task: TaskDecl):
    if not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in (kinds if isinstance(kinds, tuple) else (kinds,)))
        raise TaskError(f"{task.target} is not a {names}")
    return obj


class TaskError(ValueError):
    pass


def run_task(ws: Workspace, task: TaskDecl, cfg: Config) -> Entry:
    def go() -> Entry:
        try:
            entry = _dispatch(ws, task, cfg)
        except TaskError as exc:
            entry = Entry(task.label, "fail", {"error": str(exc)})
        entry.expected = task.option("expect")
        if entry.expected is not None and isinstance(entry.payload, dict):
            entry.payload = dict(entry.payload, expected=entry.expected)
        return entry

    return timed(go, cfg.timings)


def _dispatch(ws: Workspace, task: TaskDecl, cfg: Config) -> Entry:
    obj = _specialized(ws.get(task.target), task)
    kind = task.kind
    label = task.label
    degree = int(task.option("degree", cfg.degree_bound))
    if kind == "check_skew":
        return _residual_entry(label, check_skew(_need(obj, AlgebraPresentation, task)))
    if kind == "check_jacobi":
        return _residual_entry(label, check_jacobi(_need(obj, AlgebraPresentation, task)))
    if kind == "check_algebra":
        P = _need(obj, AlgebraPresentation, task)
        return _residual_entry(label, check_skew(P) + check_jacobi(P))
    if kind == "check_module":
        return _residual_entry(label, check_module_axioms(_need(obj, (FreeModulePresentation, TorsionModule), task)))
    if kind == "check_morphism":
        return _residual_entry(label, check_morphism(_need(obj, ModuleMorphism, task)))
    if kind == "check_cocycle":
        if task.target not in ws.extension_parts:
            raise TaskError(f"{task.target} is not an extension")
        P, M, C = ws.extension_parts[task.target]
        b = _bindings(task)
        if b:
            P, M = P.specialize(b), M.specialize(b)
            C = type(C)(*(q.specialize(b) for q in (C.Q1, C.Q2, C.Q3)))
        return _residual_entry(label, check_cocycle(P, M, C))
    if kind == "check_rep":
        M = _need(obj, FreeModulePresentation, task)
        max_index = int(task.option("max_index", cfg.max_index))
        return _residual_entry(label, check_rep(M, default_sample(M, max_index)))
    if kind == "classify":
        P = _need(obj, AlgebraPresentation, task)
        if P.parameters():
            raise TaskError(f"bind parameters {sorted(P.parameters())} to classify")
        try:
            families = classify_rank_one(P, degree)
        except ValueError as exc:
            raise TaskError(str(exc)) from exc
        return Entry(label, "solution-space", {"degree_bound": degree, "families": [f.to_dict() for f in families]})
    if kind == "reduce":
        E = _need(obj, AlgebraPresentation, task)
        shift = task.option("shift")
        if shift is None:
            raise TaskError("reduce needs shift=GEN")
        try:
            result = reduce_extension(E, shift, degree, task.option("ideal"))
        except (KeyError, ValueError) as exc:
            raise TaskError(str(exc)) from exc
        status = "no-reduction" if isinstance(result, NoReduction) else "pass"
        return Entry(label, status, result.to_dict())
    if kind == "center":
        P = _need(obj, AlgebraPresentation, task)
        space = center_candidates(P, degree)
        payload = {"degree_bound": degree, "dimension": space.dimension, "space": space.to_dict()}
        return Entry(label, "solution-space", payload)
    if kind == "annihilation":
        P = _need(obj, AlgebraPresentation, task)
        max_index = int(task.option("max_index", cfg.max_index))
        return Entry(label, "pass", {"max_index": max_index, "rows": table_rows(P, max_index)})
    raise TaskError(f"unsupported task kind {kind!r}")


def table_rows(P: AlgebraPresentation, max_index: int) -> list[str]:
    return [f"[{a}_({m}), {b}_({n})] = {value.render()}" for a, m, b, n, value in annihilation_table(P, max_index)]


def run_document(ws: Workspace, cfg: Config, tasks: Iterable[TaskDecl] | None = None) -> list[Entry]:
    tasks = ws.document.tasks if tasks is None else tasks
    return [run_task(ws, t, cfg) for t in tasks]


def default_tasks(ws: Workspace) -> list[TaskDecl]:
    """Checks implied by the declarations when a document has no tasks."""
    out = []
    for name, obj in ws.objects.items():
        if name in ws.extension_parts:
            out.append(TaskDecl("check_cocycle", name))
        elif isinstance(obj, AlgebraPresentation):
            out.append(TaskDecl("check_algebra", name))
        elif isinstance(obj, (FreeModulePresentation, TorsionModule)):
            out.append(TaskDecl("check_module", name))
        elif isinstance(obj, ModuleMorphism):
            out.append(TaskDecl("check_morphism", name))
    return out


# -- rendering -------------------------------------------------------------


def emit_json(entries: Sequence[Entry]) -> str:
    return json.dumps([e.to_dict() for e in entries], indent=2, sort_keys=True, default=str) + "\n"


def emit_text(entries: Sequence[Entry]) -> str:
    lines = []
    for e in entries:
        mark = "ok " if e.ok else "BAD"
        timing = f"  ({e.millis} ms)" if e.millis else ""
        lines.append(f"{mark} {e.status:<14} {e.task}{timing}")
        lines.extend("    " + line for line in _payload_lines(e.payload))
    return "\n".join(lines) + ("\n" if lines else "")


def _payload_lines(payload) -> list[str]:
    if not isinstance(payload, dict):
        return [str(payload)]
    out = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, list):
            if not value:
                continue
            out.append(f"{key}:")
            for item in value:
                if isinstance(item, dict):
                    out.append("  - " + ", ".join(f"{k}={_short(v)}" for k, v in sorted(item.items())))
                else:
                    out.append(f"  - {item}")
        elif isinstance(value, dict):
            out.append(f"{key}: " + ", ".join(f"{k}={_short(v)}" for k, v in sorted(value.items())))
        else:
            out.append(f"{key}: {value}")
    return out


def _short(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_short(x)}" for k, x in sorted(v.items())) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    return str(v)
