"""Run configuration: a single JSON document with flat, dotted keys.

    {"seed": 42, "landscape": "sphere", "dim": 10, "iterations": 200,
     "engine.inertia_max": 0.9, "review.beta": 0.0, "lifecycle.population_cap": 64}

Nested objects are accepted too and flattened (``{"review": {"beta": 0.1}}``
is ``review.beta``). Unknown keys and duplicates are rejected.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field, replace
from typing import Any, Mapping

from .behaviors import CATALOG, BehaviorCatalog
from .engine import SwarmParams
from .errors import ParseError, UnknownLandscape, ValidationError
from .landscape import LANDSCAPES, Landscape, make_landscape
from .lifecycle import LifecycleParams
from .metrics import default_link_threshold
from .review import MODES


@dataclass(frozen=True)
class ReviewParams:
    reviewers: int = 20
    vote_budget: int = 2
    beta: float = 0.0
    noise: float = 0.05
    decay: float = 0.9
    cap: float = 0.3
    cap_enabled: bool = False

    def problems(self, population_cap: int) -> list[tuple[str, str]]:
        out = []
        if self.reviewers < 1:
            out.append(("review.reviewers", "must be >= 1"))
        if self.vote_budget < 1:
            out.append(("review.vote_budget", "must be >= 1"))
        if not 0.0 <= self.beta <= 1.0:
            out.append(("review.beta", "must lie in [0, 1]"))
        if self.noise < 0:
            out.append(("review.noise", "must be >= 0"))
        if not 0.0 <= self.decay <= 1.0:
            out.append(("review.decay", "must lie in [0, 1]"))
        if not 1.0 / population_cap < self.cap <= 1.0:
            out.append(("review.cap", f"must lie in (1/population_cap, 1] = ({1.0 / population_cap:.6g}, 1]"))
        return out


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    iterations: int = 200
    landscape: str = "sphere"
    dim: int = 10
    mode: str = "reference"
    reference: bool = True
    behavior: str = "default"
    link_threshold: float | None = None
    output_dir: str | None = None
    engine: SwarmParams = field(default_factory=SwarmParams)
    lifecycle: LifecycleParams = field(default_factory=LifecycleParams)
    review: ReviewParams = field(default_factory=ReviewParams)

    def make_landscape(self) -> Landscape:
        land = make_landscape(self.landscape, self.dim)
        return land if self.reference else land.without_reference()

    def to_flat(self, with_output: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for key, (section, attr) in _KEYS.items():
            if key == "output_dir" and not with_output:
                continue
            obj = self if section is None else getattr(self, section)
            out[key] = getattr(obj, attr)
        return out


# flat key -> (RunConfig section or None, attribute)
_KEYS: dict[str, tuple[str | None, str]] = {
    "seed": (None, "seed"),
    "iterations": (None, "iterations"),
    "landscape": (None, "landscape"),
    "dim": (None, "dim"),
    "mode": (None, "mode"),
    "landscape.reference": (None, "reference"),
    "lab.behavior": (None, "behavior"),
    "metrics.link_threshold": (None, "link_threshold"),
    "output_dir": (None, "output_dir"),
}
for _section, _cls in (("engine", SwarmParams), ("lifecycle", LifecycleParams), ("review", ReviewParams)):
    for _f in dataclasses.fields(_cls):
        _KEYS[f"{_section}.{_f.name}"] = (_section, _f.name)

_INT_KEYS = {"seed", "iterations", "dim", "engine.archive_capacity", "lifecycle.initial_budget",
             "lifecycle.max_budget", "lifecycle.population_cap", "lifecycle.initial_population",
             "review.reviewers", "review.vote_budget"}
_BOOL_KEYS = {"landscape.reference", "review.cap_enabled"}
_STR_KEYS = {"landscape", "mode", "lab.behavior", "output_dir"}
_NULLABLE = {"engine.v_max", "engine.explore_scale", "lifecycle.spawn_scale", "metrics.link_threshold",
             "output_dir"}


def _reject_duplicates(pairs):
    seen = {}
    for k, v in pairs:
        if k in seen:
            raise ParseError(f"duplicate key {k!r}")
        seen[k] = v
    return seen


def _flatten(doc: Mapping[str, Any], prefix: str = "") -> dict[str, Any]:
    out: dict[str, Any] = {}
    for k, v in doc.items():
        key = f"{prefix}{k}"
        if isinstance(v, Mapping):
            items = _flatten(v, key + ".")
        else:
            items = {key: v}
        for fk, fv in items.items():
            if fk in out:
                raise ParseError(f"duplicate key {fk!r}")
            out[fk] = fv
    return out


def parse_document(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    if not isinstance(doc, dict):
        raise ParseError("configuration must be a JSON object")
    return _flatten(doc)


def _coerce(key: str, value: Any) -> Any:
    if value is None and key in _NULLABLE:
        return None
    if key in _BOOL_KEYS:
        if not isinstance(value, bool):
            raise ValidationError(key, "expected true or false")
        return value
    if key in _STR_KEYS:
        if not isinstance(value, str):
            raise ValidationError(key, "expected a string")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(key, "expected a number")
    if key in _INT_KEYS:
        if isinstance(value, float) and not value.is_integer():
            raise ValidationError(key, "expected an integer")
        return int(value)
    return float(value)


def load_config(document: str | Mapping[str, Any], catalog: BehaviorCatalog = CATALOG) -> RunConfig:
    """Parse, apply defaults, validate and resolve landscape-relative defaults."""
    flat = parse_document(document) if isinstance(document, str) else _flatten(document)
    sections: dict[str | None, dict[str, Any]] = {None: {}, "engine": {}, "lifecycle": {}, "review": {}}
    for key, value in flat.items():
        if key not in _KEYS:
            raise ValidationError(key, "unknown configuration key")
        section, attr = _KEYS[key]
        sections[section][attr] = _coerce(key, value)

    cfg = RunConfig(
        **sections[None],
        engine=SwarmParams(**sections["engine"]),
        lifecycle=LifecycleParams(**sections["lifecycle"]),
        review=ReviewParams(**sections["review"]),
    )
    _validate(cfg, catalog)

    land = make_landscape(cfg.landscape, cfg.dim)
    engine = cfg.engine.resolved(land.width)
    threshold = cfg.link_threshold
    if threshold is None:
        threshold = default_link_threshold(engine.explore_scale, cfg.dim)
    return replace(cfg, engine=engine, lifecycle=cfg.lifecycle.resolved(land.width), link_threshold=threshold)


def _validate(cfg: RunConfig, catalog: BehaviorCatalog) -> None:
    if not 0 <= cfg.seed < 2**64:
        raise ValidationError("seed", "must be a 64-bit unsigned integer")
    if cfg.iterations < 1:
        raise ValidationError("iterations", "must be >= 1")
    if cfg.dim < 1:
        raise ValidationError("dim", "must be >= 1")
    if cfg.landscape not in LANDSCAPES:
        raise ValidationError("landscape", f"unknown landscape, choose from {', '.join(LANDSCAPES)}")
    try:
        land = cfg.make_landscape()
    except UnknownLandscape as exc:  # pragma: no cover - checked above
        raise ValidationError("landscape", str(exc)) from exc
    if cfg.mode not in MODES:
        raise ValidationError("mode", f"must be one of {', '.join(MODES)}")
    if cfg.mode == "multi_objective" and land.objective_count < 2:
        raise ValidationError("mode", "multi_objective needs a landscape with at least two objectives")
    if cfg.mode != "multi_objective" and land.objective_count != 1:
        raise ValidationError("mode", f"{cfg.mode} mode needs a single-objective landscape")
    if cfg.mode == "reference" and land.optimum is None:
        raise ValidationError("landscape.reference", "reference mode needs a landscape with a reference solution")
    if cfg.behavior not in catalog:
        raise ValidationError("lab.behavior", f"unregistered behavior {cfg.behavior!r}")
    if cfg.link_threshold is not None and cfg.link_threshold <= 0:
        raise ValidationError("metrics.link_threshold", "must be positive")
    for problems in (cfg.engine.problems(), cfg.lifecycle.problems(),
                     cfg.review.problems(cfg.lifecycle.population_cap)):
        if problems:
            raise ValidationError(*problems[0])
