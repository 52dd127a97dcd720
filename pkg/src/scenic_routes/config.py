"""Input documents: schema validation, defaults and conversion to run configs."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .errors import ConfigError
from .flats import LatticeConfig, SiteD
from .geometry import Box
from .routes import RouteParams
from .scenic_graph import DEFAULT_MAX_CURVES, ColoredPoint, Config, Mode


def load_schema(name: str) -> dict:
    """Bundled JSON schema: ``input``, ``graph``, ``report`` or ``lattice``."""
    text = resources.files("scenic_routes").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


def input_schema() -> dict:
    return load_schema("input")


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path)


@dataclass
class InputDocument:
    points: list[dict]
    mode: Mode = Mode.BIPARTITE
    box: dict | None = None
    tolerance: float = 1e-9
    max_curves: int = DEFAULT_MAX_CURVES
    routing: RouteParams = field(default_factory=RouteParams)
    order: str = "sec3"
    max_nodes: int = 2000
    lattice: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        dims = {len(p["coords"]) if "coords" in p else 2 for p in self.points}
        if len(dims) != 1:
            raise ConfigError("points have mixed dimensions", "/points")
        return dims.pop()

    def coords(self, p: dict) -> list[float]:
        return list(p["coords"]) if "coords" in p else [p["x"], p["y"]]

    def to_config(self, box: Box | None = None, expand: float | None = None,
                  eps_abs: float | None = None) -> Config:
        """2D run configuration; explicit arguments override the document."""
        if self.dimension != 2:
            raise ConfigError(f"scenic graphs are 2D but the points have {self.dimension} "
                              "coordinates; use the flats command", "/points")
        pts = []
        for i, p in enumerate(self.points):
            x, y = self.coords(p)
            pts.append(ColoredPoint(p["id"], (x, y), p["color"], p.get("weight", 1.0)))
        doc_box, doc_expand = None, 1.5
        if self.box is not None:
            if "expand" in self.box:
                doc_expand = self.box["expand"]
            elif "xmin" in self.box:
                b = self.box
                doc_box = _box(b["xmin"], b["ymin"], b["xmax"], b["ymax"])
            else:
                lo, hi = self.box["lo"], self.box["hi"]
                if len(lo) != 2 or len(hi) != 2:
                    raise ConfigError("box bounds must be 2D", "/box")
                doc_box = _box(lo[0], lo[1], hi[0], hi[1])
        if expand is not None:
            doc_box, doc_expand = None, expand
        if box is not None:
            doc_box = box
        return Config(tuple(pts), self.mode, doc_box, doc_expand,
                      self.tolerance if eps_abs is None else eps_abs, self.max_curves)

    def sites(self) -> list[SiteD]:
        if self.mode is not Mode.BIPARTITE:
            raise ConfigError("the flat lattice is defined for red/blue points only", "/mode")
        self.dimension
        return [SiteD(p["id"], tuple(self.coords(p)), p["color"]) for p in self.points]

    def lattice_config(self, **overrides) -> LatticeConfig:
        cfg = LatticeConfig(eps_abs=self.tolerance, **self.lattice)
        if self.box is not None:
            if "expand" in self.box:
                cfg.expand = self.box["expand"]
            elif "lo" in self.box:
                cfg.box = (self.box["lo"], self.box["hi"])
            else:
                b = self.box
                cfg.box = ([b["xmin"], b["ymin"]], [b["xmax"], b["ymax"]])
        return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})


def _box(xmin, ymin, xmax, ymax) -> Box:
    try:
        return Box(xmin, ymin, xmax, ymax)
    except ValueError as exc:
        raise ConfigError(str(exc), "/box") from None


def parse_document(data: Any) -> InputDocument:
    validator = jsonschema.Draft202012Validator(input_schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise ConfigError(err.message, _pointer(err.absolute_path))
    points = data["points"]
    seen: set[int] = set()
    for i, p in enumerate(points):
        w = p.get("weight", 1.0)
        if not (w > 0 and math.isfinite(w)):
            raise ConfigError("weight must be positive", f"/points/{i}/weight")
        if p["id"] in seen:
            raise ConfigError(f"duplicate point id {p['id']}", f"/points/{i}/id")
        seen.add(p["id"])
    mode = Mode(data.get("mode", "bipartite"))
    colors = {p["color"] for p in points}
    if mode is Mode.BIPARTITE:
        for i, p in enumerate(points):
            if p["color"] == "landmark":
                raise ConfigError("landmark color requires \"mode\": \"landmark\"", f"/points/{i}/color")
        for c in ("red", "blue"):
            if c not in colors:
                raise ConfigError(f"bipartite mode needs at least one {c} point", "/points")
    else:
        for i, p in enumerate(points):
            if p["color"] != "landmark":
                raise ConfigError("landmark mode expects every point to be a landmark", f"/points/{i}/color")
        if len(points) < 2:
            raise ConfigError("landmark mode needs at least two points", "/points")
    routing = data.get("routing", {})
    doc = InputDocument(
        points=points,
        mode=mode,
        box=data.get("box"),
        tolerance=data.get("tolerance", 1e-9),
        max_curves=data.get("max_curves", DEFAULT_MAX_CURVES),
        routing=RouteParams(routing.get("distance_bound"), routing.get("top_k"), routing.get("alpha")),
        order=routing.get("order", "sec3"),
        max_nodes=routing.get("max_nodes", 2000),
        lattice=dict(data.get("lattice", {})),
    )
    doc.dimension
    return doc


def load_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None


def parse_config(path) -> Config:
    """Read, validate and convert a 2D input document."""
    return parse_document(load_json(path)).to_config()
