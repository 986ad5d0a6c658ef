"""Region file loading: JSON documents describing one region each.

The document must contain exactly one of
  "vertices":         [[x, y, z], ...]          -> GeodesicPolygon
  "cap":              {"center": [...], "radius": rho}  -> CapSpec
  "boundary_samples": [[x, y, z], ...]          -> SmoothBoundary
All vectors must be unit within 1e-9.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ArgumentError
from .floating import SmoothBoundary
from .regions import CapSpec, GeodesicPolygon

_KEYS = ("vertices", "cap", "boundary_samples")


def _unit_rows(rows, what):
    a = np.asarray(rows, dtype=float)
    if a.ndim != 2 or a.shape[1] != 3:
        raise ArgumentError(f"{what} must be a list of 3-vectors")
    norms = np.linalg.norm(a, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-9):
        raise ArgumentError(f"{what} contains non-unit vectors (tolerance 1e-9)")
    return a


def parse_region(doc: dict):
    if not isinstance(doc, dict):
        raise ArgumentError("region document must be a JSON object")
    present = [k for k in _KEYS if k in doc]
    if len(present) != 1:
        raise ArgumentError(f"expected exactly one of {_KEYS}, found {present}")
    key = present[0]
    if key == "vertices":
        return GeodesicPolygon(_unit_rows(doc[key], "vertices"))
    if key == "boundary_samples":
        return SmoothBoundary(_unit_rows(doc[key], "boundary_samples"))
    cap = doc["cap"]
    if not isinstance(cap, dict) or "center" not in cap or "radius" not in cap:
        raise ArgumentError('"cap" must be {"center": [x,y,z], "radius": rho}')
    center = _unit_rows([cap["center"]], "cap center")[0]
    return CapSpec(center, float(cap["radius"]))


def load_region(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"malformed JSON in {path}: {exc}") from exc
    return parse_region(doc)
