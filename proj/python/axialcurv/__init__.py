"""Axial curvature lines of surfaces in R^4."""

import json

from ._axial import (
    BoundaryError,
    count_and_type,
    critical_index,
    directions,
    family_coeffs,
    resolution,
    scan_csv,
    schema_version,
)
from . import _axial

__all__ = [
    "BoundaryError",
    "analyze",
    "count_and_type",
    "critical_index",
    "directions",
    "family_coeffs",
    "forms",
    "portrait",
    "resolution",
    "scan_csv",
    "schema_version",
    "verify",
]


def analyze(family="alpha_a", a=0.0, eps=0.0, b=0.0, map="", region=None, grid=64, threads=1):
    """Axiumbilic points, types, indices and critical points as a dict."""
    return json.loads(_axial.analyze_json(family, a, eps, b, map, region, grid, threads))


def forms(family="alpha_a", a=0.0, eps=0.0, b=0.0, map="", u=0.1, v=0.1):
    return json.loads(_axial.forms_json(family, a, eps, b, map, u, v))


def verify(claims=(), samples=()):
    """Exact claim checks; an empty claim list runs all of them."""
    return json.loads(_axial.verify_json(list(claims), list(samples)))


def portrait(family="alpha_a", a=0.0, eps=0.0, b=0.0, map="", region=None, grid=64, threads=1, seeds=6):
    """Returns (svg, csv, summary dict)."""
    svg, csv, summary = _axial.portrait(family, a, eps, b, map, region, grid, threads, seeds)
    return svg, csv, json.loads(summary)
