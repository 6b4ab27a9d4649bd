"""Weighted sample sets: finite discretizations of a compact set with weights."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field


@dataclass
class WeightedSampleSet:
    """Sample points in C^{*n} with a weight value per point.

    ``certification_points``/``certification_weights`` hold a denser grid for
    post-hoc sup-norm checks; for explicit sets they default to the samples
    themselves.
    """

    points: list
    weights: list
    descriptor: dict
    certification_points: list | None = None
    certification_weights: list | None = None

    def __post_init__(self):
        if len(self.points) != len(self.weights):
            raise ValueError("points and weights must have equal length")
        if not self.points:
            raise ValueError("sample set must be non-empty")
        for z in self.points:
            if any(c == 0 for c in z):
                raise ValueError("sample points must avoid coordinate hyperplanes")
        if all(math.isinf(q) for q in self.weights):
            raise ValueError("at least one weight must be finite")
        if self.certification_points is None:
            self.certification_points = list(self.points)
            self.certification_weights = list(self.weights)

    @property
    def n(self) -> int:
        return len(self.points[0])

    def certification_set(self) -> "WeightedSampleSet":
        return WeightedSampleSet(
            points=list(self.certification_points),
            weights=list(self.certification_weights),
            descriptor={"kind": "explicit"},
        )

    def with_constant_shift(self, c: float) -> "WeightedSampleSet":
        return WeightedSampleSet(
            points=list(self.points),
            weights=[q + c for q in self.weights],
            descriptor=dict(self.descriptor),
            certification_points=list(self.certification_points),
            certification_weights=[q + c for q in self.certification_weights],
        )


def _torus_points(n: int, per_axis: int) -> list:
    ring = [complex(math.cos(2 * math.pi * k / per_axis),
                    math.sin(2 * math.pi * k / per_axis))
            for k in range(per_axis)]
    return [tuple(p) for p in itertools.product(ring, repeat=n)]


def _circle_points(count: int, radius: float) -> list:
    return [(radius * complex(math.cos(2 * math.pi * k / count),
                              math.sin(2 * math.pi * k / count)),)
            for k in range(count)]


def torus_samples(n: int, per_axis: int = 32, weight: float = 0.0,
                  cert_factor: int = 4) -> WeightedSampleSet:
    pts = _torus_points(n, per_axis)
    cert = _torus_points(n, per_axis * cert_factor)
    return WeightedSampleSet(
        points=pts,
        weights=[weight] * len(pts),
        descriptor={"kind": "torus", "n": n, "count": per_axis,
                    "weight": {"kind": "constant", "value": weight}},
        certification_points=cert,
        certification_weights=[weight] * len(cert),
    )


def circle_samples(count: int = 256, radius: float = 1.0, weight: float = 0.0,
                   cert_factor: int = 4) -> WeightedSampleSet:
    pts = _circle_points(count, radius)
    cert = _circle_points(count * cert_factor, radius)
    return WeightedSampleSet(
        points=pts,
        weights=[weight] * len(pts),
        descriptor={"kind": "circle", "n": 1, "count": count, "radius": radius,
                    "weight": {"kind": "constant", "value": weight}},
        certification_points=cert,
        certification_weights=[weight] * len(cert),
    )


def explicit_samples(points, weights) -> WeightedSampleSet:
    return WeightedSampleSet(
        points=[tuple(complex(c) for c in z) for z in points],
        weights=[float(q) for q in weights],
        descriptor={"kind": "explicit"},
    )


def from_json(obj: dict) -> WeightedSampleSet:
    kind = obj["kind"]
    wspec = obj.get("weight", {"kind": "constant", "value": 0.0})
    if kind == "torus":
        if wspec["kind"] != "constant":
            raise ValueError("torus sets take constant weights")
        return torus_samples(int(obj["n"]), int(obj.get("count", 32)),
                             float(wspec["value"]))
    if kind == "circle":
        if wspec["kind"] != "constant":
            raise ValueError("circle sets take constant weights")
        return circle_samples(int(obj.get("count", 256)),
                              float(obj.get("radius", 1.0)),
                              float(wspec["value"]))
    if kind == "explicit":
        pts = [tuple(complex(c[0], c[1]) for c in z) for z in obj["points"]]
        if wspec["kind"] == "constant":
            weights = [float(wspec["value"])] * len(pts)
        else:
            weights = [float(v) for v in wspec["values"]]
        return explicit_samples(pts, weights)
    raise ValueError(f"unknown sample-set kind {kind!r}")


def load(path: str) -> WeightedSampleSet:
    with open(path) as fh:
        return from_json(json.load(fh))
