"""Severity parameter tables for the corruption suite.

Each corruption kind maps severities 1..5 onto a small set of named
parameters. Every parameter vector is monotone in the direction of
increasing distortion, and each kind designates one primary parameter
that is strictly monotone. Defaults follow the common-corruptions
convention where published values exist (JPEG quality, zoom range,
pixelate scale, brightness deltas); the noise amplitudes are slightly
tamer than that convention so that amplitude calibration holds on
mid-gray probes even with clipping.

The whole table can be overridden from a TOML file with one section per
kind, for example::

    [gaussian_noise]
    sigma = [0.08, 0.12, 0.18, 0.26, 0.38]
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

__all__ = ["ParamSpec", "SeverityTable", "PARAM_SPECS", "DEFAULT_PARAMS"]

N_SEVERITIES = 5


@dataclass(frozen=True)
class ParamSpec:
    """Declared behavior of one severity parameter.

    ``direction`` is +1 when larger values distort more, -1 when smaller
    values do. ``strict`` parameters must be strictly monotone; the first
    spec listed for a kind is its primary parameter and is always strict.
    """

    name: str
    direction: int
    strict: bool = False


PARAM_SPECS: Mapping[str, tuple[ParamSpec, ...]] = MappingProxyType({
    "gaussian_noise": (ParamSpec("sigma", +1, strict=True),),
    "shot_noise": (ParamSpec("photons", -1, strict=True),),
    "impulse_noise": (ParamSpec("amount", +1, strict=True),),
    "speckle_noise": (ParamSpec("sigma", +1, strict=True),),
    "defocus_blur": (ParamSpec("radius", +1, strict=True),),
    "gaussian_blur": (ParamSpec("sigma", +1, strict=True),),
    "glass_blur": (
        ParamSpec("sigma", +1, strict=True),
        ParamSpec("max_delta", +1),
        ParamSpec("iterations", +1),
    ),
    "motion_blur": (ParamSpec("length", +1, strict=True),),
    "zoom_blur": (ParamSpec("max_zoom", +1, strict=True),),
    "fog": (
        ParamSpec("intensity", +1, strict=True),
        ParamSpec("decay", -1),
    ),
    "snow": (
        ParamSpec("amount", +1, strict=True),
        ParamSpec("whiten", +1),
        ParamSpec("length", +1),
    ),
    "spatter": (ParamSpec("coverage", +1, strict=True),),
    "brightness": (ParamSpec("delta", +1, strict=True),),
    "contrast": (ParamSpec("factor", -1, strict=True),),
    "saturate": (ParamSpec("factor", +1, strict=True),),
    "pixelate": (ParamSpec("scale", -1, strict=True),),
    "jpeg_compression": (ParamSpec("quality", -1, strict=True),),
    "elastic_transform": (ParamSpec("displacement", +1, strict=True),),
})

DEFAULT_PARAMS: Mapping[str, Mapping[str, tuple[float, ...]]] = MappingProxyType({
    "gaussian_noise": {"sigma": (0.06, 0.10, 0.14, 0.18, 0.22)},
    "shot_noise": {"photons": (60.0, 30.0, 15.0, 8.0, 4.0)},
    "impulse_noise": {"amount": (0.02, 0.05, 0.09, 0.15, 0.22)},
    "speckle_noise": {"sigma": (0.12, 0.20, 0.30, 0.42, 0.56)},
    "defocus_blur": {"radius": (2.0, 3.0, 5.0, 7.0, 9.0)},
    "gaussian_blur": {"sigma": (1.0, 1.8, 2.6, 3.4, 4.5)},
    "glass_blur": {
        "sigma": (0.7, 0.9, 1.1, 1.3, 1.5),
        "max_delta": (1.0, 2.0, 2.0, 3.0, 4.0),
        "iterations": (1.0, 2.0, 2.0, 3.0, 3.0),
    },
    "motion_blur": {"length": (7.0, 11.0, 15.0, 19.0, 23.0)},
    "zoom_blur": {"max_zoom": (1.11, 1.16, 1.21, 1.26, 1.31)},
    "fog": {
        "intensity": (1.0, 1.5, 2.0, 2.5, 3.0),
        "decay": (2.0, 1.9, 1.8, 1.7, 1.6),
    },
    "snow": {
        "amount": (0.08, 0.16, 0.26, 0.38, 0.52),
        "whiten": (0.10, 0.17, 0.24, 0.31, 0.38),
        "length": (8.0, 10.0, 12.0, 14.0, 16.0),
    },
    "spatter": {"coverage": (0.05, 0.09, 0.14, 0.20, 0.27)},
    "brightness": {"delta": (0.10, 0.20, 0.30, 0.40, 0.50)},
    "contrast": {"factor": (0.40, 0.30, 0.20, 0.10, 0.05)},
    "saturate": {"factor": (1.6, 2.2, 3.0, 4.2, 6.0)},
    "pixelate": {"scale": (0.6, 0.5, 0.4, 0.3, 0.25)},
    "jpeg_compression": {"quality": (25.0, 18.0, 15.0, 10.0, 7.0)},
    "elastic_transform": {"displacement": (0.012, 0.022, 0.035, 0.052, 0.075)},
})


@dataclass(frozen=True)
class SeverityTable:
    """Per-kind severity parameter vectors, validated monotone."""

    params: Mapping[str, Mapping[str, tuple[float, ...]]]

    def __post_init__(self):
        frozen = {
            kind: {name: tuple(float(v) for v in vec) for name, vec in table.items()}
            for kind, table in self.params.items()
        }
        object.__setattr__(self, "params", MappingProxyType(frozen))
        self._validate()

    def _validate(self) -> None:
        for kind, specs in PARAM_SPECS.items():
            if kind not in self.params:
                raise ValueError(f"severity table missing kind {kind!r}")
            table = self.params[kind]
            for spec in specs:
                if spec.name not in table:
                    raise ValueError(f"{kind}: missing parameter {spec.name!r}")
                vec = table[spec.name]
                if len(vec) != N_SEVERITIES:
                    raise ValueError(f"{kind}.{spec.name}: expected {N_SEVERITIES} entries, got {len(vec)}")
                diffs = [(b - a) * spec.direction for a, b in zip(vec, vec[1:])]
                if spec.strict and not all(d > 0 for d in diffs):
                    raise ValueError(f"{kind}.{spec.name}: must be strictly monotone toward more distortion, got {vec}")
                if not all(d >= 0 for d in diffs):
                    raise ValueError(f"{kind}.{spec.name}: must be monotone toward more distortion, got {vec}")

    def value(self, kind: str, param: str, severity: int) -> float:
        """Parameter value for severities 1..5."""
        if not 1 <= severity <= N_SEVERITIES:
            raise ValueError(f"severity must lie in 1..{N_SEVERITIES}, got {severity}")
        return self.params[kind][param][severity - 1]

    def at(self, kind: str, severity: int) -> dict[str, float]:
        """All of a kind's parameters at one severity."""
        return {name: self.value(kind, name, severity) for name in self.params[kind]}

    @classmethod
    def default(cls) -> "SeverityTable":
        return cls(params=DEFAULT_PARAMS)

    @classmethod
    def from_file(cls, path: str | Path) -> "SeverityTable":
        """Defaults overridden by the TOML file at ``path``.

        Unknown kinds or parameters in the file are rejected so typos do
        not silently fall back to defaults.
        """
        with open(path, "rb") as fh:
            overrides = _toml.load(fh)
        merged = {kind: dict(table) for kind, table in DEFAULT_PARAMS.items()}
        for kind, table in overrides.items():
            if kind not in merged:
                raise ValueError(f"severity config names unknown kind {kind!r}")
            if not isinstance(table, dict):
                raise ValueError(f"severity config section {kind!r} must be a table")
            for name, vec in table.items():
                if name not in merged[kind]:
                    raise ValueError(f"severity config names unknown parameter {kind}.{name}")
                merged[kind][name] = tuple(float(v) for v in vec)
        return cls(params=merged)
