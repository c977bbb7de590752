"""Built-in reference coefficient schemes.

Three published near-optimal schemes, all at r = 1.18, whose functional
values sit just above 1 at thresholds c decreasing from 0.515398 to
0.515396.  They double as regression anchors for the whole pipeline and as
ready-made CLI presets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fracpoly import FracPoly
from .hfunc import CoeffScheme

__all__ = ["Preset", "PRESETS", "preset_names", "get_preset"]


@dataclass(frozen=True)
class Preset:
    name: str
    c: float
    scheme: CoeffScheme


def _scheme(r, f1, f1t, p):
    return CoeffScheme(
        r=r,
        f1=FracPoly.from_coeffs(f1),
        f1t=FracPoly.from_coeffs(f1t),
        P=FracPoly.from_coeffs(p),
    )


PRESETS: tuple[Preset, ...] = (
    Preset(
        "table1-row1",
        0.515398,
        _scheme(1.18, [1.95, 1.47, -1.07, -0.29], [-0.7, -1.92], [0.0, 0.0, 1.0]),
    ),
    Preset(
        "table1-row2",
        0.515397,
        _scheme(1.18, [1.655, 1.25, -0.886, -0.25], [-0.57, -1.6], [0.0, 0.0, 1.0, 0.036]),
    ),
    Preset(
        "table1-row3",
        0.515396,
        _scheme(
            1.18,
            [1.78, 1.017, 0.2, -1.56, 0.45, -0.06, 0.05],
            [-0.629, -0.88, -1.799],
            [0.0, 0.0, 1.0, 0.083],
        ),
    ),
)


def preset_names() -> list[str]:
    return [p.name for p in PRESETS]


def get_preset(name: str) -> Preset:
    for p in PRESETS:
        if p.name == name:
            return p
    raise KeyError(f"unknown preset {name!r}; known: {', '.join(preset_names())}")
