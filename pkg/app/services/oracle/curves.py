"""
Assessment curves: productivity as a function of the value to the
individual, and value to the individual by organisation level.
"""
import math
from typing import Literal

import numpy as np
import pandas as pd

from app.config import settings
from app.utils.errors import DomainError

CurveKind = Literal["vi", "productivity"]
CURVE_COLUMNS = ["x", "typical", "expected", "ideal"]
BAND_COLUMNS = ["band_low", "band_high"]


def productivity(v_i: float, fitness: float) -> float:
    """P(v) = 1 - exp(-fitness * v), bounded in [0, 1)."""
    if fitness <= 0:
        raise DomainError(f"fitness must be > 0, got {fitness}")
    if v_i < 0:
        raise DomainError(f"value must be >= 0, got {v_i}")
    return -math.expm1(-fitness * v_i)


def value_by_level(v1: float, ceo_ratio: float, max_levels: int, level: int) -> float:
    """
    Value to the individual at an organisation level.

    Level 1 is the calibration point v1; higher levels grow linearly so that
    the top level reaches v1 * ceo_ratio.
    """
    if v1 < 0:
        raise DomainError(f"v1 must be >= 0, got {v1}")
    if ceo_ratio <= 0:
        raise DomainError(f"ceo_ratio must be > 0, got {ceo_ratio}")
    if not 1 <= level <= max_levels:
        raise DomainError(f"level {level} is outside 1..{max_levels}")
    if level == 1:
        return v1
    return v1 * (ceo_ratio / max_levels) * level


def emit_curves(which: CurveKind, samples: int, band: bool = False) -> pd.DataFrame:
    """
    Sample the typical, expected and ideal series of one figure.

    ``productivity`` samples ``samples`` evenly spaced values on
    [0, CURVE_DOMAIN_MAX]; ``vi`` samples levels 1..samples of a hierarchy
    with ``samples`` levels under the three CEO-ratio presets.

    With ``band`` the frame also carries the acceptable region between the
    typical and ideal series as ``band_low`` and ``band_high``.
    """
    if samples < 2:
        raise DomainError(f"samples must be >= 2, got {samples}")

    if which == "productivity":
        x = np.linspace(0.0, settings.CURVE_DOMAIN_MAX, samples)
        frame = pd.DataFrame({
            "x": x,
            "typical": -np.expm1(-settings.FITNESS_TYPICAL * x),
            "expected": -np.expm1(-settings.FITNESS_EXPECTED * x),
            "ideal": np.ones_like(x),
        })
    elif which == "vi":
        levels = range(1, samples + 1)
        v1 = settings.CURVE_BASE_VALUE
        frame = pd.DataFrame({
            "x": list(levels),
            "typical": [value_by_level(v1, settings.CURVE_RATIO_TYPICAL, samples, n) for n in levels],
            "expected": [value_by_level(v1, settings.CURVE_RATIO_EXPECTED, samples, n) for n in levels],
            "ideal": [value_by_level(v1, settings.CURVE_RATIO_IDEAL, samples, n) for n in levels],
        })
    else:
        raise DomainError(f"unknown curve '{which}', expected 'vi' or 'productivity'")
    frame = frame[CURVE_COLUMNS]
    if band:
        frame = frame.assign(
            band_low=np.minimum(frame["typical"], frame["ideal"]),
            band_high=np.maximum(frame["typical"], frame["ideal"]),
        )
    return frame
