from pathlib import Path
from typing import Union

import pandas as pd

from app.config import settings


def render_table(frame: pd.DataFrame, decimals: int = None) -> str:
    """Aligned text table with fixed decimals, for humans."""
    decimals = settings.TABLE_DECIMALS if decimals is None else decimals
    return frame.to_string(index=False, float_format=lambda v: f"{v:.{decimals}f}")


def write_csv(frame: pd.DataFrame, path: Union[str, Path]) -> None:
    """CSV with a header row, ',' separators and shortest round-trip floats."""
    frame.to_csv(path, index=False, sep=",", lineterminator="\n")
