"""Text renderings of space-time diagrams: time runs downward, 1 is black."""
from __future__ import annotations

import numpy as np


def to_ascii(rows: np.ndarray, one: str = "#", zero: str = ".") -> str:
    return "".join("".join(one if c else zero for c in row) + "\n" for row in rows)


def to_pbm(rows: np.ndarray) -> str:
    """Plain (P1) portable bitmap, one raster row per line."""
    height, width = rows.shape
    body = "".join("".join("1" if c else "0" for c in row) + "\n" for row in rows)
    return f"P1\n{width} {height}\n{body}"


def read_pbm(text: str) -> np.ndarray:
    tokens = [line.split("#", 1)[0] for line in text.splitlines()]
    words = " ".join(tokens).split()
    if not words or words[0] != "P1":
        raise ValueError("not a plain PBM (P1) image")
    width, height = int(words[1]), int(words[2])
    pixels = [int(ch) for ch in "".join(words[3:])]
    if len(pixels) != width * height:
        raise ValueError(f"expected {width * height} pixels, found {len(pixels)}")
    return np.array(pixels, dtype=np.uint8).reshape(height, width)
