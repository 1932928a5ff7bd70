"""8-bit grayscale image I/O and histograms.

Binary PGM (P5, maxval 255) is the canonical format: it is bit-exact and
dependency-free, so histograms never depend on decoder behavior. PNG input is
an optional extension that funnels color data through the same BT.601
conversion. All types are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

GRAY_LEVELS = 256

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


class PgmParseError(ValueError):
    """Malformed or truncated PGM file."""


class UnsupportedFormatError(ValueError):
    """Recognized image file that the loader does not accept."""


def _as_pixel_array(pixels, width: int, height: int, dtype) -> np.ndarray:
    arr = np.asarray(pixels)
    if arr.size != width * height:
        raise ValueError(
            f"pixel count {arr.size} does not match {width}x{height} image"
        )
    arr = arr.reshape(height, width)
    if arr.dtype != dtype:
        if dtype == np.uint8:
            if arr.dtype.kind not in "iu":
                raise ValueError("gray levels must be integers")
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("gray levels must lie in [0, 255]")
        arr = arr.astype(dtype)
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Rectangular grid of 8-bit gray levels, stored row-major."""

    width: int
    height: int
    pixels: np.ndarray  # (height, width) uint8, read-only

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")
        object.__setattr__(
            self, "pixels", _as_pixel_array(self.pixels, self.width, self.height, np.uint8)
        )


@dataclass(frozen=True, eq=False)
class BiLevelImage:
    """Black/white image; True is white, False is black."""

    width: int
    height: int
    pixels: np.ndarray  # (height, width) bool, read-only

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")
        arr = np.asarray(self.pixels)
        if arr.dtype != np.bool_:
            raise ValueError("bi-level pixels must be boolean")
        object.__setattr__(
            self, "pixels", _as_pixel_array(arr, self.width, self.height, np.bool_)
        )


@dataclass(frozen=True, eq=False)
class Histogram:
    """256-bin tone histogram with counts, total pixel count, and frequencies."""

    counts: np.ndarray  # (256,) int64
    total: int
    frequencies: np.ndarray  # (256,) float64

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts)
        if counts.shape != (GRAY_LEVELS,) or counts.dtype.kind not in "iu":
            raise ValueError(f"counts must be {GRAY_LEVELS} integers")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")
        counts = counts.astype(np.int64)
        if self.total <= 0 or int(counts.sum()) != self.total:
            raise ValueError("total must be positive and equal the sum of counts")
        freqs = np.asarray(self.frequencies, dtype=np.float64)
        if freqs.shape != (GRAY_LEVELS,):
            raise ValueError(f"frequencies must have length {GRAY_LEVELS}")
        if np.any(freqs < 0.0) or np.any(freqs > 1.0):
            raise ValueError("frequencies must lie in [0, 1]")
        if not math.isclose(float(freqs.sum()), 1.0, rel_tol=0.0, abs_tol=1e-12):
            raise ValueError("frequencies must sum to 1 within 1e-12")
        counts.setflags(write=False)
        freqs = freqs.copy()
        freqs.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "frequencies", freqs)

    @classmethod
    def from_counts(cls, counts) -> "Histogram":
        c = np.asarray(counts)
        if c.dtype.kind not in "iu":
            raise ValueError("counts must be integers")
        c = c.astype(np.int64)
        total = int(c.sum())
        if total <= 0:
            raise ValueError("histogram must contain at least one pixel")
        return cls(c, total, c / total)


def to_grayscale(r: int, g: int, b: int) -> int:
    """BT.601 luma with round-half-up: round(0.299 r + 0.587 g + 0.114 b)."""
    for v in (r, g, b):
        if not 0 <= v <= 255:
            raise ValueError(f"channel value {v!r} outside [0, 255]")
    gray = math.floor(0.299 * r + 0.587 * g + 0.114 * b + 0.5)
    return min(255, max(0, gray))


def _rgb_to_gray(rgb: np.ndarray) -> np.ndarray:
    # Vectorized to_grayscale; keep the coefficients and rounding identical.
    luma = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.clip(np.floor(luma + 0.5), 0, 255).astype(np.uint8)


def _next_pgm_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comment lines."""
    n = len(data)
    while pos < n:
        byte = data[pos : pos + 1]
        if byte in b" \t\r\n\f\v":
            pos += 1
        elif byte == b"#":
            while pos < n and data[pos : pos + 1] not in b"\r\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in b" \t\r\n\f\v":
        pos += 1
    if start == pos:
        raise PgmParseError("unexpected end of PGM header")
    return data[start:pos], pos


def _pgm_header_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, pos = _next_pgm_token(data, pos)
    if not token.isdigit():
        raise PgmParseError(f"invalid {what} {token!r} in PGM header")
    return int(token), pos


def _load_pgm(data: bytes) -> GrayImage:
    magic, pos = _next_pgm_token(data, 0)
    if magic != b"P5":
        raise UnsupportedFormatError(f"unsupported PGM magic {magic!r}")
    width, pos = _pgm_header_int(data, pos, "width")
    height, pos = _pgm_header_int(data, pos, "height")
    maxval, pos = _pgm_header_int(data, pos, "maxval")
    if width == 0 or height == 0:
        raise PgmParseError("image dimensions must be positive")
    if maxval != 255:
        raise UnsupportedFormatError(f"only maxval 255 is supported, got {maxval}")
    # Exactly one whitespace byte separates the header from the raster.
    if pos >= len(data) or data[pos : pos + 1] not in b" \t\r\n\f\v":
        raise PgmParseError("missing whitespace before PGM raster")
    pos += 1
    raster = data[pos : pos + width * height]
    if len(raster) < width * height:
        raise PgmParseError("truncated PGM raster")
    pixels = np.frombuffer(raster, dtype=np.uint8)
    return GrayImage(width, height, pixels)


def _load_png(data: bytes) -> GrayImage:
    try:
        from PIL import Image
    except ImportError as exc:  # pragma: no cover
        raise UnsupportedFormatError("PNG support requires Pillow") from exc
    import io

    with Image.open(io.BytesIO(data)) as im:
        if im.mode.startswith(("I", "F")):
            raise UnsupportedFormatError("only 8-bit PNG channels are supported")
        if im.mode == "L":
            arr = np.asarray(im, dtype=np.uint8)
        else:
            rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
            arr = _rgb_to_gray(rgb)
    if arr.ndim != 2 or arr.size == 0:
        raise UnsupportedFormatError("PNG did not decode to a non-empty gray image")
    return GrayImage(arr.shape[1], arr.shape[0], arr)


def load_image(path) -> GrayImage:
    """Load a grayscale image from a binary PGM (P5) or PNG file."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data.startswith(_PNG_MAGIC):
        return _load_png(data)
    if data[:2] == b"P5":
        return _load_pgm(data)
    if len(data) == 0:
        raise PgmParseError(f"{path}: empty file")
    if data[:1] == b"P":
        raise UnsupportedFormatError(f"{path}: unsupported netpbm variant {data[:2]!r}")
    raise UnsupportedFormatError(f"{path}: not a PGM or PNG file")


def build_histogram(img: GrayImage) -> Histogram:
    """Count pixels per gray tone and normalize to frequencies."""
    counts = np.bincount(img.pixels.ravel(), minlength=GRAY_LEVELS)
    return Histogram.from_counts(counts)


def write_bilevel(img: BiLevelImage, path) -> None:
    """Write a bi-level image as binary PGM: black is byte 0, white is 255."""
    raster = np.where(img.pixels, np.uint8(255), np.uint8(0))
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(raster.tobytes())
