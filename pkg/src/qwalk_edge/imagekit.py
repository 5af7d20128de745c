"""Grayscale image I/O: PGM (P2/P5) and PNG read/write, padding, binarization.

Intensities are stored as float64 in [0, 1]; the original bit depth (8 or 16)
is kept so files round-trip exactly.  Probability maps are rendered for
display by rescaling their maximum value to full white; the rescaling factor
is recorded in the output file (PGM comment line / PNG text chunk) so the
display image is never mistaken for raw data.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image as _PILImage
from PIL import PngImagePlugin, UnidentifiedImageError

__all__ = [
    "Image",
    "ProbabilityMap",
    "ImageFormatError",
    "load_image",
    "pad_to_even",
    "binarize",
    "write_image",
]

_TOTAL_EPS = 1e-9


class ImageFormatError(ValueError):
    """Unreadable file, unsupported format, or invalid image dimensions."""


@dataclass(frozen=True, eq=False)
class Image:
    """A grayscale image: intensities in [0, 1], indexed ``pixels[y, x]``.

    ``source_depth`` is the bit depth the intensities were scaled from (8 or
    16) and is honored when the image is written back out.
    """

    pixels: np.ndarray
    source_depth: int = 8

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 2 or px.size == 0:
            raise ImageFormatError("zero dimension: image must be a non-empty 2D grid")
        if px.min() < 0.0 or px.max() > 1.0:
            raise ValueError("intensities must lie in [0, 1]")
        if self.source_depth not in (8, 16):
            raise ValueError(f"source_depth must be 8 or 16, got {self.source_depth}")
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True, eq=False)
class ProbabilityMap:
    """Per-pixel probability field; values in [0, 1] summing to at most 1."""

    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 2 or vals.size == 0:
            raise ValueError("probability map must be a non-empty 2D grid")
        # tiny headroom above 1: a fully concentrated state can round up
        if vals.min() < 0.0 or vals.max() > 1.0 + 1e-12:
            raise ValueError("probability values must lie in [0, 1]")
        if vals.sum() > 1.0 + _TOTAL_EPS:
            raise ValueError(f"total probability {vals.sum()} exceeds 1")
        object.__setattr__(self, "values", vals)

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def total(self) -> float:
        return float(self.values.sum())


def _infer_format(path: Path, data: bytes | None = None) -> str:
    suffix = path.suffix.lower()
    if suffix in (".pgm", ".pnm"):
        return "pgm"
    if suffix == ".png":
        return "png"
    if data is not None:
        if data[:2] in (b"P2", b"P5"):
            return "pgm"
        if data[:8] == b"\x89PNG\r\n\x1a\n":
            return "png"
    raise ImageFormatError(f"unsupported format: cannot determine file type of {path}")


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch == b"#":
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise ImageFormatError("unreadable file: unterminated comment in header")
            pos = nl + 1
        elif ch.isspace():
            pos += 1
        else:
            break
    if pos >= n:
        raise ImageFormatError("unreadable file: truncated PGM header")
    end = pos
    while end < n and not data[end : end + 1].isspace():
        end += 1
    return data[pos:end], end


def _parse_pgm(data: bytes) -> Image:
    magic, pos = _next_token(data, 0)
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError(f"unsupported format: PGM magic {magic!r}")
    fields = []
    for _ in range(3):
        tok, pos = _next_token(data, pos)
        try:
            fields.append(int(tok))
        except ValueError as exc:
            raise ImageFormatError(f"unreadable file: bad PGM header token {tok!r}") from exc
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise ImageFormatError(f"zero dimension: {width}x{height}")
    if not 1 <= maxval <= 65535:
        raise ImageFormatError(f"unreadable file: PGM maxval {maxval} out of range")

    count = width * height
    if magic == b"P5":
        pos += 1  # exactly one whitespace byte separates header and raster
        dtype = ">u2" if maxval > 255 else np.uint8
        itemsize = 2 if maxval > 255 else 1
        raster = data[pos : pos + count * itemsize]
        if len(raster) < count * itemsize:
            raise ImageFormatError("unreadable file: truncated PGM raster")
        levels = np.frombuffer(raster, dtype=dtype, count=count).astype(np.int64)
    else:
        try:
            levels = np.array([int(t) for t in data[pos:].split()], dtype=np.int64)
        except ValueError as exc:
            raise ImageFormatError("unreadable file: non-numeric P2 sample") from exc
        if levels.size < count:
            raise ImageFormatError("unreadable file: truncated P2 raster")
        levels = levels[:count]
    if levels.min() < 0 or levels.max() > maxval:
        raise ImageFormatError("unreadable file: PGM sample exceeds maxval")
    pixels = levels.reshape(height, width) / float(maxval)
    return Image(pixels=pixels, source_depth=8 if maxval <= 255 else 16)


def _parse_png(path: Path) -> Image:
    try:
        with _PILImage.open(path) as im:
            mode = im.mode
            if mode == "L":
                arr = np.asarray(im, dtype=np.float64)
                return Image(pixels=arr / 255.0, source_depth=8)
            if mode in ("I", "I;16"):
                arr = np.asarray(im, dtype=np.float64)
                if arr.max() > 65535:
                    raise ImageFormatError("unsupported format: PNG deeper than 16 bits")
                return Image(pixels=arr / 65535.0, source_depth=16)
            raise ImageFormatError(
                f"unsupported format: PNG mode {mode!r} (grayscale required, RGB is rejected)"
            )
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"unreadable file: {path} is not a valid PNG") from exc


def load_image(path: str | Path, format: str | None = None) -> Image:
    """Load an 8- or 16-bit grayscale image, scaling intensities to [0, 1].

    PGM samples are divided by the header maxval; PNG samples by the full
    range of their bit depth.  Color PNG inputs are rejected, not converted.
    """
    p = Path(path)
    if format == "png" or (format is None and p.suffix.lower() == ".png"):
        return _parse_png(p)
    data = p.read_bytes()
    fmt = format or _infer_format(p, data)
    if fmt == "pgm":
        return _parse_pgm(data)
    if fmt == "png":
        return _parse_png(p)
    raise ImageFormatError(f"unsupported format: {fmt!r}")


def pad_to_even(img: Image) -> Image:
    """Grow each odd dimension by one row/column of replicated border pixels."""
    pad_y = img.height % 2
    pad_x = img.width % 2
    if pad_y == 0 and pad_x == 0:
        return img
    padded = np.pad(img.pixels, ((0, pad_y), (0, pad_x)), mode="edge")
    return Image(pixels=padded, source_depth=img.source_depth)


def binarize(pmap: ProbabilityMap, threshold: float) -> Image:
    """Binary edge image: white (1) where the map value is >= threshold."""
    if threshold < 0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    return Image(pixels=(pmap.values >= threshold).astype(np.float64), source_depth=8)


def _display_levels(pmap: ProbabilityMap) -> tuple[np.ndarray, float]:
    """8-bit display levels of a probability map, peak rescaled to white."""
    peak = float(pmap.values.max())
    if peak > 0.0:
        norm = pmap.values / peak
    else:
        norm = np.zeros_like(pmap.values)
    return np.rint(norm * 255).astype(np.uint8), peak


def _write_pgm(path: Path, levels: np.ndarray, maxval: int, comment: str | None, ascii_pgm: bool) -> None:
    lines = [b"P2" if ascii_pgm else b"P5"]
    if comment:
        lines.append(b"# " + comment.encode("ascii"))
    lines.append(f"{levels.shape[1]} {levels.shape[0]}".encode("ascii"))
    lines.append(f"{maxval}".encode("ascii"))
    header = b"\n".join(lines) + b"\n"
    if ascii_pgm:
        body = b"\n".join(b" ".join(str(v).encode("ascii") for v in row) for row in levels) + b"\n"
    else:
        body = levels.astype(">u2" if maxval > 255 else np.uint8).tobytes()
    path.write_bytes(header + body)


def _write_png(path: Path, levels: np.ndarray, maxval: int, comment: str | None) -> None:
    if maxval > 255:
        im = _PILImage.fromarray(levels.astype(np.uint16))
    else:
        im = _PILImage.fromarray(levels.astype(np.uint8))
    info = PngImagePlugin.PngInfo()
    if comment:
        info.add_text("normalization", comment)
    im.save(path, format="PNG", pnginfo=info)


def write_image(
    obj: Image | ProbabilityMap,
    path: str | Path,
    format: str | None = None,
    ascii_pgm: bool = False,
) -> None:
    """Write an image or a probability map to a PGM or PNG file.

    Images are quantized at their source depth, so 8-bit content round-trips
    exactly.  Probability maps are affinely rescaled so the peak value maps
    to full white; the peak is recorded in the file's comment/metadata.
    """
    p = Path(path)
    fmt = format or _infer_format(p)
    if isinstance(obj, ProbabilityMap):
        levels, peak = _display_levels(obj)
        maxval = 255
        comment = f"display rescaled: peak value {peak:.12e} maps to white"
    else:
        maxval = 255 if obj.source_depth == 8 else 65535
        levels = np.rint(obj.pixels * maxval).astype(np.uint16 if maxval > 255 else np.uint8)
        comment = None
    if fmt == "pgm":
        _write_pgm(p, levels, maxval, comment, ascii_pgm)
    elif fmt == "png":
        _write_png(p, levels, maxval, comment)
    else:
        raise ImageFormatError(f"unsupported format: {fmt!r}")
