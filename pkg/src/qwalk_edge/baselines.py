"""Comparison edge detectors: Hadamard pairwise-gradient model, QSobel model,
and a plain classical Sobel map.

The Hadamard detector amplitude-encodes the row-concatenated image and takes
pairwise sums/differences; only the difference half carries edge information,
so its success probability can never exceed one half.  The QSobel model
encodes each intensity in a rotation angle and measures edge pixels found by
a classical Sobel gradient, capping its success probability at M/N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imagekit import Image, ProbabilityMap
from .oracle import sobel_magnitude

__all__ = [
    "AmplitudeVector",
    "HedResult",
    "encode",
    "hed",
    "normalized_sobel",
    "qsobel",
    "sobel_edges",
]


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    """L2-normalized real amplitudes, zero-padded to a power-of-two length."""

    values: np.ndarray
    n_pixels: int

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64)
        n = vals.size
        if n == 0 or (n & (n - 1)) != 0:
            raise ValueError(f"amplitude vector length must be a power of two, got {n}")
        if abs(float(vals @ vals) - 1.0) > 1e-12:
            raise ValueError("amplitude vector must have unit L2 norm")
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class HedResult:
    """Pairwise gradients and success probabilities of the Hadamard detector.

    ``even_gradients[i]`` is (c[2i] - c[2i+1]) / sqrt(2) from the direct
    pass; ``odd_gradients[i]`` is (c[2i+1] - c[2i+2]) / sqrt(2) from the
    cyclically shifted pass (the last entry wraps around to c[0]).
    """

    even_gradients: np.ndarray
    odd_gradients: np.ndarray
    p_h: float
    p_h_tilde: float

    @property
    def p_h_bar(self) -> float:
        return (self.p_h + self.p_h_tilde) / 2.0


def encode(img: Image) -> AmplitudeVector:
    """Amplitude-encode an image: concatenate rows, normalize, pad to 2^k."""
    flat = img.pixels.reshape(-1)
    norm = float(np.linalg.norm(flat))
    if norm == 0.0:
        raise ValueError("cannot amplitude-encode an all-zero image")
    length = 1 << max(1, (flat.size - 1).bit_length())
    values = np.zeros(length, dtype=np.float64)
    values[: flat.size] = flat / norm
    return AmplitudeVector(values=values, n_pixels=flat.size)


def hed(img: Image, a_th: float) -> tuple[HedResult, Image, ProbabilityMap]:
    """Hadamard edge detection over the row-concatenated amplitude vector.

    The direct pass produces gradients across pairs (2i, 2i+1); a cyclic
    shift of the input exposes the remaining pairs (2i+1, 2i+2).  Pixel k
    is an edge pixel when |c[k-1] - c[k]| >= a_th (absolute value, so
    descending edges are detected too); the raw map holds the measured
    probability (c[k-1] - c[k])^2 / 2 at position k.  Differences act along
    the 1D concatenation only, so vertical edges within each row are what
    this detector sees; nothing links one row to the next except the
    concatenation boundary itself.
    """
    if a_th < 0:
        raise ValueError(f"threshold must be >= 0, got {a_th}")
    vec = encode(img)
    c = vec.values
    length = vec.dim
    even_diffs = c[0::2] - c[1::2]
    shifted = np.roll(c, -1)  # cyclic: position j now holds c[j+1]
    odd_diffs = shifted[0::2] - shifted[1::2]
    even_gradients = even_diffs / math.sqrt(2.0)
    odd_gradients = odd_diffs / math.sqrt(2.0)
    # square the raw differences so extremal cases stay exact
    p_h = float(np.sum(even_diffs**2) / 2.0)
    p_h_tilde = float(np.sum(odd_diffs**2) / 2.0)
    result = HedResult(
        even_gradients=even_gradients,
        odd_gradients=odd_gradients,
        p_h=p_h,
        p_h_tilde=p_h_tilde,
    )

    # gradient covering position k is c[k-1] - c[k] (k = 0 wraps around)
    diffs = c - np.roll(c, 1)
    raw_full = diffs**2 / 2.0
    edge_full = (np.abs(diffs) >= a_th).astype(np.float64)
    shape = (img.height, img.width)
    raw = ProbabilityMap(values=raw_full[: vec.n_pixels].reshape(shape))
    edge = Image(pixels=edge_full[: vec.n_pixels].reshape(shape), source_depth=8)
    return result, edge, raw


def normalized_sobel(img: Image) -> np.ndarray:
    """Sobel magnitude rescaled to [0, 1] (zeros stay zeros)."""
    field = sobel_magnitude(img).gmax
    peak = field.max()
    return field / peak if peak > 0 else field


def qsobel(img: Image, a_th: float) -> tuple[float, Image, ProbabilityMap, float]:
    """QSobel success model: intensity encoded in an angle, Sobel marking.

    The marked set comes from the max-normalized classical Sobel magnitude
    thresholded at a_th; pixel intensity I maps to the angle (pi/2) * I, and
    the measured edge probability is the sum of sin^2(angle) / N over marked
    pixels.  Returns (p_q, edge image, raw map, bound M/N).
    """
    if a_th < 0:
        raise ValueError(f"threshold must be >= 0, got {a_th}")
    n_pixels = img.width * img.height
    marked = normalized_sobel(img) >= a_th
    m = int(marked.sum())
    sin2 = np.sin(img.pixels * (math.pi / 2.0)) ** 2
    raw_values = np.where(marked, sin2 / n_pixels, 0.0)
    p_q = float(raw_values.sum())
    edge = Image(pixels=marked.astype(np.float64), source_depth=8)
    raw = ProbabilityMap(values=raw_values)
    return p_q, edge, raw, m / n_pixels


def sobel_edges(img: Image, a_th: float) -> Image:
    """Classical reference: threshold the max-normalized Sobel magnitude."""
    if a_th < 0:
        raise ValueError(f"threshold must be >= 0, got {a_th}")
    return Image(pixels=(normalized_sobel(img) >= a_th).astype(np.float64), source_depth=8)
