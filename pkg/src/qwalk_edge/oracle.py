"""Edge-pixel marking: one-dimensional filter-mask gradients and Sobel magnitude.

The walk's oracle marks a pixel when the largest of its four signed
neighbor differences reaches a threshold.  Differences are one-sided, so
only the brighter side of an intensity step gets marked; negative maxima
are clamped to zero to keep the field displayable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .imagekit import Image

__all__ = ["GradientField", "MarkedSet", "gradient_field", "mark", "sobel_magnitude"]


@dataclass(frozen=True, eq=False)
class GradientField:
    """Nonnegative per-pixel gradient values, indexed ``gmax[y, x]``."""

    gmax: np.ndarray

    def __post_init__(self) -> None:
        g = np.asarray(self.gmax, dtype=np.float64)
        if g.ndim != 2 or g.size == 0:
            raise ValueError("gradient field must be a non-empty 2D grid")
        if g.min() < 0.0:
            raise ValueError("gradient field must be nonnegative")
        object.__setattr__(self, "gmax", g)

    @property
    def width(self) -> int:
        return self.gmax.shape[1]

    @property
    def height(self) -> int:
        return self.gmax.shape[0]


@dataclass(frozen=True)
class MarkedSet:
    """Set of marked (edge) pixel coordinates on a width x height lattice."""

    coords: frozenset[tuple[int, int]]
    width: int
    height: int

    def __post_init__(self) -> None:
        for x, y in self.coords:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"marked coordinate ({x}, {y}) outside {self.width}x{self.height}")

    @property
    def m(self) -> int:
        return len(self.coords)

    def to_indices(self) -> np.ndarray:
        """Sorted flat vertex indices (v = y * width + x)."""
        return np.array(sorted(y * self.width + x for x, y in self.coords), dtype=np.int64)


def gradient_field(img: Image) -> GradientField:
    """Largest of the four signed neighbor differences at each pixel.

    At (x, y) the horizontal differences are I(x,y) - I(x+1,y) and
    I(x,y) - I(x-1,y); the vertical ones use y+1 and y-1.  Out-of-range
    neighbors clamp to the border pixel, making their difference zero, and
    an all-negative maximum is stored as zero.
    """
    inten = img.pixels
    h_plus = inten - np.concatenate([inten[:, 1:], inten[:, -1:]], axis=1)
    h_minus = inten - np.concatenate([inten[:, :1], inten[:, :-1]], axis=1)
    v_plus = inten - np.concatenate([inten[1:, :], inten[-1:, :]], axis=0)
    v_minus = inten - np.concatenate([inten[:1, :], inten[:-1, :]], axis=0)
    gmax = np.maximum.reduce([h_plus, h_minus, v_plus, v_minus])
    return GradientField(gmax=np.maximum(gmax, 0.0))


def mark(field: GradientField, a_th: float) -> MarkedSet:
    """Marked set of all pixels whose gradient value is >= a_th (a_th > 0)."""
    if a_th <= 0:
        raise ValueError(f"marking threshold must be > 0, got {a_th}")
    ys, xs = np.nonzero(field.gmax >= a_th)
    coords = frozenset((int(x), int(y)) for x, y in zip(xs, ys))
    return MarkedSet(coords=coords, width=field.width, height=field.height)


def sobel_magnitude(img: Image) -> GradientField:
    """Magnitude of the 3x3 Sobel gradient, borders handled by clamping."""
    padded = np.pad(img.pixels, 1, mode="edge")
    # column/row slices of the 3x3 neighborhood around each pixel
    tl, tc, tr = padded[:-2, :-2], padded[:-2, 1:-1], padded[:-2, 2:]
    ml, mr = padded[1:-1, :-2], padded[1:-1, 2:]
    bl, bc, br = padded[2:, :-2], padded[2:, 1:-1], padded[2:, 2:]
    gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl)
    gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr)
    return GradientField(gmax=np.hypot(gx, gy))
