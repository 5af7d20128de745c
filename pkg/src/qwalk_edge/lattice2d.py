"""Full-image walk driver: torus topology, search runs, curves, edge maps.

The lattice is periodic (a torus): the shift wraps around at the image
border.  The coin space is fixed at five dimensions, four movement
directions plus one weighted self-loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import oracle, walkcore
from .imagekit import Image, ProbabilityMap, binarize
from .oracle import MarkedSet
from .walkcore import CoinBasis, CoinKind, Topology, WalkState

__all__ = [
    "WalkParams",
    "SuccessCurve",
    "SweepRow",
    "torus_topology",
    "run_search",
    "edge_map",
    "sweep",
]


@dataclass(frozen=True)
class WalkParams:
    """Parameters of one search run: coin kind, loop weight, steps, threshold."""

    kind: CoinKind
    s: float
    t: int
    a_th: float

    def __post_init__(self) -> None:
        if self.s < 0:
            raise ValueError(f"self-loop weight must be >= 0, got {self.s}")
        if self.t < 0:
            raise ValueError(f"iteration count must be >= 0, got {self.t}")
        if self.a_th <= 0:
            raise ValueError(f"gradient threshold must be > 0, got {self.a_th}")


@dataclass
class SuccessCurve:
    """Success probability recorded after every step, values[k] = p_s(k)."""

    params: WalkParams
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)

    @property
    def argmax_t(self) -> int:
        return int(np.argmax(self.values))

    @property
    def max_p(self) -> float:
        return float(self.values[self.argmax_t])


@dataclass(frozen=True)
class SweepRow:
    kind: CoinKind
    s: float
    argmax_t: int
    max_p: float
    curve: SuccessCurve = field(compare=False)


def torus_topology(width: int, height: int, n_loops: int = 1) -> Topology:
    """Periodic 2D lattice with directions (right, left, up, down) + loops.

    Vertex (x, y) has flat index y * width + x; right increments x mod
    width, up increments y mod height.
    """
    if width < 1 or height < 1:
        raise ValueError(f"torus dimensions must be >= 1, got {width}x{height}")
    d = 4 + n_loops
    xs, ys = np.meshgrid(np.arange(width), np.arange(height))
    xs, ys = xs.reshape(-1), ys.reshape(-1)
    destination = np.tile((ys * width + xs)[:, np.newaxis], (1, d)).astype(np.int64)
    destination[:, 0] = ys * width + (xs + 1) % width
    destination[:, 1] = ys * width + (xs - 1) % width
    destination[:, 2] = ((ys + 1) % height) * width + xs
    destination[:, 3] = ((ys - 1) % height) * width + xs
    reverse = np.arange(d, dtype=np.int64)
    reverse[0], reverse[1], reverse[2], reverse[3] = 1, 0, 3, 2
    return Topology(destination, reverse)


def run_search(img: Image, params: WalkParams) -> tuple[SuccessCurve, WalkState, MarkedSet]:
    """Run the walk search on an image for t steps, recording p_s each step.

    Marks the image's edge pixels via the gradient oracle, starts from the
    uniform state, and returns the full success curve, the final state, and
    the marked set.
    """
    marked = oracle.mark(oracle.gradient_field(img), params.a_th)
    indices = marked.to_indices()
    coin = CoinBasis(n_move=4, n_loops=1, loop_weight=params.s)
    topo = torus_topology(img.width, img.height)
    state = walkcore.uniform_state(img.width * img.height, coin)
    values = np.empty(params.t + 1, dtype=np.float64)
    values[0] = walkcore.success_probability(state, indices)
    for k in range(1, params.t + 1):
        state = walkcore.step(state, indices, params.kind, topo)
        values[k] = walkcore.success_probability(state, indices)
    return SuccessCurve(params=params, values=values), state, marked


def edge_map(
    state: WalkState, width: int, height: int, p_th: float | None = None
) -> ProbabilityMap | Image:
    """Per-pixel probability map of a final state; binarized when p_th is given."""
    if state.n_vertices != width * height:
        raise ValueError(f"state has {state.n_vertices} vertices, grid is {width}x{height}")
    raw = ProbabilityMap(values=walkcore.probability_map(state).reshape(height, width))
    if p_th is None:
        return raw
    return binarize(raw, p_th)


def sweep(
    img: Image,
    kinds: list[CoinKind],
    s_grid: list[float],
    t_max: int,
    a_th: float,
) -> list[SweepRow]:
    """One search run per (kind, s) cell; rows sorted by peak p_s, descending."""
    if not kinds or not s_grid:
        raise ValueError("sweep requires at least one coin kind and one s value")
    rows = []
    for kind in kinds:
        for s in s_grid:
            curve, _, _ = run_search(img, WalkParams(kind=kind, s=s, t=t_max, a_th=a_th))
            rows.append(SweepRow(kind=kind, s=s, argmax_t=curve.argmax_t, max_p=curve.max_p, curve=curve))
    rows.sort(key=lambda r: r.max_p, reverse=True)
    return rows
