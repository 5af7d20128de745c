"""Coined discrete-time quantum walk engine over an abstract vertex set.

The walker state lives in the tensor product of an N-dimensional vertex
space and a d-dimensional coin space, stored as an (N, d) complex amplitude
array.  One evolution step is a per-vertex coin operation followed by a
flip-flop shift along the graph edges; marked vertices modify the coin
stage according to the selected coin kind.

Coin basis layout: movement directions first, in opposite pairs (direction
2k reverses to 2k+1), self-loops last.  For the 2D lattice this is
(right, left, up, down, loop); for a cycle it is (right, left, loops...).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

__all__ = [
    "CoinKind",
    "CoinBasis",
    "WalkState",
    "Topology",
    "cycle_topology",
    "coin_state",
    "grover_coin_matrix",
    "uniform_state",
    "apply_coin",
    "apply_shift",
    "step",
    "success_probability",
    "probability_map",
]


class CoinKind(Enum):
    """Marked-vertex coin behavior.

    GROVER_LACKADAISICAL covers both the plain Grover walk (loop weight 0)
    and the lackadaisical walk (loop weight > 0): marked vertices get a
    global sign flip before the diffusion.  SKW replaces the diffusion by a
    plain sign flip at marked vertices.  CG flips only the self-loop
    component of marked vertices before the diffusion, which is what lets
    the search escape configurations that pin the other coins.
    """

    GROVER_LACKADAISICAL = "grover"
    SKW = "skw"
    CG = "cg"


@dataclass(frozen=True)
class CoinBasis:
    """Coin-space layout: movement directions plus weighted self-loops.

    ``loop_weight`` is the total weight s shared equally across all
    self-loops; it only enters through the reference coin state.
    """

    n_move: int
    n_loops: int = 1
    loop_weight: float = 0.0

    def __post_init__(self) -> None:
        if self.n_move < 2 or self.n_move % 2 != 0:
            raise ValueError(f"n_move must be an even integer >= 2, got {self.n_move}")
        if self.n_loops < 0:
            raise ValueError(f"n_loops must be >= 0, got {self.n_loops}")
        if self.loop_weight < 0:
            raise ValueError(f"loop weight must be >= 0, got {self.loop_weight}")
        if self.n_loops == 0 and self.loop_weight > 0:
            raise ValueError("nonzero loop weight requires at least one self-loop")
        if self.dim < 2:
            raise ValueError("coin dimension must be >= 2")

    @property
    def dim(self) -> int:
        return self.n_move + self.n_loops


def coin_state(coin: CoinBasis) -> np.ndarray:
    """Reference coin state: amplitude 1 on each movement direction and
    sqrt(s / n_loops) on each self-loop, normalized by sqrt(n_move + s)."""
    vec = np.ones(coin.dim, dtype=np.float64)
    if coin.n_loops > 0:
        vec[coin.n_move :] = math.sqrt(coin.loop_weight / coin.n_loops)
    return vec / math.sqrt(coin.n_move + coin.loop_weight)


def grover_coin_matrix(coin: CoinBasis) -> np.ndarray:
    """Grover diffusion about the reference coin state: 2|psi><psi| - I.

    Real, symmetric, unitary, and an involution; the reference coin state
    is its +1 eigenvector.
    """
    psi = coin_state(coin)
    return 2.0 * np.outer(psi, psi) - np.eye(coin.dim)


@dataclass
class WalkState:
    """Complex amplitudes over (vertex, coin-basis) pairs, shape (N, d)."""

    coin: CoinBasis
    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amps, dtype=np.complex128)
        if amps.ndim != 2 or amps.shape[1] != self.coin.dim:
            raise ValueError(f"amplitude array must have shape (N, {self.coin.dim})")
        self.amps = amps

    @property
    def n_vertices(self) -> int:
        return self.amps.shape[0]

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def copy(self) -> "WalkState":
        return WalkState(coin=self.coin, amps=self.amps.copy())


class Topology:
    """Flip-flop shift table: where each (vertex, direction) slot moves.

    ``destination[v, b]`` is the vertex reached by leaving v along direction
    b (v itself for self-loops) and ``reverse[b]`` is the direction label
    carried after the move.  The induced slot permutation must be an
    involution, which is what makes the shift flip-flop.
    """

    def __init__(self, destination: np.ndarray, reverse: np.ndarray) -> None:
        destination = np.asarray(destination, dtype=np.int64)
        reverse = np.asarray(reverse, dtype=np.int64)
        if destination.ndim != 2 or reverse.ndim != 1 or destination.shape[1] != reverse.size:
            raise ValueError("destination must be (N, d) and reverse (d,)")
        n, d = destination.shape
        perm = (destination * d + reverse[np.newaxis, :]).reshape(-1)
        ident = np.arange(n * d)
        if np.any(np.sort(perm) != ident) or np.any(perm[perm] != ident):
            raise ValueError("inconsistent topology: reverse of reverse is not the identity")
        self.n_vertices = n
        self.dim = d
        self.perm = perm


def cycle_topology(n_vertices: int, n_loops: int = 1) -> Topology:
    """Cycle of n vertices with directions (right, left) plus self-loops."""
    if n_vertices < 1:
        raise ValueError(f"need at least one vertex, got {n_vertices}")
    d = 2 + n_loops
    v = np.arange(n_vertices, dtype=np.int64)
    destination = np.tile(v[:, np.newaxis], (1, d))
    destination[:, 0] = (v + 1) % n_vertices
    destination[:, 1] = (v - 1) % n_vertices
    reverse = np.arange(d, dtype=np.int64)
    reverse[0], reverse[1] = 1, 0
    return Topology(destination, reverse)


def uniform_state(n_vertices: int, coin: CoinBasis) -> WalkState:
    """Equal superposition over vertices, tensored with the reference coin state."""
    if n_vertices < 1:
        raise ValueError(f"need at least one vertex, got {n_vertices}")
    row = coin_state(coin) / math.sqrt(n_vertices)
    amps = np.tile(row.astype(np.complex128), (n_vertices, 1))
    return WalkState(coin=coin, amps=amps)


def _marked_indices(marked: Iterable[int] | np.ndarray) -> np.ndarray:
    return np.asarray(list(marked) if not isinstance(marked, np.ndarray) else marked, dtype=np.int64)


def apply_coin(state: WalkState, marked: Iterable[int] | np.ndarray, kind: CoinKind) -> WalkState:
    """Coin stage: per-vertex d x d action, marked vertices per coin kind.

    CG negates the self-loop amplitudes of marked vertices and then applies
    the diffusion everywhere; GROVER_LACKADAISICAL negates all amplitudes of
    marked vertices first instead; SKW applies the diffusion to unmarked
    vertices and a bare sign flip (no mixing) to marked ones.
    """
    idx = _marked_indices(marked)
    if idx.size and (idx.min() < 0 or idx.max() >= state.n_vertices):
        raise ValueError("marked vertex index out of range")
    diffusion = grover_coin_matrix(state.coin)
    if kind is CoinKind.CG:
        amps = state.amps.copy()
        amps[idx, state.coin.n_move :] *= -1.0
        out = amps @ diffusion
    elif kind is CoinKind.GROVER_LACKADAISICAL:
        amps = state.amps.copy()
        amps[idx, :] *= -1.0
        out = amps @ diffusion
    elif kind is CoinKind.SKW:
        out = state.amps @ diffusion
        out[idx, :] = -state.amps[idx, :]
    else:
        raise ValueError(f"unknown coin kind: {kind!r}")
    return WalkState(coin=state.coin, amps=out)


def apply_shift(state: WalkState, topology: Topology) -> WalkState:
    """Flip-flop shift: move each amplitude along its edge, reversing the label."""
    if topology.n_vertices != state.n_vertices or topology.dim != state.coin.dim:
        raise ValueError("topology does not match the state's vertex/coin dimensions")
    flat = state.amps.reshape(-1)
    # the permutation is an involution, so gathering with it is also the scatter
    shifted = flat[topology.perm].reshape(state.amps.shape)
    return WalkState(coin=state.coin, amps=shifted)


def step(
    state: WalkState,
    marked: Iterable[int] | np.ndarray,
    kind: CoinKind,
    topology: Topology,
) -> WalkState:
    """One evolution step: coin stage followed by the flip-flop shift."""
    return apply_shift(apply_coin(state, marked, kind), topology)


def success_probability(state: WalkState, marked: Iterable[int] | np.ndarray) -> float:
    """Total probability on the marked vertices, summed over coin states."""
    idx = _marked_indices(marked)
    if idx.size == 0:
        return 0.0
    return float(np.sum(np.abs(state.amps[idx, :]) ** 2))


def probability_map(state: WalkState) -> np.ndarray:
    """Per-vertex measurement probabilities (coin traced out), shape (N,)."""
    return np.sum(np.abs(state.amps) ** 2, axis=1)
