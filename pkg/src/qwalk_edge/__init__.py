"""Image edge detection by discrete-time quantum walk search.

Marks edge pixels with a gradient oracle, then amplifies the probability of
measuring them by running a coined quantum walk with weighted self-loops on
the image lattice.  Also ships two comparison detectors (Hadamard pairwise
gradients and the QSobel success model), a per-block circuit-analog mode
with shot sampling, and a CLI for producing edge images, probability maps,
and success-probability curves.
"""

__version__ = "0.1.0"

from .baselines import encode, hed, qsobel, sobel_edges
from .blocks1d import decompose, run_block, run_blocks, sample
from .imagekit import Image, ImageFormatError, ProbabilityMap, binarize, load_image, pad_to_even, write_image
from .lattice2d import SuccessCurve, WalkParams, edge_map, run_search, sweep, torus_topology
from .oracle import GradientField, MarkedSet, gradient_field, mark, sobel_magnitude
from .walkcore import (
    CoinBasis,
    CoinKind,
    Topology,
    WalkState,
    apply_coin,
    apply_shift,
    cycle_topology,
    grover_coin_matrix,
    probability_map,
    step,
    success_probability,
    uniform_state,
)

__all__ = [
    "__version__",
    "Image",
    "ProbabilityMap",
    "ImageFormatError",
    "load_image",
    "pad_to_even",
    "binarize",
    "write_image",
    "GradientField",
    "MarkedSet",
    "gradient_field",
    "mark",
    "sobel_magnitude",
    "CoinBasis",
    "CoinKind",
    "Topology",
    "WalkState",
    "cycle_topology",
    "grover_coin_matrix",
    "uniform_state",
    "apply_coin",
    "apply_shift",
    "step",
    "success_probability",
    "probability_map",
    "WalkParams",
    "SuccessCurve",
    "torus_topology",
    "run_search",
    "edge_map",
    "sweep",
    "decompose",
    "run_block",
    "run_blocks",
    "sample",
    "encode",
    "hed",
    "qsobel",
    "sobel_edges",
]
