import numpy as np
import pytest

from qwalk_edge.imagekit import Image


@pytest.fixture
def square_image() -> Image:
    """50x50 binary image with a filled bright square on dark background."""
    px = np.zeros((50, 50))
    px[10:40, 10:40] = 1.0
    return Image(pixels=px)


@pytest.fixture
def outline_image() -> Image:
    """64x64 binary image with a one-pixel-wide bright rectangle outline."""
    px = np.zeros((64, 64))
    px[16:48, 16:48] = 1.0
    px[17:47, 17:47] = 0.0
    return Image(pixels=px)


@pytest.fixture
def random_image_factory():
    """Factory for seeded random grayscale images quantized to 8-bit levels."""

    def make(width: int, height: int, seed: int) -> Image:
        rng = np.random.default_rng(seed)
        levels = rng.integers(0, 256, size=(height, width))
        return Image(pixels=levels / 255.0)

    return make
