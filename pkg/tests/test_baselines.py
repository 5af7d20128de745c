"""Tests for the Hadamard and QSobel comparison detectors."""

import math

import numpy as np
import pytest

from qwalk_edge.baselines import encode, hed, qsobel, sobel_edges
from qwalk_edge.imagekit import Image


def test_encode_three_four_five():
    img = Image(pixels=np.array([[3 / 255, 4 / 255]]))
    vec = encode(img)
    np.testing.assert_allclose(vec.values, [0.6, 0.8], atol=1e-15)


def test_encode_constant_2x2():
    vec = encode(Image(pixels=np.full((2, 2), 0.7)))
    np.testing.assert_allclose(vec.values, np.full(4, 0.5), atol=1e-15)


def test_encode_pads_to_power_of_two():
    vec = encode(Image(pixels=np.array([[0.5, 0.5, 0.5]])))
    assert vec.dim == 4
    assert vec.values[3] == 0.0
    assert vec.n_pixels == 3


def test_encode_rejects_all_zero():
    with pytest.raises(ValueError):
        encode(Image(pixels=np.zeros((2, 2))))


def test_encode_unit_norm(random_image_factory):
    vec = encode(random_image_factory(7, 5, seed=13))
    assert abs(vec.values @ vec.values - 1.0) < 1e-12


def test_hed_constant_image_all_zero():
    result, edge, raw = hed(Image(pixels=np.full((4, 4), 0.8)), a_th=0.01)
    assert result.p_h == 0.0
    assert result.p_h_tilde == 0.0
    assert result.p_h_bar == 0.0
    np.testing.assert_array_equal(edge.pixels, np.zeros((4, 4)))
    np.testing.assert_array_equal(raw.values, np.zeros((4, 4)))


def test_hed_extremal_vector_saturates_half():
    # c = (1, 0, 0, 0): the single gradient carries probability exactly 1/2
    px = np.zeros((2, 2))
    px[0, 0] = 1.0
    result, _, _ = hed(Image(pixels=px), a_th=0.5)
    assert result.p_h == 0.5
    assert abs(result.even_gradients[0] - 1 / math.sqrt(2)) < 1e-15


@pytest.mark.parametrize("seed", range(8))
def test_hed_bounds_hold(seed, random_image_factory):
    img = random_image_factory(9, 6, seed=seed)
    result, _, _ = hed(img, a_th=0.1)
    assert result.p_h <= 0.5 + 1e-12
    assert result.p_h_tilde <= 0.5 + 1e-12
    assert result.p_h_bar == (result.p_h + result.p_h_tilde) / 2


@pytest.mark.parametrize("seed", range(5))
def test_hed_transform_preserves_norm(seed, random_image_factory):
    # pairwise rotation: sums and differences together carry the full norm
    img = random_image_factory(8, 8, seed=100 + seed)
    c = encode(img).values
    result, _, _ = hed(img, a_th=0.1)
    sums = (c[0::2] + c[1::2]) / math.sqrt(2)
    total = np.sum(sums**2) + np.sum(result.even_gradients**2)
    assert abs(total - 1.0) < 1e-12


def test_hed_even_gradients_are_horizontal_differences(random_image_factory):
    # within-row even pairs: gradient * sqrt(2) * ||I|| = I[y,2i] - I[y,2i+1]
    img = random_image_factory(8, 4, seed=31)
    c = encode(img).values
    norm = np.linalg.norm(img.pixels)
    result, _, _ = hed(img, a_th=0.1)
    flat = img.pixels.reshape(-1)
    np.testing.assert_allclose(
        result.even_gradients * math.sqrt(2) * norm, flat[0::2] - flat[1::2], atol=1e-12
    )
    np.testing.assert_allclose(c[: flat.size], flat / norm, atol=1e-15)


def test_hed_detects_descending_edges():
    # bright-to-dark pair: without |.| this edge would be invisible
    px = np.zeros((2, 2))
    px[0, 0] = 1.0  # c = (1, 0, 0, 0): descending at position 1
    _, edge, _ = hed(Image(pixels=px), a_th=0.5)
    assert edge.pixels[0, 1] == 1.0


def test_hed_raw_map_values_at_right_pixel():
    px = np.array([[0.8, 0.2, 0.2, 0.2]])
    result, _, raw = hed(Image(pixels=px), a_th=0.1)
    c = encode(Image(pixels=px)).values
    assert abs(raw.values[0, 1] - (c[0] - c[1]) ** 2 / 2) < 1e-15
    # wraparound pair covers position 0
    assert abs(raw.values[0, 0] - (c[3] - c[0]) ** 2 / 2) < 1e-15


def test_hed_second_pass_covers_odd_pairs():
    px = np.array([[0.2, 0.2, 0.9, 0.9]])
    result, edge, _ = hed(Image(pixels=px), a_th=0.2)
    c = encode(Image(pixels=px)).values
    # the step sits between positions 1 and 2: only the shifted pass sees it
    assert abs(result.odd_gradients[0] - (c[1] - c[2]) / math.sqrt(2)) < 1e-15
    assert edge.pixels[0, 2] == 1.0


def test_qsobel_constant_image():
    p_q, edge, raw, bound = qsobel(Image(pixels=np.full((4, 4), 0.5)), a_th=0.5)
    assert p_q == 0.0
    assert bound == 0.0
    np.testing.assert_array_equal(edge.pixels, np.zeros((4, 4)))


@pytest.mark.parametrize("seed", range(8))
def test_qsobel_bound_holds(seed, random_image_factory):
    rng = np.random.default_rng(200 + seed)
    img = random_image_factory(10, 7, seed=seed)
    a_th = float(rng.uniform(0.05, 0.95))
    p_q, _, _, bound = qsobel(img, a_th)
    assert p_q <= bound + 1e-12


def test_qsobel_saturates_at_full_intensity():
    # single bright corner pixel: its own position carries the strongest
    # Sobel response (clamped borders), so at a high threshold the marked
    # set is exactly that full-intensity pixel and p_q = M/N
    px = np.zeros((4, 4))
    px[0, 0] = 1.0
    p_q, edge, _, bound = qsobel(Image(pixels=px), a_th=0.9)
    assert int(edge.pixels.sum()) == 1
    assert bound == 1 / 16
    assert abs(p_q - bound) < 1e-12


def test_qsobel_below_bound_when_marked_includes_dark(square_image):
    # a binary step marks both sides; dark-side pixels contribute nothing
    p_q, edge, _, bound = qsobel(square_image, a_th=0.5)
    assert int(edge.pixels.sum()) > 0
    assert p_q < bound


def test_qsobel_raw_map_mass_is_p_q(random_image_factory):
    img = random_image_factory(8, 8, seed=77)
    p_q, _, raw, _ = qsobel(img, a_th=0.4)
    assert abs(raw.total - p_q) < 1e-12


def test_sobel_edges_constant_black():
    edge = sobel_edges(Image(pixels=np.full((4, 4), 0.3)), a_th=0.5)
    np.testing.assert_array_equal(edge.pixels, np.zeros((4, 4)))


def test_sobel_edges_step_two_columns():
    img = Image(pixels=np.array([[0.0, 0.0, 1.0, 1.0]] * 4))
    edge = sobel_edges(img, a_th=0.5)
    np.testing.assert_array_equal(edge.pixels[:, 1:3], np.ones((4, 2)))
    np.testing.assert_array_equal(edge.pixels[:, 0], np.zeros(4))
    np.testing.assert_array_equal(edge.pixels[:, 3], np.zeros(4))


def test_sobel_edges_threshold_zero_all_white():
    edge = sobel_edges(Image(pixels=np.full((3, 3), 0.2)), a_th=0.0)
    np.testing.assert_array_equal(edge.pixels, np.ones((3, 3)))
