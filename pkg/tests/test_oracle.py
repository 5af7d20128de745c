"""Tests for gradient marking and the Sobel reference operator."""

import numpy as np
import pytest

from qwalk_edge.imagekit import Image
from qwalk_edge.oracle import MarkedSet, gradient_field, mark, sobel_magnitude


def test_constant_image_has_zero_gradients():
    img = Image(pixels=np.full((4, 5), 0.7))
    field = gradient_field(img)
    np.testing.assert_array_equal(field.gmax, np.zeros((4, 5)))


def test_step_marks_bright_side():
    # step along x: columns 0,0,1,1
    img = Image(pixels=np.array([[0.0, 0.0, 1.0, 1.0]] * 3))
    field = gradient_field(img)
    # the first bright column sees its dark left neighbor
    np.testing.assert_array_equal(field.gmax[:, 2], np.ones(3))
    # dark columns and the interior bright column see nothing brighter-side
    np.testing.assert_array_equal(field.gmax[:, 0], np.zeros(3))
    np.testing.assert_array_equal(field.gmax[:, 1], np.zeros(3))
    np.testing.assert_array_equal(field.gmax[:, 3], np.zeros(3))


def test_center_bright_pixel_field():
    # hand-evaluated: all four differences per pixel of a 3x3 with bright center
    px = np.zeros((3, 3))
    px[1, 1] = 1.0
    field = gradient_field(Image(pixels=px))
    expected = np.zeros((3, 3))
    expected[1, 1] = 1.0  # center: every difference is +1
    # 4-neighbors: best difference is 0 (toward the border), worst -1 (center)
    np.testing.assert_array_equal(field.gmax, expected)


def test_border_clamping_yields_zero_difference():
    # a bright pixel in the corner: out-of-range neighbors clamp to itself
    px = np.zeros((2, 2))
    px[0, 0] = 1.0
    field = gradient_field(Image(pixels=px))
    assert field.gmax[0, 0] == 1.0  # from in-range neighbors only


def test_mark_constant_image_empty():
    field = gradient_field(Image(pixels=np.full((3, 3), 0.5)))
    assert mark(field, 0.1).m == 0


def test_mark_step_exact_pixels():
    img = Image(pixels=np.array([[0.0, 0.0, 1.0, 1.0]] * 2))
    marked = mark(gradient_field(img), 0.5)
    assert marked.coords == frozenset({(2, 0), (2, 1)})
    assert marked.m == 2


def test_mark_threshold_above_max_empty():
    img = Image(pixels=np.array([[0.0, 0.4]]))
    assert mark(gradient_field(img), 0.5).m == 0


def test_mark_requires_positive_threshold():
    field = gradient_field(Image(pixels=np.zeros((2, 2))))
    with pytest.raises(ValueError):
        mark(field, 0.0)


def test_mark_monotone_in_threshold(random_image_factory):
    img = random_image_factory(12, 9, seed=21)
    field = gradient_field(img)
    sets = [mark(field, a).coords for a in (0.1, 0.3, 0.6, 0.9)]
    for smaller_th, larger_th in zip(sets, sets[1:]):
        assert larger_th <= smaller_th


def test_gradient_translation_equivariance(random_image_factory):
    img = random_image_factory(10, 10, seed=4)
    shifted = Image(pixels=np.roll(img.pixels, (2, 3), axis=(0, 1)))
    g = gradient_field(img).gmax
    gs = gradient_field(shifted).gmax
    # compare away from borders, where clamping differs
    np.testing.assert_allclose(np.roll(g, (2, 3), axis=(0, 1))[3:-3, 4:-4], gs[3:-3, 4:-4])


def test_binary_image_gradients_are_binary(square_image):
    field = gradient_field(square_image)
    assert set(np.unique(field.gmax)) <= {0.0, 1.0}
    # any threshold in (0, 1] marks the same set
    assert mark(field, 0.2).coords == mark(field, 1.0).coords


def test_marked_set_validates_range():
    with pytest.raises(ValueError):
        MarkedSet(coords=frozenset({(5, 0)}), width=4, height=4)


def test_marked_set_indices_row_major():
    ms = MarkedSet(coords=frozenset({(1, 0), (0, 2)}), width=3, height=3)
    np.testing.assert_array_equal(ms.to_indices(), [1, 6])


def test_sobel_constant_zero():
    img = Image(pixels=np.full((5, 5), 0.3))
    np.testing.assert_array_equal(sobel_magnitude(img).gmax, np.zeros((5, 5)))


def test_sobel_vertical_step_response():
    # hand convolution: weights 1+2+1 = 4 on both columns adjacent to the step
    img = Image(pixels=np.array([[0.0, 0.0, 1.0, 1.0]] * 5))
    g = sobel_magnitude(img).gmax
    np.testing.assert_allclose(g[:, 1], np.full(5, 4.0))
    np.testing.assert_allclose(g[:, 2], np.full(5, 4.0))
    np.testing.assert_allclose(g[:, 0], np.zeros(5))
    np.testing.assert_allclose(g[:, 3], np.zeros(5))


def test_sobel_single_bright_pixel():
    # hand convolution around an isolated bright pixel on a 5x5 dark field:
    # 4-neighbors see weight 2 on one axis, diagonals see weight 1 on both
    px = np.zeros((5, 5))
    px[2, 2] = 1.0
    g = sobel_magnitude(Image(pixels=px)).gmax
    expected = np.zeros((5, 5))
    expected[2, 1] = expected[2, 3] = expected[1, 2] = expected[3, 2] = 2.0
    expected[1, 1] = expected[1, 3] = expected[3, 1] = expected[3, 3] = np.sqrt(2.0)
    np.testing.assert_allclose(g, expected)


def test_sobel_nonnegative(random_image_factory):
    img = random_image_factory(8, 8, seed=9)
    assert sobel_magnitude(img).gmax.min() >= 0.0
