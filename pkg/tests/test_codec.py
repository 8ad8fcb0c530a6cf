"""
test_codec: tests block transforms, zigzag retention, and reconstruction
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

"""
import math

import numpy as np
import numpy.testing
import pytest

import rounddct


# Raster index of each scan position in the JPEG zigzag order.
JPEG_NATURAL_ORDER = [
    0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6, 7, 14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63]


def _random_image(seed: int, height: int = 32, width: int = 32):
    rng = np.random.default_rng(seed)
    return rounddct.imageio.GrayImage(
        rng.integers(0, 256, size = (height, width)), name = f'random{seed}')

def test_zigzag_order() -> None:
    order = rounddct.codec.zigzag_order()
    assert order.positions[:4] == ((0, 0), (0, 1), (1, 0), (2, 0))
    assert order.positions[-1] == (7, 7)
    assert [8 * r + c for r, c in order.positions] == JPEG_NATURAL_ORDER
    ranks = order.ranks()
    for rank, raster in enumerate(JPEG_NATURAL_ORDER):
        assert ranks.flat[raster] == rank
    assert order.mask(3).sum() == 3
    return

def test_zigzag_order_validation() -> None:
    with pytest.raises(rounddct.base.DomainError):
        rounddct.codec.ZigzagOrder(positions = ((0, 0),) * 64)
    positions = rounddct.codec.zigzag_order().positions
    with pytest.raises(rounddct.base.DomainError):
        rounddct.codec.ZigzagOrder(positions = positions[1:] + positions[:1])
    return

def test_retention_policy() -> None:
    assert rounddct.codec.RetentionPolicy(10).r == 10
    for bad in (0, 65, -1, 2.5, True):
        with pytest.raises(rounddct.base.DomainError):
            rounddct.codec.RetentionPolicy(bad)
    return

def test_retain() -> None:
    rng = np.random.default_rng(5)
    block = rng.normal(size = (8, 8))
    numpy.testing.assert_array_equal(rounddct.codec.retain(block, 64), block)
    dc = rounddct.codec.retain(block, 1)
    assert dc[0, 0] == block[0, 0]
    assert np.count_nonzero(dc) == 1
    five = rounddct.codec.retain(block, rounddct.codec.RetentionPolicy(5))
    kept = {(int(r), int(c)) for r, c in zip(*np.nonzero(five))}
    assert kept == {(0, 0), (0, 1), (1, 0), (2, 0), (1, 1)}
    numpy.testing.assert_array_equal(rounddct.codec.retain(five, 5), five)
    numpy.testing.assert_array_equal(
        rounddct.codec.retain(rounddct.codec.retain(block, 20), 7),
        rounddct.codec.retain(block, 7))
    stack = rng.normal(size = (3, 8, 8))
    assert rounddct.codec.retain(stack, 2).shape == (3, 8, 8)
    with pytest.raises(rounddct.base.DomainError):
        rounddct.codec.retain(block, 0)
    with pytest.raises(rounddct.base.DimensionError):
        rounddct.codec.retain(np.ones((4, 4)), 3)
    return

def test_forward_2d_constant_block() -> None:
    coefficients = rounddct.codec.forward_2d(
        np.full((8, 8), 128.0), rounddct.transforms.dct_transform())
    assert coefficients[0, 0] == pytest.approx(1024.0, abs = 1e-9)
    coefficients[0, 0] = 0.0
    numpy.testing.assert_allclose(coefficients, 0.0, atol = 1e-9)
    return

def test_forward_2d_matches_triple_product() -> None:
    spec = rounddct.transforms.proposed_transform()
    matrix = spec.exact_matrix
    block = np.arange(64.0).reshape(8, 8) % 13
    expected = np.zeros((8, 8))
    for i in range(8):
        for j in range(8):
            expected[i, j] = sum(
                matrix[i, k] * block[k, l] * matrix[j, l]
                for k in range(8) for l in range(8))
    numpy.testing.assert_allclose(
        rounddct.codec.forward_2d(block, spec), expected, rtol = 0, atol = 1e-9)
    return

def test_round_trip_orthogonal() -> None:
    rng = np.random.default_rng(9)
    block = rng.integers(0, 256, size = (8, 8)).astype(float)
    for spec in (
            rounddct.transforms.dct_transform(),
            rounddct.transforms.proposed_transform()):
        restored = rounddct.codec.inverse_2d(
            rounddct.codec.forward_2d(block, spec), spec)
        numpy.testing.assert_allclose(restored, block, rtol = 0, atol = 1e-9)
        # Orthonormal transforms preserve energy.
        assert np.linalg.norm(
            rounddct.codec.forward_2d(block, spec)) == pytest.approx(
                np.linalg.norm(block))
    sdct = rounddct.transforms.sdct_transform()
    restored = rounddct.codec.inverse_2d(
        rounddct.codec.forward_2d(block, sdct), sdct)
    assert np.max(np.abs(restored - block)) > 1e-3
    return

def test_compress_image_lossless() -> None:
    corpus = [
        _random_image(1),
        _random_image(2, height = 16, width = 40),
        _random_image(3, height = 64, width = 24)]
    specs = [
        rounddct.transforms.dct_transform(),
        rounddct.transforms.proposed_transform(),
        rounddct.transforms.roundoff_transform()]
    for image in corpus:
        for spec in specs:
            restored = rounddct.codec.compress_image(image, spec, 64)
            assert restored == image
            assert restored.name == image.name
    return

def test_compress_constant_image() -> None:
    image = rounddct.imageio.GrayImage(np.full((16, 24), 77), name = 'flat')
    for spec in (
            rounddct.transforms.dct_transform(),
            rounddct.transforms.proposed_transform(),
            rounddct.transforms.sdct_transform()):
        assert rounddct.codec.compress_image(image, spec, 1) == image
    return

def _reference_compress(pixels: np.ndarray, r: int) -> np.ndarray:
    """Per-block scalar loops with the exact DCT."""
    matrix = [[(1 / math.sqrt(8)) if m == 0 else
               0.5 * math.cos((2 * n + 1) * m * math.pi / 16)
               for n in range(8)] for m in range(8)]
    kept = {(i, j) for i, j in (divmod(raster, 8)
                                for raster in JPEG_NATURAL_ORDER[:r])}
    output = np.zeros(pixels.shape, dtype = np.uint8)
    for top in range(0, pixels.shape[0], 8):
        for left in range(0, pixels.shape[1], 8):
            block = [[float(pixels[top + k, left + l]) for l in range(8)]
                     for k in range(8)]
            coefficients = [[
                sum(matrix[i][k] * block[k][l] * matrix[j][l]
                    for k in range(8) for l in range(8))
                if (i, j) in kept else 0.0
                for j in range(8)] for i in range(8)]
            for k in range(8):
                for l in range(8):
                    value = sum(
                        matrix[i][k] * coefficients[i][j] * matrix[j][l]
                        for i in range(8) for j in range(8))
                    rounded = math.copysign(math.floor(abs(value) + 0.5), value)
                    output[top + k, left + l] = min(max(rounded, 0), 255)
    return output

def test_compress_image_matches_reference() -> None:
    rows, columns = np.mgrid[0:16, 0:16]
    image = rounddct.imageio.GrayImage(
        (rows * 9 + columns * 5 + 3) % 256, name = 'gradient')
    restored = rounddct.codec.compress_image(
        image, rounddct.transforms.dct_transform(), 10)
    numpy.testing.assert_array_equal(
        restored.pixels, _reference_compress(image.pixels, 10))
    return

def test_reconstruct_error_decreases_with_r() -> None:
    image = _random_image(4, 16, 16)
    dct = rounddct.transforms.dct_transform()
    original = image.pixels.astype(float)
    errors = [
        float(np.mean((rounddct.codec.reconstruct(image, dct, r) - original) ** 2))
        for r in range(1, 65)]
    assert all(b <= a + 1e-9 for a, b in zip(errors, errors[1:]))
    assert errors[-1] == pytest.approx(0.0, abs = 1e-18)
    return

def test_quantize_pixels() -> None:
    values = np.array([[-3.2, -0.5, 0.49, 0.5], [127.5, 254.4, 255.5, 300.0]])
    numpy.testing.assert_array_equal(
        rounddct.codec.quantize_pixels(values),
        [[0, 0, 0, 1], [128, 254, 255, 255]])
    assert rounddct.codec.quantize_pixels(values).dtype == np.uint8
    return

def test_compress_image_errors() -> None:
    image = rounddct.imageio.GrayImage(np.zeros((12, 16)), name = 'odd')
    with pytest.raises(rounddct.base.DimensionError):
        rounddct.codec.compress_image(
            image, rounddct.transforms.proposed_transform(), 4)
    with pytest.raises(rounddct.base.DomainError):
        rounddct.codec.compress_image(
            _random_image(2), rounddct.transforms.proposed_transform(), 65)
    return


if __name__ == '__main__':
    pytest.main([__file__])
