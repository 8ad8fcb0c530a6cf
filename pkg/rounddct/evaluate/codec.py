"""
codec: block transform, zigzag coefficient retention, and reconstruction
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Each 8x8 block A is transformed to T @ A @ T.T, all but the first r
coefficients in JPEG zigzag order are zeroed, and T.T @ B @ T maps the block
back. Reconstructed pixels are rounded (ties away from zero) and then clamped
to [0, 255].

Blocks are independent, so the whole image is processed as one (n, 8, 8)
stack. The result does not depend on block order.

Contents:
    ZigzagOrder (dataclass): JPEG scan order of an 8x8 block.
    RetentionPolicy (dataclass): number of retained coefficients.
    forward_2d (Callable): T @ A @ T.T.
    inverse_2d (Callable): T.T @ B @ T.
    zigzag_order (Callable): the canonical JPEG zigzag scan.
    retain (Callable): zeroes coefficients past zigzag position r.
    reconstruct (Callable): pre-rounding reconstruction of an image.
    quantize_pixels (Callable): rounds and clamps samples to 8 bits.
    compress_image (Callable): full round trip of one image.

"""
from __future__ import annotations
import dataclasses
import functools
import logging
from typing import Any, Union

import numpy as np

import rounddct
from rounddct.core.base import (
    BLOCK, COEFFICIENTS, PEAK, DimensionError, DomainError)


LOGGER = logging.getLogger(__name__)

""" Retention """

@dataclasses.dataclass(frozen = True)
class ZigzagOrder(object):
    """Bijection from scan position to (row, column) in an 8x8 block.

    Args:
        positions (tuple[tuple[int, int], ...]): 64 distinct coordinates in
            scan order, starting at (0, 0).

    """
    positions: tuple[tuple[int, int], ...]

    """ Initialization Methods """

    def __post_init__(self) -> None:
        if (len(self.positions) != COEFFICIENTS
                or len(set(self.positions)) != COEFFICIENTS
                or any(not (0 <= r < BLOCK and 0 <= c < BLOCK)
                       for r, c in self.positions)):
            raise DomainError('a zigzag order must visit all 64 positions once')
        if self.positions[0] != (0, 0):
            raise DomainError('a zigzag order must start at (0, 0)')

    """ Public Methods """

    def mask(self, r: int) -> np.ndarray:
        """Returns an 8x8 boolean array marking the first 'r' positions."""
        kept = np.zeros((BLOCK, BLOCK), dtype = bool)
        for row, column in self.positions[:r]:
            kept[row, column] = True
        return kept

    def ranks(self) -> np.ndarray:
        """Returns an 8x8 array holding each coordinate's scan position."""
        ranks = np.empty((BLOCK, BLOCK), dtype = int)
        for rank, (row, column) in enumerate(self.positions):
            ranks[row, column] = rank
        return ranks


@dataclasses.dataclass(frozen = True)
class RetentionPolicy(object):
    """Keeps the first 'r' zigzag coefficients of every block.

    Args:
        r (int): retained-coefficient count in 1..64.

    """
    r: int

    """ Initialization Methods """

    def __post_init__(self) -> None:
        if isinstance(self.r, bool) or not isinstance(self.r, (int, np.integer)):
            raise DomainError(f'r must be an integer, got {self.r!r}')
        if not 1 <= self.r <= COEFFICIENTS:
            raise DomainError(
                f'r must be between 1 and {COEFFICIENTS}, got {self.r}')


Retention = Union[RetentionPolicy, int]

def _policy(policy: Retention) -> RetentionPolicy:
    if isinstance(policy, RetentionPolicy):
        return policy
    return RetentionPolicy(policy)

@functools.lru_cache(maxsize = None)
def zigzag_order() -> ZigzagOrder:
    """Returns the JPEG zigzag scan of an 8x8 block.

    Anti-diagonals are visited in order; odd ones run from the top row down and
    even ones from the bottom row up.

    """
    positions = []
    for total in range(2 * BLOCK - 1):
        rows = range(max(0, total - BLOCK + 1), min(total, BLOCK - 1) + 1)
        if total % 2 == 0:
            rows = reversed(rows)
        positions.extend((row, total - row) for row in rows)
    return ZigzagOrder(positions = tuple(positions))

def retain(coefficients: np.ndarray, policy: Retention) -> np.ndarray:
    """Zeroes coefficients at zigzag positions r and later.

    Args:
        coefficients (np.ndarray): one 8x8 block or an (n, 8, 8) stack.
        policy (Retention): RetentionPolicy or a bare r.

    Raises:
        DomainError: if r is outside 1..64.

    """
    policy = _policy(policy)
    coefficients = _block_stack(coefficients)
    return np.where(zigzag_order().mask(policy.r), coefficients, 0.0)

""" Block Transforms """

def _block_stack(item: Any) -> np.ndarray:
    values = np.asarray(item, dtype = float)
    if values.ndim < 2 or values.shape[-2:] != (BLOCK, BLOCK):
        raise DimensionError(
            f'expected {BLOCK}x{BLOCK} blocks, got shape {values.shape}')
    return values

def forward_2d(
    block: np.ndarray,
    transform: rounddct.transforms.TransformSpec) -> np.ndarray:
    """Returns T @ A @ T.T for one block or an (n, 8, 8) stack."""
    matrix = transform.exact_matrix
    return matrix @ _block_stack(block) @ matrix.T

def inverse_2d(
    block: np.ndarray,
    transform: rounddct.transforms.TransformSpec) -> np.ndarray:
    """Returns T.T @ B @ T.

    This is the exact inverse only for orthogonal T. For the coarse and signed
    approximations the transpose is an approximate inverse.

    """
    matrix = transform.exact_matrix
    return matrix.T @ _block_stack(block) @ matrix

""" Images """

def reconstruct(
    image: rounddct.imageio.GrayImage,
    transform: rounddct.transforms.TransformSpec,
    policy: Retention) -> np.ndarray:
    """Returns the real-valued reconstruction before rounding and clamping.

    Raises:
        DimensionError: if the image dimensions are not multiples of 8.
        DomainError: if r is outside 1..64.

    """
    policy = _policy(policy)
    stack = rounddct.imageio.to_blocks(image.pixels.astype(float))
    kept = retain(forward_2d(stack, transform), policy)
    restored = inverse_2d(kept, transform)
    return rounddct.imageio.from_blocks(restored, image.height, image.width)

def quantize_pixels(values: np.ndarray) -> np.ndarray:
    """Rounds half away from zero, then clamps to [0, 255]."""
    rounded = rounddct.transforms.round_half_away(np.asarray(values))
    return np.clip(rounded, 0, PEAK).astype(np.uint8)

def compress_image(
    image: rounddct.imageio.GrayImage,
    transform: rounddct.transforms.TransformSpec,
    policy: Retention) -> rounddct.imageio.GrayImage:
    """Compresses and reconstructs 'image' with 'transform'.

    Args:
        image (rounddct.imageio.GrayImage): image with dimensions divisible
            by 8.
        transform (rounddct.transforms.TransformSpec): block transform.
        policy (Retention): coefficients kept per block.

    Raises:
        DimensionError: if the image dimensions are not multiples of 8.
        DomainError: if r is outside 1..64.

    Returns:
        rounddct.imageio.GrayImage: 8-bit reconstruction with the same name.

    """
    restored = reconstruct(image, transform, policy)
    return rounddct.imageio.GrayImage(
        quantize_pixels(restored), name = image.name)
