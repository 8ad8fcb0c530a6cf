"""
imageio: 8-bit grayscale PGM images and 8x8 block partitioning
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Only Netpbm graymaps are supported: binary P5 and ASCII P2 with maxval up to
255. Images are always written as P5 with the canonical header
'P5\\n<width> <height>\\n255\\n' so that write after read is byte-exact.

Contents:
    GrayImage (dataclass): immutable 8-bit grayscale raster.
    read_pgm (Callable): decodes a P2 or P5 file.
    write_pgm (Callable): encodes a GrayImage as P5.
    read_corpus (Callable): reads every PGM in a folder, sorted by name.
    blocks (Callable): row-major (coordinates, Block8) pairs of an image.
    reassemble (Callable): inverse of 'blocks'.
    to_blocks (Callable): (height, width) array to an (n, 8, 8) block stack.
    from_blocks (Callable): inverse of 'to_blocks'.

"""
from __future__ import annotations
from collections.abc import Iterable
import dataclasses
import logging
import pathlib
import re

import numpy as np

from rounddct.core.base import (
    BLOCK, PEAK, CorpusError, DimensionError, DomainError, FormatError,
    Pathlike)


LOGGER = logging.getLogger(__name__)

MAGIC_NUMBERS: tuple[str, ...] = ('P2', 'P5')
SUFFIXES: tuple[str, ...] = ('.pgm', '.PGM')

# Header tokens are whitespace-separated; '#' comments run to end of line.
_TOKEN = re.compile(rb'\s*(?:#[^\n\r]*[\n\r]\s*)*([^\s#]+)')

""" Image Type """

@dataclasses.dataclass(frozen = True, eq = False)
class GrayImage(object):
    """Immutable 8-bit grayscale raster.

    Args:
        pixels (np.ndarray): (height, width) intensities in [0, 255]. Stored as
            a read-only uint8 copy.
        name (str): label used in reports, usually the file stem. Defaults to
            an empty str.

    """
    pixels: np.ndarray
    name: str = ''

    """ Initialization Methods """

    def __post_init__(self) -> None:
        """Validates and freezes 'pixels'."""
        values = np.asarray(self.pixels)
        if values.ndim != 2 or values.size == 0:
            raise DimensionError(
                f'pixels must be a nonempty 2-D array, got shape '
                f'{values.shape}')
        if np.issubdtype(values.dtype, np.floating):
            if not np.all(np.isfinite(values)):
                raise DomainError('pixels must be finite')
            if np.any(values != np.round(values)):
                raise DomainError('pixels must be integers')
        if np.any(values < 0) or np.any(values > PEAK):
            raise DomainError(f'pixels must be in [0, {PEAK}]')
        frozen = values.astype(np.uint8)
        frozen.setflags(write = False)
        object.__setattr__(self, 'pixels', frozen)

    """ Properties """

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    """ Dunder Methods """

    def __eq__(self, other: object) -> bool:
        """Images are equal when their pixels are, regardless of 'name'."""
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

""" PGM Files """

def _tokens(data: bytes, count: int, path: pathlib.Path) -> tuple[
    list[bytes], int]:
    """Returns 'count' header tokens and the offset just past the last one."""
    tokens = []
    offset = 0
    for _ in range(count):
        match = _TOKEN.match(data, offset)
        if match is None:
            raise FormatError('truncated header', path = path)
        tokens.append(match.group(1))
        offset = match.end()
    return tokens, offset

def _header_value(token: bytes, label: str, path: pathlib.Path) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f'invalid {label} {token!r}', path = path)
    if value <= 0:
        raise FormatError(f'{label} must be positive, got {value}', path = path)
    return value

def read_pgm(path: Pathlike) -> GrayImage:
    """Decodes a binary (P5) or ASCII (P2) graymap.

    Sample values are kept as stored, so a maxval below 255 is not rescaled.

    Args:
        path (Pathlike): file to read.

    Raises:
        FormatError: for a bad magic number, a maxval above 255, malformed
            header fields, or a truncated payload.

    Returns:
        GrayImage: decoded image named after the file stem.

    """
    path = pathlib.Path(path)
    data = path.read_bytes()
    (magic, width, height, maxval), offset = _tokens(data, 4, path)
    magic = magic.decode('ascii', errors = 'replace')
    if magic not in MAGIC_NUMBERS:
        raise FormatError(f'unsupported magic number {magic}', path = path)
    width = _header_value(width, 'width', path)
    height = _header_value(height, 'height', path)
    maxval = _header_value(maxval, 'maxval', path)
    if maxval > PEAK:
        raise FormatError(f'maxval {maxval} exceeds {PEAK}', path = path)
    size = width * height
    if magic == 'P5':
        # Exactly one whitespace byte separates maxval from the raster.
        raster = data[offset + 1:offset + 1 + size]
        if len(raster) < size:
            raise FormatError(
                f'truncated payload: expected {size} bytes, got '
                f'{len(raster)}', path = path)
        values = np.frombuffer(raster, dtype = np.uint8)
    else:
        try:
            values = np.array(
                _tokens(data[offset:], size, path)[0], dtype = np.int64)
        except FormatError:
            raise FormatError(
                f'truncated payload: expected {size} samples', path = path)
        except ValueError as error:
            raise FormatError(f'invalid sample: {error}', path = path)
    if np.any(values > maxval):
        raise FormatError(f'sample exceeds maxval {maxval}', path = path)
    LOGGER.debug('read %s: %s %dx%d', path, magic, width, height)
    return GrayImage(values.reshape(height, width), name = path.stem)

def write_pgm(image: GrayImage, path: Pathlike) -> pathlib.Path:
    """Writes 'image' as a canonical binary P5 graymap with maxval 255.

    Parent folders are created as needed.

    """
    path = pathlib.Path(path)
    path.parent.mkdir(parents = True, exist_ok = True)
    header = f'P5\n{image.width} {image.height}\n{PEAK}\n'.encode('ascii')
    path.write_bytes(header + image.pixels.tobytes())
    return path

def read_corpus(folder: Pathlike) -> list[GrayImage]:
    """Reads every PGM file in 'folder' in sorted file name order.

    Raises:
        CorpusError: if 'folder' has no PGM files or one of them fails to
            decode.

    """
    folder = pathlib.Path(folder)
    if not folder.is_dir():
        raise CorpusError(f'{folder} is not a folder')
    paths = sorted(p for p in folder.iterdir() if p.suffix in SUFFIXES)
    if not paths:
        raise CorpusError(f'{folder} contains no PGM images')
    images = []
    for path in paths:
        try:
            images.append(read_pgm(path))
        except (FormatError, DomainError, DimensionError) as error:
            raise CorpusError(f'cannot read {path.name}: {error}') from error
    LOGGER.info('read %d images from %s', len(images), folder)
    return images

""" Block Partitioning """

def _check_divisible(height: int, width: int) -> None:
    if height % BLOCK or width % BLOCK:
        raise DimensionError(
            f'image dimensions {width}x{height} are not multiples of {BLOCK}')

def to_blocks(pixels: np.ndarray) -> np.ndarray:
    """Returns the (n, 8, 8) stack of blocks of 'pixels' in row-major order.

    Raises:
        DimensionError: if either dimension is not a multiple of 8.

    """
    height, width = pixels.shape
    _check_divisible(height, width)
    grid = pixels.reshape(height // BLOCK, BLOCK, width // BLOCK, BLOCK)
    return grid.transpose(0, 2, 1, 3).reshape(-1, BLOCK, BLOCK)

def from_blocks(stack: np.ndarray, height: int, width: int) -> np.ndarray:
    """Returns the (height, width) array tiled from a row-major block stack."""
    _check_divisible(height, width)
    rows, columns = height // BLOCK, width // BLOCK
    if stack.shape != (rows * columns, BLOCK, BLOCK):
        raise DimensionError(
            f'{stack.shape[0]} blocks cannot tile a {width}x{height} image')
    grid = stack.reshape(rows, columns, BLOCK, BLOCK)
    return grid.transpose(0, 2, 1, 3).reshape(height, width)

def blocks(image: GrayImage) -> list[tuple[tuple[int, int], np.ndarray]]:
    """Returns ((block_row, block_column), Block8) pairs in row-major order."""
    stack = to_blocks(image.pixels)
    columns = image.width // BLOCK
    return [((i // columns, i % columns), block) for i, block in enumerate(stack)]

def reassemble(
    pieces: Iterable[tuple[tuple[int, int], np.ndarray]],
    width: int,
    height: int,
    name: str = '') -> GrayImage:
    """Places blocks at their coordinates and returns the resulting image.

    Raises:
        DimensionError: if a block lies outside the block grid or is not
            8x8, or if the blocks do not cover the image exactly once.

    """
    _check_divisible(height, width)
    pixels = np.zeros((height, width), dtype = np.int64)
    covered = np.zeros((height // BLOCK, width // BLOCK), dtype = int)
    for (row, column), block in pieces:
        if not (0 <= row < covered.shape[0] and 0 <= column < covered.shape[1]):
            raise DimensionError(
                f'block ({row}, {column}) lies outside the '
                f'{covered.shape[0]}x{covered.shape[1]} block grid')
        if np.shape(block) != (BLOCK, BLOCK):
            raise DimensionError(
                f'block ({row}, {column}) has shape {np.shape(block)}, '
                f'expected ({BLOCK}, {BLOCK})')
        top, left = row * BLOCK, column * BLOCK
        pixels[top:top + BLOCK, left:left + BLOCK] = block
        covered[row, column] += 1
    if not np.all(covered == 1):
        raise DimensionError('blocks must cover every position exactly once')
    return GrayImage(pixels, name = name)
