"""
base: rounddct type aliases, constants, exceptions, and validators
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Every transform in rounddct works on 8-point vectors and 8x8 matrices. Rather
than wrapping numpy arrays in container classes, rounddct passes plain arrays
around and validates them at the boundaries with 'matrixify' and 'vectorify'.
Validated arrays are returned read-only so that values built once (the DCT
matrix, C0, the orthogonalizer) can be shared freely between threads.

Contents:
    Type Aliases:
        Matrix8: 8x8 float numpy array.
        Vector8: length 8 float numpy array.
        Operation: generic, flexible Callable type alias.
        Rounding: callable mapping a real array to an integer-valued array.
    Module Level Variables:
        BLOCK (int): the only supported blocklength.
        COEFFICIENTS (int): coefficients in one block.
        CLOSED_FORM_TOLERANCE (float): tolerance for constructions from closed
            forms.
        FILE_TOLERANCE (float): tolerance for values that passed through a file.
        PEAK (int): peak value of 8-bit samples.
    Exceptions:
        RoundDctError (Exception): base class for all rounddct errors.
        DimensionError (RoundDctError, ValueError): wrong shape or size.
        NonFiniteError (RoundDctError, ValueError): NaN or infinite values.
        DomainError (RoundDctError, ValueError): argument outside its range.
        KernelError (RoundDctError): missing or malformed integer kernel.
        FormatError (RoundDctError, ValueError): unparseable file contents.
        CorpusError (RoundDctError): corpus-level failures.
    Validators:
        matrixify (Callable): converts and validates an 8x8 matrix.
        vectorify (Callable): converts and validates an 8-point vector.
        freeze (Callable): returns a read-only view of an array.

"""
from __future__ import annotations
from collections.abc import Callable
import pathlib
from typing import Any, Optional, Union

import numpy as np


""" Type Aliases """

# 8x8 real matrix stored as a read-only float64 array.
Matrix8 = np.ndarray
# 8-point real vector stored as a read-only float64 array.
Vector8 = np.ndarray
# Simpler alias for generic callable.
Operation = Callable[..., Any]
# Elementwise rounding rule used to build round-off kernels.
Rounding = Callable[[np.ndarray], np.ndarray]
# Anything that can name a file.
Pathlike = Union[str, pathlib.Path]

""" Module Level Variables """

BLOCK: int = 8
COEFFICIENTS: int = BLOCK * BLOCK
CLOSED_FORM_TOLERANCE: float = 1e-12
FILE_TOLERANCE: float = 1e-9
PEAK: int = 255

""" Exceptions """

class RoundDctError(Exception):
    """Base class for errors raised by rounddct."""


class DimensionError(RoundDctError, ValueError):
    """Raised when an array, image, or file has the wrong dimensions."""


class NonFiniteError(RoundDctError, ValueError):
    """Raised when NaN or infinite values are passed."""


class DomainError(RoundDctError, ValueError):
    """Raised when an argument is outside of its allowed range."""


class KernelError(RoundDctError):
    """Raised when an integer kernel is missing or malformed."""


class FormatError(RoundDctError, ValueError):
    """Raised when a file cannot be parsed.

    Args:
        message (str): description of the problem.
        path (Optional[Pathlike]): file being parsed. Defaults to None.
        line (Optional[int]): 1-based line number, if known. Defaults to None.

    """

    def __init__(
        self,
        message: str,
        path: Optional[Pathlike] = None,
        line: Optional[int] = None) -> None:
        self.path = path
        self.line = line
        location = ''
        if path is not None:
            location = f'{path}'
            if line is not None:
                location = f'{location}:{line}'
            location = f'{location}: '
        super().__init__(f'{location}{message}')


class CorpusError(RoundDctError):
    """Raised when a corpus is empty or an image in it cannot be processed."""

""" Validators """

def freeze(item: np.ndarray) -> np.ndarray:
    """Returns a read-only copy of 'item'."""
    frozen = np.array(item, dtype = float, copy = True)
    frozen.setflags(write = False)
    return frozen

def matrixify(item: Any, name: str = 'matrix') -> Matrix8:
    """Converts 'item' to a validated, read-only 8x8 float matrix.

    Args:
        item (Any): nested sequence or array with 64 real entries.
        name (str): label used in error messages. Defaults to 'matrix'.

    Raises:
        DimensionError: if 'item' is not 8x8.
        NonFiniteError: if any entry is NaN or infinite.

    Returns:
        Matrix8: validated copy of 'item'.

    """
    matrix = np.asarray(item, dtype = float)
    if matrix.shape != (BLOCK, BLOCK):
        raise DimensionError(
            f'{name} must be {BLOCK}x{BLOCK}, got shape {matrix.shape}')
    if not np.all(np.isfinite(matrix)):
        raise NonFiniteError(f'{name} contains non-finite entries')
    return freeze(matrix)

def vectorify(item: Any, name: str = 'vector') -> Vector8:
    """Converts 'item' to a validated, read-only 8-point float vector."""
    vector = np.asarray(item, dtype = float)
    if vector.shape != (BLOCK,):
        raise DimensionError(
            f'{name} must have length {BLOCK}, got shape {vector.shape}')
    if not np.all(np.isfinite(vector)):
        raise NonFiniteError(f'{name} contains non-finite entries')
    return freeze(vector)
