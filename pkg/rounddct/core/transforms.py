"""
transforms: exact DCT, round-off approximations, and comparator matrices
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

The round-off approximation starts from the orthonormal 8-point DCT-II matrix
C. Doubling C and rounding each entry (ties away from zero) yields the integer
kernel C0 with entries in {-1, 0, 1}. Because C0 @ C0.T is diagonal, the polar
decomposition orthogonalizer S = sqrt(inv(C0 @ C0.T)) is diagonal as well, so
S @ C0 is orthogonal while all of its arithmetic lives in C0. S is meant to be
merged into quantization.

Contents:
    ArithmeticCost (dataclass): addition, multiplication, and bit-shift counts.
    TransformSpec (dataclass): a named transform with an optional integer kernel
        and diagonal factorization.
    exact_dct_matrix (Callable): orthonormal 8-point DCT-II matrix.
    round_half_away (Callable): rounding with ties away from zero.
    roundoff_kernel (Callable): rounding(scale * C) with pluggable rounding.
    c0_matrix (Callable): the {-1, 0, 1} round-off kernel.
    orthogonalizer_diagonal (Callable): diagonal of S for C0.
    orthogonalize (Callable): general polar-decomposition orthogonalizer.
    orthogonality_residual (Callable): max |T @ T.T - I|.
    is_orthogonal (Callable): whether the residual is within tolerance.
    dense_cost (Callable): static cost of a direct matrix-vector product.
    frobenius_optimal_scale (Callable): closed-form least-squares scale.
    frobenius_scale_search (Callable): golden-section search for the same.
    dct_transform, proposed_transform, coarse_transform, scaled_transform,
        sdct_transform, roundoff_transform, hybrid_transform (Callables):
        TransformSpec builders.
    load_comparator (Callable): reads a matrix file into a TransformSpec.
    save_comparator (Callable): writes a TransformSpec as a matrix file.

"""
from __future__ import annotations
from collections.abc import Sequence
import dataclasses
import functools
import logging
import math
import pathlib
from typing import Optional, Union

import numpy as np
import scipy.linalg
import scipy.optimize

from rounddct.core.base import (
    BLOCK, CLOSED_FORM_TOLERANCE, FILE_TOLERANCE, DimensionError, FormatError,
    KernelError, Matrix8, NonFiniteError, Pathlike, Rounding, Vector8, freeze,
    matrixify, vectorify)


LOGGER = logging.getLogger(__name__)

# Shared DC normalization so that every transform with a constant first row
# produces bit-identical DC coefficients.
DC_SCALE: float = 1.0 / math.sqrt(8.0)

""" Arithmetic Cost """

@dataclasses.dataclass(frozen = True)
class ArithmeticCost(object):
    """Operation counts of a transform realization.

    Args:
        additions (int): two-operand additions and subtractions.
        multiplications (int): multiplications by non-trivial constants.
        bit_shifts (int): multiplications by powers of two other than 1.
        total (Optional[int]): sum of the three counts. If not passed, it is
            computed. Defaults to None.

    """
    additions: int = 0
    multiplications: int = 0
    bit_shifts: int = 0
    total: Optional[int] = None

    """ Initialization Methods """

    def __post_init__(self) -> None:
        """Fills in or checks 'total'."""
        counted = self.additions + self.multiplications + self.bit_shifts
        if self.total is None:
            object.__setattr__(self, 'total', counted)
        elif self.total != counted:
            raise ValueError(
                f'total {self.total} does not equal the sum of its parts '
                f'({counted})')
        if min(self.additions, self.multiplications, self.bit_shifts) < 0:
            raise ValueError('operation counts cannot be negative')

    """ Public Methods """

    def as_row(self) -> tuple[int, int, int, int]:
        """Returns the counts in Table order: add, mult, shift, total."""
        return (
            self.additions, self.multiplications, self.bit_shifts,
            self.total) # type: ignore

""" Transform Specification """

@dataclasses.dataclass(frozen = True, eq = False)
class TransformSpec(object):
    """A named 8-point transform.

    Args:
        name (str): registry key for the transform.
        exact_matrix (Matrix8): normalized matrix used for fidelity and spectral
            math.
        declared_cost (ArithmeticCost): cost claimed for the transform, taken
            from its builder or the matrix file.
        integer_kernel (Optional[Matrix8]): multiplication-free core with
            entries in {-1, 0, 1}. Defaults to None.
        diagonal (Optional[Vector8]): positive scaling merged into
            quantization. Defaults to None.
        orthogonal (bool): whether 'exact_matrix' is orthogonal. Defaults to
            False.
        graph (Optional[str]): key of a hand-built flow graph in
            'rounddct.flowgraph.GRAPHS' that computes 'integer_kernel'. Defaults
            to None.
        tolerance (float): allowed deviation between 'exact_matrix' and
            diag(diagonal) @ integer_kernel. Defaults to
            CLOSED_FORM_TOLERANCE.

    """
    name: str
    exact_matrix: Matrix8
    declared_cost: ArithmeticCost
    integer_kernel: Optional[Matrix8] = None
    diagonal: Optional[Vector8] = None
    orthogonal: bool = False
    graph: Optional[str] = None
    tolerance: float = dataclasses.field(
        default = CLOSED_FORM_TOLERANCE, compare = False)

    """ Initialization Methods """

    def __post_init__(self) -> None:
        """Validates the matrices and the kernel factorization."""
        object.__setattr__(
            self, 'exact_matrix',
            matrixify(self.exact_matrix, name = f'{self.name} matrix'))
        if self.integer_kernel is not None:
            kernel = matrixify(
                self.integer_kernel, name = f'{self.name} kernel')
            if not np.all(np.isin(kernel, (-1.0, 0.0, 1.0))):
                raise KernelError(
                    f'{self.name} kernel entries must be -1, 0, or 1')
            object.__setattr__(self, 'integer_kernel', kernel)
        if self.diagonal is not None:
            diagonal = vectorify(self.diagonal, name = f'{self.name} diagonal')
            if np.any(diagonal <= 0):
                raise ValueError(f'{self.name} diagonal must be positive')
            object.__setattr__(self, 'diagonal', diagonal)
        if self.integer_kernel is not None and self.diagonal is not None:
            product = self.diagonal[:, np.newaxis] * self.integer_kernel
            deviation = np.max(np.abs(product - self.exact_matrix))
            if deviation > self.tolerance:
                raise KernelError(
                    f'{self.name} matrix differs from diag(diagonal) @ kernel '
                    f'by {deviation:.3e}')

    """ Properties """

    @property
    def executable(self) -> bool:
        """Returns whether the transform has a kernel that can be audited."""
        return self.graph is not None or self.integer_kernel is not None

""" Matrix Construction """

@functools.lru_cache(maxsize = None)
def exact_dct_matrix() -> Matrix8:
    """Returns the orthonormal 8-point DCT-II matrix C.

    C[m][n] = a_m * cos((2n + 1) * m * pi / 16) with a_0 = 1 / (2 * sqrt(2))
    and a_m = 1 / 2 otherwise.

    """
    m = np.arange(BLOCK)[:, np.newaxis]
    n = np.arange(BLOCK)[np.newaxis, :]
    matrix = 0.5 * np.cos((2 * n + 1) * m * np.pi / (2 * BLOCK))
    matrix[0, :] = DC_SCALE
    return freeze(matrix)

def round_half_away(item: Union[float, np.ndarray]) -> Union[int, np.ndarray]:
    """Rounds to the nearest integer with ties going away from zero.

    This matches the round-off operation of Matlab: 0.5 becomes 1 and -0.5
    becomes -1. Unlike the naive floor(|x| + 0.5), the fractional part is
    compared directly so that 0.49999999999999994 still rounds to 0.

    Args:
        item (Union[float, np.ndarray]): finite real value(s).

    Raises:
        NonFiniteError: if 'item' contains NaN or infinite values.

    Returns:
        Union[int, np.ndarray]: an int for scalar input and an integer-valued
            float array for array input.

    """
    values = np.asarray(item, dtype = float)
    if not np.all(np.isfinite(values)):
        raise NonFiniteError('cannot round non-finite values')
    magnitude = np.abs(values)
    whole = np.floor(magnitude)
    rounded = np.sign(values) * (whole + (magnitude - whole >= 0.5))
    if np.ndim(item) == 0:
        return int(rounded)
    return rounded + 0.0

def roundoff_kernel(
    scale: float = 2.0,
    rounding: Rounding = round_half_away) -> Matrix8:
    """Returns rounding(scale * C) computed elementwise.

    The defaults give C0. Other rounding rules (numpy.floor, numpy.ceil) are
    accepted to explore further round-off families.

    """
    return matrixify(
        rounding(scale * exact_dct_matrix()), name = 'round-off kernel')

@functools.lru_cache(maxsize = None)
def c0_matrix() -> Matrix8:
    """Returns C0, the {-1, 0, 1} round-off of 2 * C."""
    return roundoff_kernel()

def orthogonalizer_diagonal(kernel: Optional[Matrix8] = None) -> Vector8:
    """Returns the diagonal of S = sqrt(inv(K @ K.T)) for a row-orthogonal K.

    When K @ K.T is diagonal, the principal square root of its inverse is the
    elementwise reciprocal square root of the squared row norms.

    Args:
        kernel (Optional[Matrix8]): integer kernel K. Defaults to C0.

    Raises:
        KernelError: if K @ K.T is not diagonal or has a zero row.

    Returns:
        Vector8: positive diagonal entries of S.

    """
    kernel = c0_matrix() if kernel is None else matrixify(kernel, 'kernel')
    gram = kernel @ kernel.T
    off_diagonal = gram - np.diag(np.diag(gram))
    if np.any(np.abs(off_diagonal) > CLOSED_FORM_TOLERANCE):
        raise KernelError('kernel rows are not mutually orthogonal')
    norms = np.diag(gram)
    if np.any(norms <= 0):
        raise KernelError('kernel has an all-zero row')
    return vectorify(1.0 / np.sqrt(norms), name = 'orthogonalizer')

def orthogonalize(kernel: Matrix8) -> Matrix8:
    """Returns sqrt(inv(K @ K.T)) @ K using the principal matrix square root.

    Args:
        kernel (Matrix8): nonsingular 8x8 matrix K.

    Raises:
        KernelError: if K is singular.

    Returns:
        Matrix8: orthogonal matrix closest to K in the polar sense.

    """
    kernel = matrixify(kernel, name = 'kernel')
    gram = kernel @ kernel.T
    if abs(np.linalg.det(gram)) < CLOSED_FORM_TOLERANCE:
        raise KernelError('kernel is singular and cannot be orthogonalized')
    root = scipy.linalg.sqrtm(scipy.linalg.inv(gram))
    if np.iscomplexobj(root):
        root = np.real_if_close(root, tol = 1000)
    return matrixify(np.real(root) @ kernel, name = 'orthogonalized kernel')

def orthogonality_residual(matrix: Matrix8) -> float:
    """Returns max |T @ T.T - I|."""
    matrix = np.asarray(matrix, dtype = float)
    return float(np.max(np.abs(matrix @ matrix.T - np.eye(BLOCK))))

def is_orthogonal(
    matrix: Matrix8,
    tolerance: float = CLOSED_FORM_TOLERANCE) -> bool:
    """Returns whether 'matrix' is orthogonal within 'tolerance'."""
    return orthogonality_residual(matrix) < tolerance

def dense_cost(matrix: Matrix8) -> ArithmeticCost:
    """Returns the cost of computing matrix @ x entry by entry.

    Zero entries are free. Each row needs one addition per nonzero entry beyond
    the first. Entries of magnitude 1 are free (a sign flip folds into the
    adjacent addition), other powers of two cost a bit-shift, and anything else
    costs a multiplication.

    """
    matrix = np.asarray(matrix, dtype = float)
    magnitudes = np.abs(matrix[matrix != 0])
    exponents = np.log2(magnitudes)
    dyadic = np.isclose(exponents, np.round(exponents), rtol = 0, atol = 1e-12)
    unit = np.isclose(magnitudes, 1.0, rtol = 0, atol = 1e-12)
    nonzero = np.count_nonzero(matrix, axis = 1)
    return ArithmeticCost(
        additions = int(np.sum(np.maximum(nonzero - 1, 0))),
        multiplications = int(np.count_nonzero(~dyadic)),
        bit_shifts = int(np.count_nonzero(dyadic & ~unit)))

""" Frobenius Scaling """

def frobenius_optimal_scale(
    kernel: Optional[Matrix8] = None,
    target: Optional[Matrix8] = None) -> float:
    """Returns the scale a minimizing ||a * K - C|| in the Frobenius norm.

    Setting the derivative to zero gives a = trace(K.T @ C) / trace(K.T @ K).

    Args:
        kernel (Optional[Matrix8]): K. Defaults to C0.
        target (Optional[Matrix8]): C. Defaults to the exact DCT matrix.

    """
    kernel = c0_matrix() if kernel is None else matrixify(kernel, 'kernel')
    target = exact_dct_matrix() if target is None else matrixify(
        target, 'target')
    energy = float(np.sum(kernel * kernel))
    if energy == 0:
        raise KernelError('cannot scale an all-zero kernel')
    return float(np.sum(kernel * target)) / energy

def frobenius_scale_search(
    kernel: Optional[Matrix8] = None,
    target: Optional[Matrix8] = None,
    tolerance: float = 1e-12) -> float:
    """Finds the Frobenius-optimal scale with a golden-section search."""
    kernel = c0_matrix() if kernel is None else matrixify(kernel, 'kernel')
    target = exact_dct_matrix() if target is None else matrixify(
        target, 'target')
    result = scipy.optimize.minimize_scalar(
        lambda scale: np.sum((scale * kernel - target) ** 2),
        bracket = (0.0, 1.0),
        method = 'golden',
        tol = tolerance)
    return float(result.x)

""" Transform Builders """

def dct_transform() -> TransformSpec:
    """Returns the exact DCT as a TransformSpec (reference, no kernel)."""
    matrix = exact_dct_matrix()
    return TransformSpec(
        name = 'dct',
        exact_matrix = matrix,
        declared_cost = dense_cost(matrix),
        orthogonal = True)

def proposed_transform() -> TransformSpec:
    """Returns S @ C0, the orthogonalized round-off approximation."""
    kernel = c0_matrix()
    diagonal = orthogonalizer_diagonal(kernel)
    return TransformSpec(
        name = 'proposed',
        exact_matrix = diagonal[:, np.newaxis] * kernel,
        declared_cost = ArithmeticCost(additions = 22),
        integer_kernel = kernel,
        diagonal = diagonal,
        orthogonal = True,
        graph = 'round_off')

def coarse_transform() -> TransformSpec:
    """Returns C0 / 2, the coarse (non-orthogonal) approximation."""
    kernel = c0_matrix()
    return TransformSpec(
        name = 'coarse',
        exact_matrix = 0.5 * kernel,
        declared_cost = ArithmeticCost(additions = 22),
        integer_kernel = kernel,
        diagonal = np.full(BLOCK, 0.5),
        orthogonal = False,
        graph = 'round_off')

def scaled_transform() -> TransformSpec:
    """Returns a * C0 with the Frobenius-optimal uniform scale a."""
    kernel = c0_matrix()
    scale = frobenius_optimal_scale(kernel)
    return TransformSpec(
        name = 'scaled',
        exact_matrix = scale * kernel,
        declared_cost = ArithmeticCost(additions = 22),
        integer_kernel = kernel,
        diagonal = np.full(BLOCK, scale),
        orthogonal = False,
        graph = 'round_off')

def sdct_transform() -> TransformSpec:
    """Returns the signed DCT normalized by 1 / (2 * sqrt(2)).

    The uniform factor keeps every row at unit norm.

    """
    kernel = np.sign(exact_dct_matrix())
    return TransformSpec(
        name = 'sdct',
        exact_matrix = DC_SCALE * kernel,
        declared_cost = ArithmeticCost(additions = 24),
        integer_kernel = kernel,
        diagonal = np.full(BLOCK, DC_SCALE),
        orthogonal = False,
        graph = 'signed')

def roundoff_transform(
    name: str = 'roundoff',
    scale: float = 2.0,
    rounding: Rounding = round_half_away) -> TransformSpec:
    """Builds an orthogonalized transform from any round-off kernel.

    If the kernel rows are mutually orthogonal, the diagonal factorization is
    kept. Otherwise only the orthogonalized matrix is exposed.

    Raises:
        KernelError: if the kernel is singular or has entries outside
            {-1, 0, 1}.

    """
    kernel = roundoff_kernel(scale = scale, rounding = rounding)
    try:
        diagonal = orthogonalizer_diagonal(kernel)
    except KernelError:
        LOGGER.debug('%s kernel rows are not orthogonal; using full polar '
                      'factor', name)
        matrix = orthogonalize(kernel)
        return TransformSpec(
            name = name,
            exact_matrix = matrix,
            declared_cost = dense_cost(matrix),
            orthogonal = True)
    return TransformSpec(
        name = name,
        exact_matrix = diagonal[:, np.newaxis] * kernel,
        declared_cost = dense_cost(kernel),
        integer_kernel = kernel,
        diagonal = diagonal,
        orthogonal = True)

def hybrid_transform(
    name: str,
    sources: Sequence[TransformSpec]) -> TransformSpec:
    """Builds a transform whose row m is row m of 'sources[m]'.

    Args:
        name (str): name of the new transform.
        sources (Sequence[TransformSpec]): eight transforms, one per row.

    Raises:
        DimensionError: if 'sources' does not hold exactly eight transforms.

    Returns:
        TransformSpec: mixed transform. The kernel and diagonal are kept when
            every source has both.

    """
    if len(sources) != BLOCK:
        raise DimensionError(
            f'a hybrid needs {BLOCK} source transforms, got {len(sources)}')
    matrix = np.stack([s.exact_matrix[m] for m, s in enumerate(sources)])
    kernel = diagonal = None
    if all(
        s.integer_kernel is not None and s.diagonal is not None
        for s in sources):
        kernel = np.stack([s.integer_kernel[m] for m, s in enumerate(sources)])
        diagonal = np.array([s.diagonal[m] for m, s in enumerate(sources)])
    return TransformSpec(
        name = name,
        exact_matrix = matrix,
        declared_cost = dense_cost(matrix if kernel is None else kernel),
        integer_kernel = kernel,
        diagonal = diagonal,
        orthogonal = is_orthogonal(matrix))

""" Comparator Files """

def _strip_comment(line: str) -> str:
    return line.split('#', 1)[0].strip()

def _factor_rows(
    matrix: np.ndarray) -> tuple[Optional[np.ndarray], Optional[np.ndarray]]:
    """Splits 'matrix' into diag(d) @ K with K in {-1, 0, 1}, if possible."""
    diagonal = np.max(np.abs(matrix), axis = 1)
    if np.any(diagonal <= 0):
        return None, None
    ratios = matrix / diagonal[:, np.newaxis]
    kernel = np.round(ratios)
    if (np.max(np.abs(ratios - kernel)) > FILE_TOLERANCE
            or not np.all(np.isin(kernel, (-1.0, 0.0, 1.0)))):
        return None, None
    return kernel, diagonal

def load_comparator(path: Pathlike) -> TransformSpec:
    """Reads a comparator matrix file.

    The format is plain text: 'name <identifier>' on the first line,
    'cost <adds> <mults> <shifts>' on the second, and then eight rows of eight
    whitespace-separated reals. '#' starts a comment. Blank lines are ignored.

    Args:
        path (Pathlike): matrix file to read.

    Raises:
        FormatError: if the header or a row cannot be parsed.
        DimensionError: if there are not exactly 8 rows of 8 entries.
        NonFiniteError: if an entry is NaN or infinite.

    Returns:
        TransformSpec: with 'exact_matrix' from the file and 'declared_cost'
            from the header.

    """
    path = pathlib.Path(path)
    numbered = [
        (number, _strip_comment(line))
        for number, line in enumerate(
            path.read_text(encoding = 'utf-8').splitlines(), start = 1)]
    numbered = [(number, line) for number, line in numbered if line]
    if len(numbered) < 2:
        raise FormatError('missing name or cost header', path = path)
    number, line = numbered[0]
    fields = line.split()
    if len(fields) != 2 or fields[0] != 'name':
        raise FormatError("expected 'name <identifier>'", path, number)
    name = fields[1]
    number, line = numbered[1]
    fields = line.split()
    if len(fields) != 4 or fields[0] != 'cost':
        raise FormatError(
            "expected 'cost <adds> <mults> <shifts>'", path, number)
    try:
        cost = ArithmeticCost(*(int(f) for f in fields[1:]))
    except ValueError as error:
        raise FormatError(f'invalid cost: {error}', path, number) from error
    rows = []
    for number, line in numbered[2:]:
        try:
            rows.append([float(f) for f in line.split()])
        except ValueError as error:
            raise FormatError(f'invalid entry: {error}', path, number) from error
        if len(rows[-1]) != BLOCK:
            raise DimensionError(
                f'{path}:{number}: expected {BLOCK} entries, got '
                f'{len(rows[-1])}')
    if len(rows) != BLOCK:
        raise DimensionError(f'{path}: expected {BLOCK} rows, got {len(rows)}')
    matrix = matrixify(rows, name = f'{name} matrix')
    kernel, diagonal = _factor_rows(matrix)
    LOGGER.info('loaded comparator %s from %s', name, path)
    return TransformSpec(
        name = name,
        exact_matrix = matrix,
        declared_cost = cost,
        integer_kernel = kernel,
        diagonal = diagonal,
        orthogonal = is_orthogonal(matrix, tolerance = FILE_TOLERANCE),
        tolerance = FILE_TOLERANCE)

def save_comparator(spec: TransformSpec, path: Pathlike) -> pathlib.Path:
    """Writes 'spec' in the comparator matrix file format.

    Entries are written with repr, which round-trips every float exactly.

    """
    path = pathlib.Path(path)
    cost = spec.declared_cost
    lines = [
        f'name {spec.name}',
        f'cost {cost.additions} {cost.multiplications} {cost.bit_shifts}']
    lines.extend(
        ' '.join(repr(float(v)) for v in row) for row in spec.exact_matrix)
    path.write_text('\n'.join(lines) + '\n', encoding = 'utf-8')
    return path
