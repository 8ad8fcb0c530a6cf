"""
spectral: transfer functions and error energies of approximate DCT rows
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Row m of a transform T is treated as the impulse response of an FIR filter:
H_m(w; T) = sum_n T[m][n] * exp(-1j * n * w). The deviation from the exact
DCT row is D_m(w; T) = |H_m(w; C) - H_m(w; T)| ** 2 and its integral over
[0, pi] is the error energy of row m.

Spectral math always uses 'exact_matrix', never the integer kernel.

Contents:
    TABLE_ROWS (tuple[int, ...]): rows summed into a report's total.
    PANELS (int): default number of Simpson panels on [0, pi].
    ErrorEnergyReport (dataclass): per-row error energies of a transform.
    SweepSample (dataclass): one (m, w, D) sample of a frequency sweep.
    transfer_function (Callable): H_m(w; T).
    spectral_error (Callable): D_m(w; T).
    error_energy (Callable): integral of D_m over [0, pi] by quadrature.
    closed_form_energy (Callable): pi * ||c_m - t_m|| ** 2.
    error_energy_report (Callable): all eight error energies of a transform.
    frequency_sweep (Callable): D_m sampled on the quadrature grid.

"""
from __future__ import annotations
import dataclasses
import logging
import math
from typing import Any, Union

import numpy as np
import scipy.integrate

import rounddct
from rounddct.core.base import BLOCK, DomainError, NonFiniteError, matrixify


LOGGER = logging.getLogger(__name__)

TABLE_ROWS: tuple[int, ...] = (1, 2, 3, 5, 6, 7)
PANELS: int = 1024
# Allowed disagreement between quadrature and the closed form.
QUADRATURE_TOLERANCE: float = 1e-9

Transform = Union[np.ndarray, 'rounddct.transforms.TransformSpec']

""" Reports """

@dataclasses.dataclass(frozen = True)
class ErrorEnergyReport(object):
    """Error energies of one transform.

    Args:
        name (str): transform name.
        epsilon (tuple[float, ...]): error energy of each of the 8 rows.
        total (float): sum of 'epsilon' over TABLE_ROWS. Rows 0 and 4 are
            reported separately in 'epsilon' only.

    """
    name: str
    epsilon: tuple[float, ...]
    total: float = dataclasses.field(init = False)

    """ Initialization Methods """

    def __post_init__(self) -> None:
        if len(self.epsilon) != BLOCK:
            raise DomainError(
                f'a report needs {BLOCK} error energies, got '
                f'{len(self.epsilon)}')
        if any(e < 0 for e in self.epsilon):
            raise DomainError('error energies cannot be negative')
        object.__setattr__(
            self, 'total', math.fsum(self.epsilon[m] for m in TABLE_ROWS))


@dataclasses.dataclass(frozen = True)
class SweepSample(object):
    """D_m(w; T) at one frequency."""
    name: str
    m: int
    omega: float
    deviation: float

""" Transfer Functions """

def _matrix(T: Transform) -> np.ndarray:
    if isinstance(T, rounddct.transforms.TransformSpec):
        return T.exact_matrix
    return matrixify(T, name = 'transform')

def _check_row(m: int) -> None:
    if not 0 <= m < BLOCK:
        raise DomainError(f'row index must be in 0..{BLOCK - 1}, got {m}')

def _check_frequency(omega: Any) -> np.ndarray:
    omega = np.asarray(omega, dtype = float)
    if not np.all(np.isfinite(omega)):
        raise NonFiniteError('frequency must be finite')
    if np.any(omega < 0) or np.any(omega > np.pi):
        raise DomainError('frequency must be in [0, pi]')
    return omega

def _response(row: np.ndarray, omega: np.ndarray) -> np.ndarray:
    n = np.arange(BLOCK)
    return np.exp(-1j * np.multiply.outer(omega, n)) @ row

def transfer_function(T: Transform, m: int, omega: float) -> complex:
    """Returns H_m(omega; T) = sum_n T[m][n] * exp(-1j * n * omega).

    Args:
        T (Transform): 8x8 matrix or TransformSpec.
        m (int): row index in 0..7.
        omega (float): angular frequency in [0, pi].

    Raises:
        DomainError: if 'm' or 'omega' is out of range.

    """
    _check_row(m)
    frequency = _check_frequency(omega)
    return complex(_response(_matrix(T)[m], frequency))

def spectral_error(T: Transform, m: int, omega: Any) -> Union[float, np.ndarray]:
    """Returns D_m(omega; T) = |H_m(omega; C) - H_m(omega; T)| ** 2.

    'omega' may be a scalar or an array of frequencies.

    """
    _check_row(m)
    frequency = _check_frequency(omega)
    difference = rounddct.transforms.exact_dct_matrix()[m] - _matrix(T)[m]
    deviation = np.abs(_response(difference, frequency)) ** 2
    if deviation.ndim == 0:
        return float(deviation)
    return deviation

""" Error Energies """

def _grid(panels: int) -> np.ndarray:
    if panels < 2 or panels % 2:
        raise DomainError(
            f'Simpson quadrature needs an even number of panels, got {panels}')
    return np.linspace(0.0, np.pi, panels + 1)

def error_energy(T: Transform, m: int, panels: int = PANELS) -> float:
    """Integrates D_m(w; T) over [0, pi] with composite Simpson quadrature.

    D_m is a cosine polynomial of degree at most 7, which the rule integrates
    exactly (up to rounding) once 'panels' exceeds 7.

    Raises:
        DomainError: if 'm' is out of range or 'panels' is odd.

    """
    grid = _grid(panels)
    values = spectral_error(T, m, grid)
    return float(scipy.integrate.simpson(values, x = grid))

def closed_form_energy(T: Transform, m: int) -> float:
    """Returns pi * ||c_m - t_m|| ** 2, the exact error energy of row m."""
    _check_row(m)
    difference = rounddct.transforms.exact_dct_matrix()[m] - _matrix(T)[m]
    return float(np.pi * np.dot(difference, difference))

def error_energy_report(
    spec: rounddct.transforms.TransformSpec,
    panels: int = PANELS) -> ErrorEnergyReport:
    """Computes all eight error energies of 'spec'.

    Each quadrature value is cross-checked against the closed form and a
    disagreement beyond QUADRATURE_TOLERANCE is logged as a warning.

    """
    epsilon = []
    for m in range(BLOCK):
        energy = error_energy(spec, m, panels = panels)
        exact = closed_form_energy(spec, m)
        if abs(energy - exact) > QUADRATURE_TOLERANCE:
            LOGGER.warning(
                '%s row %d: quadrature %.12g differs from closed form %.12g',
                spec.name, m, energy, exact)
        # Rounding can push a zero integral slightly negative.
        epsilon.append(max(energy, 0.0))
    report = ErrorEnergyReport(name = spec.name, epsilon = tuple(epsilon))
    LOGGER.info('%s error energy total %.4f', spec.name, report.total)
    return report

def frequency_sweep(
    spec: rounddct.transforms.TransformSpec,
    panels: int = PANELS) -> list[SweepSample]:
    """Samples D_m(w; spec) for every row on the quadrature grid.

    The values are raw; any normalization is left to the plotting step.

    Returns:
        list[SweepSample]: 8 * (panels + 1) samples ordered by row, then
            frequency.

    """
    grid = _grid(panels)
    samples = []
    for m in range(BLOCK):
        deviations = spectral_error(spec, m, grid)
        samples.extend(
            SweepSample(
                name = spec.name, m = m, omega = float(w), deviation = float(d))
            for w, d in zip(grid, deviations))
    return samples
