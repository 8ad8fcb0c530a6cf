"""
reports: output folder management and CSV serialization of results
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Every real number is written with repr, the shortest decimal that round-trips
to the same float, so downstream comparisons depend on tolerances rather than
on formatting. Infinite PSNR is written as 'inf'.

Contents:
    Clerk (dataclass): creates the output folder and writes files into it.
    format_field (Callable): text form of one CSV field.
    spectral_rows (Callable): rows of 'transform,m,epsilon'.
    sweep_rows (Callable): rows of 'transform,m,omega,D'.
    bench_rows (Callable): rows of the CompressionReport CSV.
    image_rows (Callable): rows of the per-image score CSV.
    complexity_rows (Callable): audited and declared costs side by side.

"""
from __future__ import annotations
from collections.abc import Iterable, Sequence
import csv
import dataclasses
import logging
import pathlib
from typing import Any, Optional

import rounddct
from rounddct.core.base import KernelError, Pathlike


LOGGER = logging.getLogger(__name__)

SPECTRAL_HEADER: tuple[str, ...] = ('transform', 'm', 'epsilon')
SWEEP_HEADER: tuple[str, ...] = ('transform', 'm', 'omega', 'D')
BENCH_HEADER: tuple[str, ...] = (
    'transform', 'r', 'avg_mse', 'avg_psnr', 'avg_uqi', 'ape_mse', 'ape_uqi')
IMAGE_HEADER: tuple[str, ...] = (
    'image', 'transform', 'r', 'mse', 'psnr', 'uqi')
COMPLEXITY_HEADER: tuple[str, ...] = (
    'transform',
    'audited_additions', 'audited_multiplications', 'audited_bit_shifts',
    'audited_total',
    'declared_additions', 'declared_multiplications', 'declared_bit_shifts',
    'declared_total')

""" Folder Management """

@dataclasses.dataclass
class Clerk(object):
    """Writes result files into one output folder.

    Args:
        output_folder (Pathlike): folder receiving every file. It is created,
            with its parents, if it does not exist. Defaults to 'output'.

    """
    output_folder: Pathlike = 'output'

    """ Initialization Methods """

    def __post_init__(self) -> None:
        """Validates 'output_folder' and writes it to disk."""
        self.output_folder = self.validate(path = self.output_folder)

    """ Public Methods """

    def validate(self, path: Pathlike, create: bool = True) -> pathlib.Path:
        """Turns 'path' into a pathlib.Path, creating the folder if needed.

        Raises:
            TypeError: if 'path' is neither a str nor Path.
            FileNotFoundError: if the folder does not exist and 'create' is
                False.
            NotADirectoryError: if 'path' exists but is a file.

        """
        if not isinstance(path, (str, pathlib.Path)):
            raise TypeError('path must be a str or Path type')
        validated = pathlib.Path(path)
        if not validated.exists():
            if create:
                self._write_folder(folder = validated)
            else:
                raise FileNotFoundError(f'{validated} does not exist')
        elif not validated.is_dir():
            raise NotADirectoryError(f'{validated} is not a folder')
        return validated

    def path_for(self, file_name: str) -> pathlib.Path:
        """Returns the path of 'file_name' inside 'output_folder'."""
        return pathlib.Path(self.output_folder) / file_name

    def save_csv(
        self,
        file_name: str,
        header: Sequence[str],
        rows: Iterable[Sequence[Any]]) -> pathlib.Path:
        """Writes 'header' and 'rows' as a CSV file with '\\n' line endings."""
        path = self.path_for(file_name)
        with open(path, 'w', newline = '', encoding = 'utf-8') as handle:
            writer = csv.writer(handle, lineterminator = '\n')
            writer.writerow(header)
            writer.writerows([format_field(f) for f in row] for row in rows)
        LOGGER.info('wrote %s', path)
        return path

    def save_lines(self, file_name: str, lines: Iterable[str]) -> pathlib.Path:
        """Writes 'lines' as a text file, one per line."""
        path = self.path_for(file_name)
        path.write_text(
            ''.join(f'{line}\n' for line in lines), encoding = 'utf-8')
        LOGGER.info('wrote %s', path)
        return path

    """ Private Methods """

    def _write_folder(self, folder: Pathlike) -> None:
        """Writes folder to disk. Parent folders are created as needed."""
        pathlib.Path(folder).mkdir(parents = True, exist_ok = True)
        return

""" Serialization """

def format_field(item: Any) -> str:
    """Returns the CSV text of 'item'.

    Floats use repr (shortest round-trip form, 'inf' for infinity), None
    becomes an empty field, and everything else uses str.

    """
    if item is None:
        return ''
    if isinstance(item, bool):
        return str(item).lower()
    if isinstance(item, float):
        return repr(float(item))
    return str(item)

def spectral_rows(
    reports: Iterable[rounddct.spectral.ErrorEnergyReport]) -> list[
        tuple[Any, ...]]:
    """Returns one row per (transform, m) plus a 'total' row per transform."""
    rows: list[tuple[Any, ...]] = []
    for report in reports:
        rows.extend(
            (report.name, m, float(e)) for m, e in enumerate(report.epsilon))
        rows.append((report.name, 'total', float(report.total)))
    return rows

def sweep_rows(
    samples: Iterable[rounddct.spectral.SweepSample]) -> list[tuple[Any, ...]]:
    return [(s.name, s.m, s.omega, s.deviation) for s in samples]

def bench_rows(
    reports: Iterable[rounddct.metrics.CompressionReport]) -> list[
        tuple[Any, ...]]:
    return [
        (r.name, r.r, r.avg_mse, r.avg_psnr, r.avg_uqi, r.ape_mse, r.ape_uqi)
        for r in reports]

def image_rows(
    scores: Iterable[rounddct.metrics.ImageScore]) -> list[tuple[Any, ...]]:
    return [
        (s.image, s.transform, s.r, s.scores.mse, s.scores.psnr, s.scores.uqi)
        for s in scores]

def complexity_rows(
    specs: Iterable[rounddct.transforms.TransformSpec]) -> list[
        tuple[Any, ...]]:
    """Returns audited and declared costs of each transform.

    Transforms without an executable kernel get empty audited fields.

    """
    rows = []
    for spec in specs:
        try:
            audited: Sequence[Optional[int]] = (
                rounddct.flowgraph.audit_cost(spec).as_row())
        except KernelError as error:
            LOGGER.info('%s is not audited: %s', spec.name, error)
            audited = (None, None, None, None)
        rows.append((spec.name, *audited, *spec.declared_cost.as_row()))
    return rows
