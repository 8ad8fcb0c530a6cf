"""
metrics: image fidelity scores and corpus-level compression reports
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Contents:
    WINDOW (int): side of the sliding UQI window.
    QualityScores (dataclass): MSE, PSNR, and UQI of one reconstruction.
    ImageScore (dataclass): QualityScores of one (image, transform, r).
    CompressionReport (dataclass): corpus averages and APE for one
        (transform, r).
    mse (Callable): mean squared error.
    psnr_from_mse (Callable): PSNR in dB of a given MSE.
    psnr (Callable): peak signal-to-noise ratio in dB.
    quality_map (Callable): universal quality index of every window.
    uqi (Callable): universal quality index.
    ape (Callable): absolute percentage error.
    score (Callable): all three scores of one image pair.
    score_corpus (Callable): per-image scores over transforms and r values.
    summarize (Callable): averages per-image scores into reports.
    include_reference (Callable): adds the APE reference transform.
    sweep (Callable): timed score_corpus plus summarize, returning reports
        and per-image scores.
    corpus_sweep (Callable): the reports of sweep.

"""
from __future__ import annotations
from collections.abc import Iterable, Sequence
import concurrent.futures
import dataclasses
import itertools
import logging
import math
from typing import Optional, Union

import numpy as np

import rounddct
from rounddct.core.base import (
    PEAK, CorpusError, DimensionError, DomainError, NonFiniteError,
    RoundDctError)
from rounddct.utilities.clock import timer


LOGGER = logging.getLogger(__name__)

WINDOW: int = 8

Image = Union['rounddct.imageio.GrayImage', np.ndarray]

""" Score Types """

@dataclasses.dataclass(frozen = True)
class QualityScores(object):
    """Fidelity of one reconstruction.

    Args:
        mse (float): mean squared error in intensity units squared.
        psnr (float): peak signal-to-noise ratio in dB. math.inf exactly when
            'mse' is 0.
        uqi (float): universal quality index in [-1, 1].

    """
    mse: float
    psnr: float
    uqi: float

    """ Initialization Methods """

    def __post_init__(self) -> None:
        if self.mse < 0:
            raise DomainError(f'mse cannot be negative, got {self.mse}')
        if math.isinf(self.psnr) != (self.mse == 0):
            raise DomainError('psnr must be infinite exactly when mse is 0')
        # Rounding can leave the index a hair outside [-1, 1].
        if not -1.0 - 1e-12 <= self.uqi <= 1.0 + 1e-12:
            raise DomainError(f'uqi must be in [-1, 1], got {self.uqi}')


@dataclasses.dataclass(frozen = True)
class ImageScore(object):
    """QualityScores of one image compressed by one transform at one r."""
    image: str
    transform: str
    r: int
    scores: QualityScores


@dataclasses.dataclass(frozen = True)
class CompressionReport(object):
    """Corpus averages for one (transform, r).

    Args:
        name (str): transform name.
        r (int): retained-coefficient count.
        avg_mse (float): mean MSE over the corpus.
        avg_psnr (float): mean PSNR over the corpus. math.inf if any image
            reconstructs exactly.
        avg_uqi (float): mean UQI over the corpus.
        ape_mse (float): APE of 'avg_mse' relative to the exact DCT.
        ape_uqi (float): APE of 'avg_uqi' relative to the exact DCT.

    """
    name: str
    r: int
    avg_mse: float
    avg_psnr: float
    avg_uqi: float
    ape_mse: float
    ape_uqi: float

    """ Initialization Methods """

    def __post_init__(self) -> None:
        if self.ape_mse < 0 or self.ape_uqi < 0:
            raise DomainError('APE cannot be negative')

""" Image Metrics """

def _pixels(item: Image) -> np.ndarray:
    if isinstance(item, rounddct.imageio.GrayImage):
        return item.pixels.astype(np.int64)
    values = np.asarray(item)
    if values.ndim != 2:
        raise DimensionError(f'expected a 2-D image, got shape {values.shape}')
    if not np.all(np.isfinite(values)):
        raise NonFiniteError('image contains non-finite values')
    if np.issubdtype(values.dtype, np.integer):
        return values.astype(np.int64)
    return values

def _pair(a: Image, b: Image) -> tuple[np.ndarray, np.ndarray]:
    first, second = _pixels(a), _pixels(b)
    if first.shape != second.shape:
        raise DimensionError(
            f'image shapes differ: {first.shape} and {second.shape}')
    return first, second

def mse(a: Image, b: Image) -> float:
    """Returns the mean of squared pixel differences.

    Raises:
        DimensionError: if the images differ in size.

    """
    first, second = _pair(a, b)
    difference = first - second
    return float(np.sum(difference * difference)) / difference.size

def psnr_from_mse(error: float) -> float:
    """Returns 10 * log10(255 ** 2 / error), or math.inf when 'error' is 0."""
    if error == 0:
        return math.inf
    return 10.0 * math.log10(PEAK ** 2 / error)

def psnr(a: Image, b: Image) -> float:
    """Returns the peak signal-to-noise ratio in dB (math.inf if identical).

    Raises:
        DimensionError: if the images differ in size.

    """
    return psnr_from_mse(mse(a, b))

def _window_sums(values: np.ndarray, window: int) -> np.ndarray:
    """Sums of every window x window patch, from an integral image."""
    integral = np.zeros(
        (values.shape[0] + 1, values.shape[1] + 1), dtype = values.dtype)
    integral[1:, 1:] = values.cumsum(axis = 0).cumsum(axis = 1)
    return (
        integral[window:, window:] - integral[:-window, window:]
        - integral[window:, :-window] + integral[:-window, :-window])

def quality_map(a: Image, b: Image, window: int = WINDOW) -> np.ndarray:
    """Returns the universal quality index of every window position.

    Windows slide with stride 1. Integer pixel sums are kept exact in int64.
    When the variance term vanishes but the means do not, the window scores
    2 * mean_a * mean_b / (mean_a ** 2 + mean_b ** 2). When both vanish the
    window scores 1.

    Raises:
        DimensionError: if the images differ in size or are smaller than
            'window'.

    """
    first, second = _pair(a, b)
    if min(first.shape) < window:
        raise DimensionError(
            f'images of shape {first.shape} are smaller than the {window}x'
            f'{window} window')
    if (np.issubdtype(first.dtype, np.integer)
            and np.issubdtype(second.dtype, np.integer)):
        first, second = first.astype(np.int64), second.astype(np.int64)
    else:
        first, second = first.astype(float), second.astype(float)
    count = window * window
    sum_a = _window_sums(first, window)
    sum_b = _window_sums(second, window)
    sum_aa = _window_sums(first * first, window)
    sum_bb = _window_sums(second * second, window)
    sum_ab = _window_sums(first * second, window)
    means = sum_a * sum_a + sum_b * sum_b
    spreads = count * (sum_aa + sum_bb) - means
    numerator = 4 * (count * sum_ab - sum_a * sum_b) * sum_a * sum_b
    denominator = spreads * means
    quality = np.ones(denominator.shape)
    flat = (spreads == 0) & (means != 0)
    quality[flat] = 2 * sum_a[flat] * sum_b[flat] / means[flat]
    defined = denominator != 0
    quality[defined] = numerator[defined] / denominator[defined]
    return quality

def uqi(a: Image, b: Image, window: int = WINDOW) -> float:
    """Returns the mean universal quality index over sliding windows."""
    return float(np.mean(quality_map(a, b, window = window)))

def ape(value: float, reference: float) -> float:
    """Returns 100 * |value - reference| / |reference|.

    Raises:
        DomainError: if 'reference' is 0.

    """
    if reference == 0:
        raise DomainError('APE is undefined for a zero reference')
    return 100.0 * abs(value - reference) / abs(reference)

def score(original: Image, reconstruction: Image) -> QualityScores:
    """Returns MSE, PSNR, and UQI of 'reconstruction' against 'original'."""
    error = mse(original, reconstruction)
    return QualityScores(
        mse = error,
        psnr = psnr_from_mse(error),
        uqi = uqi(original, reconstruction))

""" Corpus Sweeps """

def _validate_sweep(
    images: Sequence[rounddct.imageio.GrayImage],
    specs: Sequence[rounddct.transforms.TransformSpec],
    r_range: Iterable[int]) -> list[int]:
    if not images:
        raise CorpusError('the corpus is empty')
    if not specs:
        raise DomainError('no transforms were selected')
    values = sorted(set(r_range))
    if not values:
        raise DomainError('the r range is empty')
    for r in values:
        rounddct.codec.RetentionPolicy(r)
    return values

def _score_task(
    task: tuple[
        rounddct.transforms.TransformSpec, int, rounddct.imageio.GrayImage]
    ) -> ImageScore:
    spec, r, image = task
    try:
        reconstruction = rounddct.codec.compress_image(image, spec, r)
        scores = score(image, reconstruction)
    except RoundDctError as error:
        raise CorpusError(
            f'{image.name or "image"} failed with {spec.name} at r={r}: '
            f'{error}') from error
    LOGGER.debug('%s %s r=%d: %s', image.name, spec.name, r, scores)
    return ImageScore(
        image = image.name, transform = spec.name, r = r, scores = scores)

def score_corpus(
    images: Sequence[rounddct.imageio.GrayImage],
    specs: Sequence[rounddct.transforms.TransformSpec],
    r_range: Iterable[int],
    workers: int = 1) -> list[ImageScore]:
    """Scores every image compressed by every transform at every r.

    Args:
        images (Sequence[rounddct.imageio.GrayImage]): nonempty corpus.
        specs (Sequence[rounddct.transforms.TransformSpec]): transforms.
        r_range (Iterable[int]): retained-coefficient counts in 1..64.
        workers (int): threads used. Defaults to 1.

    Raises:
        CorpusError: if the corpus is empty or an image fails.
        DomainError: if no transform is given or an r is out of range.

    Returns:
        list[ImageScore]: ordered by transform, then r, then image name, no
            matter how the work was scheduled.

    """
    values = _validate_sweep(images, specs, r_range)
    ordered = sorted(images, key = lambda image: image.name)
    tasks = list(itertools.product(specs, values, ordered))
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(
                max_workers = workers) as executor:
            return list(executor.map(_score_task, tasks))
    return [_score_task(task) for task in tasks]

def _average(values: Iterable[float]) -> float:
    values = list(values)
    return math.fsum(values) / len(values)

def _sweep_ape(value: float, reference: float, label: str) -> float:
    """APE inside a sweep, where a zero reference must not abort the run."""
    if reference == 0:
        if value == 0:
            return 0.0
        LOGGER.warning(
            '%s APE is undefined against a zero DCT reference', label)
        return math.inf
    return ape(value, reference)

def summarize(
    scores: Iterable[ImageScore],
    reference: str = 'dct') -> list[CompressionReport]:
    """Averages per-image scores into one report per (transform, r).

    Averages use math.fsum, so they do not depend on image order.

    Raises:
        CorpusError: if 'reference' has no scores at some r.

    """
    groups: dict[tuple[str, int], list[QualityScores]] = {}
    for item in scores:
        groups.setdefault((item.transform, item.r), []).append(item.scores)
    averages = {
        key: (
            _average(s.mse for s in group),
            _average(s.psnr for s in group),
            _average(s.uqi for s in group))
        for key, group in groups.items()}
    reports = []
    for (name, r), (avg_mse, avg_psnr, avg_uqi) in averages.items():
        try:
            base_mse, _, base_uqi = averages[(reference, r)]
        except KeyError:
            raise CorpusError(f'no {reference} reference scores at r={r}')
        if math.isinf(avg_psnr):
            LOGGER.warning(
                '%s r=%d: average PSNR is infinite because an image was '
                'reconstructed exactly', name, r)
        label = f'{name} r={r}'
        reports.append(CompressionReport(
            name = name,
            r = r,
            avg_mse = avg_mse,
            avg_psnr = avg_psnr,
            avg_uqi = avg_uqi,
            ape_mse = _sweep_ape(avg_mse, base_mse, f'{label} MSE'),
            ape_uqi = _sweep_ape(avg_uqi, base_uqi, f'{label} UQI')))
    return reports

def include_reference(
    specs: Sequence[rounddct.transforms.TransformSpec],
    reference: Optional[rounddct.transforms.TransformSpec] = None) -> tuple[
        list[rounddct.transforms.TransformSpec],
        rounddct.transforms.TransformSpec]:
    """Returns 'specs' with the APE reference prepended if it is missing.

    The reference defaults to the exact DCT and is matched by name.

    """
    reference = reference or rounddct.transforms.dct_transform()
    specs = list(specs)
    if reference.name not in {spec.name for spec in specs}:
        specs.insert(0, reference)
    return specs, reference

@timer
def sweep(
    images: Sequence[rounddct.imageio.GrayImage],
    specs: Sequence[rounddct.transforms.TransformSpec],
    r_range: Iterable[int] = range(1, 46),
    workers: int = 1,
    reference: Optional[rounddct.transforms.TransformSpec] = None) -> tuple[
        list[CompressionReport], list[ImageScore]]:
    """Compresses the corpus with every transform and r and averages scores.

    The exact DCT is added as the APE reference when 'specs' lacks it, so the
    reports always include its rows (with zero APE).

    Args:
        images (Sequence[rounddct.imageio.GrayImage]): nonempty corpus.
        specs (Sequence[rounddct.transforms.TransformSpec]): transforms.
        r_range (Iterable[int]): retained-coefficient counts. Defaults to
            1..45.
        workers (int): threads used. Defaults to 1.
        reference (Optional[rounddct.transforms.TransformSpec]): APE
            reference. Defaults to the exact DCT.

    Raises:
        CorpusError: if the corpus is empty or an image fails.
        DomainError: if an r is out of range.

    Returns:
        tuple[list[CompressionReport], list[ImageScore]]: reports ordered by
            transform (reference first when it was added) then r, and the
            per-image scores they average.

    """
    specs, reference = include_reference(specs, reference = reference)
    scores = score_corpus(images, specs, r_range, workers = workers)
    return summarize(scores, reference = reference.name), scores

def corpus_sweep(
    images: Sequence[rounddct.imageio.GrayImage],
    specs: Sequence[rounddct.transforms.TransformSpec],
    r_range: Iterable[int] = range(1, 46),
    workers: int = 1,
    reference: Optional[rounddct.transforms.TransformSpec] = None) -> list[
        CompressionReport]:
    """Returns only the CompressionReports of 'sweep'."""
    reports, _ = sweep(
        images, specs, r_range, workers = workers, reference = reference)
    return reports
