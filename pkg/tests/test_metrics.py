"""
test_metrics: tests image fidelity scores and corpus sweeps
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

"""
import itertools
import logging
import math

import numpy as np
import pytest

import rounddct


def _random_pixels(seed: int, size: int = 16) -> np.ndarray:
    return np.random.default_rng(seed).integers(0, 256, size = (size, size))

def _smooth_image(seed: int, size: int = 64) -> rounddct.imageio.GrayImage:
    rng = np.random.default_rng(seed)
    rows, columns = np.mgrid[0:size, 0:size] / size
    surface = (
        100 + 60 * rows + 40 * columns
        + 30 * np.cos(2 * np.pi * (rows + 0.3 * seed))
        + 20 * np.sin(3 * np.pi * columns * rows)
        + rng.normal(scale = 2.0, size = (size, size)))
    return rounddct.imageio.GrayImage(
        np.clip(np.round(surface), 0, 255), name = f'smooth{seed}')

def _window_oracle(a: np.ndarray, b: np.ndarray, window: int = 8) -> float:
    qualities = []
    for top in range(a.shape[0] - window + 1):
        for left in range(a.shape[1] - window + 1):
            x = a[top:top + window, left:left + window].astype(float).ravel()
            y = b[top:top + window, left:left + window].astype(float).ravel()
            mx, my = x.mean(), y.mean()
            vx, vy = x.var(), y.var()
            cxy = np.mean((x - mx) * (y - my))
            qualities.append(
                4 * cxy * mx * my / ((vx + vy) * (mx ** 2 + my ** 2)))
    return float(np.mean(qualities))

def test_mse() -> None:
    a = _random_pixels(1)
    b = _random_pixels(2)
    assert rounddct.metrics.mse(a, a) == 0
    assert rounddct.metrics.mse(np.zeros((8, 8)), np.ones((8, 8))) == 1
    expected = sum(
        (int(a[i, j]) - int(b[i, j])) ** 2
        for i in range(16) for j in range(16)) / 256
    assert rounddct.metrics.mse(a, b) == pytest.approx(expected, rel = 1e-15)
    with pytest.raises(rounddct.base.DimensionError):
        rounddct.metrics.mse(a, a[:8])
    return

def test_psnr() -> None:
    a = _random_pixels(3)
    assert rounddct.metrics.psnr(a, a) == math.inf
    assert rounddct.metrics.psnr(
        np.zeros((8, 8), dtype = int),
        np.full((8, 8), 255)) == pytest.approx(0.0, abs = 1e-12)
    assert rounddct.metrics.psnr_from_mse(1.0) == pytest.approx(48.1308, abs = 1e-4)
    assert rounddct.metrics.psnr_from_mse(0.0) == math.inf
    return

def test_uqi() -> None:
    a = _random_pixels(5)
    b = _random_pixels(6)
    assert rounddct.metrics.uqi(a, a) == pytest.approx(1.0, abs = 1e-12)
    assert rounddct.metrics.uqi(a, b) == pytest.approx(
        _window_oracle(a, b), rel = 1e-9, abs = 1e-12)
    assert rounddct.metrics.uqi(a, b) == pytest.approx(
        rounddct.metrics.uqi(b, a), abs = 1e-15)
    assert rounddct.metrics.uqi(a, 255 - a) < 0
    assert rounddct.metrics.quality_map(a, b).shape == (9, 9)
    with pytest.raises(rounddct.base.DimensionError):
        rounddct.metrics.uqi(np.ones((4, 4)), np.ones((4, 4)))
    return

def test_metric_oracles() -> None:
    for seed in range(10):
        a = _random_pixels(100 + seed)
        b = _random_pixels(200 + seed)
        error = float(np.mean((a.astype(float) - b) ** 2))
        assert rounddct.metrics.mse(a, b) == pytest.approx(error, rel = 1e-9)
        assert rounddct.metrics.psnr(a, b) == pytest.approx(
            10 * math.log10(255 ** 2 / error), rel = 1e-9)
        assert rounddct.metrics.uqi(a, b) == pytest.approx(
            _window_oracle(a, b), rel = 1e-9, abs = 1e-12)
    return

def test_uqi_flat_windows() -> None:
    flat = np.full((8, 8), 100)
    assert rounddct.metrics.uqi(flat, flat) == 1.0
    assert rounddct.metrics.uqi(flat, np.full((8, 8), 50)) == pytest.approx(
        2 * 100 * 50 / (100 ** 2 + 50 ** 2))
    zeros = np.zeros((8, 8), dtype = int)
    assert rounddct.metrics.uqi(zeros, zeros) == 1.0
    return

def test_ape() -> None:
    assert rounddct.metrics.ape(5.0, 5.0) == 0
    assert rounddct.metrics.ape(1.1, 1.0) == pytest.approx(10.0)
    assert rounddct.metrics.ape(-2.0, -4.0) == pytest.approx(50.0)
    with pytest.raises(rounddct.base.DomainError):
        rounddct.metrics.ape(1.0, 0.0)
    return

def test_quality_scores_validation() -> None:
    scores = rounddct.metrics.score(_random_pixels(1), _random_pixels(1))
    assert scores.mse == 0 and scores.psnr == math.inf
    with pytest.raises(rounddct.base.DomainError):
        rounddct.metrics.QualityScores(mse = -1.0, psnr = 10.0, uqi = 0.5)
    with pytest.raises(rounddct.base.DomainError):
        rounddct.metrics.QualityScores(mse = 0.0, psnr = 10.0, uqi = 0.5)
    with pytest.raises(rounddct.base.DomainError):
        rounddct.metrics.QualityScores(mse = 1.0, psnr = 48.0, uqi = 1.5)
    return

def test_corpus_sweep_constant_image() -> None:
    flat = rounddct.imageio.GrayImage(np.full((8, 8), 100), name = 'flat')
    reports = rounddct.metrics.corpus_sweep(
        [flat], [rounddct.transforms.proposed_transform()], range(1, 4))
    assert [(r.name, r.r) for r in reports] == [
        ('dct', 1), ('dct', 2), ('dct', 3),
        ('proposed', 1), ('proposed', 2), ('proposed', 3)]
    for report in reports:
        assert report.avg_mse == 0
        assert report.avg_psnr == math.inf
        assert report.ape_mse == 0
        assert report.ape_uqi == 0
    return

def test_corpus_sweep_orders_and_references() -> None:
    images = [_smooth_image(seed) for seed in range(3)]
    specs = [
        rounddct.transforms.sdct_transform(),
        rounddct.transforms.proposed_transform()]
    reports = rounddct.metrics.corpus_sweep(images, specs, [2, 5, 10, 20, 45])
    assert [r.name for r in reports[::5]] == ['dct', 'sdct', 'proposed']
    for report in reports[:5]:
        assert report.ape_mse == 0 and report.ape_uqi == 0
    shuffled = rounddct.metrics.corpus_sweep(
        images[::-1], specs, [45, 20, 10, 5, 2])
    assert shuffled == reports
    return

def test_proposed_beats_sdct_on_smooth_images() -> None:
    images = [_smooth_image(seed) for seed in range(3)]
    reports = rounddct.metrics.corpus_sweep(
        images,
        [rounddct.transforms.proposed_transform(),
         rounddct.transforms.sdct_transform()],
        range(1, 46),
        workers = 2)
    found = {(r.name, r.r): r for r in reports}
    assert len(found) == 3 * 45
    for r in range(1, 46):
        assert found[('proposed', r)].avg_psnr >= found[('sdct', r)].avg_psnr
    for r in itertools.chain(range(1, 11), range(40, 46)):
        proposed, sdct = found[('proposed', r)], found[('sdct', r)]
        assert proposed.ape_mse <= sdct.ape_mse
        assert proposed.ape_uqi <= sdct.ape_uqi
    dct = [found[('dct', r)].avg_mse for r in (1, 5, 10, 20)]
    assert dct == sorted(dct, reverse = True)
    return

def test_sweep_returns_scores_and_logs_time(caplog) -> None:
    caplog.set_level(logging.INFO, logger = 'rounddct.utilities.clock')
    images = [_smooth_image(seed, size = 16) for seed in range(3)]
    specs = [rounddct.transforms.proposed_transform()]
    reports, scores = rounddct.metrics.sweep(images, specs, range(1, 4))
    assert reports == rounddct.metrics.corpus_sweep(images, specs, range(1, 4))
    assert len(scores) == 2 * 3 * 3
    assert rounddct.metrics.summarize(scores) == reports
    assert 'sweep completed' in caplog.text
    return

def test_score_corpus_workers() -> None:
    images = [_smooth_image(seed, size = 16) for seed in range(4)]
    specs = [rounddct.transforms.proposed_transform()]
    serial = rounddct.metrics.score_corpus(images, specs, range(1, 6))
    threaded = rounddct.metrics.score_corpus(
        images, specs, range(1, 6), workers = 3)
    assert serial == threaded
    assert [s.image for s in serial[:4]] == [
        'smooth0', 'smooth1', 'smooth2', 'smooth3']
    return

def test_score_corpus_errors() -> None:
    specs = [rounddct.transforms.proposed_transform()]
    with pytest.raises(rounddct.base.CorpusError):
        rounddct.metrics.score_corpus([], specs, range(1, 3))
    odd = rounddct.imageio.GrayImage(np.zeros((12, 12)), name = 'odd')
    with pytest.raises(rounddct.base.CorpusError, match = 'odd'):
        rounddct.metrics.score_corpus([odd], specs, range(1, 3))
    with pytest.raises(rounddct.base.DomainError):
        rounddct.metrics.score_corpus(
            [_smooth_image(0, size = 16)], specs, [0, 1])
    return

def test_summarize_zero_reference(caplog) -> None:
    perfect = rounddct.metrics.QualityScores(mse = 0.0, psnr = math.inf, uqi = 1.0)
    lossy = rounddct.metrics.QualityScores(mse = 2.0, psnr = 45.1, uqi = 0.9)
    scores = [
        rounddct.metrics.ImageScore('a', 'dct', 1, perfect),
        rounddct.metrics.ImageScore('a', 'other', 1, lossy)]
    reports = rounddct.metrics.summarize(scores)
    other = [r for r in reports if r.name == 'other'][0]
    assert other.ape_mse == math.inf
    assert other.ape_uqi == pytest.approx(10.0)
    assert 'undefined' in caplog.text
    with pytest.raises(rounddct.base.CorpusError):
        rounddct.metrics.summarize(scores, reference = 'missing')
    return


if __name__ == '__main__':
    pytest.main([__file__])
