"""
cli: command-line front end producing reproducible result files
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Subcommands:
    matrices: writes every registered matrix in the comparator file format
        plus a summary of orthogonality residuals and the Frobenius scale.
    spectral: writes error energies (spectral.csv) and the frequency sweep
        (sweep.csv).
    compress: writes reconstructed images for each (image, transform, r).
    bench: writes corpus averages (bench.csv) and per-image scores
        (bench_images.csv).
    complexity: writes audited and declared arithmetic costs
        (complexity.csv).

Options come from command-line flags, then from an optional settings file
('--config'), then from built-in defaults. The exit status is 0 on success, 1
when a rounddct error or I/O failure occurs, and 2 for usage errors.

Contents:
    build_parser (Callable): argparse parser with every subcommand.
    configure_logging (Callable): console and optional file handlers.
    load_config (Callable): RunConfig from parsed arguments.
    cmd_matrices, cmd_spectral, cmd_compress, cmd_bench, cmd_complexity
        (Callables): subcommand implementations.
    COMMANDS (dict[str, Callable]): subcommand name to implementation.
    main (Callable): entry point.

"""
from __future__ import annotations
import argparse
from collections.abc import Callable, Sequence
import concurrent.futures
import itertools
import logging
import pathlib
from typing import Any, Optional

import numpy as np

import rounddct
from rounddct.core.base import RoundDctError
from rounddct.files.configuration import RunConfig, Settings
from rounddct.files.reports import Clerk
from rounddct.types.convert import typify


LOGGER = logging.getLogger(__name__)

PACKAGE_LOGGER: str = 'rounddct'
LOG_FORMAT: str = '%(asctime)s %(levelname)s %(name)s: %(message)s'

""" Setup """

def _names(item: str) -> list[str]:
    """Parses a comma-separated list of transform names."""
    return [str(name) for name in rounddct.convert.listify(typify(item))]

def build_parser() -> argparse.ArgumentParser:
    """Returns the argument parser of every subcommand."""
    common = argparse.ArgumentParser(add_help = False)
    group = common.add_argument_group('Selection')
    group.add_argument(
        '--transforms', type = _names,
        help = 'comma-separated registry names, or all/default')
    group.add_argument(
        '--comparator', dest = 'comparators', action = 'append',
        type = pathlib.Path, default = [],
        help = 'comparator matrix file (repeatable)')
    group.add_argument('--r-min', type = int, help = 'smallest r (1..64)')
    group.add_argument('--r-max', type = int, help = 'largest r (1..64)')
    group = common.add_argument_group('Files')
    group.add_argument('--corpus', type = pathlib.Path,
                       help = 'folder of PGM images')
    group.add_argument('--out', type = pathlib.Path, help = 'output folder')
    group.add_argument('--config', type = pathlib.Path,
                       help = 'settings file (.ini, .json, or .toml)')
    group = common.add_argument_group('Execution')
    group.add_argument('--panels', type = int,
                       help = 'Simpson panels on [0, pi] (even)')
    group.add_argument('--workers', type = int,
                       help = 'threads used for corpus processing')
    group.add_argument('-v', '--verbose', dest = 'verbosity',
                       action = 'count', default = 0,
                       help = 'repeat for more detail')
    group.add_argument('--log-file', type = pathlib.Path,
                       help = 'file receiving DEBUG logs')
    parser = argparse.ArgumentParser(
        prog = 'rounddct',
        description = 'Round-off DCT approximation toolkit.')
    parser.add_argument(
        '--version', action = 'version',
        version = f'%(prog)s {rounddct.__version__}')
    subparsers = parser.add_subparsers(dest = 'subcommand', metavar = 'command')
    subparsers.required = True
    for name, command in COMMANDS.items():
        subparsers.add_parser(
            name, parents = [common], help = command.__doc__.splitlines()[0])
    return parser

def configure_logging(
    verbosity: int = 0,
    log_file: Optional[pathlib.Path] = None) -> logging.Logger:
    """Installs console and file handlers on the package logger.

    Handlers installed by an earlier call are replaced.

    Args:
        verbosity (int): 0 shows warnings, 1 info, and 2 or more debug.
        log_file (Optional[pathlib.Path]): file receiving every DEBUG record.
            Defaults to None.

    Returns:
        logging.Logger: the package logger.

    """
    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    logger.setLevel(logging.DEBUG)
    formatter = logging.Formatter(LOG_FORMAT)
    console = logging.StreamHandler()
    console.setLevel(
        (logging.WARNING, logging.INFO, logging.DEBUG)[min(verbosity, 2)])
    console.setFormatter(formatter)
    logger.addHandler(console)
    if log_file is not None:
        log_file.parent.mkdir(parents = True, exist_ok = True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    return logger

def load_config(arguments: argparse.Namespace) -> RunConfig:
    """Builds a complete RunConfig; flags win over the settings file."""
    config = RunConfig(
        subcommand = arguments.subcommand,
        transforms = arguments.transforms,
        r_min = arguments.r_min,
        r_max = arguments.r_max,
        corpus = arguments.corpus,
        out = arguments.out,
        comparators = list(arguments.comparators),
        panels = arguments.panels,
        workers = arguments.workers,
        verbosity = arguments.verbosity,
        log_file = arguments.log_file)
    if arguments.config is not None:
        Settings.from_path(arguments.config).inject(config)
    return config.complete()

def _registry(config: RunConfig) -> rounddct.registry.Registry:
    registry = rounddct.registry.Registry.create(
        comparators = config.comparators)
    config.validate(registry)
    return registry

def _selected(
    config: RunConfig) -> list[rounddct.transforms.TransformSpec]:
    return _registry(config).select(config.transforms) # type: ignore

def _corpus(config: RunConfig) -> list[rounddct.imageio.GrayImage]:
    if config.corpus is None:
        raise rounddct.base.CorpusError(
            f'{config.subcommand} needs a corpus folder (--corpus)')
    return rounddct.imageio.read_corpus(config.corpus)

""" Subcommands """

def cmd_matrices(config: RunConfig) -> list[pathlib.Path]:
    """Writes matrix files and a summary of their properties."""
    registry = _registry(config)
    clerk = Clerk(output_folder = config.out) # type: ignore
    kernel = rounddct.transforms.c0_matrix()
    diagonal = rounddct.transforms.orthogonalizer_diagonal()
    extras = [
        rounddct.transforms.TransformSpec(
            name = 'c0',
            exact_matrix = kernel,
            declared_cost = rounddct.transforms.ArithmeticCost(additions = 22),
            integer_kernel = kernel,
            diagonal = np.ones(rounddct.base.BLOCK),
            graph = 'round_off'),
        rounddct.transforms.TransformSpec(
            name = 'orthogonalizer',
            exact_matrix = np.diag(diagonal),
            declared_cost = rounddct.transforms.dense_cost(np.diag(diagonal)),
            orthogonal = False)]
    written = []
    summary = [
        f'frobenius_scale {rounddct.transforms.frobenius_optimal_scale():.4f}']
    for spec in itertools.chain(registry['all'], extras):
        written.append(rounddct.transforms.save_comparator(
            spec, clerk.path_for(f'{spec.name}.txt')))
    for spec in registry['all']:
        residual = rounddct.transforms.orthogonality_residual(
            spec.exact_matrix)
        summary.append(f'orthogonality_residual {spec.name} {residual!r}')
        summary.append(f'orthogonal {spec.name} {str(spec.orthogonal).lower()}')
    written.append(clerk.save_lines('summary.txt', summary))
    return written

def cmd_spectral(config: RunConfig) -> list[pathlib.Path]:
    """Writes error energy reports and frequency sweeps."""
    specs = _selected(config)
    clerk = Clerk(output_folder = config.out) # type: ignore
    reports = [
        rounddct.spectral.error_energy_report(spec, panels = config.panels)
        for spec in specs]
    samples = itertools.chain.from_iterable(
        rounddct.spectral.frequency_sweep(spec, panels = config.panels)
        for spec in specs)
    return [
        clerk.save_csv(
            'spectral.csv',
            rounddct.reports.SPECTRAL_HEADER,
            rounddct.reports.spectral_rows(reports)),
        clerk.save_csv(
            'sweep.csv',
            rounddct.reports.SWEEP_HEADER,
            rounddct.reports.sweep_rows(samples))]

def cmd_compress(config: RunConfig) -> list[pathlib.Path]:
    """Writes reconstructed images for every image, transform, and r."""
    specs = _selected(config)
    images = _corpus(config)
    clerk = Clerk(output_folder = config.out) # type: ignore
    tasks = list(itertools.product(specs, config.r_range, images))

    def compress(task: tuple[Any, int, Any]) -> pathlib.Path:
        spec, r, image = task
        reconstruction = rounddct.codec.compress_image(image, spec, r)
        path = clerk.path_for(f'{spec.name}/r{r:02d}/{image.name}.pgm')
        return rounddct.imageio.write_pgm(reconstruction, path)

    with concurrent.futures.ThreadPoolExecutor(
            max_workers = config.workers) as executor:
        written = list(executor.map(compress, tasks))
    LOGGER.info('wrote %d reconstructed images', len(written))
    return written

def cmd_bench(config: RunConfig) -> list[pathlib.Path]:
    """Writes corpus averages with APE columns and per-image scores."""
    specs = _selected(config)
    images = _corpus(config)
    clerk = Clerk(output_folder = config.out) # type: ignore
    reports, scores = rounddct.metrics.sweep(
        images, specs, config.r_range, workers = config.workers) # type: ignore
    return [
        clerk.save_csv(
            'bench.csv',
            rounddct.reports.BENCH_HEADER,
            rounddct.reports.bench_rows(reports)),
        clerk.save_csv(
            'bench_images.csv',
            rounddct.reports.IMAGE_HEADER,
            rounddct.reports.image_rows(scores))]

def cmd_complexity(config: RunConfig) -> list[pathlib.Path]:
    """Writes audited and declared arithmetic costs side by side."""
    specs = _selected(config)
    clerk = Clerk(output_folder = config.out) # type: ignore
    return [clerk.save_csv(
        'complexity.csv',
        rounddct.reports.COMPLEXITY_HEADER,
        rounddct.reports.complexity_rows(specs))]


COMMANDS: dict[str, Callable[[RunConfig], list[pathlib.Path]]] = {
    'matrices': cmd_matrices,
    'spectral': cmd_spectral,
    'compress': cmd_compress,
    'bench': cmd_bench,
    'complexity': cmd_complexity}

""" Entry Point """

def main(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one subcommand and returns the exit status.

    Args:
        argv (Optional[Sequence[str]]): arguments without the program name.
            Defaults to None, which reads sys.argv.

    """
    arguments = build_parser().parse_args(argv)
    configure_logging(arguments.verbosity, arguments.log_file)
    try:
        config = load_config(arguments)
        LOGGER.debug('run configuration: %s', config)
        LOGGER.info('running %s', config.subcommand)
        COMMANDS[config.subcommand](config)
    except (RoundDctError, OSError) as error:
        LOGGER.error('%s failed: %s', arguments.subcommand, error)
        return 1
    LOGGER.info('%s finished', arguments.subcommand)
    return 0
