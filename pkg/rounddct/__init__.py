"""
rounddct: round-off 8-point DCT approximation and its evaluation pipeline
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Contents:
    importables (Dict): dict of imports available directly from 'rounddct'.
        This dict is used by this module's '__getattr__' function.

rounddct builds the orthogonalized round-off approximation of the 8-point DCT,
runs it through a multiplication-free flow graph, measures its spectral
deviation from the exact DCT, and benchmarks it in a block-truncation image
codec against the exact DCT, the signed DCT, and user-supplied comparator
matrices.

"""
__version__ = '0.1.0'

__package__ = 'rounddct'

__author__ = 'Corey Rayburn Yung'


import importlib
from typing import Any


"""
rounddct imports are lazy and give modules and key items first-level access.

For example:

    Instead of accessing proposed_transform via
    rounddct.core.transforms.proposed_transform, you can just use:
    rounddct.proposed_transform

Modules are only imported when first needed, which also lets modules refer to
each other through 'rounddct.<module>' without circular import problems at
initialization.

"""
importables: dict[str, str] = {
    'core': 'core',
    'evaluate': 'evaluate',
    'files': 'files',
    'types': 'types',
    'utilities': 'utilities',

    'base': 'core.base',
    'flowgraph': 'core.flowgraph',
    'registry': 'core.registry',
    'transforms': 'core.transforms',

    'codec': 'evaluate.codec',
    'metrics': 'evaluate.metrics',
    'spectral': 'evaluate.spectral',

    'configuration': 'files.configuration',
    'imageio': 'files.imageio',
    'reports': 'files.reports',

    'convert': 'types.convert',

    'clock': 'utilities.clock',

    'cli': 'cli',

    'ArithmeticCost': 'core.transforms.ArithmeticCost',
    'TransformSpec': 'core.transforms.TransformSpec',
    'exact_dct_matrix': 'core.transforms.exact_dct_matrix',
    'c0_matrix': 'core.transforms.c0_matrix',
    'proposed_transform': 'core.transforms.proposed_transform',
    'coarse_transform': 'core.transforms.coarse_transform',
    'sdct_transform': 'core.transforms.sdct_transform',
    'load_comparator': 'core.transforms.load_comparator',
    'fast_forward': 'core.flowgraph.fast_forward',
    'fast_inverse': 'core.flowgraph.fast_inverse',
    'audit_cost': 'core.flowgraph.audit_cost',
    'Registry': 'core.registry.Registry',
    'error_energy_report': 'evaluate.spectral.error_energy_report',
    'compress_image': 'evaluate.codec.compress_image',
    'corpus_sweep': 'evaluate.metrics.corpus_sweep',
    'GrayImage': 'files.imageio.GrayImage',
    'read_pgm': 'files.imageio.read_pgm',
    'write_pgm': 'files.imageio.write_pgm',
    'Settings': 'files.configuration.Settings',
    }


def __getattr__(name: str) -> Any:
    """Lazily imports modules and items within them as package attributes.

    Args:
        name (str): name of rounddct module or item being sought.

    Raises:
        AttributeError: if 'name' is not listed in 'importables'.

    Returns:
        Any: a module or item stored within a module.

    """
    package = __package__ or __name__
    try:
        key = '.' + importables[name]
    except KeyError:
        raise AttributeError(f'module {package} has no attribute {name}')
    try:
        return importlib.import_module(key, package = package)
    except ModuleNotFoundError:
        item = key.split('.')[-1]
        module_name = key[:-len(item) - 1]
        module = importlib.import_module(module_name, package = package)
        return getattr(module, item)
