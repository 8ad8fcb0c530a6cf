"""
registry: name-to-transform catalog with wildcard and list access
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Contents:
    DEFAULT_TRANSFORMS (list[str]): names selected by the 'default' key.
    BUILDERS (dict[str, Callable]): built-in TransformSpec builders.
    Registry (MutableMapping): ordered catalog of TransformSpec instances.

"""
from __future__ import annotations
from collections.abc import (
    Callable, Hashable, Iterable, Iterator, MutableMapping, Sequence)
import dataclasses
import logging
from typing import Any, Union

import more_itertools

import rounddct
from rounddct.core.base import DomainError, Pathlike


LOGGER = logging.getLogger(__name__)

DEFAULT_TRANSFORMS: list[str] = ['dct', 'proposed', 'coarse', 'sdct']

BUILDERS: dict[str, Callable[[], rounddct.transforms.TransformSpec]] = {
    'dct': lambda: rounddct.transforms.dct_transform(),
    'proposed': lambda: rounddct.transforms.proposed_transform(),
    'coarse': lambda: rounddct.transforms.coarse_transform(),
    'sdct': lambda: rounddct.transforms.sdct_transform(),
    'scaled': lambda: rounddct.transforms.scaled_transform()}

_ALL_KEYS: list[Any] = ['all', 'All', ['all'], ['All']]
_DEFAULT_KEYS: list[Any] = ['default', 'Default', ['default'], ['Default']]
_NONE_KEYS: list[Any] = ['none', 'None', ['none'], ['None']]


@dataclasses.dataclass
class Registry(MutableMapping): # type: ignore
    """Ordered catalog of transforms keyed by name.

    A Registry differs from an ordinary dict in 3 ways:
        1) It recognizes an 'all' key which returns every stored transform.
        2) It recognizes a 'default' key which returns the transforms named in
            the 'default' attribute, and a 'none' key which returns an empty
            list.
        3) A list of names returns the matching transforms in the order given,
            with duplicates dropped.

    Args:
        contents (dict[str, rounddct.transforms.TransformSpec]): stored
            transforms. Defaults to an empty dict.
        default (list[str]): names returned for the 'default' key. Defaults to
            DEFAULT_TRANSFORMS.

    """
    contents: dict[str, rounddct.transforms.TransformSpec] = (
        dataclasses.field(default_factory = dict))
    default: list[str] = dataclasses.field(
        default_factory = lambda: list(DEFAULT_TRANSFORMS))

    """ Class Methods """

    @classmethod
    def create(
        cls,
        comparators: Iterable[Pathlike] = (),
        **kwargs: Any) -> Registry:
        """Returns a Registry with every built-in transform and 'comparators'.

        Args:
            comparators (Iterable[Pathlike]): matrix files to load and add.

        Raises:
            DomainError: if a comparator name collides with a stored name.

        """
        registry = cls(**kwargs)
        for builder in BUILDERS.values():
            registry.add(builder())
        for path in comparators:
            registry.add(rounddct.transforms.load_comparator(path))
        return registry

    """ Public Methods """

    def add(self, spec: rounddct.transforms.TransformSpec) -> None:
        """Stores 'spec' under its name.

        Raises:
            DomainError: if the name is already used or is a wildcard.

        """
        if spec.name in self.contents:
            raise DomainError(f'{spec.name} is already in the registry')
        if spec.name in _ALL_KEYS + _DEFAULT_KEYS + _NONE_KEYS:
            raise DomainError(f'{spec.name} is reserved and cannot be a name')
        self.contents[spec.name] = spec
        LOGGER.debug('registered %s', spec.name)
        return

    def select(
        self,
        names: Union[str, Sequence[str]]) -> list[
            rounddct.transforms.TransformSpec]:
        """Returns transforms for 'names', which may include wildcards.

        Raises:
            KeyError: if any name is neither stored nor a wildcard.

        """
        selected: dict[str, rounddct.transforms.TransformSpec] = {}
        for name in more_itertools.always_iterable(names):
            found = self[name]
            if isinstance(found, list):
                selected.update({spec.name: spec for spec in found})
            else:
                selected[found.name] = found
        return list(selected.values())

    """ Dunder Methods """

    def __getitem__(
        self,
        key: Union[Hashable, Sequence[Hashable]]) -> Union[
            rounddct.transforms.TransformSpec,
            list[rounddct.transforms.TransformSpec]]:
        """Returns transform(s) for 'key'.

        The 'all', 'default', and 'none' wildcards are checked before stored
        names.

        Raises:
            KeyError: if a name is not stored.

        """
        if key in _ALL_KEYS:
            return list(self.contents.values())
        elif key in _DEFAULT_KEYS:
            return [self[name] for name in self.default]
        elif key in _NONE_KEYS:
            return []
        elif isinstance(key, Sequence) and not isinstance(key, str):
            return self.select(key)
        else:
            try:
                return self.contents[key]
            except KeyError:
                raise KeyError(
                    f'{key} is not in the registry; choose from '
                    f'{", ".join(self.contents)}')

    def __setitem__(
        self,
        key: str,
        value: rounddct.transforms.TransformSpec) -> None:
        if key in _DEFAULT_KEYS:
            self.default = list(more_itertools.always_iterable(value))
        else:
            self.contents[key] = value
        return

    def __delitem__(self, key: str) -> None:
        del self.contents[key]
        return

    def __iter__(self) -> Iterator[str]:
        return iter(self.contents)

    def __len__(self) -> int:
        return len(self.contents)
