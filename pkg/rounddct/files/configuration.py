"""
configuration: settings files and the run configuration of the command line
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Contents:
    SUFFIXES (tuple[str, ...]): settings file types that can be loaded.
    Settings (MutableMapping): sectioned options from an .ini, .json, or
        .toml file with typified values.
    DEFAULTS (dict[str, Any]): fallback values of RunConfig fields.
    RunConfig (dataclass): options of one command-line run.

"""
from __future__ import annotations
from collections.abc import Iterator, Mapping, MutableMapping, Sequence
import configparser
import dataclasses
import json
import logging
import pathlib
from typing import Any, Optional, Union

import more_itertools
import toml

import rounddct
from rounddct.core.base import COEFFICIENTS, DomainError, FormatError, Pathlike
from rounddct.types.convert import listify, pathlibify, typify


LOGGER = logging.getLogger(__name__)

SUFFIXES: tuple[str, ...] = ('ini', 'json', 'toml')

""" Configuration System """

@dataclasses.dataclass
class Settings(MutableMapping): # type: ignore
    """Two-level settings read from a file or a dict.

    Sections map option names to values. Files may be .ini, .json, or .toml.
    Text values are typified on load ("45" becomes 45, "proposed, sdct" a
    list), since an .ini parser hands back nothing but strings.

    Args:
        contents (dict[str, dict[str, Any]]): sections of options. Defaults
            to an empty dict.
        default (dict[str, dict[str, Any]]): options merged in where
            'contents' lacks them. Defaults to an empty dict.
        infer_types (bool): whether text values are typified. Defaults to
            True.

    """
    contents: dict[str, dict[str, Any]] = dataclasses.field(
        default_factory = dict)
    default: dict[str, dict[str, Any]] = dataclasses.field(
        default_factory = dict)
    infer_types: bool = True

    """ Initialization Methods """

    def __post_init__(self) -> None:
        if self.infer_types:
            self.contents = self._infer_types(contents = self.contents)
        self.contents = self._add_default(contents = self.contents)

    """ Class Methods """

    @classmethod
    def from_dictionary(
        cls,
        dictionary: Mapping[str, Mapping[str, Any]],
        **kwargs: Any) -> Settings:
        """Returns settings from a 2-level dict."""
        return cls(
            contents = {k: dict(v) for k, v in dictionary.items()}, **kwargs)

    @classmethod
    def from_path(cls, path: Pathlike, **kwargs: Any) -> Settings:
        """Returns settings from a file, dispatching on its suffix.

        Raises:
            DomainError: if the suffix is not ini, json, or toml.

        """
        path = pathlibify(item = path)
        extension = path.suffix[1:].lower()
        if extension not in SUFFIXES:
            raise DomainError(
                f'settings file {path} must be .ini, .json, or .toml')
        return getattr(cls, f'from_{extension}')(path = path, **kwargs)

    @classmethod
    def from_ini(cls, path: Pathlike, **kwargs: Any) -> Settings:
        """Returns settings from an .ini file.

        Raises:
            FileNotFoundError: if the path does not correspond to a file.
            FormatError: if the file is not valid ini.

        """
        path = pathlibify(item = path)
        if not path.is_file():
            raise FileNotFoundError(f'settings file {path} not found')
        contents = configparser.ConfigParser(dict_type = dict)
        contents.optionxform = lambda option: option # type: ignore
        try:
            contents.read(path)
        except configparser.Error as error:
            raise FormatError(
                error.message, path = path,
                line = getattr(error, 'lineno', None)) from error
        return cls.from_dictionary(
            {section: contents[section] for section in contents.sections()},
            **kwargs)

    @classmethod
    def from_json(cls, path: Pathlike, **kwargs: Any) -> Settings:
        """Returns settings from a .json file.

        Raises:
            FileNotFoundError: if the path does not correspond to a file.
            FormatError: if the file is not valid json or not a dict of
                sections.

        """
        path = pathlibify(item = path)
        try:
            with open(path) as settings_file:
                contents = json.load(settings_file)
        except FileNotFoundError:
            raise FileNotFoundError(f'settings file {path} not found')
        except json.JSONDecodeError as error:
            raise FormatError(
                error.msg, path = path, line = error.lineno) from error
        return cls.from_dictionary(_sections(contents, path), **kwargs)

    @classmethod
    def from_toml(cls, path: Pathlike, **kwargs: Any) -> Settings:
        """Returns settings from a .toml file.

        Raises:
            FileNotFoundError: if the path does not correspond to a file.
            FormatError: if the file is not valid toml or not a dict of
                sections.

        """
        path = pathlibify(item = path)
        try:
            contents = toml.load(path)
        except FileNotFoundError:
            raise FileNotFoundError(f'settings file {path} not found')
        except toml.TomlDecodeError as error:
            raise FormatError(
                error.msg, path = path, line = error.lineno) from error
        return cls.from_dictionary(_sections(contents, path), **kwargs)

    """ Public Methods """

    def add(self, section: str, contents: Mapping[str, Any]) -> None:
        """Adds 'contents' to 'section', creating it if needed."""
        self.contents.setdefault(section, {}).update(contents)
        return

    def inject(
        self,
        instance: object,
        additional: Optional[Union[Sequence[str], str]] = None,
        overwrite: bool = False) -> object:
        """Copies options from 'contents' onto attributes of 'instance'.

        Sections are ranked: the one matching 'instance.name' (if any) comes
        first, then 'general', then 'additional' sections in order. When a key
        appears in several sections the highest-ranked value is used.

        Args:
            instance (object): instance to be modified.
            additional (Union[Sequence[str], str]]): lower-ranked section(s)
                in 'contents' to read. Defaults to None.
            overwrite (bool]): whether attributes already holding a value are
                replaced (True) or only unset ones are filled (False).
                Defaults to False.

        Returns:
            instance (object): instance with modifications made.

        """
        sections = ['general']
        name = getattr(instance, 'name', None)
        if name is not None:
            sections.insert(0, name)
        if additional:
            sections.extend(more_itertools.always_iterable(additional))
        options: dict[str, tuple[str, Any]] = {}
        for section in reversed(sections):
            for key, value in self.contents.get(section, {}).items():
                options[key] = (section, value)
        for key, (section, value) in options.items():
            if (not hasattr(instance, key)
                    or getattr(instance, key) in (None, [])
                    or overwrite):
                LOGGER.debug('settings [%s] %s = %r', section, key, value)
                setattr(instance, key, value)
        return instance

    """ Private Methods """

    def _infer_types(
        self,
        contents: dict[str, Any]) -> dict[str, Any]:
        """Converts stored str values to appropriate datatypes."""
        new_contents: dict[str, Any] = {}
        for key, value in contents.items():
            if isinstance(value, dict):
                new_contents[key] = {
                    inner_key: typify(inner_value)
                    for inner_key, inner_value in value.items()}
            else:
                new_contents[key] = typify(value)
        return new_contents

    def _add_default(self, contents: dict[str, Any]) -> dict[str, Any]:
        """Adds 'default' sections as backups for missing options."""
        new_contents = {k: dict(v) for k, v in self.default.items()}
        for section, options in contents.items():
            new_contents.setdefault(section, {}).update(options)
        return new_contents

    """ Dunder Methods """

    def __getitem__(self, key: str) -> dict[str, Any]:
        return self.contents[key]

    def __setitem__(self, key: str, value: Mapping[str, Any]) -> None:
        """Creates or updates a section.

        Raises:
            TypeError: if 'value' isn't a Mapping.

        """
        if not isinstance(value, Mapping):
            raise TypeError('value must be a dict type')
        self.add(section = key, contents = value)
        return

    def __delitem__(self, key: str) -> None:
        del self.contents[key]
        return

    def __iter__(self) -> Iterator[str]:
        return iter(self.contents)

    def __len__(self) -> int:
        return len(self.contents)

def _sections(contents: Any, path: pathlib.Path) -> dict[str, Any]:
    """Returns 'contents' if it maps section names to option tables."""
    if not isinstance(contents, Mapping):
        raise FormatError('settings must be a table of sections', path = path)
    for section, options in contents.items():
        if not isinstance(options, Mapping):
            raise FormatError(
                f'{section!r} must be a section of options, not a value',
                path = path)
    return dict(contents)

""" Run Configuration """

DEFAULTS: dict[str, Any] = {
    'transforms': ['default'],
    'r_min': 1,
    'r_max': 45,
    'corpus': None,
    'out': 'output',
    'comparators': [],
    'panels': 1024,
    'workers': 1}


@dataclasses.dataclass
class RunConfig(object):
    """Options of one command-line run.

    Fields left as None are filled from a Settings file with 'inject' and then
    from DEFAULTS with 'complete', so command-line values always win.

    Args:
        subcommand (str): one of the command-line subcommands.
        transforms (Optional[list[str]]): registry names or wildcards.
        r_min (Optional[int]): smallest retained-coefficient count.
        r_max (Optional[int]): largest retained-coefficient count.
        corpus (Optional[pathlib.Path]): folder of PGM images.
        out (Optional[pathlib.Path]): output folder.
        comparators (list[pathlib.Path]): comparator matrix files.
        panels (Optional[int]): Simpson panels for spectral quadrature.
        workers (Optional[int]): threads used by corpus sweeps.
        verbosity (int): 0 for warnings, 1 for info, 2 or more for debug.
        log_file (Optional[pathlib.Path]): file receiving DEBUG logs.

    """
    subcommand: str
    transforms: Optional[list[str]] = None
    r_min: Optional[int] = None
    r_max: Optional[int] = None
    corpus: Optional[pathlib.Path] = None
    out: Optional[pathlib.Path] = None
    comparators: list[pathlib.Path] = dataclasses.field(default_factory = list)
    panels: Optional[int] = None
    workers: Optional[int] = None
    verbosity: int = 0
    log_file: Optional[pathlib.Path] = None

    """ Properties """

    @property
    def name(self) -> str:
        """Settings section read by 'Settings.inject'."""
        return self.subcommand

    @property
    def r_range(self) -> range:
        return range(self.r_min, self.r_max + 1) # type: ignore

    """ Public Methods """

    def complete(self) -> RunConfig:
        """Fills unset fields from DEFAULTS and normalizes their types.

        Raises:
            DomainError: if a count (r_min, r_max, panels, workers) is not a
                whole number.

        """
        for key, value in DEFAULTS.items():
            if getattr(self, key) in (None, []):
                setattr(self, key, value)
        self.transforms = [str(t) for t in listify(self.transforms)]
        self.comparators = [pathlibify(str(p)) for p in listify(self.comparators)]
        for key in ('corpus', 'out', 'log_file'):
            value = getattr(self, key)
            if value is not None:
                setattr(self, key, pathlibify(str(value)))
        for key in ('r_min', 'r_max', 'panels', 'workers'):
            value = getattr(self, key)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise DomainError(f'{key} must be a number, got {value!r}')
            if not float(value).is_integer():
                raise DomainError(f'{key} must be a whole number, got {value!r}')
            setattr(self, key, int(value))
        return self

    def validate(
        self,
        registry: Optional[rounddct.registry.Registry] = None) -> None:
        """Checks ranges and, if 'registry' is passed, transform names.

        Raises:
            DomainError: if the r range is outside 1..64, 'panels' is not a
                positive even number, 'workers' is below 1, or a transform name
                is unknown.

        """
        if not 1 <= self.r_min <= self.r_max <= COEFFICIENTS: # type: ignore
            raise DomainError(
                f'r range must satisfy 1 <= r_min <= r_max <= {COEFFICIENTS}, '
                f'got {self.r_min}..{self.r_max}')
        if self.panels < 2 or self.panels % 2: # type: ignore
            raise DomainError(
                f'panels must be a positive even number, got {self.panels}')
        if self.workers < 1: # type: ignore
            raise DomainError(f'workers must be at least 1, got {self.workers}')
        if registry is not None:
            try:
                registry.select(self.transforms) # type: ignore
            except KeyError as error:
                raise DomainError(str(error).strip('"\'')) from error
        return
