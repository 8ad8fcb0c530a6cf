"""
convert: type converters for settings and command-line values
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Settings files and flags deliver every value as text ("45", "proposed, sdct",
"yes"). These converters turn that text into the ints, floats, bools, lists,
and paths that RunConfig expects.

Contents:
    listify (Callable): wraps a value in a list unless it already is one.
    numify (Callable): text to int or float.
    typify (Callable): text to the narrowest supported type.
    pathlibify (Callable): text to pathlib.Path.

"""
from __future__ import annotations
from collections.abc import MutableSequence, Sequence
import pathlib
from typing import Any, Optional, Union

import more_itertools

from rounddct.core.base import Pathlike


TRUTHY: frozenset[str] = frozenset({'true', 'yes', 'on'})
FALSY: frozenset[str] = frozenset({'false', 'no', 'off'})

""" Value Converters """

def listify(item: Any, default: Optional[Any] = None) -> Any:
    """Returns 'item' as a list.

    A list passes through untouched (same object). Other non-str iterables
    are expanded and a scalar or str becomes a one-item list.

    Args:
        item (Any): value to wrap.
        default (Optional[Any]): returned when 'item' is None. Defaults to an
            empty list.

    """
    if item is None:
        return [] if default is None else default
    if isinstance(item, MutableSequence) and not isinstance(item, str):
        return item
    return list(more_itertools.always_iterable(item))

def numify(item: Any, raise_error: bool = False) -> Union[int, float, Any]:
    """Returns 'item' as an int, else a float, else unchanged.

    Raises:
        TypeError: if 'item' is not numeric text and 'raise_error' is True.

    """
    for kind in (int, float):
        try:
            return kind(item)
        except (TypeError, ValueError):
            continue
    if raise_error:
        raise TypeError(f'{item!r} is not a number')
    return item

def typify(item: Any) -> Union[Sequence[Any], int, float, bool, str]:
    """Returns text converted to a list, bool, int, or float.

    Comma-separated text becomes a list with each part typified and empty
    parts dropped. Non-str values are returned as passed.

    """
    if not isinstance(item, str):
        return item
    text = item.strip()
    if ',' in text:
        return [typify(part) for part in text.split(',') if part.strip()]
    if text.lower() in TRUTHY:
        return True
    if text.lower() in FALSY:
        return False
    return numify(text)

""" Path Converters """

def pathlibify(item: Pathlike) -> pathlib.Path:
    """Returns 'item' as a pathlib.Path.

    Raises:
        TypeError: if 'item' is neither a str nor a pathlib.Path.

    """
    if isinstance(item, pathlib.Path):
        return item
    if isinstance(item, str):
        return pathlib.Path(item)
    raise TypeError(
        f'expected a str or pathlib.Path, got {type(item).__name__}')
