"""
clock: timing tools
Corey Rayburn Yung <coreyrayburnyung@gmail.com>
Copyright 2020-2021, Corey Rayburn Yung
License: Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0)

Contents:
    timer (Callable): decorator that logs how long the wrapped callable takes.

"""
from __future__ import annotations
import functools
import logging
import time
from typing import Any, Union

from rounddct.core.base import Operation


LOGGER = logging.getLogger(__name__)

""" General Tools """

def convert_time(seconds: Union[int, float]) -> tuple[int, int, int]:
    """Splits 'seconds' into hours, minutes, and seconds."""
    minutes, seconds = divmod(seconds, 60)
    hours, minutes = divmod(minutes, 60)
    return int(hours), int(minutes), int(seconds)

""" Decorators """

def timer(process: Operation) -> Operation:
    """Decorator that logs the time 'process' takes at INFO level.

    Args:
        process (Operation): wrapped callable to compute the time it takes to
            complete its execution.

    """
    try:
        name = process.__name__
    except AttributeError:
        name = process.__class__.__name__
    @functools.wraps(process)
    def decorated(*args: Any, **kwargs: Any) -> Any:
        start = time.perf_counter()
        result = process(*args, **kwargs)
        h, m, s = convert_time(time.perf_counter() - start)
        LOGGER.info('%s completed in %d:%02d:%02d', name, h, m, s)
        return result
    return decorated
