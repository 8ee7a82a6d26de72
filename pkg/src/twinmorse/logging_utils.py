"""
Logging utilities for twinmorse.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

import logging

# Logging is controlled by the logger named after the top-level
# package ('twinmorse' from 'twinmorse.logging_utils')
logger = logging.getLogger(__name__.split(".")[0])

debug = logger.debug
info = logger.info
warning = logger.warning

streamhandler = logging.StreamHandler()

# silent unless the application configures output
logger.addHandler(logging.NullHandler())

debugmode = False

VERBOSITY_LEVELS = {0: logging.WARNING, 1: logging.INFO, 2: logging.DEBUG}


def setverbosity(verbosity: int) -> None:
    """Route package messages to stderr at the level for ``verbosity``.

    Args:
        verbosity (int): 0 for warnings only, 1 for progress, 2 for debug.
    """
    logger.setLevel(VERBOSITY_LEVELS[verbosity])
    if streamhandler not in logger.handlers:
        logger.addHandler(streamhandler)
    streamhandler.setFormatter(logging.Formatter("%(message)s"))


def setdebug() -> None:
    """Enable debug logging for the package.

    Sets the global ``debugmode`` flag, lowers the logger to DEBUG and
    prefixes each record with its level name.

    Example:
        >>> import twinmorse
        >>> twinmorse.setdebug()
        >>> realization, window = twinmorse.build_affine_window("A~1", 1)
           DEBUG window A~1 radius 1: 3 vertices, 5 cells
    """
    global debugmode

    debugmode = True
    logger.setLevel(logging.DEBUG)

    if streamhandler not in logger.handlers:
        # when used as a library, streamhandler is not added
        # by default
        logger.addHandler(streamhandler)

    streamhandler.setFormatter(logging.Formatter("%(levelname)8s %(message)s"))
