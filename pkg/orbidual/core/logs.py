"""Logging setup for the CLI and one-shot interpretation notes."""

from __future__ import annotations

import logging
import sys

_noted: set[str] = set()


def setup_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def note_once(log: logging.Logger, key: str, message: str, *args: object) -> None:
    """DEBUG *message* the first time *key* is seen in this process."""
    if key in _noted:
        return
    _noted.add(key)
    log.debug(message, *args)
