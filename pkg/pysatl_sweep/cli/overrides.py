from __future__ import annotations

import json
from collections.abc import Iterable
from typing import Any

from pysatl_sweep.core.errors import ConfigurationError

__all__ = ["apply_overrides", "parse_override"]


def parse_override(text: str) -> tuple[list[str], Any]:
    """Split ``a.b.c=value`` into its key path and value.

    The value is decoded as JSON when possible and kept as a string otherwise, so
    ``grid.step=0.01`` gives a float and ``moving_set.kind=halfspace`` a string.

    :raises ConfigurationError: If there is no ``=`` or the key is empty
    """
    key, separator, raw = text.partition("=")
    path = key.strip().split(".")
    if not separator or any(not part for part in path):
        raise ConfigurationError(f"Override must look like key.path=value, got {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return path, value


def _child(container: Any, part: str, key: str) -> Any:
    if isinstance(container, dict):
        if part not in container:
            raise ConfigurationError(f"Unknown override key {key!r}")
        return part
    if isinstance(container, list):
        try:
            index = int(part)
        except ValueError:
            raise ConfigurationError(f"Override key {key!r} indexes a list with {part!r}") from None
        if not -len(container) <= index < len(container):
            raise ConfigurationError(f"Override key {key!r} is out of range")
        return index
    raise ConfigurationError(f"Override key {key!r} goes below a scalar")


def apply_overrides(document: dict[str, Any], overrides: Iterable[str]) -> dict[str, Any]:
    """Apply overrides in order to a resolved scenario document, in place, and return it.

    Every key must already exist in the document; list entries are addressed by index.

    Example:
        ```python
        apply_overrides({"grid": {"step": 0.1}}, ["grid.step=0.01"])  # {"grid": {"step": 0.01}}
        ```
    """
    for text in overrides:
        path, value = parse_override(text)
        key = ".".join(path)
        container: Any = document
        for part in path[:-1]:
            container = container[_child(container, part, key)]
        container[_child(container, path[-1], key)] = value
    return document
