"""Cocycles, extended coadjoint actions and Lie-Poisson brackets.

Cocycles are looked up by key: ``zero``, ``coboundary:t1,t2,...`` and
``loop_k:k``.  Factories receive the group and the text after the colon.
"""

from __future__ import annotations

from typing import Any, Callable

from orbidual.core.errors import ConfigurationError

CocycleFactory = Callable[..., Any]

_REGISTRY: dict[str, CocycleFactory] = {}


def register_cocycle(name: str):
    """Decorator that registers a cocycle factory under *name*."""
    def decorator(func: CocycleFactory) -> CocycleFactory:
        _REGISTRY[name] = func
        return func
    return decorator


def get_cocycle(key: str, group: Any, **context: Any) -> Any:
    name, _, arg = key.partition(":")
    factory = _REGISTRY.get(name.strip())
    if factory is None:
        raise ConfigurationError(f"unknown cocycle {name!r} (known: {', '.join(list_cocycles())})")
    return factory(group, arg.strip() or None, **context)


def list_cocycles() -> list[str]:
    return sorted(_REGISTRY)


# Import built-ins so they register themselves.
from orbidual.extension import cocycle as _cocycle  # noqa: E402, F401
