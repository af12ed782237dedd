"""Registry of built-in matrix groups and double groups.

Factories register via ``@register_group`` and return a
:class:`~orbidual.groups.matrix.LieGroup` or a
:class:`~orbidual.groups.double.DoubleGroup`.  Keys:
``se2``, ``rigid_body_se2``, ``lu_weinstein_su2``, ``abelian_double``.
"""

from __future__ import annotations

from typing import Any, Callable

from orbidual.core.errors import ConfigurationError

GroupFactory = Callable[..., Any]

_REGISTRY: dict[str, GroupFactory] = {}


def register_group(name: str):
    """Decorator that registers a group factory under *name*."""
    def decorator(func: GroupFactory) -> GroupFactory:
        _REGISTRY[name] = func
        return func
    return decorator


def get_group(name: str, **params: Any) -> Any:
    factory = _REGISTRY.get(name)
    if factory is None:
        raise ConfigurationError(f"unknown group {name!r} (known: {', '.join(list_groups())})")
    return factory(**params)


def list_groups() -> list[str]:
    return sorted(_REGISTRY)


# Import built-ins so they register themselves.
from orbidual.groups import builtins as _builtins  # noqa: E402, F401
