"""Registry of built-in Lie algebras and doubles.

Every factory is registered via ``@register_algebra`` and returns either a
:class:`~orbidual.liecore.algebra.LieAlgebra` or a
:class:`~orbidual.liecore.double.DoubleLieAlgebra`.

Built-ins auto-register on import.
"""

from __future__ import annotations

from typing import Any, Callable

from orbidual.core.errors import ConfigurationError

AlgebraFactory = Callable[..., Any]

_REGISTRY: dict[str, AlgebraFactory] = {}


def register_algebra(name: str):
    """Decorator that registers an algebra factory under *name*."""
    def decorator(func: AlgebraFactory) -> AlgebraFactory:
        _REGISTRY[name] = func
        return func
    return decorator


def get_algebra(name: str, **params: Any) -> Any:
    factory = _REGISTRY.get(name)
    if factory is None:
        raise ConfigurationError(f"unknown algebra {name!r} (known: {', '.join(list_algebras())})")
    return factory(**params)


def list_algebras() -> list[str]:
    return sorted(_REGISTRY)


# Import built-ins so they register themselves.
from orbidual.liecore import builtins as _builtins  # noqa: E402, F401
