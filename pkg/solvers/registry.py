"""Scheme registry for looking up splitting compositions by name."""

from typing import Dict, Type

from shared.config.run_config import SchemeKind
from shared.errors import ConfigurationError
from .base import Scheme, SchemeSpec


class SchemeRegistry:
    """Global registry for scheme classes."""

    _schemes: Dict[str, Type[Scheme]] = {}

    @classmethod
    def register(cls, name: str, scheme_class: Type[Scheme]) -> None:
        """Register a scheme class.

        Raises:
            ConfigurationError: If name already registered or the class is not a Scheme
        """
        if name in cls._schemes:
            raise ConfigurationError(f"scheme '{name}' already registered", key_path="numerics.scheme")
        if not issubclass(scheme_class, Scheme):
            raise ConfigurationError("scheme class must inherit from Scheme", key_path="numerics.scheme")
        cls._schemes[name] = scheme_class

    @classmethod
    def get(cls, name: str) -> Type[Scheme]:
        """Get scheme class by name.

        Raises:
            ConfigurationError: If scheme not found
        """
        key = getattr(name, "value", name)
        if key not in cls._schemes:
            raise ConfigurationError(f"scheme '{key}' not found in registry", key_path="numerics.scheme")
        return cls._schemes[key]

    @classmethod
    def list_schemes(cls) -> Dict[str, Type[Scheme]]:
        return cls._schemes.copy()

    @classmethod
    def create(cls, spec: SchemeSpec) -> Scheme:
        return cls.get(spec.kind)(spec)


def register_scheme(kind: SchemeKind):
    """Decorator to register a scheme class.

    Usage:
        @register_scheme(SchemeKind.STRANG)
        class StrangScheme(Scheme):
            ...
    """

    def decorator(scheme_class: Type[Scheme]):
        SchemeRegistry.register(kind.value, scheme_class)
        return scheme_class

    return decorator


def get_scheme(spec: SchemeSpec) -> Scheme:
    """Instantiate the scheme named by ``spec.kind``."""
    return SchemeRegistry.create(spec)
