"""
Numeric coercion for settings dataclasses read from YAML or JSON.
"""
from dataclasses import fields

from .errors import ParameterError


def coerce_numeric_fields(instance) -> None:
    """
    Cast every int/float field in place. YAML reads 1e8 and 1e-12 as strings,
    so numeric strings are accepted; ints must be integral.
    """
    for f in fields(instance):
        if f.type not in (int, float):
            continue
        value = getattr(instance, f.name)
        if isinstance(value, bool):
            raise ParameterError(f"{f.name} must be numeric, got {value!r}")
        try:
            number = float(value) if isinstance(value, str) else value
            if f.type is int:
                if isinstance(number, float) and not number.is_integer():
                    raise ValueError
                number = int(number)
            else:
                number = float(number)
        except (TypeError, ValueError, OverflowError):
            raise ParameterError(f"{f.name} must be {'an integer' if f.type is int else 'a number'}, got {value!r}")
        object.__setattr__(instance, f.name, number)
