from fractions import Fraction
from typing import Any

Number = int | Fraction | float


def is_exact(value: Any) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def parse_number(value: str | int | float | Fraction) -> Number:
    """Integers, decimal strings and "p/q" strings stay exact, floats stay floats"""
    if isinstance(value, (int, float, Fraction)):
        return value

    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Could not parse number {value!r}: {e}")
