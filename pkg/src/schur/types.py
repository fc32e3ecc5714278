from collections.abc import Sequence
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict


def to_complex(value: Any) -> complex:
    """complex / 実数 / [re, im] を complex に揃える"""
    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, Sequence) and not isinstance(value, str) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if hasattr(value, "__complex__"):
        return complex(value)
    raise ValueError(f"複素数として解釈できません: {value!r}")


ComplexValue = Annotated[complex, BeforeValidator(to_complex)]


class DomainModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
