"""
The quantized enveloping algebra: PBW normal form, Hopf structure, braid
action, integral forms, specialization and the Frobenius map.
"""

from .algebra import QuantumGroup
from .element import Key, Mono, TensorUElem, UElem
from .grammar import format_element, format_tensor, format_weight, parse_element
from .specialize import (
    ClassicalUElem,
    ZetaUElem,
    frobenius_pi,
    frobenius_pi_tensor,
    specialize_tensor,
    specialize_u,
)

__all__ = [
    "QuantumGroup",
    "UElem",
    "TensorUElem",
    "ZetaUElem",
    "ClassicalUElem",
    "Key",
    "Mono",
    "parse_element",
    "format_element",
    "format_tensor",
    "format_weight",
    "specialize_u",
    "specialize_tensor",
    "frobenius_pi",
    "frobenius_pi_tensor",
]
