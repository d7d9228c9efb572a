"""
qroots: exact computer algebra for quantized enveloping algebras at roots of
unity, the quantized flag manifold and its differential operators.
"""

from .errors import QrootsError
from .qscalars import RootOfUnity
from .rootdata import RootDatum, WeightVec, build_root_datum
from .uqalg import QuantumGroup, UElem, ZetaUElem, format_element, parse_element

__version__ = "0.1.0"

__all__ = [
    "QrootsError",
    "RootOfUnity",
    "RootDatum",
    "WeightVec",
    "build_root_datum",
    "QuantumGroup",
    "UElem",
    "ZetaUElem",
    "format_element",
    "parse_element",
]
