"""Tail-biting trellises for binary linear block codes."""

from .code import CodeSpec, Span, convert_span
from .gf2 import BitMatrix, BitVector
from .trellis import Trellis

__all__ = ["BitMatrix", "BitVector", "CodeSpec", "Span", "Trellis", "convert_span"]
__version__ = "0.1.0"
