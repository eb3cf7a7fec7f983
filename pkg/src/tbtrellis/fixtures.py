"""Bundled worked examples: the (7,4) Hamming code under several span lists.

``hamming_a``     G with spans [1,6], [3,7], [6,2], [7,4]
``hamming_b``     G with spans [4,7], [1,4], [3,6], [7,3]
``hamming_kv``    the same code in semiopen form, plus its characteristic matrix X
``hamming_dual``  hamming_kv plus the dual characteristic matrix Y and the selection Ĥ
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .code import CharacteristicInput, CodeSpec
from .gf2 import BitMatrix
from .textio import parse_matrix, parse_spans

NAMES = ("hamming_a", "hamming_b", "hamming_kv", "hamming_dual")


@dataclass(frozen=True)
class Fixture:
    name: str
    spec: CodeSpec
    X: CharacteristicInput | None = None
    Y: CharacteristicInput | None = None
    dual: CodeSpec | None = None


def _text(name: str, fname: str) -> str | None:
    f = resources.files(__package__).joinpath("data", name, fname)
    return f.read_text() if f.is_file() else None


def fixture_path(name: str, fname: str):
    return resources.files(__package__).joinpath("data", name, fname)


def load_fixture(name: str) -> Fixture:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    G = parse_matrix(_text(name, "G.txt"), f"{name}/G.txt")
    H = parse_matrix(_text(name, "H.txt"), f"{name}/H.txt", G.cols)
    spans = parse_spans(_text(name, "spans.txt"), f"{name}/spans.txt", G.cols)
    spec = CodeSpec(G, H, spans)

    def char(prefix):
        t = _text(name, f"{prefix}.txt")
        if t is None:
            return None
        M = parse_matrix(t, f"{name}/{prefix}.txt", G.cols)
        return CharacteristicInput(M, parse_spans(_text(name, f"{prefix}_spans.txt"), name, G.cols))

    dual = None
    if _text(name, "dual_H.txt") is not None:
        Hd = parse_matrix(_text(name, "dual_H.txt"), f"{name}/dual_H.txt", G.cols)
        dual = CodeSpec(Hd, BitMatrix(G), parse_spans(_text(name, "dual_spans.txt"), name, G.cols))
    return Fixture(name, spec, char("X"), char("Y"), dual)
