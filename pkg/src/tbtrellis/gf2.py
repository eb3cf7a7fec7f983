"""Dense linear algebra over GF(2).

Vectors are row vectors throughout: a matrix ``M`` acts as ``u -> u·M`` and
:func:`kernel_basis` returns the LEFT kernel ``{u : u·M = 0}``.  This is the
opposite of the usual right-nullspace convention, and it is the one the
trellis state maps need (a state is ``u·N_i`` for an information vector u).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DimensionError

#: Largest dimension :func:`enumerate_space` will expand by default.
DEFAULT_LIMIT = 20


class BitVector(tuple):
    """Immutable vector over GF(2).

    Accepts any iterable of 0/1 values or a string such as ``"0110"``.
    Hashable, so it can be used directly as a vertex label or set member.
    """

    __slots__ = ()

    def __new__(cls, bits: Iterable[int] | str = ()):
        if isinstance(bits, str):
            bad = [ch for ch in bits if ch not in "01"]
            if bad:
                raise ValueError(f"invalid bit character {bad[0]!r} in {bits!r}")
            values = tuple(int(ch) for ch in bits)
        else:
            values = tuple(int(b) for b in bits)
            if any(b not in (0, 1) for b in values):
                raise ValueError(f"bit values must be 0 or 1, got {values}")
        return super().__new__(cls, values)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls((0,) * length)

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitVector":
        """Binary expansion of ``value``, most significant bit first."""
        if value < 0 or value >= (1 << length):
            raise ValueError(f"{value} does not fit in {length} bits")
        return cls((value >> (length - 1 - j)) & 1 for j in range(length))

    def to_int(self) -> int:
        out = 0
        for b in self:
            out = (out << 1) | b
        return out

    def __xor__(self, other: Sequence[int]) -> "BitVector":
        if len(self) != len(other):
            raise DimensionError(f"cannot add vectors of lengths {len(self)} and {len(other)}")
        return BitVector(a ^ b for a, b in zip(self, other))

    def dot(self, other: Sequence[int]) -> int:
        if len(self) != len(other):
            raise DimensionError(f"cannot dot vectors of lengths {len(self)} and {len(other)}")
        return sum(a & b for a, b in zip(self, other)) & 1

    def weight(self) -> int:
        return sum(self)

    def support(self) -> list[int]:
        """0-based indices of the nonzero entries."""
        return [j for j, b in enumerate(self) if b]

    def project(self, indices: Iterable[int]) -> "BitVector":
        return BitVector(self[j] for j in indices)

    def concat(self, other: Sequence[int]) -> "BitVector":
        return BitVector(tuple(self) + tuple(other))

    def __str__(self) -> str:
        return "".join(str(b) for b in self)

    def __repr__(self) -> str:
        return f"BitVector('{self}')"


class BitMatrix:
    """Immutable dense binary matrix backed by a read-only uint8 array."""

    __slots__ = ("_a",)

    def __init__(self, data, cols: int | None = None):
        if isinstance(data, BitMatrix):
            arr = data._a
        elif isinstance(data, str):
            arr = _parse_compact(data.split())
        elif isinstance(data, np.ndarray):
            arr = np.array(data, dtype=np.int64)
        else:
            rows = list(data)
            if rows and isinstance(rows[0], str):
                arr = _parse_compact(rows)
            elif not rows:
                arr = np.zeros((0, cols or 0), dtype=np.int64)
            else:
                lengths = {len(r) for r in rows}
                if len(lengths) != 1:
                    raise DimensionError(f"ragged rows with lengths {sorted(lengths)}")
                arr = np.array([list(r) for r in rows], dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionError(f"expected a 2-d matrix, got shape {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("matrix entries must be 0 or 1")
        if cols is not None and arr.shape[1] != cols:
            if arr.shape[0] == 0:
                arr = np.zeros((0, cols), dtype=np.int64)
            else:
                raise DimensionError(f"expected {cols} columns, got {arr.shape[1]}")
        a = arr.astype(np.uint8)
        a.setflags(write=False)
        self._a = a

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        return cls(list(rows), cols=cols)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "BitMatrix":
        return cls(np.diag(np.array(entries, dtype=np.uint8)).reshape(len(entries), len(entries)))

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    def row(self, i: int) -> BitVector:
        return BitVector(self._a[i])

    def column(self, j: int) -> BitVector:
        return BitVector(self._a[:, j])

    def row_vectors(self) -> list[BitVector]:
        return [BitVector(r) for r in self._a]

    def select_rows(self, indices: Sequence[int]) -> "BitMatrix":
        return BitMatrix(self._a[list(indices)].reshape(len(indices), self.cols))

    def first_columns(self, i: int) -> "BitMatrix":
        return BitMatrix(self._a[:, :i])

    def is_zero(self) -> bool:
        return not self._a.any()

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape} matrices")
        return BitMatrix(self._a ^ other._a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool((self._a == other._a).all())

    def __hash__(self) -> int:
        return hash((self.shape, self._a.tobytes()))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(int(x)) for x in r) for r in self._a)

    def __repr__(self) -> str:
        body = ", ".join("'" + "".join(str(int(x)) for x in r) + "'" for r in self._a)
        return f"BitMatrix([{body}], cols={self.cols})"


def _parse_compact(rows: Sequence[str]) -> np.ndarray:
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    vecs = [BitVector(r) for r in rows]
    lengths = {len(v) for v in vecs}
    if len(lengths) != 1:
        raise DimensionError(f"ragged rows with lengths {sorted(lengths)}")
    return np.array(vecs, dtype=np.int64).reshape(len(vecs), lengths.pop())


def multiply(u: Sequence[int], M: BitMatrix) -> BitVector:
    """Vector-matrix product ``u·M`` over GF(2); u may be a bit string."""
    if isinstance(u, str):
        u = BitVector(u)
    if len(u) != M.rows:
        raise DimensionError(f"vector of length {len(u)} cannot multiply a matrix with {M.rows} rows")
    if M.rows == 0:
        return BitVector.zeros(M.cols)
    prod = np.asarray(u, dtype=np.int64) @ M.array.astype(np.int64)
    return BitVector(prod & 1)


def matmul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    prod = A.array.astype(np.int64) @ B.array.astype(np.int64)
    return BitMatrix((prod & 1).reshape(A.rows, B.cols))


def transpose(M: BitMatrix) -> BitMatrix:
    return BitMatrix(M.array.T.reshape(M.cols, M.rows))


def hstack(*blocks: BitMatrix | Sequence[int]) -> BitMatrix:
    """Horizontal concatenation; plain vectors are treated as column blocks."""
    arrays = []
    height = None
    for b in blocks:
        a = b.array if isinstance(b, BitMatrix) else np.asarray(b, dtype=np.uint8).reshape(-1, 1)
        if height is None:
            height = a.shape[0]
        elif a.shape[0] != height:
            raise DimensionError(f"cannot stack blocks of heights {height} and {a.shape[0]}")
        arrays.append(a)
    if not arrays:
        raise DimensionError("hstack needs at least one block")
    return BitMatrix(np.hstack(arrays).reshape(height, -1))


def rref(M: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Pivoting is deterministic: columns are scanned left to right and the
    topmost available row with a 1 becomes the pivot row.
    """
    a = M.array.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        mask = a[:, c].astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return BitMatrix(a), pivots


def rank(M: BitMatrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: BitMatrix) -> list[BitVector]:
    """Basis of the left kernel ``{u : u·M = 0}``, in reduced echelon form."""
    k = M.rows
    if k == 0:
        return []
    aug = np.hstack([M.array, np.eye(k, dtype=np.uint8)])
    reduced, pivots = rref(BitMatrix(aug))
    m = M.cols
    n_pivots_in_m = sum(1 for p in pivots if p < m)
    # rows after the M-pivots have a zero M-part; their identity part spans the kernel
    tail = reduced.array[n_pivots_in_m:, m:]
    tail = tail[tail.any(axis=1)]
    if tail.shape[0] == 0:
        return []
    basis, _ = rref(BitMatrix(tail))
    return [v for v in basis.row_vectors() if any(v)]


def span(basis: Sequence[Sequence[int]], dim: int, limit: int = DEFAULT_LIMIT) -> list[BitVector]:
    """All GF(2) combinations of ``basis``, sorted ascending."""
    vecs = [BitVector(b) for b in basis]
    for v in vecs:
        if len(v) != dim:
            raise DimensionError(f"basis vector of length {len(v)} in a space of dimension {dim}")
    if len(vecs) > limit:
        raise CapacityError(f"span of {len(vecs)} vectors exceeds the exhaustive limit {limit}")
    out = {BitVector.zeros(dim)}
    for v in vecs:
        out |= {w ^ v for w in out}
    return sorted(out)


def enumerate_space(dim: int, limit: int = DEFAULT_LIMIT) -> list[BitVector]:
    """Every vector of F^dim in ascending binary order (leftmost bit most significant)."""
    if dim < 0:
        raise DimensionError(f"negative dimension {dim}")
    if dim > limit:
        raise CapacityError(f"cannot enumerate F^{dim}: exhaustive limit is {limit}")
    return [BitVector(bits) for bits in itertools.product((0, 1), repeat=dim)]


def kernel_vectors(M: BitMatrix, limit: int = DEFAULT_LIMIT) -> list[BitVector]:
    return span(kernel_basis(M), M.rows, limit=limit)


def kernel_dim(M: BitMatrix) -> int:
    return M.rows - rank(M)


def image_vectors(M: BitMatrix, limit: int = DEFAULT_LIMIT) -> list[BitVector]:
    """The row space of M (the image of u -> u·M), sorted."""
    reduced, pivots = rref(M)
    return span(reduced.row_vectors()[: len(pivots)], M.cols, limit=limit)


def closure_witness(vectors: Iterable[Sequence[int]]) -> tuple[BitVector, BitVector] | None:
    """Return a pair whose sum escapes the set, or None if the set is a subspace.

    An empty set or one missing the zero vector is reported with the pair
    ``(v, v)`` for some member v (or two empty vectors for the empty set).
    """
    vs = {BitVector(v) for v in vectors}
    if not vs:
        return (BitVector(), BitVector())
    ordered = sorted(vs)
    for a in ordered:
        for b in ordered:
            if b < a:
                continue
            if (a ^ b) not in vs:
                return (a, b)
    return None
