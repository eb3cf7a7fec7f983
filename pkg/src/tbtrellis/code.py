"""Binary linear block codes with span lists.

Spans are stored as CLOSED intervals over 1-based positions (``[a, b]``).
Koetter-Vardy style semiopen 0-based spans ``(a, b]`` are converted on the
way in with :func:`convert_span`; the two conventions differ by a shift of
one, so ``(3, 6]`` and ``[4, 7]`` describe the same generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from . import gf2
from .errors import CapacityError, DimensionError, RankError, ValidationError
from .gf2 import BitMatrix, BitVector

CONVENTIONAL = "conventional"
CIRCULAR = "circular"


@dataclass(frozen=True, order=True)
class Span:
    """Closed cyclic interval ``[start, end]`` of 1-based positions."""

    start: int
    end: int

    @property
    def kind(self) -> str:
        return CONVENTIONAL if self.start <= self.end else CIRCULAR

    @property
    def is_circular(self) -> bool:
        return self.start > self.end

    def contains(self, i: int) -> bool:
        if self.start <= self.end:
            return self.start <= i <= self.end
        return i >= self.start or i <= self.end

    def length(self, n: int) -> int:
        if self.start <= self.end:
            return self.end - self.start + 1
        return n - self.start + 1 + self.end

    def positions(self, n: int) -> list[int]:
        return [i for i in range(1, n + 1) if self.contains(i)]

    def is_full(self, n: int) -> bool:
        """True when the span covers all n positions, e.g. ``[1, n]`` or ``[5, 4]``."""
        return self.length(n) == n

    def to_semiopen(self) -> tuple[int, int]:
        return (self.start - 1, self.end - 1)

    def __str__(self) -> str:
        return f"[{self.start}, {self.end}]"


SpanList = tuple  # tuple[Span, ...], one span per generator row


def convert_span(a: int, b: int, n: int | None = None) -> Span:
    """Semiopen 0-based ``(a, b]`` -> closed 1-based ``[a+1, b+1]``."""
    if n is not None and not (0 <= a <= n - 1 and 0 <= b <= n - 1):
        raise ValueError(f"span ({a}, {b}] out of range for length {n}")
    if a < 0 or b < 0:
        raise ValueError(f"negative endpoint in ({a}, {b}]")
    return Span(a + 1, b + 1)


def spans_from_semiopen(pairs: Sequence[tuple[int, int]], n: int | None = None) -> tuple[Span, ...]:
    return tuple(convert_span(a, b, n) for a, b in pairs)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def raise_if_invalid(self, what: str = "code specification") -> None:
        if self.violations:
            raise ValidationError(f"invalid {what}: " + "; ".join(self.violations), self.violations)


def _support_violations(rows: Sequence[BitVector], spans: Sequence[Span], n: int, name: str) -> list[str]:
    out = []
    for l, (g, s) in enumerate(zip(rows, spans), start=1):
        if not (1 <= s.start <= n and 1 <= s.end <= n):
            out.append(f"{name} {l}: span {s} has endpoints outside 1..{n}")
            continue
        for j in g.support():
            if not s.contains(j + 1):
                out.append(f"{name} {l}: support position {j + 1} outside span {s}")
    return out


@dataclass(frozen=True)
class CodeSpec:
    """An (n, k) code given by generator G, parity-check H and a span list for G."""

    G: BitMatrix
    H: BitMatrix
    spans: tuple[Span, ...]

    def __post_init__(self):
        object.__setattr__(self, "spans", tuple(self.spans))
        if self.G.cols != self.H.cols:
            raise DimensionError(f"G has {self.G.cols} columns but H has {self.H.cols}")
        if len(self.spans) != self.G.rows:
            raise DimensionError(f"{len(self.spans)} spans given for {self.G.rows} generator rows")

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    def gbar(self, i: int) -> BitVector:
        """The i-th column of G (1-based)."""
        return self.G.column(i - 1)

    def h(self, i: int) -> BitVector:
        """The i-th column of H (1-based)."""
        return self.H.column(i - 1)

    def validate(self) -> ValidationReport:
        return validate(self)

    def require_valid(self) -> "CodeSpec":
        validate(self).raise_if_invalid()
        return self


def validate(spec: CodeSpec) -> ValidationReport:
    """Check the defining conditions of a code specification.

    Every violated condition is listed; nothing is raised.
    """
    report = ValidationReport()
    n, k = spec.n, spec.k
    if spec.H.rows != n - k:
        report.violations.append(f"H has {spec.H.rows} rows, expected n-k = {n - k}")
    else:
        prod = gf2.matmul(spec.G, gf2.transpose(spec.H))
        if not prod.is_zero():
            bad = [(int(r) + 1, int(c) + 1) for r, c in zip(*prod.array.nonzero())]
            report.violations.append(f"G·Hᵀ ≠ 0 (nonzero entries at {bad[:4]})")
        if gf2.rank(spec.H) != n - k:
            report.violations.append(f"rank(H) = {gf2.rank(spec.H)}, expected {n - k}")
    if gf2.rank(spec.G) != k:
        report.violations.append(f"rank(G) = {gf2.rank(spec.G)}, expected {k}")
    zero_cols = [j + 1 for j in range(n) if not spec.G.array[:, j].any()]
    if zero_cols:
        report.violations.append(f"G lacks full support: zero columns {zero_cols}")
    report.violations.extend(_support_violations(spec.G.row_vectors(), spec.spans, n, "row"))
    for l, s in enumerate(spec.spans, start=1):
        if s.start == s.end:
            report.notes.append(f"row {l}: single-point span {s} treated as conventional")
    return report


def enumerate_codewords(spec: CodeSpec, limit: int = gf2.DEFAULT_LIMIT) -> list[tuple[BitVector, BitVector]]:
    """All pairs ``(u, u·G)`` in ascending order of u."""
    if spec.k > limit:
        raise CapacityError(f"k = {spec.k} exceeds the exhaustive limit {limit}")
    return [(u, gf2.multiply(u, spec.G)) for u in gf2.enumerate_space(spec.k, limit)]


@dataclass(frozen=True)
class CharacteristicInput:
    """An n×n matrix of characteristic generators together with their spans."""

    X: BitMatrix
    spans: tuple[Span, ...]

    def __post_init__(self):
        object.__setattr__(self, "spans", tuple(self.spans))
        if self.X.rows != self.X.cols:
            raise DimensionError(f"characteristic matrix must be square, got {self.X.shape}")
        if len(self.spans) != self.X.rows:
            raise DimensionError(f"{len(self.spans)} spans given for {self.X.rows} rows")

    @property
    def n(self) -> int:
        return self.X.cols

    def validate(self, H: BitMatrix | None = None) -> ValidationReport:
        report = ValidationReport()
        starts = [s.start for s in self.spans]
        ends = [s.end for s in self.spans]
        if len(set(starts)) != len(starts):
            report.violations.append(f"span starts not distinct: {starts}")
        if len(set(ends)) != len(ends):
            report.violations.append(f"span ends not distinct: {ends}")
        report.violations.extend(_support_violations(self.X.row_vectors(), self.spans, self.n, "row"))
        if H is not None:
            prod = gf2.matmul(self.X, gf2.transpose(H))
            for l in range(self.X.rows):
                if prod.array[l].any():
                    report.violations.append(f"row {l + 1} is not a codeword")
        return report


class Selection(NamedTuple):
    G: BitMatrix
    spans: tuple[Span, ...]


def select_rows(X: CharacteristicInput, rows: Sequence[int]) -> Selection:
    """Pick rows of a characteristic matrix (1-based indices, in the given order)."""
    idx = [r - 1 for r in rows]
    for r in rows:
        if not 1 <= r <= X.n:
            raise IndexError(f"row index {r} outside 1..{X.n}")
    G = X.X.select_rows(idx)
    r = gf2.rank(G)
    if r < len(rows):
        raise RankError(f"selected rows {list(rows)} have rank {r}, deficient by {len(rows) - r}")
    return Selection(G, tuple(X.spans[i] for i in idx))
