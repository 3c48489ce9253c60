"""Linear algebra over GF(2) on int bitsets.

A row is a Python ``int`` whose bit ``i`` is the coefficient of variable
``x_i``. Width is implicit: appending path variables only ever sets higher
bits, so rows of different "widths" compare and combine correctly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union


@dataclass(frozen=True, order=True)
class XorFunction:
    """An affine Boolean function ``parity XOR <mask, x>``."""

    mask: int = 0
    parity: int = 0

    def __xor__(self, other: "XorFunction") -> "XorFunction":
        return XorFunction(self.mask ^ other.mask, self.parity ^ other.parity)

    def flip(self) -> "XorFunction":
        return XorFunction(self.mask, self.parity ^ 1)

    def is_constant(self) -> bool:
        return self.mask == 0

    def __call__(self, x: int) -> int:
        """Evaluate on the assignment whose bit ``i`` is ``x_i``."""
        return self.parity ^ (bin(self.mask & x).count("1") & 1)

    @classmethod
    def var(cls, index: int) -> "XorFunction":
        return cls(1 << index)

    def __str__(self) -> str:
        if not self.mask:
            return str(self.parity)
        names = [f"x{i + 1}" for i in range(self.mask.bit_length()) if self.mask >> i & 1]
        body = "+".join(names)
        return f"~({body})" if self.parity else body


Row = Union[int, XorFunction]


def _mask(row: Row) -> int:
    return row.mask if isinstance(row, XorFunction) else row


def _reduce(basis: dict[int, int], v: int) -> int:
    """Reduce ``v`` against a basis keyed by leading bit."""
    while v:
        b = basis.get(v.bit_length() - 1)
        if b is None:
            break
        v ^= b
    return v


def _insert(basis: dict[int, int], v: int) -> bool:
    """Insert the remainder of ``v``; True if the rank grew."""
    v = _reduce(basis, v)
    if v:
        basis[v.bit_length() - 1] = v
        return True
    return False


def rank(rows: Iterable[Row]) -> int:
    """Dimension of the span of the masks; parities are ignored."""
    basis: dict[int, int] = {}
    for row in rows:
        _insert(basis, _mask(row))
    return len(basis)


class SpanBasis:
    """Reusable span-membership tester for a fixed set of rows."""

    __slots__ = ("_basis",)

    def __init__(self, rows: Iterable[Row] = ()):
        self._basis: dict[int, int] = {}
        for row in rows:
            _insert(self._basis, _mask(row))

    @property
    def rank(self) -> int:
        return len(self._basis)

    def add(self, row: Row) -> bool:
        return _insert(self._basis, _mask(row))

    def __contains__(self, row: Row) -> bool:
        return _reduce(self._basis, _mask(row)) == 0


def in_span(f: Row, basis: Iterable[Row]) -> bool:
    """True iff the mask of ``f`` is an F2 combination of the basis masks."""
    return f in SpanBasis(basis)


@dataclass(frozen=True)
class Basis:
    """Reduced row-echelon basis: nonzero rows with increasing pivot columns."""

    rows: tuple[XorFunction, ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)


ADD = "add"
FLIP = "flip"


@dataclass(frozen=True)
class RowOp:
    """``add``: row[target] ^= row[source]; ``flip``: toggle row[target] parity."""

    kind: str
    target: int
    source: int = -1

    def __post_init__(self):
        if self.kind == ADD and self.source == self.target:
            raise ValueError("add operation needs distinct rows")
        if self.kind not in (ADD, FLIP):
            raise ValueError(f"unknown row operation {self.kind!r}")


def apply_ops(rows: Sequence[XorFunction], ops: Iterable[RowOp]) -> list[XorFunction]:
    """Replay row operations on a copy of ``rows``."""
    out = list(rows)
    for op in ops:
        if op.kind == ADD:
            out[op.target] = out[op.target] ^ out[op.source]
        else:
            out[op.target] = out[op.target].flip()
    return out


def eliminate_with_ops(rows: Sequence[XorFunction]) -> tuple[Basis, list[RowOp]]:
    """Gauss-Jordan elimination that records every row operation.

    No row swaps are used: a missing pivot is fixed by adding a lower row
    into the current one, so each operation maps to a single CNOT when rows
    are wire states. After elimination the first ``rank`` rows hold the
    reduced basis, the remaining rows are zero, and every parity is 0.
    """
    if not rows:
        raise ValueError("elimination needs at least one row")
    work = [r.mask for r in rows]
    par = [r.parity for r in rows]
    ops: list[RowOp] = []
    pivots: list[int] = []

    def add(src: int, dst: int) -> None:
        work[dst] ^= work[src]
        par[dst] ^= par[src]
        ops.append(RowOp(ADD, dst, src))

    i = 0
    n = len(work)
    while i < n:
        rest = [w for w in work[i:] if w]
        if not rest:
            break
        low = min(w & -w for w in rest)
        col = low.bit_length() - 1
        if not work[i] & low:
            j = next(j for j in range(i + 1, n) if work[j] & low)
            add(j, i)
        for r in range(n):
            if r != i and work[r] & low:
                add(i, r)
        pivots.append(col)
        i += 1
    for r in range(n):
        if par[r]:
            par[r] = 0
            ops.append(RowOp(FLIP, r))
    basis = Basis(tuple(XorFunction(w) for w in work[: len(pivots)]), tuple(pivots))
    return basis, ops


def dependent_index(block: Sequence[Row]) -> int:
    """Index of the first element lying in the span of the elements before it.

    Removing that element leaves the rank unchanged. Raises ``ValueError``
    when the block is linearly independent.
    """
    basis: dict[int, int] = {}
    for idx, row in enumerate(block):
        if not _insert(basis, _mask(row)):
            return idx
    raise ValueError("block is linearly independent")


def find_dependent(block: Sequence[Row]) -> Row:
    """The element :func:`dependent_index` picks."""
    return block[dependent_index(block)]
