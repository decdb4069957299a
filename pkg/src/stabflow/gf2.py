"""Exact linear algebra over GF(2) and affine subspaces of GF(2)^n.

Rows are packed into Python ints (bit ``c`` holds column ``c``), so row
operations are single XORs.  Matrices use 0-based (row, col) indexing;
variable index sets (pivots, free variables) are 1-based, matching the
usual ``x_1 ... x_n`` naming.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import product

DEFAULT_ENUMERATION_LIMIT = 20


class InconsistentSystemError(ValueError):
    """Raised when ``Rx = b`` has no solution."""


class InvalidFreeSetError(ValueError):
    """Raised when a proposed free-variable set does not parameterize a space."""


class EnumerationLimitError(ValueError):
    """Raised when enumerating an affine space larger than the configured limit."""


def _bit(word: int, i: int) -> int:
    return (word >> i) & 1


def _pack(bits: Iterable[int]) -> int:
    word = 0
    for i, b in enumerate(bits):
        if b & 1:
            word |= 1 << i
    return word


def _unpack(word: int, n: int) -> tuple[int, ...]:
    return tuple((word >> i) & 1 for i in range(n))


class BitMatrix:
    """Dense bit matrix with rows stored as packed ints."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Sequence[int], ncols: int):
        mask = (1 << ncols) - 1
        for r in rows:
            if r & ~mask:
                raise ValueError("row has bits beyond ncols")
        self.rows: tuple[int, ...] = tuple(rows)
        self.ncols = ncols

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            if not entries:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(entries[0])
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            if any(v not in (0, 1) for v in row):
                raise ValueError("entries must be 0 or 1")
        return cls([_pack(row) for row in entries], ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls([0] * nrows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        r, c = idx
        if not 0 <= c < self.ncols:
            raise IndexError(c)
        return _bit(self.rows[r], c)

    def to_lists(self) -> list[list[int]]:
        return [list(_unpack(r, self.ncols)) for r in self.rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def __repr__(self) -> str:
        return f"BitMatrix({self.to_lists()!r}, ncols={self.ncols})"


@dataclass(frozen=True)
class RrefResult:
    matrix: BitMatrix
    rhs: tuple[int, ...]
    pivots: tuple[int, ...]  # 1-based pivot columns, one per nonzero row


def _eliminate(rows: list[int], columns: Iterable[int]) -> tuple[list[int], list[int]]:
    """Gauss-Jordan elimination visiting ``columns`` in the given order.

    Rows may carry extra high bits (an augmented column); they are XORed along
    but never chosen as pivots.  Returns (reduced rows, pivot columns), with
    zero rows dropped to the end.
    """
    work = list(rows)
    pivots: list[int] = []
    r = 0
    for col in columns:
        sel = next((i for i in range(r, len(work)) if _bit(work[i], col)), None)
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        for i in range(len(work)):
            if i != r and _bit(work[i], col):
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work, pivots


def rref(matrix: BitMatrix, augment: Sequence[int]) -> RrefResult:
    """Reduced row echelon form of ``[matrix | augment]``.

    Raises :class:`InconsistentSystemError` if a row ``0...0 | 1`` appears.
    """
    if len(augment) != matrix.nrows:
        raise ValueError(f"augment has length {len(augment)}, matrix has {matrix.nrows} rows")
    n = matrix.ncols
    rows = [row | ((b & 1) << n) for row, b in zip(matrix.rows, augment)]
    work, pivots = _eliminate(rows, range(n))
    mask = (1 << n) - 1
    for row in work[len(pivots):]:
        if row >> n:
            raise InconsistentSystemError("system has no solution")
    k = len(pivots)
    return RrefResult(
        BitMatrix([row & mask for row in work[:k]], n),
        tuple(row >> n for row in work[:k]),
        tuple(p + 1 for p in pivots),
    )


class AffineSpace:
    """Solution set of ``Rx = b`` over GF(2).

    The constraints are reduced on construction, so ``R`` always has full
    row rank.  Inconsistent systems are rejected.
    """

    __slots__ = ("n", "_rows", "_rhs")

    def __init__(self, n: int, matrix: BitMatrix | Sequence[Sequence[int]] | None = None,
                 rhs: Sequence[int] | None = None):
        if matrix is None:
            matrix = BitMatrix.zeros(0, n)
        elif not isinstance(matrix, BitMatrix):
            matrix = BitMatrix.from_lists(matrix, n)
        if matrix.ncols != n:
            raise ValueError("constraint matrix has wrong number of columns")
        rhs = tuple(rhs) if rhs is not None else (0,) * matrix.nrows
        red = rref(matrix, rhs)
        self.n = n
        self._rows = red.matrix.rows
        self._rhs = red.rhs

    @classmethod
    def full(cls, n: int) -> AffineSpace:
        return cls(n)

    @classmethod
    def point(cls, x: Sequence[int]) -> AffineSpace:
        n = len(x)
        eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(n, BitMatrix.from_lists(eye, n) if n else None, x)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], n: int) -> AffineSpace:
        """Smallest affine space containing ``points``.

        Raises ``ValueError`` if ``points`` is empty.  The caller decides whether
        the hull being larger than the point set matters.
        """
        pts = [_pack(p) for p in points]
        if not pts:
            raise ValueError("no points")
        base = pts[0]
        diffs, _ = _eliminate([p ^ base for p in pts[1:]], range(n))
        span = [d for d in diffs if d]
        # constraints: a basis of the annihilator of the difference span
        comp = _annihilator(span, n)
        rhs = [bin(c & base).count("1") & 1 for c in comp]
        return cls(n, BitMatrix(comp, n), rhs)

    @property
    def constraints(self) -> BitMatrix:
        return BitMatrix(self._rows, self.n)

    @property
    def rhs(self) -> tuple[int, ...]:
        return self._rhs

    @property
    def dim(self) -> int:
        return self.n - len(self._rows)

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.n:
            return False
        w = _pack(x)
        return all((bin(r & w).count("1") & 1) == b for r, b in zip(self._rows, self._rhs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffineSpace):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows and self._rhs == other._rhs

    def __hash__(self) -> int:
        return hash((self.n, self._rows, self._rhs))

    def __repr__(self) -> str:
        return f"AffineSpace(n={self.n}, dim={self.dim})"


def _annihilator(span: Sequence[int], n: int) -> list[int]:
    """Basis of {c : c.s = 0 for all s in span}, span given as reduced rows."""
    work, pivots = _eliminate(span, range(n))
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        vec = 1 << f
        for row, p in zip(work, pivots):
            if _bit(row, f):
                vec |= 1 << p
        basis.append(vec)
    return basis


def canonical_free_vars(space: AffineSpace) -> tuple[int, ...]:
    """Canonical free variables (1-based, ascending).

    Scanning ``x_1, x_2, ...``, a variable is dependent exactly when some
    constraint in the row space has it as its highest-index variable, so
    reducing with columns taken in descending order exposes the dependents.
    """
    _, pivots = _eliminate(list(space._rows), range(space.n - 1, -1, -1))
    dependent = set(pivots)
    return tuple(j + 1 for j in range(space.n) if j not in dependent)


@dataclass(frozen=True)
class DependencyTable:
    """Each dependent variable written as ``x_j = a_j + sum_k a_jk x_k`` over the free set."""

    n: int
    free: tuple[int, ...]
    rows: dict[int, tuple[int, frozenset[int]]]  # j -> (a_j, {k : a_jk = 1}), all 1-based

    def point(self, values: Sequence[int]) -> tuple[int, ...]:
        """Point induced by assigning ``values`` to ``free`` (in that order)."""
        if len(values) != len(self.free):
            raise ValueError("need one value per free variable")
        x = [0] * (self.n + 1)
        assign = dict(zip(self.free, values))
        for k, v in assign.items():
            x[k] = v & 1
        for j, (const, deps) in self.rows.items():
            acc = const
            for k in deps:
                acc ^= assign[k]
            x[j] = acc
        return tuple(x[1:])

    def points(self) -> Iterator[tuple[int, ...]]:
        for values in product((0, 1), repeat=len(self.free)):
            yield self.point(values)

    def depends_only_on_earlier(self) -> bool:
        return all(k < j for j, (_, deps) in self.rows.items() for k in deps)


def dependency_table(space: AffineSpace, free: Iterable[int]) -> DependencyTable:
    free_t = tuple(sorted(set(free)))
    n = space.n
    if any(not 1 <= k <= n for k in free_t):
        raise InvalidFreeSetError("free index out of range")
    if len(free_t) != space.dim:
        raise InvalidFreeSetError(f"need {space.dim} free variables, got {len(free_t)}")
    free0 = {k - 1 for k in free_t}
    dep_cols = [c for c in range(n) if c not in free0]
    rows = [r | (b << n) for r, b in zip(space._rows, space._rhs)]
    work, pivots = _eliminate(rows, dep_cols)
    if len(pivots) != len(dep_cols):
        raise InvalidFreeSetError("free set does not parameterize the space")
    table = {}
    for row, p in zip(work, pivots):
        deps = frozenset(c + 1 for c in range(n) if c != p and _bit(row, c))
        table[p + 1] = (row >> n, deps)
    return DependencyTable(n, free_t, table)


def enumerate_points(space: AffineSpace, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[tuple[int, ...]]:
    """All points of ``space``; raises :class:`EnumerationLimitError` past ``2**limit``."""
    if space.dim > limit:
        raise EnumerationLimitError(f"dimension {space.dim} exceeds limit {limit}")
    table = dependency_table(space, canonical_free_vars(space))
    return list(table.points())


def pack_bits(bits: Sequence[int]) -> int:
    """Big-endian index of a bit string: ``x_1`` is the most significant bit."""
    idx = 0
    for b in bits:
        idx = (idx << 1) | (b & 1)
    return idx


def unpack_index(idx: int, n: int) -> tuple[int, ...]:
    return tuple((idx >> (n - 1 - j)) & 1 for j in range(n))
