"""Exact dense linear algebra over the rationals.

Everything here is tolerance-free: entries are `fractions.Fraction`, pivot
choice is deterministic (first nonzero entry in row order), and outputs
are reproducible bit for bit.  No floating point enters at any stage.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import MembershipError, ShapeError

Vec = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce an int, string or Fraction to an exact rational.

    Floats are rejected: silent binary rounding would defeat the whole
    point of the engine.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def vec(values: Iterable) -> Vec:
    return tuple(rat(v) for v in values)


def zero_vec(n: int) -> Vec:
    return (_ZERO,) * n


def unit_vec(n: int, k: int) -> Vec:
    return tuple(_ONE if i == k else _ZERO for i in range(n))


def add_vec(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub_vec(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale_vec(c: Fraction, v: Sequence[Fraction]) -> Vec:
    return tuple(c * a for a in v)


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


class Mat:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable], cols: Optional[int] = None):
        grid = tuple(tuple(rat(x) for x in row) for row in data)
        if grid:
            width = len(grid[0])
            for row in grid:
                if len(row) != width:
                    raise ShapeError("rows have varying lengths")
        else:
            width = 0 if cols is None else cols
        self.data = grid
        self.rows = len(grid)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([unit_vec(n, i) for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls([zero_vec(cols) for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]], rows: Optional[int] = None) -> "Mat":
        if columns:
            rows = len(columns[0])
            for c in columns:
                if len(c) != rows:
                    raise ShapeError("columns have varying lengths")
        elif rows is None:
            rows = 0
        return cls([[col[i] for col in columns] for i in range(rows)], cols=len(columns))

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> Vec:
        return self.data[i]

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self.data)

    def apply(self, v: Sequence[Fraction]) -> Vec:
        if len(v) != self.cols:
            raise ShapeError(f"matrix is {self.rows}x{self.cols}, vector has length {len(v)}")
        out = [_ZERO] * self.rows
        for j, vj in enumerate(v):
            if vj == 0:
                continue
            for i, row in enumerate(self.data):
                if row[j] != 0:
                    out[i] += vj * row[j]
        return tuple(out)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = other.transpose()
        return Mat(
            [[sum((a * b for a, b in zip(row, col)), _ZERO) for col in ot.data] for row in self.data],
            cols=other.cols,
        )

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([add_vec(r, s) for r, s in zip(self.data, other.data)], cols=self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([sub_vec(r, s) for r, s in zip(self.data, other.data)], cols=self.cols)

    def __neg__(self) -> "Mat":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "Mat":
        c = rat(c)
        return Mat([scale_vec(c, r) for r in self.data], cols=self.cols)

    def transpose(self) -> "Mat":
        return Mat([self.column(j) for j in range(self.cols)], cols=self.rows)

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.data)

    def _same_shape(self, other: "Mat") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.data))

    def __repr__(self) -> str:
        return f"Mat({[list(map(str, r)) for r in self.data]})"


def _reduce_rows(rows: list[list[Fraction]]) -> list[int]:
    """In-place reduced row echelon form; returns the pivot columns.

    Pivot = first nonzero entry in row order, so the result is unique for
    a given input ordering.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(a: Mat) -> int:
    rows = [list(r) for r in a.data]
    return len(_reduce_rows(rows))


def solve(a: Mat, b: Sequence[Fraction]) -> Optional[Vec]:
    """First solution of A·x = b with free variables set to 0, or None."""
    if len(b) != a.rows:
        raise ShapeError(f"matrix has {a.rows} rows, right-hand side has length {len(b)}")
    if a.cols == 0:
        return () if is_zero_vec(b) else None
    rows = [list(r) + [rat(x)] for r, x in zip(a.data, b)]
    if not rows:
        return zero_vec(a.cols)
    pivots = _reduce_rows(rows)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [_ZERO] * a.cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    return tuple(x)


def inverse(a: Mat) -> Optional[Mat]:
    """Inverse of a square matrix, or None when singular."""
    if a.rows != a.cols:
        raise ShapeError("only square matrices can be inverted")
    n = a.rows
    rows = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(a.data)]
    pivots = _reduce_rows(rows)
    if pivots != list(range(n)):
        return None
    return Mat([row[n:] for row in rows], cols=n)


class _Echelon:
    """Incremental row reducer used for span membership and greedy bases.

    Stored rows are kept fully reduced: leading 1 at the pivot column and
    zeros at every other pivot column.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, list[Fraction]] = {}

    def residual(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.n:
            raise ShapeError(f"expected length {self.n}, got {len(v)}")
        r = list(v)
        for c in range(self.n):
            if r[c] != 0 and c in self.rows:
                f = r[c]
                row = self.rows[c]
                r = [a - f * b for a, b in zip(r, row)]
        return r

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vec(self.residual(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        """Insert v; returns True when it enlarged the span."""
        r = self.residual(v)
        p = next((c for c in range(self.n) if r[c] != 0), None)
        if p is None:
            return False
        pv = r[p]
        r = [a / pv for a in r]
        for c, row in self.rows.items():
            if row[p] != 0:
                f = row[p]
                self.rows[c] = [a - f * b for a, b in zip(row, r)]
        self.rows[p] = r
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


class SubspacePresentation:
    """A subspace of Q^n given by a linearly independent list of vectors."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Iterable[Sequence[Fraction]]):
        vs = tuple(vec(v) for v in basis)
        for v in vs:
            if len(v) != ambient_dim:
                raise ShapeError(f"basis vector of length {len(v)} in ambient dimension {ambient_dim}")
        ech = _Echelon(ambient_dim)
        for v in vs:
            if not ech.add(v):
                raise MembershipError("basis vectors are linearly dependent")
        self.ambient_dim = ambient_dim
        self.basis = vs

    @classmethod
    def from_spanning(cls, ambient_dim: int, vectors: Iterable[Sequence[Fraction]]) -> "SubspacePresentation":
        """Greedy independent sublist of `vectors`, in input order."""
        ech = _Echelon(ambient_dim)
        kept = [vec(v) for v in vectors]
        return cls(ambient_dim, [v for v in kept if ech.add(v)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise ShapeError("ambient dimension mismatch")
        ech = _Echelon(self.ambient_dim)
        for b in self.basis:
            ech.add(b)
        return ech.contains(v)

    def contains_subspace(self, other: "SubspacePresentation") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("ambient dimension mismatch")
        ech = _Echelon(self.ambient_dim)
        for b in self.basis:
            ech.add(b)
        return all(ech.contains(v) for v in other.basis)

    def combine(self, coeffs: Sequence[Fraction]) -> Vec:
        """Linear combination of the basis with the given coefficients."""
        if len(coeffs) != self.dim:
            raise ShapeError("coefficient count does not match the basis size")
        out = list(zero_vec(self.ambient_dim))
        for c, b in zip(coeffs, self.basis):
            if c != 0:
                out = [a + c * x for a, x in zip(out, b)]
        return tuple(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubspacePresentation)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"SubspacePresentation(dim {self.dim} in Q^{self.ambient_dim})"


def subspace_equal(u: SubspacePresentation, w: SubspacePresentation) -> bool:
    """span(U) == span(W), decided by ranks of the stacked matrices."""
    if u.ambient_dim != w.ambient_dim:
        raise ShapeError("ambient dimension mismatch")
    if u.dim != w.dim:
        return False
    stacked = Mat(list(u.basis) + list(w.basis), cols=u.ambient_dim)
    return rank(stacked) == u.dim


def kernel_basis(a: Mat) -> SubspacePresentation:
    """Basis of the null space of A, ordered by ascending free column."""
    rows = [list(r) for r in a.data]
    pivots = _reduce_rows(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(a.cols):
        if f in pivot_set:
            continue
        v = [_ZERO] * a.cols
        v[f] = _ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return SubspacePresentation(a.cols, basis)


class QuotientPresentation:
    """A quotient span(Z)/span(B) with a chosen complement basis.

    Classes are coordinatized in the complement basis; the complement is
    picked greedily from Z's basis vectors in order, so coordinates are
    reproducible.
    """

    __slots__ = ("ambient", "sub", "complement")

    def __init__(self, ambient: SubspacePresentation, sub: SubspacePresentation,
                 complement: tuple[Vec, ...]):
        self.ambient = ambient
        self.sub = sub
        self.complement = complement

    @property
    def dim(self) -> int:
        return len(self.complement)

    def coordinates_of(self, v: Sequence[Fraction]) -> Vec:
        """Coordinates of [v] in the complement basis.

        Solves v = (sub part) + (complement part); raises when v is not in
        the ambient span.
        """
        columns = list(self.sub.basis) + list(self.complement)
        sol = solve(Mat.from_columns(columns, rows=self.ambient.ambient_dim), vec(v))
        if sol is None:
            raise MembershipError("vector lies outside the ambient subspace")
        return sol[self.sub.dim:]

    def class_is_zero(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vec(self.coordinates_of(v))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuotientPresentation)
            and self.ambient == other.ambient
            and self.sub == other.sub
            and self.complement == other.complement
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.sub, self.complement))

    def __repr__(self) -> str:
        return f"QuotientPresentation(dim {self.dim})"


def quotient_presentation(z: SubspacePresentation, b: SubspacePresentation) -> QuotientPresentation:
    """Present span(Z)/span(B); requires B ⊆ Z."""
    if z.ambient_dim != b.ambient_dim:
        raise ShapeError("ambient dimension mismatch")
    ech = _Echelon(z.ambient_dim)
    for v in z.basis:
        ech.add(v)
    for v in b.basis:
        if not ech.contains(v):
            raise MembershipError("sub is not contained in the ambient space of the quotient")
    sub_ech = _Echelon(z.ambient_dim)
    for v in b.basis:
        sub_ech.add(v)
    complement = tuple(v for v in z.basis if sub_ech.add(v))
    return QuotientPresentation(z, b, complement)
