"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries and never rounds.
Subspaces are kept in a canonical form (reduced row echelon basis with
increasing pivots), so two subspaces are equal exactly when their bases are.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientMismatch, NotChainMap, NotNested

Vector = tuple  # tuple of Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


class Matrix:
    """Dense immutable matrix of Fractions, stored row-major."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        rows = tuple(vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = rows

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[_ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        if not columns:
            return cls([[] for _ in range(nrows)], 0)
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self._rows for x in r)

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self._rows, self.ncols) if self.nrows else Matrix.zeros(self.ncols, 0)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise AmbientMismatch(f"vector of length {len(v)} for {self.nrows}x{self.ncols} matrix")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), _ZERO) for r in self._rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise AmbientMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return Matrix([[sum((a * b for a, b in zip(r, c) if a and b), _ZERO) for c in cols]
                       for r in self._rows], other.ncols)

    def __mul__(self, scalar) -> "Matrix":
        s = as_fraction(scalar)
        return Matrix([[s * x for x in r] for r in self._rows], self.ncols)

    __rmul__ = __mul__

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise AmbientMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other * -1

    def __neg__(self) -> "Matrix":
        return self * -1

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def is_zero(self) -> bool:
        return all(not x for r in self._rows for x in r)

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(min(self.shape))), _ZERO)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan elimination; returns (nonzero rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = [x * inv for x in pr]
            rows[r] = pr
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form of ``m`` and its rank.

    Pivot choice is the leftmost column with a nonzero entry, taking the first
    such row, which makes the output deterministic.
    """
    rows = [list(r) for r in m.rows]
    reduced, pivots = _rref_rows(rows, m.ncols)
    rank = len(pivots)
    full = reduced + [[_ZERO] * m.ncols for _ in range(m.nrows - rank)]
    return Matrix(full, m.ncols), rank


def rank(m: Matrix) -> int:
    return len(_rref_rows([list(r) for r in m.rows], m.ncols)[1])


def determinant(m: Matrix) -> Fraction:
    if m.nrows != m.ncols:
        raise AmbientMismatch("determinant of a non-square matrix")
    rows = [list(r) for r in m.rows]
    n = m.nrows
    det = _ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return _ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        pc = rows[c][c]
        det *= pc
        for i in range(c + 1, n):
            f = rows[i][c] / pc
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if n != m.ncols:
        raise AmbientMismatch("inverse of a non-square matrix")
    aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(m.rows)]
    reduced, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix([r[n:] for r in reduced], n)


class Subspace:
    """A linear subspace of Q^ambient_dim in canonical RREF form."""

    __slots__ = ("ambient_dim", "_basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [list(vector(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
        reduced, pivots = _rref_rows(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self._basis = tuple(tuple(r) for r in reduced)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).rows)

    @property
    def basis(self) -> tuple[Vector, ...]:
        return self._basis

    @property
    def rank(self) -> int:
        return len(self._basis)

    dim = rank

    def basis_matrix(self) -> Matrix:
        return Matrix(self._basis, self.ambient_dim)

    def __len__(self):
        return len(self._basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self._basis == other._basis)

    def __hash__(self):
        return hash((self.ambient_dim, self._basis))

    def __repr__(self):
        return f"Subspace(dim={self.rank}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    def contains(self, x) -> bool:
        """Exact membership of a vector, or inclusion of a Subspace."""
        if isinstance(x, Subspace):
            self._check(x)
            return all(self.contains(v) for v in x.basis)
        v = list(vector(x))
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        # reduce against the RREF basis; pivots are unit columns
        for b, p in zip(self._basis, self.pivots):
            f = v[p]
            if f:
                v = [a - f * c for a, c in zip(v, b)]
        return not any(v)

    __contains__ = contains

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self._basis + other._basis)

    sum = __add__

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self._basis or not other._basis:
            return Subspace.zero(self.ambient_dim)
        # (lam, mu) in ker [A^T | -B^T]  <=>  lam.A = mu.B
        cols = list(self._basis) + [tuple(-x for x in b) for b in other._basis]
        k = kernel(Matrix.from_columns(cols, self.ambient_dim))
        ra = self.rank
        out = []
        for w in k.basis:
            lam = w[:ra]
            out.append([sum((l * b[j] for l, b in zip(lam, self._basis) if l), _ZERO)
                        for j in range(self.ambient_dim)])
        return Subspace(self.ambient_dim, out)

    __and__ = intersect

    def quotient_dim(self, sub: "Subspace") -> int:
        if not self.contains(sub):
            raise NotNested("quotient by a subspace that is not contained")
        return self.rank - sub.rank

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the canonical basis (pivot entries)."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(as_fraction(v[p]) for p in self.pivots)

    def image_under(self, m: Matrix) -> "Subspace":
        if m.ncols != self.ambient_dim:
            raise AmbientMismatch(f"{m.shape} matrix applied to ambient dimension {self.ambient_dim}")
        return Subspace(m.nrows, [m.apply(b) for b in self._basis])


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0} as a canonical Subspace of Q^cols."""
    reduced, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    pivset = set(pivots)
    vecs = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [_ZERO] * m.ncols
        v[f] = _ONE
        for r, p in zip(reduced, pivots):
            v[p] = -r[f]
        vecs.append(v)
    return Subspace(m.ncols, vecs)


def image(m: Matrix) -> Subspace:
    """Column span of ``m`` as a canonical Subspace of Q^rows."""
    return Subspace(m.nrows, m.columns())


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def contains(a: Subspace, x) -> bool:
    return a.contains(x)


def quotient_map_rank(
    m: Matrix,
    dom_cycles: Subspace,
    dom_boundaries: Subspace,
    cod_cycles: Subspace,
    cod_boundaries: Subspace,
) -> tuple[int, bool]:
    """Rank of the map induced by ``m`` between two quotient spaces.

    Returns ``(rank, is_iso)`` for dom_cycles/dom_boundaries -> cod_cycles/cod_boundaries.
    """
    if m.ncols != dom_cycles.ambient_dim or m.nrows != cod_cycles.ambient_dim:
        raise AmbientMismatch("map shape does not match the cycle spaces")
    if not dom_cycles.contains(dom_boundaries):
        raise NotNested("domain boundaries escape domain cycles")
    if not cod_cycles.contains(cod_boundaries):
        raise NotNested("codomain boundaries escape codomain cycles")
    mapped = dom_cycles.image_under(m)
    if not cod_cycles.contains(mapped):
        raise NotChainMap("map does not send cycles into cycles")
    if not cod_boundaries.contains(dom_boundaries.image_under(m)):
        raise NotChainMap("map does not send boundaries into boundaries")
    r = (mapped + cod_boundaries).rank - cod_boundaries.rank
    dom_q = dom_cycles.rank - dom_boundaries.rank
    cod_q = cod_cycles.rank - cod_boundaries.rank
    return r, r == dom_q == cod_q
