"""Chevalley-Eilenberg complex of a Lie algebra and its Betti numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import JacobiViolation
from .exterior import Form, blades, operator_matrix
from .lie import LieAlgebra
from .linalg import Matrix, Subspace, image, kernel


@dataclass(frozen=True)
class CochainComplex:
    """``d_matrices[k]`` is d: Lambda^k -> Lambda^(k+1) in lex blade coordinates."""

    algebra: LieAlgebra
    d_matrices: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def d(self, k: int) -> Matrix:
        n = self.dim
        if 0 <= k <= n:
            return self.d_matrices[k]
        rows = comb(n, k + 1) if 0 <= k + 1 <= n else 0
        cols = comb(n, k) if 0 <= k <= n else 0
        return Matrix.zeros(rows, cols) if rows else Matrix([], cols)

    def cocycles(self, k: int) -> Subspace:
        return kernel(self.d(k))

    def coboundaries(self, k: int) -> Subspace:
        if k == 0:
            return Subspace.zero(1)
        return image(self.d(k - 1))


def build_complex(g: LieAlgebra) -> CochainComplex:
    n = g.dim
    mats = []
    for k in range(n + 1):
        if k == n:
            mats.append(Matrix([], comb(n, n)))
        else:
            mats.append(operator_matrix(g.d, n, k, k + 1))
    for k in range(n - 1):
        if not (mats[k + 1] @ mats[k]).is_zero():
            raise JacobiViolation(f"d o d is nonzero on {k}-forms")
    return CochainComplex(g, tuple(mats))


@dataclass(frozen=True)
class BettiReport:
    b: tuple[int, ...]
    cocycles: tuple[Subspace, ...]
    coboundaries: tuple[Subspace, ...]
    representatives: tuple[tuple[Form, ...], ...]

    def triple(self) -> tuple[int, int, int]:
        return self.b[1], self.b[2], self.b[3]


def representatives(cycles: Subspace, boundaries: Subspace) -> list[tuple[Fraction, ...]]:
    """Cocycle basis vectors completing ``boundaries`` to ``cycles``.

    Walk the canonical cocycle basis in order and keep each vector that is
    independent of the boundaries plus what was kept so far.
    """
    kept = []
    acc = boundaries
    for v in cycles.basis:
        if not acc.contains(v):
            kept.append(v)
            acc = acc + Subspace(cycles.ambient_dim, [v])
    return kept


def betti(g: LieAlgebra, complex_: CochainComplex | None = None) -> BettiReport:
    cx = complex_ or build_complex(g)
    n = g.dim
    zs, bs, reps, b = [], [], [], []
    for k in range(n + 1):
        z = cx.cocycles(k)
        bd = cx.coboundaries(k)
        zs.append(z)
        bs.append(bd)
        b.append(z.rank - bd.rank)
        reps.append(tuple(Form.from_coordinates(n, k, v) for v in representatives(z, bd)))
    return BettiReport(tuple(b), tuple(zs), tuple(bs), tuple(reps))


def betti_numbers(g: LieAlgebra) -> tuple[int, ...]:
    """b_0..b_n using ranks only: b_k = dim ker d_k - rank d_(k-1)."""
    cx = build_complex(g)
    n = g.dim
    ranks = [image(cx.d(k)).rank for k in range(n + 1)]
    return tuple(comb(n, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1))


def multi_moment_eligible(g: LieAlgebra) -> bool:
    b = betti_numbers(g)
    return len(b) > 3 and b[2] == 0 and b[3] == 0
