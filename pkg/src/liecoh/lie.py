"""Lie algebras given by the differentials d(alpha_k) of a dual basis.

Conventions: ``d(alpha_k) = sum_{i<j} c^k_ij alpha_ij`` and
``[X_i, X_j] = -sum_k c^k_ij X_k``, so that ``d o d = 0`` is the Jacobi identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .errors import (
    AmbientMismatch,
    InternalVerificationFailure,
    JacobiViolation,
    NilpotentInput,
    NotSolvable,
)
from .exterior import Form, format_form, grade_of, indices_to_mask, mask_to_indices, wedge
from .grammar import parse_entries
from .linalg import Matrix, Subspace, kernel

_ZERO = Fraction(0)


@dataclass(frozen=True)
class SeriesReport:
    """Terms of a derived or lower central series.

    ``step`` is the least k with term k equal to zero, or None when the series
    stabilises at a nonzero subspace.
    """

    terms: tuple[Subspace, ...]
    step: int | None

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.rank for t in self.terms)


class LieAlgebra:
    """Immutable Lie algebra of dimension n described by its dual differentials."""

    def __init__(self, differentials: Sequence[Form], *, check_jacobi: bool = True):
        n = len(differentials)
        forms = tuple(differentials)
        for k, f in enumerate(forms, 1):
            if f.ambient_dim != n:
                raise AmbientMismatch(f"d(alpha_{k}) lives in dimension {f.ambient_dim}, expected {n}")
            if any(grade_of(m) != 2 for m, _ in f.items()):
                raise AmbientMismatch(f"d(alpha_{k}) is not a 2-form")
        self.dim = n
        self.differentials = forms
        self._dcache: dict[int, Form] = {}
        # bracket table: (i, j) 0-based, i<j -> coordinate vector of [X_i, X_j]
        br = {}
        for i in range(n):
            for j in range(i + 1, n):
                m = (1 << i) | (1 << j)
                br[(i, j)] = tuple(-f.terms.get(m, _ZERO) for f in forms)
        self._brackets = br
        self._ad = None
        if check_jacobi:
            self.check_jacobi()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def abelian(cls, n: int) -> "LieAlgebra":
        return cls([Form.zero(n)] * n)

    def check_jacobi(self) -> None:
        for k, f in enumerate(self.differentials, 1):
            dd = self.d(f)
            if not dd.is_zero():
                raise JacobiViolation(f"d(d(alpha_{k})) = {format_form(dd)} is nonzero")

    def structure_constant(self, k: int, i: int, j: int) -> Fraction:
        """c^k_ij with 1-based indices (antisymmetric in i, j)."""
        if i == j:
            return _ZERO
        s = 1
        if i > j:
            i, j, s = j, i, -1
        return s * self.differentials[k - 1].terms.get(indices_to_mask((i, j)), _ZERO)

    # -- differential -----------------------------------------------------------

    def _d_blade(self, mask: int) -> Form:
        hit = self._dcache.get(mask)
        if hit is not None:
            return hit
        n = self.dim
        idx = mask_to_indices(mask)
        out = Form.zero(n)
        for p, s in enumerate(idx):
            left = Form._raw(n, {indices_to_mask(idx[:p]): Fraction(1)})
            right = Form._raw(n, {indices_to_mask(idx[p + 1:]): Fraction(1)})
            term = wedge(wedge(left, self.differentials[s - 1]), right)
            out = out - term if p & 1 else out + term
        self._dcache[mask] = out
        return out

    def d(self, a: Form) -> Form:
        """Chevalley-Eilenberg differential, the antiderivation extending d(alpha_k)."""
        if a.ambient_dim != self.dim:
            raise AmbientMismatch(f"form in dimension {a.ambient_dim}, algebra in {self.dim}")
        out: dict[int, Fraction] = {}
        for m, c in a.items():
            for mm, cc in self._d_blade(m).items():
                v = out.get(mm, _ZERO) + c * cc
                if v:
                    out[mm] = v
                else:
                    out.pop(mm, None)
        return Form._raw(self.dim, out)

    # -- brackets ---------------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        """Coordinates of [X_i, X_j], 0-based indices."""
        if i == j:
            return (_ZERO,) * self.dim
        if i < j:
            return self._brackets[(i, j)]
        return tuple(-x for x in self._brackets[(j, i)])

    def bracket(self, u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
        n = self.dim
        out = [_ZERO] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if i == j or not v[j]:
                    continue
                c = u[i] * v[j]
                for k, x in enumerate(self.bracket_basis(i, j)):
                    if x:
                        out[k] += c * x
        return tuple(out)

    def bracket_spaces(self, a: Subspace, b: Subspace) -> Subspace:
        """Span of [x, y] over basis vectors x of a and y of b."""
        return Subspace(self.dim, [self.bracket(x, y) for x in a.basis for y in b.basis])

    def ad_basis(self) -> tuple[Matrix, ...]:
        """ad_{X_i} for each basis vector; column j holds [X_i, X_j]."""
        if self._ad is None:
            n = self.dim
            self._ad = tuple(
                Matrix.from_columns([self.bracket_basis(i, j) for j in range(n)], n) for i in range(n)
            )
        return self._ad

    def ad(self, x: Sequence) -> Matrix:
        n = self.dim
        return Matrix.from_columns([self.bracket(x, e) for e in Matrix.identity(n).rows], n)

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def derived_algebra(self) -> Subspace:
        n = self.dim
        return Subspace(n, [self._brackets[p] for p in sorted(self._brackets)])

    # -- printing ---------------------------------------------------------------

    def canonical_text(self) -> str:
        return "[" + ",".join(format_form(f) for f in self.differentials) + "]"

    def __str__(self):
        return self.canonical_text()

    def __repr__(self):
        return f"LieAlgebra({self.canonical_text()!r})"

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.differentials == other.differentials

    def __hash__(self):
        return hash(self.differentials)


def parse_algebra(text: str, *, check_jacobi: bool = True,
                  params: Mapping[str, Fraction] | None = None) -> LieAlgebra:
    """Parse ``[e1,...,en]`` (entry k is d(alpha_k)) into a LieAlgebra."""
    return LieAlgebra(parse_entries(text, params=params), check_jacobi=check_jacobi)


def ce_d(g: LieAlgebra, a: Form) -> Form:
    return g.d(a)


def is_unimodular(g: LieAlgebra) -> bool:
    return all(m.trace() == 0 for m in g.ad_basis())


def _series(g: LieAlgebra, step_fn) -> SeriesReport:
    terms = [g.full()]
    while True:
        cur = terms[-1]
        if cur.rank == 0:
            return SeriesReport(tuple(terms), len(terms) - 1)
        nxt = step_fn(cur)
        if nxt == cur:
            return SeriesReport(tuple(terms), None)
        terms.append(nxt)


def derived_series(g: LieAlgebra) -> SeriesReport:
    return _series(g, lambda s: g.bracket_spaces(s, s))


def solvable_step(g: LieAlgebra) -> int:
    """Least k with g^(k) = 0; the zero algebra counts as 0-step."""
    rep = derived_series(g)
    if rep.step is None:
        raise NotSolvable(f"derived series stabilises at dimension {rep.terms[-1].rank}")
    return rep.step


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g).step is not None


def lower_central_series(g: LieAlgebra) -> SeriesReport:
    full = g.full()
    return _series(g, lambda s: g.bracket_spaces(full, s))


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g).step is not None


def _is_nilpotent_matrix(m: Matrix) -> bool:
    p = m
    for _ in range(m.nrows):
        if p.is_zero():
            return True
        p = p @ m
    return p.is_zero()


def _flat(m: Matrix) -> tuple[Fraction, ...]:
    return m.entries


def _unflat(v: Sequence, n: int) -> Matrix:
    return Matrix([v[i * n:(i + 1) * n] for i in range(n)], n)


def _associative_closure(gens: Sequence[Matrix], n: int) -> Subspace:
    """Span of all nonempty products of the generators."""
    span = Subspace(n * n, [_flat(m) for m in gens])
    frontier = [_unflat(b, n) for b in span.basis]
    while frontier:
        new = []
        for a in frontier:
            for gm in gens:
                v = _flat(a @ gm)
                if not span.contains(v):
                    span = span + Subspace(n * n, [v])
                    new.append(_unflat(v, n))
        frontier = new
    return span


def _subspace_is_nilpotent(g: LieAlgebra, s: Subspace) -> bool:
    cur = s
    for _ in range(g.dim + 1):
        if cur.rank == 0:
            return True
        nxt = g.bracket_spaces(s, cur)
        if nxt == cur:
            return False
        cur = nxt
    return cur.rank == 0


def nilradical(g: LieAlgebra) -> Subspace:
    """Largest nilpotent ideal, via the radical of the associative algebra of ad(g).

    The radical is the kernel of the trace form tr(a b) on that algebra; the
    nilradical is the preimage of the radical under ad.  The result is
    re-verified (ideal, nilpotent, maximal) before being returned.
    """
    if not is_solvable(g):
        raise NotSolvable("nilradical is only computed for solvable algebras")
    n = g.dim
    ads = g.ad_basis()
    alg = _associative_closure(ads, n)
    basis = [_unflat(b, n) for b in alg.basis]
    gram = Matrix([[(a @ b).trace() for b in basis] for a in basis], len(basis)) if basis else None
    if basis:
        rad_coeffs = kernel(gram)
        rad = [
            tuple(sum((c * x for c, x in zip(w, col) if c), _ZERO) for col in zip(*alg.basis))
            for w in rad_coeffs.basis
        ]
    else:
        rad = []
    # x with sum x_i ad_i in span(rad): kernel of [Ad | -R]
    cols = [_flat(m) for m in ads] + [tuple(-x for x in r) for r in rad]
    sol = kernel(Matrix.from_columns(cols, n * n))
    nil = Subspace(n, [w[:n] for w in sol.basis])
    _verify_nilradical(g, nil)
    return nil


def _verify_nilradical(g: LieAlgebra, nil: Subspace) -> None:
    n = g.dim
    if not nil.contains(g.bracket_spaces(g.full(), nil)):
        raise InternalVerificationFailure("computed nilradical is not an ideal")
    if not _subspace_is_nilpotent(g, nil):
        raise InternalVerificationFailure("computed nilradical is not nilpotent")
    piv = set(nil.pivots)
    for j in range(n):
        if j in piv:
            continue
        e = tuple(Fraction(int(i == j)) for i in range(n))
        if _is_nilpotent_matrix(g.ad(e)):
            raise InternalVerificationFailure(f"ad(X_{j + 1}) is nilpotent but X_{j + 1} lies outside")


def nilradical_codim(g: LieAlgebra) -> int:
    return g.dim - nilradical(g).rank


def is_almost_abelian(g: LieAlgebra) -> bool:
    """Codimension-one abelian nilradical (solvable, non-nilpotent input)."""
    if not is_solvable(g):
        raise NotSolvable("almost-abelian test needs a solvable algebra")
    if is_nilpotent(g):
        raise NilpotentInput("almost-abelian test is for non-nilpotent algebras")
    nil = nilradical(g)
    return g.dim - nil.rank == 1 and g.bracket_spaces(nil, nil).rank == 0


def bracket_kernel_dim(g: LieAlgebra) -> int:
    """Dimension of the kernel of the bracket map Lambda^2 g -> g."""
    return comb(g.dim, 2) - g.derived_algebra().rank
