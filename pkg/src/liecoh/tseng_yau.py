"""Symplectic Hodge operators and the Tseng-Yau cohomologies of a Lie algebra.

For a symplectic pair (g, omega) of dimension 2n, with pi the inverse of the
matrix (omega_ij) and vol = omega^n / n!:

* ``L(eta) = eta ^ omega``
* ``Lambda(eta) = 1/2 sum_ij pi^ij i_{X_i} i_{X_j} eta``
* ``*_s`` is defined by ``gamma ^ *_s beta = G(gamma, beta) vol`` where
  ``G(alpha_I, alpha_J) = det(pi[I, J])``
* ``d^Lambda = d Lambda - Lambda d``, cross-checked against ``(-1)^(k+1) *_s d *_s``.

Everything is assembled as exact matrices in lex blade coordinates, one per
degree, and the cohomologies are quotients of canonical subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, factorial

from .cohomology import build_complex
from .errors import (
    AmbientMismatch,
    CalibrationFailure,
    CriteriaDisagreement,
    CrossCheckMismatch,
    NotSymplectic,
    WellDefinednessFailure,
)
from .exterior import Form, blade_position, blades, grade_coordinates, interior, merge_sign, operator_matrix, wedge, wedge_power
from .lie import LieAlgebra
from .linalg import Matrix, Subspace, determinant, image, inverse, kernel, quotient_map_rank
from .symplectic import form_matrix, verify_symplectic

_ZERO = Fraction(0)


def _empty(rows: int, cols: int) -> Matrix:
    return Matrix.zeros(rows, cols) if rows else Matrix([], cols)


class SymplecticPair:
    """A Lie algebra with a validated symplectic form and its derived operators."""

    def __init__(self, g: LieAlgebra, omega: Form, *, pi_sign: int = 1):
        if g.dim % 2 or not verify_symplectic(g, omega):
            raise NotSymplectic("form is not closed and nondegenerate")
        self.algebra = g
        self.omega = omega
        self.dim = g.dim
        self.half = g.dim // 2
        self.pi_sign = pi_sign
        self.pi = inverse(form_matrix(omega)) * pi_sign
        self.volume = wedge_power(omega, self.half) / factorial(self.half)
        self.volume_coefficient = self.volume.terms[(1 << self.dim) - 1]
        self._complex = build_complex(g)

    # -- operators on forms -------------------------------------------------------

    def _check(self, a: Form):
        if a.ambient_dim != self.dim:
            raise AmbientMismatch(f"form in dimension {a.ambient_dim}, pair in {self.dim}")

    def L(self, a: Form) -> Form:
        self._check(a)
        return wedge(a, self.omega)

    def Lambda(self, a: Form) -> Form:
        self._check(a)
        out = Form.zero(self.dim)
        n = self.dim
        for i in range(n):
            for j in range(n):
                p = self.pi[i, j]
                if p:
                    out = out + interior(i + 1, interior(j + 1, a)) * p
        return out / 2

    def pairing(self, I: tuple[int, ...], J: tuple[int, ...]) -> Fraction:
        """Induced bilinear form on blades: det of pi restricted to rows I, columns J."""
        if not I:
            return Fraction(1)
        return determinant(Matrix([[self.pi[i - 1, j - 1] for j in J] for i in I], len(J)))

    def _star_blade(self, J: tuple[int, ...]) -> Form:
        n = self.dim
        k = len(J)
        full = (1 << n) - 1
        out = {}
        for I in combinations(range(1, n + 1), k):
            g = self.pairing(I, J)
            if g:
                mi = sum(1 << (i - 1) for i in I)
                out[full ^ mi] = g * self.volume_coefficient * merge_sign(mi, full ^ mi)
        return Form(n, out)

    def star(self, a: Form) -> Form:
        self._check(a)
        out = Form.zero(self.dim)
        for m, c in a.items():
            idx = tuple(i + 1 for i in range(self.dim) if m >> i & 1)
            out = out + self._star_blade(idx) * c
        return out

    def d(self, a: Form) -> Form:
        return self.algebra.d(a)

    def d_lambda(self, a: Form, *, cross_check: bool = False) -> Form:
        self._check(a)
        out = self.d(self.Lambda(a)) - self.Lambda(self.d(a))
        if cross_check:
            alt = Form.zero(self.dim)
            for k in a.grades():
                sign = -1 if (k + 1) % 2 else 1
                alt = alt + self.star(self.d(self.star(a.grade(k)))) * sign
            if alt != out:
                raise CrossCheckMismatch("d Lambda - Lambda d disagrees with the star formula")
        return out

    # -- matrices per degree ------------------------------------------------------

    def size(self, k: int) -> int:
        return comb(self.dim, k) if 0 <= k <= self.dim else 0

    @cached_property
    def d_mats(self) -> tuple[Matrix, ...]:
        return tuple(self._complex.d(k) for k in range(self.dim + 1))

    def d_mat(self, k: int) -> Matrix:
        if 0 <= k <= self.dim:
            return self.d_mats[k]
        return _empty(self.size(k + 1), self.size(k))

    @cached_property
    def lambda_mats(self) -> tuple[Matrix, ...]:
        return tuple(
            operator_matrix(self.Lambda, self.dim, k, k - 2) if k >= 2 else _empty(0, self.size(k))
            for k in range(self.dim + 1)
        )

    @cached_property
    def star_mats(self) -> tuple[Matrix, ...]:
        return tuple(operator_matrix(self.star, self.dim, k, self.dim - k) for k in range(self.dim + 1))

    def lambda_mat(self, k: int) -> Matrix:
        if 0 <= k <= self.dim:
            return self.lambda_mats[k]
        return _empty(self.size(k - 2), self.size(k))

    @cached_property
    def dl_mats(self) -> tuple[Matrix, ...]:
        """d^Lambda: Lambda^k -> Lambda^(k-1) as d Lambda - Lambda d."""
        out = []
        for k in range(self.dim + 1):
            if k == 0:
                out.append(_empty(0, 1))
                continue
            a = self.d_mat(k - 2) @ self.lambda_mat(k) if k >= 2 else Matrix.zeros(self.size(k - 1), self.size(k))
            b = self.lambda_mat(k + 1) @ self.d_mat(k) if k + 1 <= self.dim else Matrix.zeros(self.size(k - 1), self.size(k))
            out.append(a - b)
        return tuple(out)

    def dl_mat(self, k: int) -> Matrix:
        if 0 <= k <= self.dim:
            return self.dl_mats[k]
        return _empty(self.size(k - 1), self.size(k))

    def star_formula_mat(self, k: int) -> Matrix:
        """(-1)^(k+1) *_s d *_s on Lambda^k."""
        n = self.dim
        if k == 0:
            return _empty(0, 1)
        m = self.star_mats[n - k + 1] @ self.d_mat(n - k) @ self.star_mats[k]
        return m * (1 if (k + 1) % 2 == 0 else -1)

    def identity_holds(self) -> bool:
        return all(self.dl_mat(k) == self.star_formula_mat(k) for k in range(1, self.dim + 1))

    def ddl_mat(self, k: int) -> Matrix:
        """d d^Lambda on Lambda^k (degree preserving)."""
        if k == 0:
            return Matrix.zeros(1, 1)
        return self.d_mat(k - 1) @ self.dl_mat(k)


def build_pair(g: LieAlgebra, omega: Form) -> SymplecticPair:
    """Validate omega and pin the sign convention by checking the d^Lambda identity."""
    pair = SymplecticPair(g, omega)
    if pair.identity_holds():
        return pair
    flipped = SymplecticPair(g, omega, pi_sign=-1)
    if flipped.identity_holds():
        return flipped
    raise CalibrationFailure("no sign of pi makes d Lambda - Lambda d match the star formula")


# -- cohomologies --------------------------------------------------------------

KINDS = ("d", "dL", "d+dL", "ddL", "d&dL")


@dataclass(frozen=True)
class DegreeSpaces:
    """Numerators and denominators of the five cohomologies in one degree."""

    ker_d: Subspace
    im_d: Subspace
    ker_dl: Subspace
    im_dl: Subspace
    ker_both: Subspace
    im_ddl: Subspace
    omega0: Subspace
    cap_denominator: Subspace

    def dims(self) -> dict[str, int]:
        return {
            "d": self.ker_d.rank - self.im_d.rank,
            "dL": self.ker_dl.rank - self.im_dl.rank,
            "d+dL": self.ker_both.rank - self.im_ddl.rank,
            "ddL": self.omega0.rank - (self.im_d + self.im_dl).rank,
            "d&dL": self.ker_both.rank - self.cap_denominator.rank,
        }


def degree_spaces(pair: SymplecticPair, k: int) -> DegreeSpaces:
    n = pair.dim
    ker_d = kernel(pair.d_mat(k))
    im_d = image(pair.d_mat(k - 1)) if k >= 1 else Subspace.zero(1)
    ker_dl = kernel(pair.dl_mat(k))
    im_dl = image(pair.dl_mat(k + 1)) if k + 1 <= n else Subspace.zero(pair.size(k))
    ker_both = ker_d & ker_dl
    im_ddl = image(pair.ddl_mat(k))
    omega0 = kernel(pair.ddl_mat(k))
    if not ker_both.contains(im_ddl):
        raise WellDefinednessFailure(f"im d d^Lambda escapes ker d and ker d^Lambda in degree {k}")
    if not omega0.contains(im_d + im_dl):
        raise WellDefinednessFailure(f"im d + im d^Lambda escapes ker d d^Lambda in degree {k}")
    # the quotient is taken by the part of the denominator lying in the numerator
    raw = (im_d & omega0) + (im_dl & omega0)
    cap_den = raw & ker_both
    if not cap_den.contains(im_ddl):
        raise WellDefinednessFailure(f"im d d^Lambda not inside the d-cap-d^Lambda denominator in degree {k}")
    return DegreeSpaces(ker_d, im_d, ker_dl, im_dl, ker_both, im_ddl, omega0, cap_den)


@dataclass
class TYReport:
    dims: dict[str, tuple[int, ...]]
    duality: bool = False
    verdict: bool | None = None
    criteria: dict[str, bool] = field(default_factory=dict)
    lefschetz_ranks: tuple[int, ...] = ()
    plus_to_d_iso: tuple[bool, ...] = ()
    plus_to_cap_iso: tuple[bool, ...] = ()

    def triple(self, kind: str) -> tuple[int, int, int]:
        d = self.dims[kind]
        return d[1], d[2], d[3]


def all_degree_spaces(pair: SymplecticPair) -> list[DegreeSpaces]:
    return [degree_spaces(pair, k) for k in range(pair.dim + 1)]


def ty_dimensions(pair: SymplecticPair, spaces: list[DegreeSpaces] | None = None) -> TYReport:
    spaces = spaces or all_degree_spaces(pair)
    per = [s.dims() for s in spaces]
    dims = {kind: tuple(p[kind] for p in per) for kind in KINDS}
    return TYReport(dims=dims, duality=_duality(pair.dim, dims))


def _duality(n: int, dims: dict[str, tuple[int, ...]]) -> bool:
    return all(
        dims["d"][k] == dims["dL"][n - k] and dims["d+dL"][k] == dims["ddL"][n - k] for k in range(n + 1)
    )


def duality_check(pair: SymplecticPair) -> bool:
    return ty_dimensions(pair).duality


def lefschetz_matrix(pair: SymplecticPair, k: int) -> Matrix:
    """L^(n-k): Lambda^k -> Lambda^(2n-k) for k <= n."""
    p = pair.half - k
    wp = wedge_power(pair.omega, p)
    return operator_matrix(lambda a: wedge(a, wp), pair.dim, k, pair.dim - k)


def hard_lefschetz(pair: SymplecticPair) -> tuple[bool, TYReport]:
    """HL verdict by three equivalent criteria, which must agree."""
    spaces = all_degree_spaces(pair)
    report = ty_dimensions(pair, spaces)
    n = pair.dim
    ranks, direct = [], True
    for k in range(pair.half + 1):
        src, tgt = spaces[k], spaces[n - k]
        r, iso = quotient_map_rank(lefschetz_matrix(pair, k), src.ker_d, src.im_d, tgt.ker_d, tgt.im_d)
        ranks.append(r)
        direct = direct and iso
    to_d, to_cap = [], []
    for k in range(n + 1):
        s = spaces[k]
        ident = Matrix.identity(pair.size(k))
        to_d.append(quotient_map_rank(ident, s.ker_both, s.im_ddl, s.ker_d, s.im_d)[1])
        to_cap.append(quotient_map_rank(ident, s.ker_both, s.im_ddl, s.ker_both, s.cap_denominator)[1])
    criteria = {"lefschetz": direct, "plus_to_d": all(to_d), "plus_to_cap": all(to_cap)}
    report.criteria = criteria
    report.lefschetz_ranks = tuple(ranks)
    report.plus_to_d_iso = tuple(to_d)
    report.plus_to_cap_iso = tuple(to_cap)
    if len(set(criteria.values())) != 1:
        raise CriteriaDisagreement(f"Hard Lefschetz criteria disagree: {criteria}")
    report.verdict = direct
    return direct, report
