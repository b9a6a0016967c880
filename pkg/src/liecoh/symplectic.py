"""Symplectic structures on even-dimensional Lie algebras.

The generic closed 2-form is ``omega(t) = sum_a t_a beta_a`` over a basis of
closed 2-forms; it is nondegenerate iff the top coefficient of omega(t)^m
(m = n/2) is nonzero.  That coefficient is a homogeneous polynomial of degree
m in t, so existence over the reals is the same as the polynomial not being
identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import NoneExists, OddDimension, WrongGrade, InternalVerificationFailure
from .exterior import Form, blades, grade_coordinates, wedge, wedge_power
from .cohomology import build_complex
from .lie import LieAlgebra
from .linalg import Matrix, Subspace, determinant

_ZERO = Fraction(0)
LADDER = (0, 1, -1, 2, -2, 3, -3)

Monomial = tuple  # sorted tuple of variable indices, repetitions allowed


@dataclass(frozen=True)
class ClosedTwoFormSpace:
    algebra: LieAlgebra
    basis: tuple[Form, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def subspace(self) -> Subspace:
        n = self.algebra.dim
        return Subspace(len(blades(n, 2)), [grade_coordinates(b, 2) for b in self.basis])

    def combine(self, t: Sequence) -> Form:
        out = Form.zero(self.algebra.dim)
        for c, b in zip(t, self.basis):
            if c:
                out = out + b * c
        return out


@dataclass(frozen=True)
class VolumePolynomial:
    """Top-blade coefficient of omega(t)^degree as a sparse polynomial in t."""

    nvars: int
    degree: int
    terms: Mapping[Monomial, Fraction]

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, t: Sequence) -> Fraction:
        total = _ZERO
        for mono, c in self.terms.items():
            v = c
            for i in mono:
                v *= t[i]
            total += v
        return total

    def substitute(self, var: int, value) -> "VolumePolynomial":
        """Fix variable ``var`` to ``value``; the other variables keep their indices."""
        value = Fraction(value)
        out: dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            k = mono.count(var)
            if k and not value:
                continue
            rest = tuple(i for i in mono if i != var)
            v = out.get(rest, _ZERO) + c * value ** k
            if v:
                out[rest] = v
            else:
                out.pop(rest, None)
        return VolumePolynomial(self.nvars, self.degree, out)

    def variables(self) -> set[int]:
        return {i for mono in self.terms for i in mono}


# the six-dimensional case is the cubic one
CubicVolumePolynomial = VolumePolynomial


@dataclass(frozen=True)
class SymplecticWitness:
    omega: Form
    matrix: Matrix
    top_coefficient: Fraction


def closed_two_forms(g: LieAlgebra) -> ClosedTwoFormSpace:
    z = build_complex(g).cocycles(2)
    n = g.dim
    return ClosedTwoFormSpace(g, tuple(Form.from_coordinates(n, 2, v) for v in z.basis))


def _top_mask(n: int) -> int:
    return (1 << n) - 1


def volume_polynomial(space: ClosedTwoFormSpace) -> VolumePolynomial:
    """Expand the top coefficient of (sum t_a beta_a)^(n/2) exactly."""
    n = space.algebra.dim
    if n % 2:
        raise OddDimension(f"dimension {n} is odd")
    m = n // 2
    top = _top_mask(n)
    basis = space.basis
    terms: dict[Monomial, Fraction] = {}
    mf = factorial(m)

    def walk(start: int, mono: list[int], acc: Form):
        if acc.is_zero():
            return
        if len(mono) == m:
            c = acc.terms.get(top, _ZERO)
            if c:
                mult = mf
                for i in set(mono):
                    mult //= factorial(mono.count(i))
                terms[tuple(mono)] = c * mult
            return
        for a in range(start, len(basis)):
            mono.append(a)
            walk(a, mono, wedge(acc, basis[a]))
            mono.pop()

    walk(0, [], Form.scalar(n, 1))
    return VolumePolynomial(len(basis), m, terms)


cubic_top_polynomial = volume_polynomial


def has_symplectic(g: LieAlgebra) -> bool:
    if g.dim % 2:
        raise OddDimension(f"dimension {g.dim} is odd")
    return not volume_polynomial(closed_two_forms(g)).is_zero()


def form_matrix(omega: Form) -> Matrix:
    """Antisymmetric matrix with entries omega(X_i, X_j)."""
    n = omega.ambient_dim
    rows = [[_ZERO] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        c = omega.terms.get((1 << i) | (1 << j), _ZERO)
        rows[i][j] = c
        rows[j][i] = -c
    return Matrix(rows, n)


def top_coefficient(omega: Form) -> Fraction:
    n = omega.ambient_dim
    if n % 2:
        return _ZERO
    return wedge_power(omega, n // 2).terms.get(_top_mask(n), _ZERO)


def _sparse_point(poly: VolumePolynomial, m: int) -> tuple[int, ...] | None:
    """Smallest set of basis forms, in lex order, whose plain sum is nondegenerate."""
    for size in (m, m + 1):
        for subset in combinations(range(poly.nvars), size):
            t = [0] * poly.nvars
            for i in subset:
                t[i] = 1
            if poly.evaluate(t):
                return tuple(t)
    return None


def _ladder_point(poly: VolumePolynomial) -> tuple[Fraction, ...]:
    """Fix variables in order from LADDER, keeping the remaining polynomial nonzero."""
    t = []
    cur = poly
    for var in range(poly.nvars):
        for value in LADDER:
            trial = cur.substitute(var, value)
            if not trial.is_zero():
                cur = trial
                t.append(Fraction(value))
                break
        else:  # pragma: no cover - impossible for a nonzero polynomial of degree <= 6
            raise InternalVerificationFailure("value ladder exhausted")
    return tuple(t)


def symplectic_witness(g: LieAlgebra, space: ClosedTwoFormSpace | None = None) -> SymplecticWitness:
    """A deterministic closed nondegenerate 2-form, preferring few basis forms."""
    n = g.dim
    if n % 2:
        raise OddDimension(f"dimension {n} is odd")
    space = space or closed_two_forms(g)
    poly = volume_polynomial(space)
    if poly.is_zero():
        raise NoneExists("no closed 2-form is nondegenerate")
    t = _sparse_point(poly, n // 2) or _ladder_point(poly)
    omega = space.combine(t)
    top = top_coefficient(omega)
    if not top or top != poly.evaluate(t):
        raise InternalVerificationFailure("witness does not match the volume polynomial")
    return SymplecticWitness(omega, form_matrix(omega), top)


def verify_symplectic(g: LieAlgebra, omega: Form) -> bool:
    """Closed and nondegenerate; the wedge-power and determinant tests must agree."""
    if omega.ambient_dim != g.dim:
        from .errors import AmbientMismatch

        raise AmbientMismatch(f"form in dimension {omega.ambient_dim}, algebra in {g.dim}")
    if omega.grades() - {2}:
        raise WrongGrade(f"expected a 2-form, got grades {sorted(omega.grades())}")
    if g.dim % 2:
        return False
    nondeg_wedge = top_coefficient(omega) != 0
    nondeg_det = determinant(form_matrix(omega)) != 0
    if nondeg_wedge != nondeg_det:
        raise InternalVerificationFailure("wedge-power and determinant tests disagree")
    return nondeg_wedge and g.d(omega).is_zero()


def span_of_forms(forms: Iterable[Form], n: int) -> Subspace:
    return Subspace(len(blades(n, 2)), [grade_coordinates(f, 2) for f in forms])


def scan_witnesses(g: LieAlgebra, count: int) -> list[Form]:
    """Up to ``count`` distinct nondegenerate closed forms with coefficients in {0, 1, -1}."""
    space = closed_two_forms(g)
    poly = volume_polynomial(space)
    out: list[Form] = []
    if poly.is_zero() or count <= 0:
        return out
    seen = set()
    for size in range(1, space.dim + 1):
        for subset in combinations(range(space.dim), size):
            for signs in product((1, -1), repeat=size):
                if signs[0] != 1:
                    continue
                t = [0] * space.dim
                for i, s in zip(subset, signs):
                    t[i] = s
                if poly.evaluate(t):
                    f = space.combine(t)
                    if f not in seen:
                        seen.add(f)
                        out.append(f)
                        if len(out) >= count:
                            return out
    return out
