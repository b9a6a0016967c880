"""Exterior algebra on the dual of an n-dimensional space.

A blade alpha_{i1...ik} (i1 < ... < ik, 1-based) is stored as the bit mask with
bits i1-1, ..., ik-1 set.  Graded pieces use the lexicographic order of the
ascending index tuples, which is the order ``itertools.combinations`` produces.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import AmbientMismatch, IndexOutOfRange, NonHomogeneous
from .linalg import Matrix, as_fraction

MAX_DIM = 9

_ZERO = Fraction(0)


def indices_to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def mask_to_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def grade_of(mask: int) -> int:
    return mask.bit_count()


@lru_cache(maxsize=None)
def blades(n: int, k: int) -> tuple[int, ...]:
    """Masks of the grade-k blades in lexicographic order."""
    if k < 0 or k > n:
        return ()
    return tuple(indices_to_mask(c) for c in combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def blade_position(n: int, k: int) -> Mapping[int, int]:
    return {m: p for p, m in enumerate(blades(n, k))}


def merge_sign(a: int, b: int) -> int:
    """Sign of alpha_A ^ alpha_B relative to the ascending blade (0 if they overlap)."""
    if a & b:
        return 0
    inversions = 0
    bb = b
    while bb:
        low = bb & -bb
        # elements of a above this element of b sit to its left
        inversions += (a & ~((low << 1) - 1)).bit_count()
        bb ^= low
    return -1 if inversions & 1 else 1


class Form:
    """Element of the exterior algebra, a sparse map blade mask -> Fraction."""

    __slots__ = ("ambient_dim", "_terms")

    def __init__(self, ambient_dim: int, terms: Mapping[int, object] | None = None):
        if not 0 <= ambient_dim <= MAX_DIM:
            raise AmbientMismatch(f"ambient dimension {ambient_dim} outside 0..{MAX_DIM}")
        limit = 1 << ambient_dim
        clean = {}
        for m, c in (terms or {}).items():
            if m < 0 or m >= limit:
                raise IndexOutOfRange(f"blade {mask_to_indices(m)} outside dimension {ambient_dim}")
            c = as_fraction(c)
            if c:
                clean[m] = c
        self.ambient_dim = ambient_dim
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Form":
        f = object.__new__(cls)
        f.ambient_dim = n
        f._terms = terms
        return f

    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls._raw(n, {})

    @classmethod
    def scalar(cls, n: int, c=1) -> "Form":
        return cls(n, {0: c})

    @classmethod
    def blade(cls, n: int, indices: Sequence[int], c=1) -> "Form":
        """Coefficient times alpha_{i1} ^ ... ^ alpha_{ik}, indices in any order."""
        idx = list(indices)
        if len(set(idx)) != len(idx):
            return cls.zero(n)
        for i in idx:
            if not 1 <= i <= n:
                raise IndexOutOfRange(f"index {i} outside 1..{n}")
        # parity of the sorting permutation
        inv = sum(1 for x in range(len(idx)) for y in range(x + 1, len(idx)) if idx[x] > idx[y])
        c = as_fraction(c)
        return cls(n, {indices_to_mask(idx): -c if inv & 1 else c})

    @classmethod
    def from_coordinates(cls, n: int, k: int, coords: Sequence) -> "Form":
        bl = blades(n, k)
        if len(coords) != len(bl):
            raise AmbientMismatch(f"{len(coords)} coordinates for grade {k} in dimension {n}")
        return cls(n, dict(zip(bl, coords)))

    @property
    def terms(self) -> Mapping[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, indices: Sequence[int]) -> Fraction:
        return self._terms.get(indices_to_mask(indices), _ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def grades(self) -> set[int]:
        return {grade_of(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    @property
    def degree(self) -> int:
        """Grade of a homogeneous nonzero form (0 for the zero form)."""
        g = self.grades()
        if len(g) > 1:
            raise NonHomogeneous(f"form has grades {sorted(g)}")
        return g.pop() if g else 0

    def grade(self, k: int) -> "Form":
        return Form._raw(self.ambient_dim, {m: c for m, c in self._terms.items() if grade_of(m) == k})

    def _check(self, other: "Form"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"forms in dimensions {self.ambient_dim} and {other.ambient_dim}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, _ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Form._raw(self.ambient_dim, out)

    def __neg__(self) -> "Form":
        return Form._raw(self.ambient_dim, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, scalar) -> "Form":
        if isinstance(scalar, Form):
            return NotImplemented
        s = as_fraction(scalar)
        if not s:
            return Form.zero(self.ambient_dim)
        return Form._raw(self.ambient_dim, {m: s * c for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Form":
        return self * (1 / as_fraction(scalar))

    def wedge(self, other: "Form") -> "Form":
        return wedge(self, other)

    __xor__ = wedge

    def __eq__(self, other) -> bool:
        return isinstance(other, Form) and self.ambient_dim == other.ambient_dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.ambient_dim, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Form({self.ambient_dim}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; sign of each blade merge is the inversion parity."""
    a._check(b)
    out: dict[int, Fraction] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            s = merge_sign(ma, mb)
            if s:
                m = ma | mb
                v = out.get(m, _ZERO) + (ca * cb if s > 0 else -(ca * cb))
                if v:
                    out[m] = v
                else:
                    del out[m]
    return Form._raw(a.ambient_dim, out)


def wedge_power(a: Form, k: int) -> Form:
    out = Form.scalar(a.ambient_dim, 1)
    for _ in range(k):
        out = wedge(out, a)
    return out


def interior(i: int, a: Form) -> Form:
    """Contraction with the i-th basis vector (1-based), an antiderivation of degree -1."""
    n = a.ambient_dim
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"index {i} outside 1..{n}")
    bit = 1 << (i - 1)
    below = bit - 1
    out = {}
    for m, c in a._terms.items():
        if m & bit:
            # position p of i in the blade; sign (-1)^(p-1)
            out[m ^ bit] = -c if (m & below).bit_count() & 1 else c
    return Form._raw(n, out)


def grade_coordinates(a: Form, k: int) -> tuple[Fraction, ...]:
    pos = blade_position(a.ambient_dim, k)
    v = [_ZERO] * len(pos)
    for m, c in a._terms.items():
        p = pos.get(m)
        if p is not None:
            v[p] = c
    return tuple(v)


def operator_matrix(op, n: int, k: int, target_grade: int) -> Matrix:
    """Matrix of a linear map Lambda^k -> Lambda^target in lex blade coordinates."""
    src = blades(n, k)
    tgt = blade_position(n, target_grade)
    rows = [[_ZERO] * len(src) for _ in range(len(tgt))]
    for j, m in enumerate(src):
        img = op(Form._raw(n, {m: Fraction(1)}))
        for mm, c in img._terms.items():
            if mm not in tgt:
                raise NonHomogeneous(f"operator leaves grade {target_grade}")
            rows[tgt[mm]][j] = c
    return Matrix(rows, len(src))


def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_form(a: Form) -> str:
    """Render in the term grammar, blades in (grade, lex) order: e.g. ``2*12-1/3*36``."""
    if not a._terms:
        return "0"
    order = sorted(a._terms, key=lambda m: (grade_of(m), mask_to_indices(m)))
    parts = []
    for m in order:
        c = a._terms[m]
        digits = "".join(str(i) for i in mask_to_indices(m))
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not digits:
            body = format_coefficient(mag)
        elif mag == 1:
            body = digits
        else:
            body = f"{format_coefficient(mag)}*{digits}"
        parts.append((sign, body))
    s = "".join(sg + b for sg, b in parts)
    return s[1:] if s.startswith("+") else s
