"""Independent brute-force oracles for cross-checking the package.

Nothing here imports the package's linear algebra, exterior algebra or
cohomology code.  Forms are dicts {sorted index tuple: Fraction}, linear
algebra is fraction-free Bareiss elimination on integer-scaled rows, and the
differential comes from the invariant formula

    d phi(X_0..X_k) = sum_{i<j} (-1)^(i+j) phi([X_i, X_j], X_0, ^i, ^j, X_k)

evaluated on basis vectors.  Input data is read only from the user-facing
differentials of a LieAlgebra (the structure constants themselves).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm


# -- linear algebra ---------------------------------------------------------------


def _integer_rows(rows):
    out = []
    for r in rows:
        m = lcm(*(Fraction(x).denominator for x in r)) if r else 1
        out.append([int(Fraction(x) * m) for x in r])
    return out


def bareiss_rank(rows) -> int:
    """Rank via fraction-free elimination; every division is exact."""
    a = [r[:] for r in _integer_rows(rows) if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, len(a)):
            for j in range(col + 1, ncols):
                num = p * a[i][j] - a[i][col] * a[rank][j]
                assert num % prev == 0
                a[i][j] = num // prev
            a[i][col] = 0
        prev = p
        rank += 1
        if rank == len(a):
            break
    return rank


def bareiss_det(m) -> Fraction:
    """Determinant of a square rational matrix by Bareiss elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for r in m:
        d = lcm(*(Fraction(x).denominator for x in r))
        scale /= d
        rows.append([int(Fraction(x) * d) for x in r])
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
        prev = rows[k][k]
    return sign * rows[n - 1][n - 1] * scale


def in_span(vectors, v) -> bool:
    return bareiss_rank(list(vectors) + [list(v)]) == bareiss_rank(list(vectors))


# -- structure constants and brackets ------------------------------------------------


def bracket_table(g):
    """c[i][j] = coordinates of [X_i, X_j], read off d(alpha_k) = sum c^k_ij alpha_ij."""
    n = g.dim
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for k, f in enumerate(g.differentials):
        for mask, coeff in f.items():
            i, j = [b for b in range(n) if mask >> b & 1]
            c[i][j][k] -= coeff
            c[j][i][k] += coeff
    return c


def bracket(c, u, v):
    n = len(u)
    out = [Fraction(0)] * n
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            w = u[i] * v[j]
            for k in range(n):
                if c[i][j][k]:
                    out[k] += w * c[i][j][k]
    return out


def _basis_of(vectors):
    basis = []
    for v in vectors:
        if any(v) and not in_span(basis, v):
            basis.append(list(v))
    return basis


def bracket_span(c, a, b):
    return _basis_of(bracket(c, u, v) for u in a for v in b)


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def derived_dims(g):
    c, cur = bracket_table(g), _identity(g.dim)
    dims = [len(cur)]
    while cur:
        nxt = bracket_span(c, cur, cur)
        if len(nxt) == len(cur):
            break
        cur = nxt
        dims.append(len(cur))
    return dims


def solvable_step(g):
    """Least k with the k-th derived term zero, or None."""
    dims = derived_dims(g)
    return len(dims) - 1 if dims[-1] == 0 else None


def lower_central_dims(g):
    c, full = bracket_table(g), _identity(g.dim)
    cur, dims = full, [g.dim]
    while cur:
        nxt = bracket_span(c, full, cur)
        if len(nxt) == len(cur):
            break
        cur = nxt
        dims.append(len(cur))
    return dims


def _ad(c, x):
    n = len(x)
    cols = [bracket(c, x, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def ad_nilpotent(c, x) -> bool:
    m = _ad(c, x)
    p = m
    for _ in range(len(x) - 1):
        p = _matmul(p, m)
    return not any(any(r) for r in p)


def nilradical_dim(g) -> int:
    """Nilradical of a solvable algebra as the set of ad-nilpotent elements.

    That set is a subspace containing [g, g], so it is spanned by [g, g] plus
    the ad-nilpotent vectors among e_i and e_i +- e_j; the result is checked
    for closure (every spanning combination still ad-nilpotent).
    """
    n, c = g.dim, bracket_table(g)
    full = _identity(n)
    gens = list(bracket_span(c, full, full))
    cands = [list(v) for v in full]
    for i, j in combinations(range(n), 2):
        for s in (1, -1):
            v = [Fraction(0)] * n
            v[i], v[j] = Fraction(1), Fraction(s)
            cands.append(v)
    gens += [v for v in cands if ad_nilpotent(c, v)]
    basis = _basis_of(gens)
    for a, b in combinations(basis, 2):
        assert ad_nilpotent(c, [x + y for x, y in zip(a, b)])
    return len(basis)


def is_unimodular(g) -> bool:
    c = bracket_table(g)
    return all(sum(c[i][k][k] for k in range(g.dim)) == 0 for i in range(g.dim))


# -- forms ---------------------------------------------------------------------------


def _sort_sign(idx):
    """Sign of the permutation sorting idx, or 0 if idx repeats."""
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def wedge(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            s = _sort_sign(i + j)
            if s:
                key = tuple(sorted(i + j))
                out[key] = out.get(key, 0) + s * x * y
    return {k: v for k, v in out.items() if v}


def evaluate(form, vectors):
    """form(X_{v0}, ..., X_{vk}) on basis vectors; an alternating function."""
    s = _sort_sign(vectors)
    return s * form.get(tuple(sorted(vectors)), 0) if s else 0


def d(c, form, k, n):
    """The differential of a k-form via the invariant formula."""
    out = {}
    for idx in combinations(range(n), k + 1):
        total = Fraction(0)
        for i, j in combinations(range(k + 1), 2):
            rest = [idx[t] for t in range(k + 1) if t not in (i, j)]
            br = c[idx[i]][idx[j]]
            for m in range(n):
                if br[m]:
                    total += (-1) ** (i + j) * br[m] * evaluate(form, [m] + rest)
        if total:
            out[idx] = total
    return out


def forms_basis(n, k):
    return [{idx: Fraction(1)} for idx in combinations(range(n), k)]


def coords(form, n, k):
    return [form.get(idx, Fraction(0)) for idx in combinations(range(n), k)]


def d_matrix_rows(c, n, k):
    """Rows are d of the basis k-forms (so rank = rank of d_k)."""
    return [coords(d(c, b, k, n), n, k + 1) for b in forms_basis(n, k)]


def kernel(rows, ncols):
    """Kernel of v -> v * rows (v a row vector) by rational Gauss-Jordan."""
    m = [list(map(Fraction, r)) for r in rows]
    nrows = len(m)
    # solve sum_i v_i rows[i] = 0: transpose to columns-as-unknowns
    a = [[m[i][j] for i in range(nrows)] for j in range(ncols)]
    pivots, r = [], 0
    for col in range(nrows):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    free = [j for j in range(nrows) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nrows
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -a[row][f]
        basis.append(v)
    return basis


def betti_numbers(g):
    n, c = g.dim, bracket_table(g)
    ranks = [bareiss_rank(d_matrix_rows(c, n, k)) for k in range(n + 1)]
    from math import comb
    return [comb(n, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


def lefschetz_ranks(g, omega):
    """Rank of [alpha] -> [omega^(m-k) ^ alpha] on cohomology, k = 0..m, dim = 2m.

    The map is evaluated on an explicit cocycle basis of each degree; its
    rank is rank(images + coboundaries) - rank(coboundaries).
    """
    n, c = g.dim, bracket_table(g)
    m = n // 2
    ranks = []
    for k in range(m + 1):
        cycles = kernel(d_matrix_rows(c, n, k), len(list(combinations(range(n), k + 1))))
        p = {(): Fraction(1)}
        for _ in range(m - k):
            p = wedge(p, omega)
        basis = list(combinations(range(n), k))
        images = []
        for z in cycles:
            form = {idx: x for idx, x in zip(basis, z) if x}
            images.append(coords(wedge(form, p), n, n - k))
        bounds = d_matrix_rows(c, n, n - k - 1) if n - k - 1 >= 0 else []
        ranks.append(bareiss_rank(images + bounds) - bareiss_rank(bounds))
    return ranks


def form_from_package(f):
    """Convert a package Form to an oracle dict (input conversion only)."""
    return {tuple(b for b in range(f.ambient_dim) if mask >> b & 1): Fraction(v) for mask, v in f.items()}
