"""Exact integer matrix kernels: HNF, Howell form, Dixon solving, SNF.

Matrices are dense ``list[list[int]]`` with arbitrary-precision entries and
rows spanning the lattice.  Two orientations are used:

* Hermite forms are lower triangular with positive diagonal and every entry
  below a pivot reduced into ``[0, pivot)``, so the (1,1) entry of an ideal
  basis is the ideal's minimum.
* Howell forms over ``Z/N`` are kept in the usual row-echelon orientation
  (pivot columns increase with the row index).

``hnf_with_modulus`` connects the two: the canonical lift of the Howell form
modulo ``lam**2``, computed on the column-reversed matrix and reversed back,
is the Hermite form whenever ``lam * Z^m`` lies inside the row span.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

Mat = list[list[int]]


class RankDeficiencyError(ValueError):
    """Raised when a matrix does not have the full column rank an operation needs."""


class SingularMatrixError(ValueError):
    """Raised when a square system has no unique solution."""


def shape(a: Mat) -> tuple[int, int]:
    if not a or not a[0]:
        raise ValueError("empty matrix")
    m = len(a[0])
    if any(len(r) != m for r in a):
        raise ValueError("ragged matrix")
    return len(a), m


def identity(n: int) -> Mat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(n: int, m: int) -> Mat:
    return [[0] * m for _ in range(n)]


def mat_copy(a: Mat) -> Mat:
    return [row[:] for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)]


def stack(a: Mat, b: Mat) -> Mat:
    if len(a[0]) != len(b[0]):
        raise ValueError("column count mismatch")
    return mat_copy(a) + mat_copy(b)


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError("dimension mismatch")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vec_mat(v: list[int], a: Mat) -> list[int]:
    """Row vector times matrix."""
    n, m = shape(a)
    if len(v) != n:
        raise ValueError("dimension mismatch")
    return [sum(v[i] * a[i][j] for i in range(n)) for j in range(m)]


def mat_eq(a: Mat, b: Mat) -> bool:
    return a == b


def content(a: Mat) -> int:
    g = 0
    for row in a:
        for x in row:
            g = gcd(g, x)
    return g


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


# ---------------------------------------------------------------------------
# Hermite normal form


def _echelon_hnf_upper(rows: Mat, m: int) -> list[tuple[int, list[int]]]:
    """Row-echelon HNF over Z, pivots ascending, entries above pivots reduced.

    Returns a list of (pivot column, row) sorted by pivot column.
    """
    pivots: dict[int, list[int]] = {}
    work = [row[:] for row in rows]
    while work:
        r = work.pop()
        j = next((k for k, x in enumerate(r) if x), None)
        if j is None:
            continue
        if j in pivots:
            p = pivots[j]
            g, u, v = ext_gcd(p[j], r[j])
            a, b = p[j] // g, r[j] // g
            newp = [u * x + v * y for x, y in zip(p, r)]
            newr = [a * y - b * x for x, y in zip(p, r)]
            pivots[j] = newp
            work.append(newr)
        else:
            pivots[j] = r
    out: list[tuple[int, list[int]]] = []
    for j in sorted(pivots):
        row = pivots[j]
        if row[j] < 0:
            row = [-x for x in row]
        out.append((j, row))
    # reduce entries above each pivot into [0, pivot)
    for t, (jt, rt) in enumerate(out):
        for s in range(t):
            row_s = out[s][1]
            q = row_s[jt] // rt[jt]
            if q:
                out[s] = (out[s][0], [x - q * y for x, y in zip(row_s, rt)])
    return out


def hnf(a: Mat) -> Mat:
    """Lower-triangular Hermite normal form of the row span of ``a``.

    Requires full column rank; raises RankDeficiencyError otherwise.  The
    result is m x m with positive diagonal and entries below a pivot reduced
    into [0, pivot).
    """
    n, m = shape(a)
    rev = [row[::-1] for row in a]
    ech = _echelon_hnf_upper(rev, m)
    if len(ech) < m:
        raise RankDeficiencyError(f"matrix has column rank {len(ech)} < {m}")
    return [row[::-1] for _, row in reversed(ech)]


# ---------------------------------------------------------------------------
# Howell form over Z/N


def _unit_to_divisor(x: int, n: int) -> int:
    """Unit u mod n with u*x congruent to gcd(x, n); x nonzero mod n."""
    g = gcd(x, n)
    if g == n:
        raise ValueError("x is zero mod n")
    step = n // g
    _, u, _ = ext_gcd((x // g) % step, step)
    u %= step
    if u == 0:
        u = step
    while gcd(u, n) != 1:
        u += step
    return u % n


def _howell_echelon(rows: Mat, m: int, n: int) -> dict[int, list[int]]:
    pivots: dict[int, list[int]] = {}
    work = [[x % n for x in row] for row in rows]
    while work:
        r = work.pop()
        j = next((k for k, x in enumerate(r) if x), None)
        if j is None:
            continue
        if j in pivots:
            p = pivots[j]
            g, u, v = ext_gcd(p[j], r[j])
            a, b = p[j] // g, r[j] // g
            newp = [(u * x + v * y) % n for x, y in zip(p, r)]
            newr = [(a * y - b * x) % n for x, y in zip(p, r)]
            pivots[j] = newp
            work.append(newr)
        else:
            pivots[j] = r
    return pivots


def howell(a: Mat, modulus: int) -> Mat:
    """Howell form of the row span of ``a`` over Z/modulus (echelon orientation).

    The output rows are the nonzero rows: pivot columns strictly increase,
    each pivot divides the modulus, entries above a pivot are reduced into
    [0, pivot), and every span element whose leading coordinates vanish lies
    in the span of the trailing rows.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    _, m = shape(a)
    n = modulus
    pivots = _howell_echelon(a, m, n)
    # close the span under annihilator rows so the zero-prefix property holds
    changed = True
    while changed:
        changed = False
        for j in sorted(pivots):
            row = pivots[j]
            c = n // gcd(row[j], n)
            if c == 1:
                continue
            extra = [(c * x) % n for x in row]
            if any(extra):
                before = {k: v[:] for k, v in pivots.items()}
                merged = _howell_echelon(list(pivots.values()) + [extra], m, n)
                if {k: v for k, v in merged.items()} != before:
                    pivots = merged
                    changed = True
                    break
    # normalize pivots to divisors of the modulus, reduce above pivots
    out: list[tuple[int, list[int]]] = []
    for j in sorted(pivots):
        row = pivots[j]
        u = _unit_to_divisor(row[j], n)
        out.append((j, [(u * x) % n for x in row]))
    for t, (jt, rt) in enumerate(out):
        for s in range(t):
            row_s = out[s][1]
            q = row_s[jt] // rt[jt]
            if q:
                out[s] = (out[s][0], [(x - q * y) % n for x, y in zip(row_s, rt)])
    return [row for _, row in out]


def hnf_with_modulus(a: Mat, lam: int) -> Mat:
    """HNF of ``a`` computed modulo lam**2, valid when lam*Z^m is in the row span.

    Equal to hnf(stack(a, lam*I)).  All arithmetic stays modulo lam**2; the
    canonical lift of the Howell form is returned.  If the precondition fails
    the result is undefined (a RankDeficiencyError is raised when this is
    detectable).
    """
    if lam <= 0:
        raise ValueError("modulus must be positive")
    n, m = shape(a)
    if lam == 1:
        return identity(m)
    rev = [row[::-1] for row in a]
    rows = howell(rev, lam * lam)
    if len(rows) != m or any(rows[j][j] == 0 for j in range(m)):
        raise RankDeficiencyError("lam*Z^m not contained in the row span")
    return [row[::-1] for row in reversed(rows)]


# ---------------------------------------------------------------------------
# Exact linear solving


_DIXON_PRIMES: list[int] = []


def _small_primes(count: int) -> list[int]:
    while len(_DIXON_PRIMES) < count:
        cand = _DIXON_PRIMES[-1] + 1 if _DIXON_PRIMES else 2
        while any(cand % p == 0 for p in range(2, isqrt(cand) + 1)):
            cand += 1
        _DIXON_PRIMES.append(cand)
    return _DIXON_PRIMES[:count]


def _inverse_mod_p(a: Mat, p: int) -> Mat | None:
    """Inverse of a mod p by Gauss-Jordan, or None if singular mod p."""
    n, m = shape(a)
    if n != m:
        raise ValueError("matrix not square")
    work = [[x % p for x in row] + [1 if i == j else 0 for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] % p), None)
        if piv is None:
            return None
        work[col], work[piv] = work[piv], work[col]
        inv = pow(work[col][col], -1, p)
        work[col] = [(x * inv) % p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [(x - f * y) % p for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def _hadamard_bound(a: Mat) -> int:
    """Integer upper bound on |det(a)| via column norms."""
    n, _ = shape(a)
    bound = 1
    for col in zip(*a):
        s = sum(x * x for x in col)
        if s == 0:
            return 0
        bound *= isqrt(s) + 1
    return bound


def _rational_reconstruct(a: int, m: int, num_bound: int, den_bound: int) -> Fraction | None:
    """p/q with p ≡ q*a mod m, |p| <= num_bound, 0 < q <= den_bound."""
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > den_bound or r1 > num_bound:
        return None
    if gcd(r1, abs(s1)) not in (0, 1):
        # still valid as long as it verifies; normalize below
        pass
    return Fraction(r1, s1) if s1 > 0 else Fraction(-r1, -s1)


def dixon_solve_right(a: Mat, b: list[int]) -> list[Fraction]:
    """Exact rational solution x of a x = b (column convention), a nonsingular.

    p-adic lifting with the smallest prime where ``a`` is invertible; the
    candidate is verified by exact multiplication, retrying with the next
    admissible prime on failure.
    """
    n, m = shape(a)
    if n != m:
        raise ValueError("matrix not square")
    if len(b) != n:
        raise ValueError("dimension mismatch")
    had = _hadamard_bound(a)
    if had == 0:
        raise SingularMatrixError("zero column")
    tries = had.bit_length() + 2
    bnorm = isqrt(sum(x * x for x in b)) + 1
    den_bound = had
    num_bound = max(1, had * bnorm)
    target = 2 * num_bound * den_bound
    usable = 0
    for p in _small_primes(tries):
        ainv_p = _inverse_mod_p(a, p)
        if ainv_p is None:
            continue
        usable += 1
        sol = _dixon_lift(a, b, p, ainv_p, target, num_bound, den_bound)
        if sol is not None:
            return sol
    if usable == 0:
        raise SingularMatrixError("matrix is singular")
    raise SingularMatrixError("verification failed for every candidate prime")


def _dixon_lift(a: Mat, b: list[int], p: int, ainv_p: Mat, target: int,
                num_bound: int, den_bound: int) -> list[Fraction] | None:
    n = len(a)
    x_digits = [0] * n
    pk = 1
    r = list(b)
    while pk <= target:
        d = [sum(ainv_p[i][j] * (r[j] % p) for j in range(n)) % p for i in range(n)]
        for i in range(n):
            x_digits[i] += d[i] * pk
        r = [(r[i] - sum(a[i][j] * d[j] for j in range(n))) // p for i in range(n)]
        pk *= p
    sol: list[Fraction] = []
    for i in range(n):
        f = _rational_reconstruct(x_digits[i] % pk, pk, num_bound, den_bound)
        if f is None:
            return None
        sol.append(f)
    for i in range(n):
        if sum(Fraction(a[i][j]) * sol[j] for j in range(n)) != b[i]:
            return None
    return sol


def dixon_solve_left(a: Mat, b: list[int]) -> list[Fraction]:
    """Exact rational solution x of x a = b (row convention)."""
    return dixon_solve_right(transpose(a), b)


def solve_left_triangular(h: Mat, c: list[Fraction | int]) -> list[Fraction]:
    """Exact rational y with y * h = c for lower-triangular h with nonzero diagonal."""
    n, m = shape(h)
    if n != m or len(c) != n:
        raise ValueError("dimension mismatch")
    y: list[Fraction] = [Fraction(0)] * n
    rest = [Fraction(x) for x in c]
    for j in range(n - 1, -1, -1):
        if h[j][j] == 0:
            raise SingularMatrixError("zero diagonal entry")
        y[j] = rest[j] / h[j][j]
        if y[j]:
            for k in range(j):
                rest[k] -= y[j] * h[j][k]
    return y


def back_substitute(h: Mat, b: Mat, modulus: int) -> Mat:
    """Solve h X = b for integral X, working modulo ``modulus`` and lifting.

    ``h`` must be lower triangular with nonzero diagonal and the system must
    have an integral solution; a non-divisible step raises ValueError.  The
    working modulus is extended internally by the diagonal product so every
    division is decided exactly; entries of X are returned in [0, modulus).
    """
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    n, m = shape(h)
    if n != m:
        raise ValueError("matrix not square")
    nb, k = shape(b)
    if nb != n:
        raise ValueError("dimension mismatch")
    diag_prod = 1
    for i in range(n):
        if h[i][i] == 0:
            raise ValueError("zero diagonal entry")
        diag_prod *= abs(h[i][i])
    big = modulus * diag_prod
    x = zero_matrix(n, k)
    for col in range(k):
        mod_cur = big
        vals = [0] * n
        for i in range(n):
            v = (b[i][col] - sum(h[i][j] * vals[j] for j in range(i))) % mod_cur
            q, r = divmod(v, h[i][i])
            if r:
                raise ValueError("non-divisibility during substitution; no integral solution")
            mod_cur //= abs(h[i][i])
            vals[i] = q % mod_cur if mod_cur > 1 else 0
        for i in range(n):
            x[i][col] = vals[i] % modulus
    return x


def det_bareiss(a: Mat) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n, m = shape(a)
    if n != m:
        raise ValueError("matrix not square")
    w = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if w[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if w[r][k]), None)
            if piv is None:
                return 0
            w[k], w[piv] = w[piv], w[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) // prev
            w[i][k] = 0
        prev = w[k][k]
    return sign * w[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Integer Smith normal form (test oracle)


def z_snf(a: Mat) -> Mat:
    """Smith normal form over Z with nonnegative divisors in a divisibility chain.

    Elementary row/column operation algorithm; used as an oracle, not in any
    production path.
    """
    n, m = shape(a)
    w = mat_copy(a)

    def min_nonzero(t: int) -> tuple[int, int] | None:
        piv = None
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = abs(w[i][j])
                if v and (best is None or v < best):
                    best, piv = v, (i, j)
        return piv

    t = 0
    while t < min(n, m):
        piv = min_nonzero(t)
        if piv is None:
            break
        while True:
            i, j = piv
            w[t], w[i] = w[i], w[t]
            for row in w:
                row[t], row[j] = row[j], row[t]
            p = w[t][t]
            dirty = False
            for i2 in range(t + 1, n):
                if w[i2][t]:
                    q = w[i2][t] // p
                    w[i2] = [x - q * y for x, y in zip(w[i2], w[t])]
                    dirty = dirty or w[i2][t] != 0
            for j2 in range(t + 1, m):
                if w[t][j2]:
                    q = w[t][j2] // p
                    for row in w:
                        row[j2] -= q * row[t]
                    dirty = dirty or w[t][j2] != 0
            if not dirty:
                break
            piv = min_nonzero(t)
        if w[t][t] < 0:
            w[t] = [-x for x in w[t]]
        offender = None
        for i2 in range(t + 1, n):
            if any(w[i2][j2] % w[t][t] for j2 in range(t + 1, m)):
                offender = i2
                break
        if offender is not None:
            w[t] = [x + y for x, y in zip(w[t], w[offender])]
            continue
        t += 1
    out = zero_matrix(n, m)
    for i in range(min(n, m)):
        out[i][i] = abs(w[i][i])
    return out
