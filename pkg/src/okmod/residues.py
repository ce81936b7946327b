"""Small-prime residue machinery: splitting, projections, two-stage CRT.

Polynomials over F_p are coefficient tuples, constant term first, with no
trailing zeros.  Factorization is fully deterministic: distinct-degree
splitting first, then equal-degree splitting by scanning gcd(g, v - s) over
the kernel vectors v of the Frobenius endomorphism and the field elements s,
which is affordable because the planned primes are small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numberfield import FieldElement, FieldError, NumberField

Poly = tuple[int, ...]


class ResidueError(ValueError):
    pass


# ---------------------------------------------------------------------------
# F_p[x] arithmetic


def poly_trim(c: list[int], p: int) -> Poly:
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                      for i in range(n)], p)


def poly_sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                      for i in range(n)], p)


def poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out, p)


def poly_divmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [x % p for x in a]
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], -1, p)
    for k in range(len(r) - len(b), -1, -1):
        c = (r[k + len(b) - 1] * inv_lead) % p
        if c:
            q[k] = c
            for j, y in enumerate(b):
                r[k + j] = (r[k + j] - c * y) % p
    return poly_trim(q, p), poly_trim(r, p)


def poly_mod(a: Poly, b: Poly, p: int) -> Poly:
    return poly_divmod(a, b, p)[1]


def poly_gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = poly_trim([x * inv for x in a], p)
    return a


def poly_pow_mod(a: Poly, e: int, mod: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = poly_mod(a, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def poly_inverse_mod(a: Poly, mod: Poly, p: int) -> Poly:
    """Inverse of a modulo an irreducible polynomial (extended Euclid)."""
    r0, r1 = mod, poly_mod(a, mod, p)
    t0, t1 = (), (1,)
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    inv = pow(r0[0], -1, p)
    return poly_trim([x * inv for x in t0], p)


# ---------------------------------------------------------------------------
# Deterministic factorization of squarefree monic polynomials


def _frobenius_kernel(g: Poly, p: int) -> list[Poly]:
    """Basis of the kernel of (Frobenius - id) on F_p[x]/(g)."""
    n = len(g) - 1
    rows = []
    xp = poly_pow_mod((0, 1), p, g, p)
    cur: Poly = (1,)
    for i in range(n):
        row = list(cur) + [0] * (n - len(cur))
        row[i] = (row[i] - 1) % p
        rows.append(row)
        cur = poly_mod(poly_mul(cur, xp, p), g, p)
    # kernel of the matrix acting on row vectors: v * Q = 0
    mat = [rows[i][:] for i in range(n)]
    # transpose so we solve M y = 0 with y the coefficient column
    m = [[mat[i][j] for i in range(n)] for j in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fc]) % p
        basis.append(poly_trim(v, p))
    return basis


def _split_equal_degree(g: Poly, p: int) -> list[Poly]:
    """All monic irreducible factors of a squarefree g (deterministic)."""
    if len(g) <= 2:
        return [g]
    kernel = _frobenius_kernel(g, p)
    if len(kernel) <= 1:
        return [g]
    for v in kernel:
        if len(v) <= 1:
            continue
        for s in range(p):
            h = poly_gcd(poly_sub(v, (s,), p), g, p)
            if 1 < len(h) < len(g):
                rest = poly_divmod(g, h, p)[0]
                return _split_equal_degree(h, p) + _split_equal_degree(rest, p)
    raise ResidueError("equal-degree splitting failed on reducible input")


def factor_squarefree(f: Poly, p: int) -> list[Poly]:
    """Monic irreducible factors of a squarefree monic polynomial mod p."""
    out: list[Poly] = []
    rest = f
    e = 1
    x = (0, 1)
    xq = x
    while len(rest) - 1 >= 2 * e:
        xq = poly_pow_mod(xq, p, rest, p)
        g = poly_gcd(poly_sub(xq, x, p), rest, p)
        if len(g) > 1:
            if len(g) - 1 == e:
                out.append(g)
            else:
                out.extend(_split_equal_degree(g, p))
            rest = poly_divmod(rest, g, p)[0]
            xq = poly_mod(xq, rest, p)
        e += 1
    if len(rest) > 1:
        out.append(rest)
    out.sort(key=lambda q: (len(q), q))
    return out


# ---------------------------------------------------------------------------
# Residue systems and prime plans


@dataclass(frozen=True)
class ResidueSystem:
    """Split structure of one unramified rational prime."""

    field: NumberField
    p: int
    fbar: Poly
    factors: tuple[Poly, ...]
    proj_table: tuple[tuple[Poly, ...], ...]  # [factor][basis index]
    crt_mults: tuple[Poly, ...]  # u_i * (fbar / fbar_i) mod fbar


def split_prime(field: NumberField, p: int) -> ResidueSystem:
    """Dedekind-Kummer splitting; requires p coprime to disc(f)."""
    if field.disc_f % p == 0:
        raise ResidueError(f"prime {p} divides disc(f)")
    fbar = poly_trim(list(field.poly), p)
    if len(fbar) != field.degree + 1:
        raise ResidueError("defining polynomial degenerates mod p")
    factors = tuple(factor_squarefree(fbar, p))
    if sum(len(g) - 1 for g in factors) != field.degree:
        raise ResidueError("factorization degrees do not sum to the field degree")
    d = field.degree
    m_mod = [[x % p for x in row] for row in field.power_to_basis]
    minv = _matrix_inverse_mod_p(m_mod, p)
    # column i of minv = power-basis coordinates of the i-th basis element
    proj = []
    for g in factors:
        per_basis = []
        for i in range(d):
            col = [minv[j][i] for j in range(d)]
            per_basis.append(poly_mod(poly_trim(col, p), g, p))
        proj.append(tuple(per_basis))
    mults = []
    for g in factors:
        rest = poly_divmod(fbar, g, p)[0]
        u = poly_inverse_mod(rest, g, p)
        mults.append(poly_mod(poly_mul(u, rest, p), fbar, p))
    return ResidueSystem(field, p, fbar, factors, tuple(proj), tuple(mults))


def _matrix_inverse_mod_p(a, p):
    n = len(a)
    work = [[a[i][j] % p for j in range(n)] + [1 if i == j else 0 for j in range(n)]
            for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] % p), None)
        if piv is None:
            raise ResidueError("power-basis transformation singular mod p")
        work[col], work[piv] = work[piv], work[col]
        inv = pow(work[col][col], -1, p)
        work[col] = [(x * inv) % p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [(x - f * y) % p for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def project_element(beta: FieldElement, sys: ResidueSystem) -> list[Poly]:
    """Images of an integral element in each residue field F_p[x]/(fbar_i)."""
    if beta.den != 1:
        raise FieldError("projection requires an integral element")
    p = sys.p
    coeffs = [c % p for c in beta.coeffs]
    out = []
    for fi, table in enumerate(sys.proj_table):
        acc: Poly = ()
        for j, c in enumerate(coeffs):
            if c:
                acc = poly_add(acc, poly_trim([c * x for x in table[j]], p), p)
        out.append(poly_mod(acc, sys.factors[fi], p))
    return out


def crt_combine_factors(values: list[Poly], sys: ResidueSystem) -> Poly:
    """Unique preimage in F_p[x]/(fbar) of one residue per factor."""
    if len(values) != len(sys.factors):
        raise ResidueError("one value per factor required")
    p = sys.p
    acc: Poly = ()
    for v, mult in zip(values, sys.crt_mults):
        acc = poly_add(acc, poly_mul(v, mult, p), p)
    acc = poly_mod(acc, sys.fbar, p)
    for v, g in zip(values, sys.factors):
        if poly_mod(acc, g, p) != poly_mod(v, g, p):
            raise ResidueError("internal error: factor recombination mismatch")
    return acc


@dataclass(frozen=True)
class PrimePlan:
    """Ordered admissible primes whose product exceeds the recovery bound."""

    log_bound: Fraction
    primes: tuple[int, ...]
    modulus: int


def plan_primes(field: NumberField, log_bound) -> PrimePlan:
    """First primes coprime to disc(f) with product > 2^(log_bound + 1)."""
    log_bound = Fraction(log_bound)
    if log_bound <= 0:
        raise ResidueError("bound must be positive")
    ceiling = log_bound.numerator // log_bound.denominator
    if ceiling < log_bound:
        ceiling += 1
    target = 1 << (ceiling + 1)
    primes: list[int] = []
    n_prod = 1
    cand = 2
    while n_prod <= target:
        if all(cand % q for q in primes_below(cand)):
            if field.disc_f % cand:
                primes.append(cand)
                n_prod *= cand
        cand += 1
    return PrimePlan(log_bound, tuple(primes), n_prod)


_PRIME_TABLE: list[int] = [2]


def primes_below(n: int) -> list[int]:
    while _PRIME_TABLE[-1] * _PRIME_TABLE[-1] < n:
        c = _PRIME_TABLE[-1] + 1
        while any(c % q == 0 for q in _PRIME_TABLE if q * q <= c):
            c += 1
        _PRIME_TABLE.append(c)
    return [q for q in _PRIME_TABLE if q * q <= n]


def symmetric_lift(x: int, n: int) -> int:
    r = x % n
    return r - n if 2 * r > n else r


def crt_combine_primes(per_prime: list[Poly], plan: PrimePlan, degree: int) -> list[int]:
    """Coefficientwise integer CRT with a symmetric lift into (-N/2, N/2]."""
    if len(per_prime) != len(plan.primes):
        raise ResidueError("one polynomial per plan prime required")
    coeffs = []
    for t in range(degree):
        val, mod = 0, 1
        for poly, p in zip(per_prime, plan.primes):
            c = poly[t] if t < len(poly) else 0
            # incremental CRT
            inv = pow(mod % p, -1, p)
            val = val + mod * (((c - val) * inv) % p)
            mod *= p
        coeffs.append(symmetric_lift(val, plan.modulus))
    return coeffs


def lift_to_field(coeffs: list[int], field: NumberField, modulus: int) -> FieldElement:
    """Preimage of a power-basis polynomial mod (f, N) on the integral basis.

    Valid when the true element's coefficients are below N/2 in absolute
    value; the caller guarantees this via the recovery bound.
    """
    d = field.degree
    out = []
    for i in range(d):
        acc = sum(field.power_to_basis[i][j] * coeffs[j] for j in range(min(d, len(coeffs))))
        out.append(symmetric_lift(acc, modulus))
    return field.element(out)
