"""Number field contexts and exact element arithmetic over a fixed integral basis.

A :class:`NumberField` is an immutable bundle of precomputed data for a field
``K = Q[x]/(f)`` together with an integral basis given over the power basis:
structure constants, trace matrix and its scaled inverse, discriminants, the
power-basis transformation, certified embedding enclosures, and the growth
constants used in size bounds.  Elements are integer coefficient vectors over
the integral basis with a minimal positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import numeric
from .numeric import Ball, frac_sqrt_ub, frac_up, log2_ub
from .zlinalg import Mat, det_bareiss, dixon_solve_left


class FieldError(ValueError):
    pass


def _canonical(coeffs: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        coeffs = [-c for c in coeffs]
        den = -den
    g = den
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        coeffs = [c // g for c in coeffs]
        den //= g
    return tuple(coeffs), den


class FieldElement:
    """Element of a number field: integer coefficients over the integral basis / den."""

    __slots__ = ("field", "coeffs", "den")

    def __init__(self, field: "NumberField", coeffs, den: int = 1):
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) != field.degree:
            raise FieldError("coefficient vector has wrong length")
        self.field = field
        self.coeffs, self.den = _canonical(coeffs, int(den))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (self.field is other.field and self.coeffs == other.coeffs
                and self.den == other.den)

    def __hash__(self):
        return hash((id(self.field), self.coeffs, self.den))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, [-c for c in self.coeffs], self.den)

    def __add__(self, other) -> "FieldElement":
        return self.field.add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElement":
        return self.field.add(self, -self._coerce(other))

    def __rsub__(self, other) -> "FieldElement":
        return self.field.add(self._coerce(other), -self)

    def __mul__(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.scalar_mul(other, self)
        if isinstance(other, Fraction):
            return self.field.scalar_div(self.field.scalar_mul(other.numerator, self),
                                         other.denominator)
        return self.field.mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.scalar_div(self, other)
        return self.field.mul(self, self.field.inv(self._coerce(other)))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            e = self.field.from_int(other.numerator)
            return self.field.scalar_div(e, other.denominator)
        raise TypeError(f"cannot coerce {other!r}")

    def is_integral(self) -> bool:
        return self.den == 1

    def norm(self) -> Fraction:
        return self.field.norm(self)

    def trace(self) -> Fraction:
        return self.field.trace(self)

    def __repr__(self) -> str:
        body = " ".join(str(c) for c in self.coeffs)
        return f"<{body} / {self.den}>"


def _poly_mul_mod(a: list[Fraction], b: list[Fraction], f: list[Fraction]) -> list[Fraction]:
    """Product of polynomials modulo the monic polynomial f (coefficients low-first)."""
    d = len(f) - 1
    res = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    res[i + j] += x * y
    for k in range(len(res) - 1, d - 1, -1):
        c = res[k]
        if c:
            for j in range(d + 1):
                res[k - d + j] -= c * f[j]
    out = res[:d]
    return out + [Fraction(0)] * (d - len(out))


def _fraction_inverse(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    work = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise FieldError("basis matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def _sylvester_resultant(f: list[int], g: list[int]) -> int:
    m = len(f) - 1
    n = len(g) - 1
    size = m + n
    rows: Mat = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return det_bareiss(rows)


class NumberField:
    """Immutable precomputed context for exact arithmetic in a number field."""

    def __init__(self, *, _token=None, **data):
        if _token is not _BUILD_TOKEN:
            raise TypeError("use build_field() to construct a NumberField")
        self.__dict__.update(data)
        self._roots: list[Ball] | None = None
        self._root_prec = 0
        self._lattice = None
        self._codifferent = None
        self._two_elt = None
        self._residue_systems: dict[int, object] = {}
        self._basis_cache = None

    # -- constructors ------------------------------------------------------

    def from_int(self, n: int) -> FieldElement:
        coeffs = [0] * self.degree
        coeffs[0] = int(n)
        return FieldElement(self, coeffs, 1)

    def zero(self) -> FieldElement:
        return self.from_int(0)

    def one(self) -> FieldElement:
        return self.from_int(1)

    def element(self, coeffs, den: int = 1) -> FieldElement:
        return FieldElement(self, coeffs, den)

    def from_fractions(self, fracs: list[Fraction]) -> FieldElement:
        den = 1
        for q in fracs:
            den = den * q.denominator // gcd(den, q.denominator)
        coeffs = [int(q * den) for q in fracs]
        return FieldElement(self, coeffs, den)

    def from_power_coords(self, fracs: list[Fraction]) -> FieldElement:
        out = [Fraction(0)] * self.degree
        for j, q in enumerate(fracs):
            if q:
                for i in range(self.degree):
                    out[i] += q * self.power_to_basis[i][j]
        return self.from_fractions(out)

    def to_power_coords(self, elt: FieldElement) -> list[Fraction]:
        d = self.degree
        out = [Fraction(0)] * d
        for i, c in enumerate(elt.coeffs):
            if c:
                for j in range(d):
                    out[j] += Fraction(c, elt.den) * self.basis_pow[i][j]
        return out

    # -- additive and scalar structure --------------------------------------

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        k, l = a.den, b.den
        g = gcd(k, l)
        ka, lb = l // g, k // g
        return FieldElement(self, [ka * x + lb * y for x, y in zip(a.coeffs, b.coeffs)],
                            k * ka)

    def scalar_mul(self, m: int, a: FieldElement) -> FieldElement:
        return FieldElement(self, [m * c for c in a.coeffs], a.den)

    def scalar_div(self, a: FieldElement, m: int) -> FieldElement:
        if m == 0:
            raise ZeroDivisionError("division by zero integer")
        return FieldElement(self, list(a.coeffs), a.den * m)

    # -- multiplicative structure -------------------------------------------

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        d = self.degree
        out = [0] * d
        struct = self.struct
        for i, ai in enumerate(a.coeffs):
            if not ai:
                continue
            srow = struct[i]
            for j, bj in enumerate(b.coeffs):
                if not bj:
                    continue
                t = ai * bj
                sij = srow[j]
                for k in range(d):
                    if sij[k]:
                        out[k] += t * sij[k]
        return FieldElement(self, out, a.den * b.den)

    def regular_representation(self, gamma: FieldElement) -> Mat:
        """Matrix of beta -> gamma*beta in row convention: row(beta) @ M = row(gamma*beta)."""
        if gamma.den != 1:
            raise FieldError("regular representation requires an integral element")
        d = self.degree
        struct = self.struct
        m = [[0] * d for _ in range(d)]
        for i in range(d):
            row = m[i]
            for j, cj in enumerate(gamma.coeffs):
                if cj:
                    sij = struct[i][j]
                    for k in range(d):
                        if sij[k]:
                            row[k] += cj * sij[k]
        return m

    def inv(self, a: FieldElement) -> FieldElement:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        num = FieldElement(self, list(a.coeffs), 1)
        m = self.regular_representation(num)
        e1 = [1] + [0] * (self.degree - 1)
        x = dixon_solve_left(m, e1)
        return self.from_fractions([a.den * q for q in x])

    def norm(self, a: FieldElement) -> Fraction:
        num = FieldElement(self, list(a.coeffs), 1)
        det = det_bareiss(self.regular_representation(num))
        return Fraction(det, a.den ** self.degree)

    def trace(self, a: FieldElement) -> Fraction:
        t = sum(c * self.trace_vec[i] for i, c in enumerate(a.coeffs))
        return Fraction(t, a.den)

    # -- size and certified geometry ----------------------------------------

    def size(self, a: FieldElement) -> Fraction:
        """Coefficient bit-size surrogate, rounded up; 0 for the zero element."""
        if not a:
            return Fraction(0)
        d = self.degree
        mx = max(abs(c) for c in a.coeffs if c)
        s = Fraction(0) if mx == 1 else d * log2_ub(mx)
        if a.den > 1:
            s += d * log2_ub(a.den)
        return s

    def roots(self, min_prec: int = 0) -> list[Ball]:
        """Certified disjoint enclosures of the roots of the defining polynomial."""
        want = max(min_prec, 64 + 4 * max(abs(c) for c in self.poly).bit_length())
        if self._roots is None or self._root_prec < want:
            prec = max(want, 64)
            while True:
                balls = numeric.certified_roots(list(self.poly), prec)
                if balls is not None and all(b.r < Fraction(1, 1 << want) for b in balls):
                    self._roots, self._root_prec = balls, prec
                    break
                prec *= 2
        return self._roots

    def norm_sq_bounds(self, a: FieldElement) -> tuple[Fraction, Fraction]:
        """Certified enclosure of the squared T2 norm of an element."""
        if not a:
            return Fraction(0), Fraction(0)
        p = self.to_power_coords(a)
        lb = Fraction(0)
        ub = Fraction(0)
        for root in self.roots():
            v = numeric.eval_at_root(p, root)
            lb += v.abs_sq_lb()
            ub += v.abs_sq_ub()
        return lb, frac_up(ub, 128)

    # -- lazy heavyweight attachments ----------------------------------------

    @property
    def lattice_context(self):
        if self._lattice is None:
            from . import lattice
            self._lattice = lattice.build_context(self)
        return self._lattice

    @property
    def codifferent_numerator(self):
        """The integral ideal generated by the rows of den(T^-1) * T^-1."""
        if self._codifferent is None:
            from .ideals import FractionalIdeal
            self._codifferent = FractionalIdeal.from_row_lattice(
                self, self.trace_inv_num, 1)
        return self._codifferent

    @property
    def two_element_rep(self):
        """A pair of integral elements generating the codifferent numerator.

        Found by a deterministic search over small combinations of the reduced
        basis, in increasing certified-norm order, validated by ideal equality.
        Regular representations of both generators are returned alongside.
        """
        if self._two_elt is None:
            from . import twoelt
            self._two_elt = twoelt.two_element_rep(self)
        return self._two_elt

    def residue_system(self, p: int):
        if p not in self._residue_systems:
            from . import residues
            self._residue_systems[p] = residues.split_prime(self, p)
        return self._residue_systems[p]

    @property
    def basis_cache(self):
        """Field-wide reduced-basis cache shared by default across reductions."""
        if self._basis_cache is None:
            from .reduction import ReducedBasisCache
            self._basis_cache = ReducedBasisCache(self.lattice_context)
        return self._basis_cache

    def __repr__(self) -> str:
        return f"NumberField(degree={self.degree}, disc={self.disc})"


_BUILD_TOKEN = object()


def build_field(poly_coeffs: list[int], basis_rows=None) -> NumberField:
    """Build the full precomputed field context.

    ``poly_coeffs`` is the monic defining polynomial, constant term first.
    ``basis_rows`` gives the integral basis over the power basis, one row per
    basis element (rationals); the default is the power basis itself.  The
    first basis element must be 1 and the rows must span an order; maximality
    of that order is the caller's responsibility.
    """
    poly = [int(c) for c in poly_coeffs]
    if len(poly) < 2:
        raise FieldError("polynomial must have degree >= 1")
    if poly[-1] != 1:
        raise FieldError("polynomial must be monic")
    d = len(poly) - 1
    if basis_rows is None:
        basis_rows = [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
    basis = [[Fraction(x) for x in row] for row in basis_rows]
    if len(basis) != d or any(len(r) != d for r in basis):
        raise FieldError("basis matrix must be d x d")
    if basis[0] != [Fraction(1)] + [Fraction(0)] * (d - 1):
        raise FieldError("first basis element must be 1")

    if d == 1:
        disc_f = 1
    else:
        fp = [i * c for i, c in enumerate(poly)][1:]
        res = _sylvester_resultant(poly, fp)
        sign = -1 if (d * (d - 1) // 2) % 2 else 1
        disc_f = sign * res
    if disc_f == 0:
        raise FieldError("defining polynomial is not squarefree (gcd(f, f') != 1)")

    binv = _fraction_inverse(basis)
    m_cols = [[binv[j][i] for j in range(d)] for i in range(d)]  # M[i][j] = binv[j][i]
    if any(q.denominator != 1 for row in m_cols for q in row):
        raise FieldError("power basis is not integral over the given basis")
    power_to_basis = [[int(q) for q in row] for row in m_cols]
    index = abs(det_bareiss(power_to_basis))
    if index == 0:
        raise FieldError("basis matrix is singular")
    if disc_f % (index * index):
        raise FieldError("disc(f) not divisible by index squared; basis is not an order basis")
    disc = disc_f // (index * index)

    fq = [Fraction(c) for c in poly]
    struct: list[list[tuple[int, ...]]] = []
    for i in range(d):
        row_i = []
        for j in range(d):
            if j < i:
                row_i.append(struct[j][i])
                continue
            prod = _poly_mul_mod(list(basis[i]), list(basis[j]), fq)
            coords = [sum(prod[t] * binv[t][k] for t in range(d)) for k in range(d)]
            if any(q.denominator != 1 for q in coords):
                raise FieldError("basis is not multiplicatively closed (not an order)")
            row_i.append(tuple(int(q) for q in coords))
        struct.append(row_i)
    struct_t = tuple(tuple(r) for r in struct)

    trace_vec = tuple(sum(struct_t[k][i][i] for i in range(d)) for k in range(d))
    trace_mat = [[sum(struct_t[i][j][k] * trace_vec[k] for k in range(d)) for j in range(d)]
                 for i in range(d)]
    if any(trace_mat[i][j] != trace_mat[j][i] for i in range(d) for j in range(d)):
        raise FieldError("trace matrix is not symmetric")
    if det_bareiss(trace_mat) != disc:
        raise FieldError("det of trace matrix does not match the discriminant")
    tinv = _fraction_inverse([[Fraction(x) for x in row] for row in trace_mat])
    trace_den = 1
    for row in tinv:
        for q in row:
            trace_den = trace_den * q.denominator // gcd(trace_den, q.denominator)
    trace_inv_num = [[int(q * trace_den) for q in row] for row in tinv]

    c3 = max(abs(x) for row in struct_t for s in row for x in s)

    field = NumberField(
        _token=_BUILD_TOKEN,
        degree=d,
        poly=tuple(poly),
        basis_pow=tuple(tuple(row) for row in basis),
        power_to_basis=power_to_basis,
        struct=struct_t,
        trace_vec=trace_vec,
        trace_mat=trace_mat,
        trace_den=trace_den,
        trace_inv_num=trace_inv_num,
        disc_f=disc_f,
        disc=disc,
        index=index,
        struct_bound=c3,
        embed_bound_sq=None,
        coeff_bound=None,
        growth_constant=None,
    )
    _attach_constants(field)
    return field


def _attach_constants(field: NumberField) -> None:
    """Certified growth constants: coefficient/T2 conversion bounds and size growth.

    The coefficient-to-T2 constant must satisfy |alpha| <= C1 * max|a_i|,
    which needs the triangle-inequality factor d on top of max_i |omega_i|.
    """
    d = field.degree
    omegas = [field.element([1 if t == i else 0 for t in range(d)]) for i in range(d)]
    c1_sq = Fraction(0)
    for w in omegas:
        _, ub = field.norm_sq_bounds(w)
        c1_sq = max(c1_sq, ub)
    c1_sq *= d * d
    field.embed_bound_sq = c1_sq

    # coefficient bound: max column 2-norm of the inverse embedding matrix,
    # via exact inverse of the ball centers plus a Neumann residual bound
    prec_extra = 32
    while True:
        roots = field.roots(prec_extra)
        vals = [[numeric.eval_at_root(field.to_power_coords(w), r) for r in roots]
                for w in omegas]
        centers = [[(b.re, b.im) for b in row] for row in vals]
        try:
            y = _complex_inverse(centers)
        except ZeroDivisionError:
            prec_extra *= 2
            continue
        y_abs = [[frac_sqrt_ub(re * re + im * im) for re, im in row] for row in y]
        eta = Fraction(0)
        for i in range(d):
            row_rad = [vals[i][j].r for j in range(d)]
            row_sum = Fraction(0)
            for k in range(d):
                row_sum += sum(row_rad[j] * y_abs[j][k] for j in range(d))
            eta = max(eta, row_sum)
        if eta < Fraction(1, 2):
            break
        prec_extra *= 2
    amp = eta / (1 - eta)
    c2 = Fraction(0)
    row_sums = [sum(y_abs[i][j] for j in range(d)) for i in range(d)]
    for k in range(d):
        s = Fraction(0)
        for i in range(d):
            v = y_abs[i][k] + amp * row_sums[i]
            s += v * v
        c2 = max(c2, frac_sqrt_ub(s))
    field.coeff_bound = frac_up(c2, 96)

    log_c1 = log2_ub(c1_sq) / 2 if c1_sq > 1 else Fraction(0)
    log_c2 = log2_ub(field.coeff_bound) if field.coeff_bound > 1 else Fraction(0)
    log_d = log2_ub(d) if d > 1 else Fraction(0)
    log_c3 = log2_ub(field.struct_bound) if field.struct_bound > 1 else Fraction(0)
    arm1 = 2 * d * log_d + d * log_c3
    arm2 = d * d * log_c1 + d * log_c2
    field.growth_constant = max(arm1, arm2)


def _complex_inverse(mat):
    """Exact inverse of a complex rational matrix given as (re, im) pairs."""
    n = len(mat)
    work = [[(Fraction(re), Fraction(im)) for re, im in row]
            + [(Fraction(1 if i == j else 0), Fraction(0)) for j in range(n)]
            for i, row in enumerate(mat)]

    def cmul(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def csub(a, b):
        return (a[0] - b[0], a[1] - b[1])

    def cinv(a):
        q = a[0] * a[0] + a[1] * a[1]
        if q == 0:
            raise ZeroDivisionError
        return (a[0] / q, -a[1] / q)

    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != (0, 0)), None)
        if piv is None:
            raise ZeroDivisionError
        work[col], work[piv] = work[piv], work[col]
        inv = cinv(work[col][col])
        work[col] = [cmul(x, inv) for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != (0, 0):
                f = work[r][col]
                work[r] = [csub(x, cmul(f, y)) for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]
