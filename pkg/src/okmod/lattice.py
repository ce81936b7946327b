"""Lattice reduction of ideal bases under a rounded trace-form embedding.

The Gram matrix of the Hermitian trace form on the integral basis is
enclosed to the requested accuracy, Cholesky-factored numerically, scaled by
2^e and rounded to an integer matrix.  Reducing an ideal then means running a
classical LLL (delta = 99/100, exact rational Gram-Schmidt) on the image of
its Hermite basis under that integer embedding.  The output quality is not
assumed: every reduced basis is checked against the first-vector and product
bounds, with the rounding-quality constant already absorbed into the stored
reduction parameter.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from . import numeric
from .numeric import Ball, frac_nth_root_ub, frac_sqrt_lb, frac_sqrt_ub, frac_up, mpf_to_fraction
from .numberfield import FieldElement, NumberField
from .zlinalg import Mat, det_bareiss

LLL_DELTA = Fraction(99, 100)
LLL_ETA = Fraction(501, 1000)
# theta = 0: plain size reduction


class QualityError(RuntimeError):
    """A reduced basis failed its certified quality bound; rebuild with larger e."""


class LatticeContext:
    """Precomputed rounded-embedding data for one number field."""

    __slots__ = ("field", "e", "r_e", "ell_sq", "quality_sq", "c_quality")

    def __init__(self, field: NumberField, e: int, r_e: Mat,
                 ell_sq: Fraction, quality_sq: Fraction, c_quality: Fraction):
        self.field = field
        self.e = e
        self.r_e = r_e
        self.ell_sq = ell_sq
        self.quality_sq = quality_sq
        self.c_quality = c_quality

    def norm_bound_sq(self) -> Fraction:
        """Upper bound for N(a)^2 <= bound after normalization: (l^(d^2) sqrt|disc|)^2."""
        d = self.field.degree
        return self.quality_sq ** (d * d) * abs(self.field.disc)

    def __repr__(self) -> str:
        return f"LatticeContext(e={self.e}, ell_sq~{float(self.quality_sq):.6f})"


def default_precision_exponent(field: NumberField) -> int:
    return 2 * (field.degree + abs(field.disc).bit_length()) + 64


def build_context(field: NumberField, e: int | None = None) -> LatticeContext:
    """Certified Gram enclosure, numerical Cholesky, integer rounding at scale 2^e.

    The Gram entries are enclosed to absolute error < 2^-(e+2); if the rounded
    matrix is singular the exponent is doubled and the construction retried.
    """
    d = field.degree
    if e is None:
        e = default_precision_exponent(field)
    while True:
        r_e, c_quality = _try_build(field, e)
        if r_e is not None:
            break
        e *= 2
    ell_sq = 1 / (LLL_DELTA - LLL_ETA * LLL_ETA)
    if d >= 2:
        boost = frac_nth_root_ub(c_quality ** 4, d - 1, 96)
        quality_sq = frac_up(ell_sq * max(boost, Fraction(1)), 96)
    else:
        quality_sq = ell_sq
    return LatticeContext(field, e, r_e, ell_sq, quality_sq, c_quality)


def _try_build(field: NumberField, e: int):
    d = field.degree
    target = Fraction(1, 1 << (e + 2))
    prec = e + 64
    while True:
        gram = _gram_balls(field, prec)
        if all(b.r + abs(b.im) < target for row in gram for b in row):
            break
        prec *= 2
    centers = [[b.re for b in row] for row in gram]
    r1 = _cholesky(centers, prec)
    r2 = _cholesky(centers, 2 * prec)
    chol_err = max(abs(a - b) for ra, rb in zip(r1, r2) for a, b in zip(ra, rb))
    scale = Fraction(1 << e)
    r_e = [[_round_half_up(scale * x) for x in row] for row in r2]
    if det_bareiss(r_e) == 0:
        return None, None
    # epsilon = r_e - 2^e * R_true, bounded by rounding + Cholesky/Gram slack
    eps_entry = Fraction(1, 2) + scale * frac_up(8 * chol_err + 8 * target, 64)
    eps_f = d * eps_entry  # Frobenius bound
    s = _fraction_inv(r_e)
    s_f = frac_sqrt_ub(sum(x * x for row in s for x in row))
    det_re = abs(det_bareiss(r_e))
    ratio = Fraction(det_re) / (scale ** d) / frac_sqrt_lb(Fraction(abs(field.disc)))
    c_quality = (1 + eps_f * s_f) * frac_nth_root_ub(max(ratio, Fraction(1)), d, 96)
    return r_e, frac_up(c_quality, 96)


def _gram_balls(field: NumberField, prec: int) -> list[list[Ball]]:
    d = field.degree
    roots = field.roots(prec)
    omegas = [field.to_power_coords(field.element([1 if t == i else 0 for t in range(d)]))
              for i in range(d)]
    vals = [[numeric.eval_at_root(w, r) for r in roots] for w in omegas]
    gram = []
    for i in range(d):
        row = []
        for k in range(d):
            acc = Ball(Fraction(0))
            for j in range(d):
                acc = acc + vals[i][j] * vals[k][j].conj()
            row.append(acc)
        gram.append(row)
    return gram


def _cholesky(centers: list[list[Fraction]], prec: int) -> list[list[Fraction]]:
    d = len(centers)
    with mp.workprec(prec):
        g = mp.matrix([[mp.mpf(x.numerator) / x.denominator for x in row] for row in centers])
        low = mp.cholesky(g)
        return [[mpf_to_fraction(low[i, j]) for j in range(d)] for i in range(d)]


def _fraction_inv(a: Mat) -> list[list[Fraction]]:
    n = len(a)
    work = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if work[r][col])
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def _round_half_up(x: Fraction) -> int:
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


# ---------------------------------------------------------------------------
# Exact LLL on integer rows


def _lll_with_transform(b: Mat, u: Mat, delta: Fraction) -> None:
    """In-place LLL on the rows of b, mirroring every operation on u."""
    n = len(b)

    def dot(x, y):
        return sum(p * q for p, q in zip(x, y))

    bstar: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu: list[list[Fraction]] = []

    def recompute() -> None:
        bstar.clear()
        norms.clear()
        mu.clear()
        for i in range(n):
            vec = [Fraction(x) for x in b[i]]
            mu.append([Fraction(0)] * n)
            for j in range(i):
                mu[i][j] = sum(Fraction(x) * y for x, y in zip(b[i], bstar[j])) / norms[j]
                vec = [x - mu[i][j] * y for x, y in zip(vec, bstar[j])]
            bstar.append(vec)
            norms.append(dot(vec, vec))

    recompute()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                r = _round_half_up(mu[k][j])
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                u[k] = [x - r * y for x, y in zip(u[k], u[j])]
                for t in range(j):
                    mu[k][t] -= r * mu[j][t]
                mu[k][j] -= r
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            u[k], u[k - 1] = u[k - 1], u[k]
            recompute()
            k = max(k - 1, 1)


def reduce_ideal_basis(ideal, ctx: LatticeContext) -> Mat:
    """Quality-checked reduced basis (rows, integral-basis coordinates) of an
    integral ideal."""
    if ideal.den != 1:
        raise ValueError("reduction expects an integral ideal")
    field = ctx.field
    d = field.degree
    u = [list(row) for row in ideal.num]
    if d > 1:
        emb = [[sum(u[i][t] * ctx.r_e[t][j] for t in range(d)) for j in range(d)]
               for i in range(d)]
        _lll_with_transform(emb, u, LLL_DELTA)
    _check_quality(ideal, u, ctx)
    return u


def _check_quality(ideal, basis: Mat, ctx: LatticeContext) -> None:
    field = ctx.field
    d = field.degree
    if d == 1:
        # the basis is the single generator: both bounds hold with equality,
        # which the rounded-up enclosure cannot certify
        return
    nrm = ideal.norm()
    disc = abs(field.disc)
    prod_rhs = ctx.quality_sq ** (d * (d - 1) // 2) * disc * nrm * nrm
    first_rhs = ctx.quality_sq ** (d * (d - 1)) * disc * nrm * nrm
    ubs = []
    for row in basis:
        _, ub = field.norm_sq_bounds(field.element(row))
        ubs.append(ub)
    prod = Fraction(1)
    for ub in ubs:
        prod *= ub
    if prod > prod_rhs or ubs[0] ** d > first_rhs:
        raise QualityError(
            "reduced basis missed its certified bound; rebuild the lattice "
            "context with a larger precision exponent")


def shortest_basis_element(ideal, ctx: LatticeContext) -> FieldElement:
    """First vector of the reduced basis, as a field element."""
    basis = reduce_ideal_basis(ideal, ctx)
    return ctx.field.element(basis[0])
