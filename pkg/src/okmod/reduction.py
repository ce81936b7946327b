"""Element reduction modulo fractional ideals and pseudo-row normalization.

Reduction rewrites alpha in the rational basis spanned by a Z-basis of the
ideal's numerator and subtracts the rounded coordinates, which keeps the
difference inside the ideal by construction.  With an LLL-reduced basis the
output satisfies the certified trace-form bound; with the Hermite basis and
floor rounding it is the unique canonical representative of its class, which
is what the uniqueness pass of the pseudo-Hermite form uses.
"""

from __future__ import annotations

from fractions import Fraction

from . import lattice
from .ideals import FractionalIdeal, IdealError
from .numberfield import FieldElement


class ReducedBasisCache:
    """Memoizes reduced numerator bases; reuse it when reducing many elements.

    Lookups and inserts are plain dict operations on immutable values, safe
    under concurrent readers; confine one cache per thread if in doubt.
    """

    def __init__(self, ctx: lattice.LatticeContext):
        self.ctx = ctx
        self._map: dict = {}

    def reduced_basis(self, ideal: FractionalIdeal):
        key = (ideal.num, ideal.den)
        basis = self._map.get(key)
        if basis is None:
            numerator = FractionalIdeal(ideal.field, [list(r) for r in ideal.num], 1)
            basis = lattice.reduce_ideal_basis(numerator, self.ctx)
            self._map[key] = basis
        return basis


def _solve_in_basis(basis, coeffs) -> list[Fraction]:
    """Rational coordinates y with y * basis = coeffs (basis rows nonsingular)."""
    n = len(basis)
    # Gauss-Jordan on the transposed system basis^t y^t = coeffs^t
    aug = [[Fraction(basis[r][i]) for r in range(n)] + [Fraction(coeffs[i])]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * g for x, g in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _round_half_up(q: Fraction) -> int:
    return (2 * q.numerator + q.denominator) // (2 * q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def reduce_mod_ideal(alpha: FieldElement, a: FractionalIdeal,
                     cache: ReducedBasisCache | None = None,
                     basis=None, centered: bool = True) -> FieldElement:
    """Representative of alpha modulo the fractional ideal ``a``.

    The difference alpha - result lies in ``a`` exactly.  With the default
    LLL basis and centered (round-half-up) residues the result satisfies the
    trace-form bound d^(3/2) l^(d(d-1)/2) N(a)^(1/d) sqrt|disc|; passing the
    numerator Hermite basis with centered=False yields the canonical
    positive-box representative instead.
    """
    field = alpha.field
    if basis is None:
        if cache is None:
            cache = field.basis_cache
        basis = cache.reduced_basis(a)
    l = a.den
    k = alpha.den
    y = _solve_in_basis(basis, [l * c for c in alpha.coeffs])
    rounder = _round_half_up if centered else _floor
    r = [rounder(q / k) for q in y]
    d = field.degree
    new = [l * alpha.coeffs[t] - k * sum(r[i] * basis[i][t] for i in range(d))
           for t in range(d)]
    return FieldElement(field, new, k * l)


def reduction_bound_sq_scaled(a: FractionalIdeal, ctx: lattice.LatticeContext) -> Fraction:
    """d-th power of the squared reduction bound: compare against ub(|x|^2)^d."""
    d = ctx.field.degree
    nrm = a.norm()
    return (Fraction(d ** 3) ** d * ctx.quality_sq ** (d * d * (d - 1) // 2)
            * nrm * nrm * Fraction(abs(ctx.field.disc)) ** d)


def check_reduced_bound(alpha: FieldElement, a: FractionalIdeal,
                        ctx: lattice.LatticeContext) -> bool:
    """Certified check of the reduction output bound (exact comparison)."""
    _, ub = ctx.field.norm_sq_bounds(alpha)
    d = ctx.field.degree
    return ub ** d <= reduction_bound_sq_scaled(a, ctx)


def normalize_row(row: list[FieldElement], a: FractionalIdeal,
                  ctx: lattice.LatticeContext | None = None,
                  cache: ReducedBasisCache | None = None):
    """Rescale a pseudo-row so its coefficient ideal is integral and small.

    Returns (new_row, new_ideal, scalar) with new_ideal = scalar * a integral
    of norm at most l^(d^2) sqrt|disc|, new_row = row / scalar, and the
    products a*row_t = new_ideal*new_row_t unchanged.
    """
    field = a.field
    if ctx is None:
        ctx = field.lattice_context
    if cache is None:
        cache = field.basis_cache
    k = a.den
    numerator = FractionalIdeal(field, [list(r) for r in a.num], 1)
    binv = numerator.inverse()
    l = binv.den
    c_ideal = FractionalIdeal(field, [list(r) for r in binv.num], 1)
    alpha = field.element(cache.reduced_basis(c_ideal)[0])
    scalar = field.scalar_mul(k, field.scalar_div(alpha, l))
    new_ideal = numerator.elt_mul(field.scalar_div(alpha, l))
    if not new_ideal.is_integral():
        raise IdealError("internal error: normalized ideal is not integral")
    nrm = new_ideal.norm()
    if nrm * nrm > ctx.norm_bound_sq():
        raise lattice.QualityError("normalized ideal misses its norm bound")
    inv_scalar = field.inv(scalar)
    new_row = [field.mul(entry, inv_scalar) if entry else entry for entry in row]
    return new_row, new_ideal, scalar
