"""Determinants over rings of integers by the small-prime CRT method.

The determinant of an integral matrix is computed in every residue field of
enough unramified primes, recombined by the two-stage Chinese remainder
construction and lifted symmetrically; the prime budget comes from a proven
coefficient bound, so the lift is exact.  Rectangular rank probing reuses the
same plans to find a witness nonsingular submatrix.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import residues
from .ideals import FractionalIdeal
from .numberfield import FieldElement, NumberField
from .numeric import frac_sqrt_ub, log2_ub
from .residues import Poly, poly_inverse_mod, poly_mod, poly_mul, poly_sub
from .zlinalg import SingularMatrixError, RankDeficiencyError


def entry_height(rows: list[list[FieldElement]]) -> int:
    """Max absolute coefficient over all (integral) entries; at least 1."""
    h = 1
    for row in rows:
        for e in row:
            for c in e.coeffs:
                if abs(c) > h:
                    h = abs(c)
    return h


def det_bound(field: NumberField, n: int, height: int) -> Fraction:
    """log2 of twice the coefficient bound for det of an n x n integral matrix.

    Both orders of the conversion constants are covered, which only costs a
    few extra primes.
    """
    c1 = frac_sqrt_ub(field.embed_bound_sq)
    c2 = field.coeff_bound
    base = max(c1 * c2 ** n, c2 * c1 ** n)
    bound = 2 * Fraction(n) ** n * base * Fraction(height) ** n
    return log2_ub(max(bound, Fraction(2)))


def _gauss_det(mat: list[list[Poly]], g: Poly, p: int) -> Poly:
    n = len(mat)
    sign = 1
    det: Poly = (1,)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col]), None)
        if piv is None:
            return ()
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            sign = -sign
        pivot = mat[col][col]
        det = poly_mod(poly_mul(det, pivot, p), g, p)
        inv = poly_inverse_mod(pivot, g, p)
        for r in range(col + 1, n):
            if mat[r][col]:
                f = poly_mod(poly_mul(mat[r][col], inv, p), g, p)
                mat[r] = [poly_sub(x, poly_mod(poly_mul(f, y, p), g, p), p)
                          for x, y in zip(mat[r], mat[col])]
    if sign < 0:
        det = tuple((-x) % p for x in det)
    return det


def det(field: NumberField, rows: list[list[FieldElement]]) -> FieldElement:
    """Exact determinant of a square matrix with integral entries."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix not square")
    if any(e.den != 1 for r in rows for e in r):
        raise ValueError("determinant requires integral entries")
    plan = residues.plan_primes(field, det_bound(field, n, entry_height(rows)))
    per_prime = []
    for p in plan.primes:
        sys = field.residue_system(p)
        proj = [[residues.project_element(e, sys) for e in row] for row in rows]
        vals = []
        for fi, g in enumerate(sys.factors):
            mat = [[proj[i][j][fi] for j in range(n)] for i in range(n)]
            vals.append(_gauss_det(mat, g, p))
        per_prime.append(residues.crt_combine_factors(vals, sys))
    coeffs = residues.crt_combine_primes(per_prime, plan, field.degree)
    return residues.lift_to_field(coeffs, field, plan.modulus)


def _echelon_pivots(mat: list[list[Poly]], g: Poly, p: int) -> tuple[list[int], list[int]]:
    """Pivot (row, column) indices of a greedy echelonization, original indices."""
    n, m = len(mat), len(mat[0])
    work = [row[:] for row in mat]
    alive = list(range(n))
    rows_out: list[int] = []
    cols_out: list[int] = []
    for col in range(m):
        hit = None
        for idx, orig in enumerate(alive):
            if work[idx][col]:
                hit = idx
                break
        if hit is None:
            continue
        rows_out.append(alive[hit])
        cols_out.append(col)
        pivot_row = work.pop(hit)
        alive.pop(hit)
        inv = poly_inverse_mod(pivot_row[col], g, p)
        for idx in range(len(work)):
            if work[idx][col]:
                f = poly_mod(poly_mul(work[idx][col], inv, p), g, p)
                work[idx] = [poly_sub(x, poly_mod(poly_mul(f, y, p), g, p), p)
                             for x, y in zip(work[idx], pivot_row)]
    return rows_out, cols_out


def rank_and_submatrix(field: NumberField, rows: list[list[FieldElement]]):
    """Rank, witness row/column indices, and the witness minor's determinant.

    The rank is certified once the admissible-prime product exceeds the minor
    coefficient bound; the witness comes from the first residue field that
    achieves the maximal rank (greedy echelon pivots).  A zero matrix yields
    rank 0 with an empty witness and determinant 1 by convention.
    """
    n = len(rows)
    m = len(rows[0]) if rows else 0
    if m > n:
        raise ValueError("expected at least as many rows as columns")
    if any(e.den != 1 for r in rows for e in r):
        raise ValueError("rank probing requires integral entries")
    if all(not e for r in rows for e in r):
        return 0, (), (), field.one()
    plan = residues.plan_primes(field, det_bound(field, m, entry_height(rows)))
    best_rank = 0
    best: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())
    for p in plan.primes:
        sys = field.residue_system(p)
        proj = [[residues.project_element(e, sys) for e in row] for row in rows]
        for fi, g in enumerate(sys.factors):
            mat = [[proj[i][j][fi] for j in range(m)] for i in range(n)]
            ridx, cidx = _echelon_pivots(mat, g, p)
            if len(ridx) > best_rank:
                best_rank = len(ridx)
                best = (tuple(sorted(ridx)), tuple(sorted(cidx)))
                if best_rank == m:
                    break
        if best_rank == m:
            break
    ridx, cidx = best
    sub = [[rows[i][j] for j in cidx] for i in ridx]
    det_sub = det(field, sub) if best_rank else field.one()
    return best_rank, ridx, cidx, det_sub


def product_of_ideals(ideals: list[FractionalIdeal]) -> FractionalIdeal:
    """Balanced (divide and conquer) ideal product."""
    if not ideals:
        raise ValueError("empty ideal product")
    work = list(ideals)
    while len(work) > 1:
        nxt = []
        for i in range(0, len(work) - 1, 2):
            nxt.append(work[i] * work[i + 1])
        if len(work) % 2:
            nxt.append(work[-1])
        work = nxt
    return work[0]


def _scale_rows_integral(rows: list[list[FieldElement]]):
    scaled = []
    dens = []
    for row in rows:
        den = 1
        for e in row:
            den = den * e.den // gcd(den, e.den)
        scaled.append([e * den for e in row])
        dens.append(den)
    return scaled, dens


def determinantal_ideal(pm) -> FractionalIdeal:
    """det(A) times the product of the coefficient ideals, for square A."""
    field = pm.field
    n = len(pm.rows)
    if any(len(r) != n for r in pm.rows):
        raise ValueError("determinantal ideal of a non-square pseudo-matrix")
    scaled, dens = _scale_rows_integral(pm.rows)
    dt = det(field, scaled)
    if not dt:
        raise SingularMatrixError("pseudo-matrix is singular")
    den_prod = 1
    for x in dens:
        den_prod *= x
    elt = field.scalar_div(dt, den_prod)
    return product_of_ideals(list(pm.ideals)).elt_mul(elt)


def determinantal_ideal_multiple(pm) -> FractionalIdeal:
    """A multiple of the determinantal ideal of a full-column-rank pseudo-matrix.

    One witness minor's determinantal ideal: divisible by the gcd of all of
    them, which is all a modular normal-form pass needs.
    """
    field = pm.field
    n = len(pm.rows)
    m = len(pm.rows[0])
    scaled, dens = _scale_rows_integral(pm.rows)
    s, ridx, cidx, det_sub = rank_and_submatrix(field, scaled)
    if s < m:
        raise RankDeficiencyError(f"pseudo-matrix has rank {s} < {m}")
    den_prod = 1
    for i in ridx:
        den_prod *= dens[i]
    elt = field.scalar_div(det_sub, den_prod)
    return product_of_ideals([pm.ideals[i] for i in ridx]).elt_mul(elt)
