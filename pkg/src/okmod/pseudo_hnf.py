"""Pseudo-Hermite normal form of full-rank modules over a ring of integers.

A pseudo-matrix (A, (a_i)) encodes the module sum of a_i * row_i.  The
modular elimination below triangularizes it with unit diagonal while keeping
every working coefficient ideal integral and norm-bounded by field invariants
(normalization) and every entry reduced modulo an ideal built from the
running modulus (a divisor of the supplied multiple of the determinantal
ideal).  The module itself is preserved exactly, which the tests check
through the absolute integer Hermite form.
"""

from __future__ import annotations

from fractions import Fraction

from . import determinant, reduction
from .ideals import FractionalIdeal, IdealError, idempotents
from .numberfield import FieldElement, NumberField
from .zlinalg import Mat, RankDeficiencyError, hnf


class PseudoMatrix:
    """Matrix over K with one coefficient ideal per row."""

    __slots__ = ("field", "rows", "ideals", "det_ideal")

    def __init__(self, field: NumberField, rows, ideals, det_ideal=None):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty pseudo-matrix")
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise ValueError("ragged pseudo-matrix")
        if len(ideals) != len(rows):
            raise ValueError("one coefficient ideal per row required")
        for e in (x for r in rows for x in r):
            if e.field is not field:
                raise ValueError("entry from a different field")
        for a in ideals:
            if a.field is not field:
                raise ValueError("ideal from a different field")
        self.field = field
        self.rows = rows
        self.ideals = list(ideals)
        self.det_ideal = det_ideal

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def copy(self) -> "PseudoMatrix":
        return PseudoMatrix(self.field, [r[:] for r in self.rows], list(self.ideals),
                            self.det_ideal)

    def module_in_ring_power(self) -> bool:
        """Exact test that every a_i * row_i lies inside O_K^m."""
        for row, a in zip(self.rows, self.ideals):
            basis = a.basis_elements()
            for entry in row:
                if not entry:
                    continue
                for eps in basis:
                    if (eps * entry).den != 1:
                        return False
        return True


def to_absolute(pm: PseudoMatrix) -> Mat:
    """Integer matrix whose row span is the module's image in Z^(d*m).

    Block row (i, h) holds the coordinates of (h-th basis element of a_i)
    times each entry of row i; requires the module to lie inside O_K^m.
    """
    out: Mat = []
    for row, a in zip(pm.rows, pm.ideals):
        for eps in a.basis_elements():
            flat: list[int] = []
            for entry in row:
                prod = eps * entry
                if prod.den != 1:
                    raise IdealError("module is not contained in O_K^m")
                flat.extend(prod.coeffs)
            out.append(flat)
    return out


def module_hnf(pm: PseudoMatrix) -> Mat:
    """Canonical integer Hermite form of the absolute module lattice."""
    return hnf(to_absolute(pm))


def diagnostic_bounds(field: NumberField, det_ideal: FractionalIdeal):
    """Diagnostic size bounds for the elimination: (ideal bound, entry bound).

    The working coefficient ideals stay below d^4 + d^2 log|disc| in size and
    the reduced entries below S(det_ideal)/d + (that)/d + C; reported by the
    measurement tooling, not enforced.
    """
    from .numeric import log2_ub
    d = field.degree
    disc = abs(field.disc)
    b_id = Fraction(d ** 4) + (d * d * log2_ub(disc) if disc > 1 else Fraction(0))
    b_e = det_ideal.size() / d + b_id / d + field.growth_constant
    return b_id, b_e


def euclidean_step(a: FractionalIdeal, b: FractionalIdeal,
                   alpha: FieldElement, beta: FieldElement):
    """Ideal gcd with splitting data: g = alpha*a + beta*b, its inverse, and
    gamma in a*g^-1, delta in b*g^-1 with alpha*gamma + beta*delta = 1."""
    if not alpha or not beta:
        raise ValueError("euclidean step requires nonzero elements")
    field = a.field
    aa = a.elt_mul(alpha)
    bb = b.elt_mul(beta)
    g = aa + bb
    ginv = g.inverse()
    gamma_t, delta_t = idempotents(aa * ginv, bb * ginv)
    gamma = field.mul(gamma_t, field.inv(alpha))
    delta = field.mul(delta_t, field.inv(beta))
    return g, ginv, gamma, delta


def _reduce_row(field, row, mod_ideal, cache):
    return [reduction.reduce_mod_ideal(e, mod_ideal, cache) if e else e for e in row]


def pseudo_hnf(pm: PseudoMatrix, det_ideal: FractionalIdeal | None = None,
               verify: bool = False, trace: list | None = None) -> PseudoMatrix:
    """Modular pseudo-Hermite normal form of a full-rank pseudo-matrix.

    ``det_ideal`` must be a nonzero multiple of the determinantal ideal of
    the module (computed from a witness minor when omitted).  The output has
    the triangular block with unit diagonal on top, integral coefficient
    ideals, and represents the same module.  With ``verify`` the working
    norm bounds are asserted; ``trace`` (a list) collects per-iteration
    records of the largest active ideal minimum for diagnostics.
    """
    field = pm.field
    n, m = pm.nrows, pm.ncols
    if n < m:
        raise RankDeficiencyError("fewer rows than columns")
    if det_ideal is None:
        det_ideal = pm.det_ideal
    if det_ideal is None:
        det_ideal = determinant.determinantal_ideal_multiple(pm)
    ctx = field.lattice_context
    cache = reduction.ReducedBasisCache(ctx)
    b = [r[:] for r in pm.rows]
    ideals = list(pm.ideals)
    bound_sq = ctx.norm_bound_sq()

    def normalize(idx: int) -> None:
        b[idx], ideals[idx], _ = reduction.normalize_row(b[idx], ideals[idx], ctx, cache)
        if verify:
            nrm = ideals[idx].norm()
            assert ideals[idx].is_integral() and nrm * nrm <= bound_sq

    def record(stage: int) -> None:
        if trace is not None:
            active = [ideals[t] for t in range(stage + 1)]
            trace.append(max(a.minimum() for a in active))

    for i in range(n):
        normalize(i)
        b[i] = _reduce_row(field, b[i], det_ideal * ideals[i].inverse(), cache)

    running = det_ideal
    for i in range(n - 1, n - m - 1, -1):
        col = i - (n - m)
        for j in range(i - 1, -1, -1):
            if not b[j][col]:
                continue
            if not b[i][col]:
                b[i], b[j] = b[j], b[i]
                ideals[i], ideals[j] = ideals[j], ideals[i]
                continue
            g, ginv, gamma, delta = euclidean_step(ideals[j], ideals[i],
                                                   b[j][col], b[i][col])
            ideals[j], ideals[i] = ideals[j] * ideals[i] * ginv, g
            piv_j, piv_i = b[j][col], b[i][col]
            new_j = [piv_i * x - piv_j * y for x, y in zip(b[j], b[i])]
            new_i = [gamma * x + delta * y for x, y in zip(b[j], b[i])]
            b[j], b[i] = new_j, new_i
            normalize(j)
            normalize(i)
            b[j] = _reduce_row(field, b[j], det_ideal * ideals[j].inverse(), cache)
            b[i] = _reduce_row(field, b[i], det_ideal * ideals[i].inverse(), cache)
            record(i)
        piv = b[i][col]
        if not piv:
            # entire column segment vanished (possible when the modulus
            # absorbs the pivot class): the pivot row is carried by the
            # running modulus alone.  For rank-deficient input this path is
            # reached only with a caller-supplied det_ideal, which violates
            # the precondition.
            if any(b[j][col] for j in range(i)):
                raise RankDeficiencyError("internal error: pivot lost")
            ideals[i] = running
            b[i] = [field.zero()] * m
            b[i][col] = field.one()
            running = FractionalIdeal.unit(field)
            continue
        g, ginv, gamma, delta = euclidean_step(ideals[i], running, piv, field.one())
        new_modulus = running * ginv
        b[i] = [reduction.reduce_mod_ideal(gamma * x, new_modulus, cache) if x else x
                for x in b[i]]
        ideals[i] = g
        b[i][col] = field.one()
        running = new_modulus

    out_rows = b[n - m:] + b[:n - m]
    out_ideals = ideals[n - m:] + ideals[:n - m]
    if verify:
        for r in range(m):
            assert out_rows[r][r] == field.one()
            assert all(not out_rows[r][t] for t in range(r + 1, m))
        for r in range(m, n):
            assert all(not x for x in out_rows[r])
    return PseudoMatrix(field, out_rows, out_ideals, det_ideal=det_ideal)


def canonicalize(pm: PseudoMatrix) -> PseudoMatrix:
    """Unique representative-reduced form of a pseudo-Hermite matrix.

    Off-diagonal entries are replaced by their canonical representatives
    modulo b_r^-1 * b_j, computed against the numerator Hermite basis with
    floor rounding, so equal modules yield identical objects.
    """
    field = pm.field
    n, m = pm.nrows, pm.ncols
    for r in range(m):
        if pm.rows[r][r] != field.one() or any(pm.rows[r][t] for t in range(r + 1, m)):
            raise ValueError("input is not in pseudo-Hermite form")
    rows = [r[:] for r in pm.rows]
    for r in range(1, m):
        inv_r = pm.ideals[r].inverse()
        for j in range(r - 1, -1, -1):
            beta = rows[r][j]
            mod_ideal = inv_r * pm.ideals[j]
            basis = [list(t) for t in mod_ideal.num]
            reduced = reduction.reduce_mod_ideal(beta, mod_ideal, basis=basis,
                                                 centered=False) if beta else beta
            lam = beta - reduced if beta else None
            if lam:
                rows[r] = [x - lam * y for x, y in zip(rows[r], rows[j])]
    return PseudoMatrix(field, rows, list(pm.ideals), det_ideal=pm.det_ideal)
