"""Certified numerical support: embeddings, Gram data, rational bounds.

Approximate quantities are carried as complex balls whose centers are exact
rationals (dyadics coming out of mpmath) and whose radii are exact rational
upper bounds, so every derived inequality check reduces to an exact Fraction
comparison.  Root enclosures use the classical bound

    min_j |x - z_j| <= deg(f) * |f(x)| / |f'(x)|,

valid for any x with f'(x) != 0, which makes the disks rigorous; pairwise
disjointness then pins one root per disk.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath as mp
from mpmath.libmp import to_rational

Complex = tuple[Fraction, Fraction]


def mpf_to_fraction(x) -> Fraction:
    p, q = to_rational(mp.mpf(x)._mpf_)
    return Fraction(int(p), int(q))


def frac_up(x: Fraction, bits: int = 64) -> Fraction:
    """Smallest dyadic with a ``bits``-bit mantissa that is >= x (x >= 0)."""
    if x <= 0:
        return Fraction(0)
    shift = bits - (x.numerator.bit_length() - x.denominator.bit_length())
    if shift >= 0:
        num = -((-x.numerator << shift) // x.denominator)
        return Fraction(num, 1 << shift)
    num = -(-x.numerator // (x.denominator << -shift))
    return Fraction(num << -shift)


def isqrt_up(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def frac_sqrt_ub(x: Fraction, bits: int = 64) -> Fraction:
    """Rational upper bound on sqrt(x), exact when x is a perfect square."""
    if x < 0:
        raise ValueError("negative argument")
    if x == 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    n = x.numerator * x.denominator * scale
    return Fraction(isqrt_up(n), x.denominator << bits)


def frac_sqrt_lb(x: Fraction, bits: int = 64) -> Fraction:
    if x <= 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    n = x.numerator * x.denominator * scale
    return Fraction(isqrt(n), x.denominator << bits)


def iroot_floor(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0:
        raise ValueError("negative argument")
    if n == 0 or k == 1:
        return n
    r = 1 << (-(-n.bit_length() // k))
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r ** k > n:
        r -= 1
    return r


def frac_nth_root_ub(x: Fraction, k: int, bits: int = 64) -> Fraction:
    """Rational upper bound on x**(1/k) for x >= 0."""
    if x < 0:
        raise ValueError("negative argument")
    if x == 0:
        return Fraction(0)
    if k == 1:
        return x
    scale = 1 << (k * bits)
    n = x.numerator * x.denominator ** (k - 1) * scale
    r = iroot_floor(n, k)
    if r ** k < n:
        r += 1
    return Fraction(r, x.denominator << bits)


def log2_ub(x: Fraction | int, fbits: int = 16) -> Fraction:
    """Dyadic upper bound on log2(x) for x > 0, with fbits fractional bits."""
    m = Fraction(x)
    if m <= 0:
        raise ValueError("log of non-positive value")
    e = m.numerator.bit_length() - m.denominator.bit_length()
    m = m / Fraction(2) ** e
    while m >= 2:
        m /= 2
        e += 1
    while m < 1:
        m *= 2
        e -= 1
    frac_acc = 0
    for _ in range(fbits):
        m = frac_up(m * m, 96)  # rounding up keeps the estimate an upper bound
        frac_acc <<= 1
        if m >= 2:
            frac_acc += 1
            m /= 2
    return Fraction(e) + Fraction(frac_acc + 1, 1 << fbits)


# ---------------------------------------------------------------------------
# Exact-rational complex balls


class Ball:
    """Complex ball with exact rational center and exact rational radius bound."""

    __slots__ = ("re", "im", "r")

    def __init__(self, re: Fraction, im: Fraction = Fraction(0), r: Fraction = Fraction(0)):
        self.re = Fraction(re)
        self.im = Fraction(im)
        self.r = Fraction(r)

    def __add__(self, other: "Ball") -> "Ball":
        return Ball(self.re + other.re, self.im + other.im, frac_up(self.r + other.r))

    def __sub__(self, other: "Ball") -> "Ball":
        return Ball(self.re - other.re, self.im - other.im, frac_up(self.r + other.r))

    def __mul__(self, other: "Ball") -> "Ball":
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        r = self.abs_ub() * other.r + other.abs_ub() * self.r + self.r * other.r
        return Ball(re, im, frac_up(r))

    def conj(self) -> "Ball":
        return Ball(self.re, -self.im, self.r)

    def abs_sq_center(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def abs_ub(self) -> Fraction:
        return frac_sqrt_ub(self.abs_sq_center()) + self.r

    def abs_lb(self) -> Fraction:
        v = frac_sqrt_lb(self.abs_sq_center()) - self.r
        return v if v > 0 else Fraction(0)

    def abs_sq_ub(self) -> Fraction:
        u = self.abs_ub()
        return u * u

    def abs_sq_lb(self) -> Fraction:
        l = self.abs_lb()
        return l * l

    def real_bounds(self) -> tuple[Fraction, Fraction]:
        """Enclosure of the real part when the true value is known to be real."""
        slack = self.r + abs(self.im)
        return self.re - slack, self.re + slack


def _poly_eval_complex(coeffs: list[Fraction], z: Complex) -> Complex:
    """Horner evaluation at an exact complex rational point."""
    re, im = Fraction(0), Fraction(0)
    zr, zi = z
    for c in reversed(coeffs):
        re, im = re * zr - im * zi + c, re * zi + im * zr
    return re, im


def _abs_sq(z: Complex) -> Fraction:
    return z[0] * z[0] + z[1] * z[1]


def certified_roots(int_coeffs: list[int], prec: int) -> list[Ball] | None:
    """Disjoint certified root enclosures of a squarefree integer polynomial.

    ``int_coeffs`` is little-endian (constant first) with nonzero leading
    coefficient.  Returns None when the requested precision was insufficient
    to separate the disks; the caller doubles the precision and retries.
    """
    deg = len(int_coeffs) - 1
    if deg == 0:
        return []
    if deg == 1:
        z = Fraction(-int_coeffs[0], int_coeffs[1])
        return [Ball(z, Fraction(0), Fraction(0))]
    with mp.workprec(prec):
        try:
            rts = mp.polyroots([mp.mpf(c) for c in reversed(int_coeffs)],
                               maxsteps=100 + prec, extraprec=prec)
        except mp.libmp.NoConvergence:
            return None
        centers: list[Complex] = []
        for z in rts:
            zc = mp.mpc(z)
            centers.append((mpf_to_fraction(zc.real), mpf_to_fraction(zc.imag)))
    f = [Fraction(c) for c in int_coeffs]
    fp = [Fraction(i * c) for i, c in enumerate(int_coeffs)][1:]
    balls = []
    for z in centers:
        fz = _abs_sq(_poly_eval_complex(f, z))
        fpz = _abs_sq(_poly_eval_complex(fp, z))
        if fpz == 0:
            return None
        r = Fraction(deg) * frac_sqrt_ub(fz) / frac_sqrt_lb(fpz)
        balls.append(Ball(z[0], z[1], frac_up(r)))
    for i in range(deg):
        for j in range(i + 1, deg):
            dist_sq = (balls[i].re - balls[j].re) ** 2 + (balls[i].im - balls[j].im) ** 2
            rad = balls[i].r + balls[j].r
            if dist_sq <= rad * rad * 4:
                return None
    return balls


def eval_at_root(power_coeffs: list[Fraction], root: Ball) -> Ball:
    """Ball for p(z) over the true root enclosed by ``root``.

    The center is the exact evaluation at the disk center; the radius adds the
    root radius scaled by a derivative bound over the disk.
    """
    z = (root.re, root.im)
    val = _poly_eval_complex(power_coeffs, z)
    if root.r == 0:
        return Ball(val[0], val[1], Fraction(0))
    zub = frac_sqrt_ub(_abs_sq(z)) + root.r
    deriv_bound = Fraction(0)
    pw = Fraction(1)  # zub ** (i - 1)
    for i, c in enumerate(power_coeffs):
        if i >= 1:
            deriv_bound += Fraction(i) * abs(c) * pw
            pw *= zub
    return Ball(val[0], val[1], frac_up(root.r * deriv_bound))
