"""Euclidean step, modular pseudo-Hermite form, canonicalization, absolutes."""

from fractions import Fraction

import pytest

from okmod import (FractionalIdeal, PseudoMatrix, canonicalize,
                   determinantal_ideal, determinantal_ideal_multiple,
                   euclidean_step, module_hnf, pseudo_hnf, to_absolute)
from okmod.ideals import IdealError
from okmod.zlinalg import RankDeficiencyError, hnf

from conftest import get_field, random_element, random_ideal, seeded

rng = seeded("test_pseudo_hnf")


def random_pseudo(field, n, m, lim=9, with_ideals=True):
    u = FractionalIdeal.unit(field)
    rows = [[field.element([rng.randint(-lim, lim) for _ in range(field.degree)])
             for _ in range(m)] for _ in range(n)]
    ideals = [random_ideal(rng, field) if with_ideals and rng.random() < 0.5 else u
              for _ in range(n)]
    return PseudoMatrix(field, rows, ideals)


# -- euclidean step ---------------------------------------------------------


def test_euclidean_step_integers():
    Q = get_field("Q")
    u = FractionalIdeal.unit(Q)
    g, ginv, gamma, delta = euclidean_step(u, u, Q.from_int(4), Q.from_int(6))
    assert g == FractionalIdeal.from_rational(Q, 2)
    assert (g * ginv).is_unit()
    assert (u * ginv).contains(gamma) and (u * ginv).contains(delta)
    assert Q.from_int(4) * gamma + Q.from_int(6) * delta == Q.one()


def test_euclidean_step_units():
    K = get_field("Qi")
    u = FractionalIdeal.unit(K)
    g, ginv, gamma, delta = euclidean_step(u, u, K.one(), K.one())
    assert g.is_unit()
    assert gamma + delta == K.one()
    assert u.contains(gamma) and u.contains(delta)


def test_euclidean_step_coprime_gaussians():
    K = get_field("Qi")
    u = FractionalIdeal.unit(K)
    a, b = K.element([2, 1]), K.element([2, -1])
    g, ginv, gamma, delta = euclidean_step(u, u, a, b)
    assert g.is_unit()
    assert a * gamma + b * delta == K.one()
    assert u.contains(gamma) and u.contains(delta)


def test_euclidean_step_rejects_zero():
    K = get_field("Qi")
    u = FractionalIdeal.unit(K)
    with pytest.raises(ValueError):
        euclidean_step(u, u, K.zero(), K.one())


def test_euclidean_step_contract_random(field):
    for _ in range(10):
        a = random_ideal(rng, field, fractional=True)
        b = random_ideal(rng, field, fractional=True)
        x = random_element(rng, field, max_den=3)
        y = random_element(rng, field, max_den=3)
        g, ginv, gamma, delta = euclidean_step(a, b, x, y)
        assert g == a.elt_mul(x) + b.elt_mul(y)
        assert (g * ginv).is_unit()
        assert (a * ginv).contains(gamma)
        assert (b * ginv).contains(delta)
        assert x * gamma + y * delta == field.one()


# -- pseudo-HNF -------------------------------------------------------------


def test_identity_fixed_point(field):
    u = FractionalIdeal.unit(field)
    m = 3
    rows = [[field.one() if i == j else field.zero() for j in range(m)] for i in range(m)]
    pm = PseudoMatrix(field, rows, [u] * m)
    out = pseudo_hnf(pm, FractionalIdeal.unit(field), verify=True)
    assert module_hnf(out) == module_hnf(pm)
    for r in range(m):
        assert out.rows[r][r] == field.one()


def test_d1_three_row_example():
    Q = get_field("Q")
    u = FractionalIdeal.unit(Q)
    rows = [[Q.from_int(2), Q.zero()], [Q.zero(), Q.from_int(2)], [Q.one(), Q.one()]]
    pm = PseudoMatrix(Q, rows, [u] * 3)
    out = pseudo_hnf(pm, FractionalIdeal.from_rational(Q, 2), verify=True)
    assert module_hnf(out) == hnf([[2, 0], [1, 1]])


def test_gaussian_three_row_example():
    K = get_field("Qi")
    u = FractionalIdeal.unit(K)
    one, i = K.one(), K.element([0, 1])
    rows = [[one + i, K.zero()], [K.zero(), one + i], [one, one]]
    pm = PseudoMatrix(K, rows, [u] * 3)
    dd = determinantal_ideal_multiple(pm)
    out = pseudo_hnf(pm, dd, verify=True)
    assert module_hnf(out) == module_hnf(pm)
    assert out.rows[0][0] == K.one() and out.rows[1][1] == K.one()


def test_master_oracle(field):
    done = 0
    while done < 8:
        n = rng.randint(2, 6)
        m = rng.randint(1, min(4, n))
        pm = random_pseudo(field, n, m)
        try:
            dd = determinantal_ideal_multiple(pm)
        except RankDeficiencyError:
            continue
        out = pseudo_hnf(pm, dd, verify=True)
        assert module_hnf(pm) == module_hnf(out)
        for r in range(m):
            assert out.rows[r][r] == field.one()
            assert all(not out.rows[r][t] for t in range(r + 1, m))
        for r in range(m, n):
            assert all(not x for x in out.rows[r])
        done += 1


def test_determinantal_ideal_preserved(field):
    done = 0
    while done < 5:
        n = m = rng.randint(2, 3)
        pm = random_pseudo(field, n, m)
        try:
            exact = determinantal_ideal(pm)
        except Exception:
            continue
        out = pseudo_hnf(pm, exact, verify=True)
        top = PseudoMatrix(field, out.rows[:m], out.ideals[:m])
        assert determinantal_ideal(top) == exact
        done += 1


def test_coefficient_ideal_norm_bound(field):
    # runtime trace: active ideal minima stay below the static bound
    ctx = field.lattice_context
    from okmod.numeric import frac_sqrt_ub
    bound = frac_sqrt_ub(ctx.norm_bound_sq())
    done = 0
    while done < 4:
        pm = random_pseudo(field, 4, 3)
        try:
            dd = determinantal_ideal_multiple(pm)
        except RankDeficiencyError:
            continue
        trace = []
        pseudo_hnf(pm, dd, verify=True, trace=trace)
        assert trace
        for mx in trace:
            assert Fraction(mx) <= bound
        done += 1


def test_denominator_bound(field):
    # while a row's ideal is integral every entry denominator divides its minimum
    done = 0
    while done < 5:
        pm = random_pseudo(field, 3, 2)
        try:
            dd = determinantal_ideal_multiple(pm)
        except RankDeficiencyError:
            continue
        out = pseudo_hnf(pm, dd)
        for row, a in zip(out.rows, out.ideals):
            assert a.is_integral()
            for e in row:
                if e:
                    assert a.minimum() % e.den == 0
        done += 1


def test_any_determinantal_multiple_works(field):
    # the modulus only needs to be a nonzero multiple of the determinantal
    # ideal; an inflated one must give the same module
    done = 0
    while done < 3:
        pm = random_pseudo(field, 3, 2)
        try:
            dd = determinantal_ideal_multiple(pm)
        except RankDeficiencyError:
            continue
        inflated = dd * FractionalIdeal.from_rational(field, 6)
        out = pseudo_hnf(pm, inflated, verify=True)
        assert module_hnf(pm) == module_hnf(out)
        done += 1


def test_rank_deficiency_detected():
    Q = get_field("Q")
    u = FractionalIdeal.unit(Q)
    rows = [[Q.one(), Q.one()], [Q.one(), Q.one()], [Q.from_int(2), Q.from_int(2)]]
    pm = PseudoMatrix(Q, rows, [u] * 3)
    with pytest.raises(RankDeficiencyError):
        determinantal_ideal_multiple(pm)


# -- canonical form ---------------------------------------------------------


def test_canonicalize_d1_reduction():
    Q = get_field("Q")
    two = FractionalIdeal.from_rational(Q, 2)
    u = FractionalIdeal.unit(Q)
    pm = PseudoMatrix(Q, [[Q.one(), Q.zero()], [Q.from_int(3), Q.one()]], [two, u])
    out = canonicalize(pm)
    assert out.rows[1][0] == Q.one()  # 3 reduced mod (2) into [0, 2)
    assert module_hnf(out) == module_hnf(pm)


def test_canonicalize_fixed_point(field):
    done = 0
    while done < 3:
        pm = random_pseudo(field, 3, 3)
        try:
            dd = determinantal_ideal_multiple(pm)
        except RankDeficiencyError:
            continue
        out = canonicalize(pseudo_hnf(pm, dd))
        again = canonicalize(out)
        assert out.rows == again.rows and out.ideals == again.ideals
        done += 1


def test_canonicalize_unique_across_row_orders(field):
    done = 0
    while done < 4:
        n, m = 4, 2
        pm = random_pseudo(field, n, m)
        perm = list(range(n))
        rng.shuffle(perm)
        pm2 = PseudoMatrix(field, [pm.rows[p] for p in perm],
                           [pm.ideals[p] for p in perm])
        try:
            c1 = canonicalize(pseudo_hnf(pm, determinantal_ideal_multiple(pm)))
            c2 = canonicalize(pseudo_hnf(pm2, determinantal_ideal_multiple(pm2)))
        except RankDeficiencyError:
            continue
        assert c1.rows[:m] == c2.rows[:m]
        assert c1.ideals[:m] == c2.ideals[:m]
        done += 1


def test_canonicalize_requires_hermite_shape():
    Q = get_field("Q")
    u = FractionalIdeal.unit(Q)
    pm = PseudoMatrix(Q, [[Q.from_int(2)]], [u])
    with pytest.raises(ValueError):
        canonicalize(pm)


# -- absolute form ----------------------------------------------------------


def test_to_absolute_examples():
    K = get_field("Qi")
    u = FractionalIdeal.unit(K)
    pm = PseudoMatrix(K, [[K.one()]], [u])
    assert to_absolute(pm) == [[1, 0], [0, 1]]
    onepi = FractionalIdeal.from_generators(K, [K.element([1, 1])])
    pm = PseudoMatrix(K, [[K.one()]], [onepi])
    assert hnf(to_absolute(pm)) == hnf([[1, 1], [-1, 1]])


def test_to_absolute_rejects_fractional_module():
    K = get_field("Qi")
    u = FractionalIdeal.unit(K)
    pm = PseudoMatrix(K, [[K.element([1, 0], 2)]], [u])
    with pytest.raises(IdealError):
        to_absolute(pm)


def test_absolute_invariant_under_valid_forms(field):
    done = 0
    while done < 3:
        pm = random_pseudo(field, 3, 2)
        try:
            dd = determinantal_ideal_multiple(pm)
        except RankDeficiencyError:
            continue
        out = pseudo_hnf(pm, dd)
        can = canonicalize(out)
        assert module_hnf(pm) == module_hnf(out) == module_hnf(can)
        done += 1
