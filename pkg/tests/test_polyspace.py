from math import comb

import pytest

from gridwlp import (
    BIGRADED,
    SeedStream,
    TOTAL3,
    TOTAL4,
    diff_action,
    graded_basis,
    linear_form,
    linear_power,
    partials_at_point,
    poly_mul,
)
from gridwlp.linalg import rank
from gridwlp.polyspace import (
    GradingMismatchError,
    basis_size,
    poly_from_terms,
    zero_poly,
)
from gridwlp.ideals import contraction_matrix


def test_basis_sizes():
    assert len(graded_basis(TOTAL4, 2)) == 10  # C(5,3)
    assert len(graded_basis(TOTAL3, 5)) == 21  # C(7,2)
    assert len(graded_basis(BIGRADED, (1, 1))) == 4
    assert basis_size(TOTAL4, 7) == comb(10, 3)


def test_basis_order_deterministic_and_graded_lex():
    basis = graded_basis(TOTAL4, 2)
    assert basis[0] == (2, 0, 0, 0)
    assert basis[1] == (1, 1, 0, 0)
    assert basis[-1] == (0, 0, 0, 2)
    assert basis == graded_basis(TOTAL4, 2)


def test_poly_mul_square_of_linear(fp):
    ell = linear_form((1, 1, 0, 0), fp)
    sq = poly_mul(ell, ell)
    assert sq.coeff_of((2, 0, 0, 0)) == 1
    assert sq.coeff_of((1, 1, 0, 0)) == 2
    assert sq.coeff_of((0, 2, 0, 0)) == 1
    assert sq.coeff_of((0, 0, 2, 0)) == 0


def test_poly_mul_identity_and_quadric(fp):
    one = poly_from_terms(TOTAL4, 0, {(0, 0, 0, 0): 1}, fp)
    f = poly_from_terms(TOTAL4, 2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): fp.neg(1)}, fp)
    assert list(poly_mul(f, one).coeffs) == list(f.coeffs)
    x1 = linear_form((1, 0, 0, 0), fp)
    prod = poly_mul(f, x1)
    assert prod.coeff_of((2, 0, 0, 1)) == 1
    assert prod.coeff_of((1, 1, 1, 0)) == fp.neg(1)


def test_poly_mul_grading_mismatch(fp):
    f = linear_form((1, 0, 0, 0), fp)
    g = linear_form((1, 0, 0), fp, TOTAL3)
    with pytest.raises(GradingMismatchError):
        poly_mul(f, g)


def test_linear_power_examples(fp):
    cube = linear_power((1, 0, 0, 0), 3, fp)
    assert cube.coeff_of((3, 0, 0, 0)) == 1
    assert sum(1 for c in cube.coeffs if c != 0) == 1
    sq = linear_power((1, 1, 0, 0), 2, fp)
    assert sq.coeff_of((1, 1, 0, 0)) == 2


def test_linear_power_multinomial_coefficients(fp):
    s = SeedStream(2)
    alpha = tuple(s.scalar(fp) for _ in range(4))
    d = 4
    p = linear_power(alpha, d, fp)
    from math import factorial

    for mono, c in p.terms():
        expected = factorial(d)
        for e in mono:
            expected //= factorial(e)
        for a, e in zip(alpha, mono):
            expected = expected * pow(a, e, fp.p)
        assert c == expected % fp.p


def test_linear_power_matches_iterated_mul(fp):
    s = SeedStream(3)
    coeffs = tuple(s.scalar(fp) for _ in range(4))
    ell = linear_form(coeffs, fp)
    prod = ell
    for _ in range(3):
        prod = poly_mul(prod, ell)
    assert list(prod.coeffs) == list(linear_power(coeffs, 4, fp).coeffs)


def test_diff_simple_derivative(fp):
    x1sq = poly_from_terms(TOTAL4, 2, {(2, 0, 0, 0): 1}, fp)
    x1 = linear_form((1, 0, 0, 0), fp)
    out = diff_action(x1sq, x1)
    assert out.coeff_of((1, 0, 0, 0)) == 2


def test_diff_detects_points_on_quadric(fp, grid33):
    # applying the square of a dual form to the quadric gives 0 exactly for
    # points on the quadric
    q = grid33.quadric()
    on = grid33.dual_form_coeffs(0, 0)
    off = (1, 0, 0, 0)  # not on x1*x4 - x2*x3?  (1,0,0,0): Q = 0 -> on it!
    off = (1, 1, 1, 1)  # Q = 1*1 - 1*1 = 0 too; use (1,2,3,4): 4 - 6 = -2
    off = (1, 2, 3, 4)
    assert diff_action(q, linear_power(on, 2, fp)).is_zero()
    assert not diff_action(q, linear_power(off, 2, fp)).is_zero()


def test_diff_operators_compose(fp):
    s = SeedStream(17)
    f = zero_poly(TOTAL4, 3, fp)
    for i in range(len(f.coeffs)):
        f.coeffs[i] = s.scalar(fp)
    g = linear_form(tuple(s.scalar(fp) for _ in range(4)), fp)
    h = linear_form(tuple(s.scalar(fp) for _ in range(4)), fp)
    lhs = diff_action(f, poly_mul(g, h))
    rhs = diff_action(diff_action(f, g), h)
    assert list(lhs.coeffs) == list(rhs.coeffs)


def test_diff_degree_guard(fp):
    q = poly_from_terms(TOTAL4, 2, {(1, 0, 0, 1): 1}, fp)
    cubic = poly_from_terms(TOTAL4, 3, {(3, 0, 0, 0): 1}, fp)
    with pytest.raises(GradingMismatchError):
        diff_action(q, cubic)


def _naive_partial(poly, point, beta, fp):
    # independent oracle: direct term-by-term differentiation
    total = 0
    for mono, c in poly.terms():
        scal = int(c)
        ok = True
        for e, b in zip(mono, beta):
            if e < b:
                ok = False
                break
            for i in range(b):
                scal *= e - i
        if not ok:
            continue
        for x, e, b in zip(point, mono, beta):
            scal *= pow(int(x), e - b, fp.p)
        total += scal
    return total % fp.p


def test_partials_at_point_against_naive_oracle(fp, grid33):
    q = grid33.quadric()
    # P = (1,0,0,0) lies on the quadric; order-2 chart partials are the value
    # plus the three affine gradient entries
    vals = partials_at_point(q, (1, 0, 0, 0), 2)
    assert vals == [0, 0, 0, 1]
    betas = [(0, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    naive = [_naive_partial(q, (1, 0, 0, 0), b, fp) for b in betas]
    assert vals == naive


def test_partials_counts(fp, grid33):
    q = grid33.quadric()
    for m in (1, 2, 3):
        vals = partials_at_point(q, (1, 2, 3, 4), m)
        assert len(vals) == comb(m + 2, 3)
    assert partials_at_point(q, grid33.point(1, 2), 1) == [0]


def test_contraction_full_rank_for_quadric_powers(fp, grid33):
    # the pairing against Q^t is perfect in complementary degree t
    q = grid33.quadric()
    qt = q
    for t in (1, 2, 3):
        mat = contraction_matrix(qt, t)
        assert rank(mat, fp) == mat.shape[1]
        qt = poly_mul(qt, q)
