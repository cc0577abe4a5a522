import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import DIAG_TWO, LAGARIAS_WANG, THREE_I, TWIN_DRAGON, TWO, random_matrix
from radixz import _poly
from radixz.errors import DegenerateMatrixError, SingularMatrixError
from radixz.linalg import (
    IntMatrix,
    RatMatrix,
    charpoly,
    det,
    dilation_report,
    inverse,
    mu_exceeds,
    positive_definite,
    sigma_bounds,
    smith_normal_form,
    spectral_cert,
    sqrt_lower,
    sqrt_upper,
    verify_dilation,
)


def matmul(X, Y):
    return [[sum(a * b for a, b in zip(r, c)) for c in zip(*Y)] for r in X]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


# --- construction -----------------------------------------------------------


def test_rejects_empty_nonsquare_and_singular():
    with pytest.raises(DegenerateMatrixError):
        IntMatrix([])
    with pytest.raises(DegenerateMatrixError):
        IntMatrix([[1, 2]])
    with pytest.raises(SingularMatrixError):
        IntMatrix([[1, 2], [2, 4]])


def test_decimal_strings_and_big_integers():
    big = 10**40 + 7
    A = IntMatrix([["2", 0], [0, big]])
    assert A.det == 2 * big


# --- det / inverse ----------------------------------------------------------


@pytest.mark.parametrize(
    "rows, expected",
    [(TWIN_DRAGON.rows, 2), (identity(2), 1), (LAGARIAS_WANG.rows, 2), ([[0, 2], [-2, 0]], 4)],
)
def test_det_examples(rows, expected):
    assert det(rows) == expected


def test_det_matches_sympy():
    rng = random.Random(7)
    for _ in range(60):
        rows = random_matrix(rng, rng.randint(1, 5), -9, 9)
        assert det(rows) == sympy.Matrix(rows).det()


def test_inverse_examples():
    assert inverse([[2]]).rows == ((Fraction(1, 2),),)
    h = Fraction(1, 2)
    assert inverse(TWIN_DRAGON).rows == ((h, -h), (h, h))
    assert inverse([[0, 2], [-2, 0]]).rows == ((0, -h), (h, 0))


def test_inverse_is_exact():
    rng = random.Random(11)
    for _ in range(40):
        rows = random_matrix(rng, rng.randint(1, 4))
        if det(rows) == 0:
            continue
        Ainv = inverse(rows)
        assert matmul(rows, Ainv.rows) == identity(len(rows))
        assert matmul(Ainv.rows, rows) == identity(len(rows))


def test_inverse_of_singular():
    with pytest.raises(SingularMatrixError):
        inverse([[1, 1], [1, 1]])


def test_matrix_products_and_powers():
    assert (TWIN_DRAGON ** 2).rows == ((0, 2), (-2, 0))
    assert (TWIN_DRAGON ** 3).gram() == ((8, 0), (0, 8))
    assert (TWIN_DRAGON @ TWIN_DRAGON.transpose()).rows == ((2, 0), (0, 2))
    assert TWIN_DRAGON.is_normal() and not LAGARIAS_WANG.is_normal()
    assert isinstance(TWIN_DRAGON.inverse, RatMatrix)


# --- Smith normal form ------------------------------------------------------


@pytest.mark.parametrize(
    "rows, diag",
    [([[2]], (2,)), (TWIN_DRAGON.rows, (1, 2)), (DIAG_TWO.rows, (2, 2)), (LAGARIAS_WANG.rows, (1, 1, 1, 2))],
)
def test_snf_examples(rows, diag):
    assert smith_normal_form(rows).diag == diag


def check_snf(rows):
    snf = smith_normal_form(rows)
    n = len(rows)
    D = [[snf.diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    assert matmul(matmul(snf.U, rows), snf.V) == D
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
    assert all(s > 0 for s in snf.diag)
    assert all(snf.diag[i + 1] % snf.diag[i] == 0 for i in range(n - 1))
    prod = 1
    for s in snf.diag:
        prod *= s
    assert prod == abs(det(rows))
    return snf


def test_snf_invariants_against_sympy():
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    rng = random.Random(3)
    done = 0
    while done < 40:
        rows = random_matrix(rng, rng.randint(1, 4), -8, 8)
        if det(rows) == 0:
            continue
        snf = check_snf(rows)
        ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
        assert tuple(abs(int(ref[i, i])) for i in range(len(rows))) == snf.diag
        done += 1


# --- characteristic polynomial and dilation test ----------------------------


def test_charpoly_matches_sympy():
    rng = random.Random(5)
    x = sympy.Symbol("x")
    for _ in range(30):
        rows = random_matrix(rng, rng.randint(1, 5))
        ref = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x).all_coeffs()[::-1]
        assert charpoly(rows) == [int(c) for c in ref]


@pytest.mark.parametrize(
    "rows, expected",
    [([[2]], True), (TWIN_DRAGON.rows, True), (identity(2), False), ([[2, -2], [-1, 2]], False),
     (LAGARIAS_WANG.rows, True), ([[-2]], True), (DIAG_TWO.rows, True)],
)
def test_verify_dilation_examples(rows, expected):
    assert verify_dilation(rows) is expected


def test_boundary_roots_are_flagged():
    assert dilation_report(identity(2)).boundary_root
    assert dilation_report([[0, -1], [1, 0]]).boundary_root  # rotation, eigenvalues ±i
    assert dilation_report([[2, 0], [0, -1]]).boundary_root
    rep = dilation_report([[2, -2], [-1, 2]])
    assert not rep.is_dilation and not rep.boundary_root


def test_verify_dilation_matches_eigenvalue_oracle():
    rng = random.Random(2024)
    checked = 0
    while checked < 100:
        rows = random_matrix(rng, rng.randint(1, 4))
        if det(rows) == 0:
            continue
        moduli = np.abs(np.linalg.eigvals(np.array(rows, dtype=float)))
        if np.min(np.abs(moduli - 1)) <= 1e-6:
            continue
        assert verify_dilation(rows) == bool(np.all(moduli > 1)), rows
        checked += 1


def test_schur_and_unit_circle_helpers():
    # (z - 1/2)(z + 1/3) has both roots inside the unit disc
    assert _poly.schur_stable([-1, -1, 6])
    assert not _poly.schur_stable([2, 1])  # root -2
    assert _poly.has_unit_circle_root([1, 0, 1])  # z^2 + 1
    assert _poly.has_unit_circle_root([1, 1, 1])  # primitive cube roots of unity
    assert not _poly.has_unit_circle_root([2, 0, 1])
    roots, rest = _poly.integer_roots([-4, 0, 1])
    assert roots == [-2, 2]


# --- singular values --------------------------------------------------------


def test_sqrt_bounds():
    assert sqrt_lower(4) == sqrt_upper(4) == 2
    assert sqrt_lower(Fraction(9, 4)) == sqrt_upper(Fraction(9, 4)) == Fraction(3, 2)
    lo, hi = sqrt_lower(2), sqrt_upper(2)
    assert lo * lo < 2 < hi * hi and hi - lo < Fraction(1, 2**39)


def test_sigma_bounds_examples():
    assert sigma_bounds([[2]]) == (2, 2)
    lb, ub = sigma_bounds([[0, 2], [-2, 0]])
    assert lb <= 2 <= ub
    assert lb >= sqrt_lower(2) - Fraction(1, 10**9)
    lb, ub = sigma_bounds([[3, 0], [0, 5]])
    assert lb <= 3 and ub >= 5


def test_sigma_bracket_against_numpy():
    rng = random.Random(17)
    done = 0
    while done < 50:
        rows = random_matrix(rng, rng.randint(1, 4))
        if det(rows) == 0:
            continue
        ev = np.linalg.eigvalsh(np.array(matmul(list(zip(*rows)), rows), dtype=float))
        lb, ub = sigma_bounds(rows)
        assert float(lb) ** 2 <= ev[0] * (1 + 1e-9)
        assert ev[-1] <= float(ub) ** 2 * (1 + 1e-9)
        cert = spectral_cert(rows)
        assert cert.sigma_min_lb <= cert.sigma_min_ub
        assert ev[0] <= float(cert.sigma_min_ub) ** 2 * (1 + 1e-9)
        done += 1


@pytest.mark.parametrize(
    "A, t2, expected",
    [(THREE_I, 4, True), (TWIN_DRAGON, 4, False), (DIAG_TWO, 4, False), (DIAG_TWO, Fraction(399, 100), True),
     (TWO, 4, False), (TWIN_DRAGON ** 3, 4, True), (TWIN_DRAGON ** 2, 4, False)],
)
def test_mu_exceeds_examples(A, t2, expected):
    assert mu_exceeds(A, t2) is expected


def test_mu_exceeds_matches_numpy_away_from_boundary():
    rng = random.Random(23)
    for _ in range(80):
        rows = random_matrix(rng, rng.randint(1, 4))
        if det(rows) == 0:
            continue
        lam = np.linalg.eigvalsh(np.array(matmul(list(zip(*rows)), rows), dtype=float))[0]
        for t2 in (1, 4, 9):
            if abs(lam - t2) > 1e-6:
                assert mu_exceeds(rows, t2) == (lam > t2)


def test_positive_definite():
    assert positive_definite([[2, 1], [1, 2]])
    assert not positive_definite([[1, 2], [2, 1]])
    assert not positive_definite([[0, 0], [0, 1]])


small_int = st.integers(-6, 6)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.lists(small_int, min_size=2, max_size=2), min_size=2, max_size=2),
    st.fractions(min_value=0, max_value=50),
    st.fractions(min_value=0, max_value=50),
)
def test_mu_exceeds_monotone(rows, a, b):
    if det(rows) == 0:
        return
    lo, hi = sorted((a, b))
    if mu_exceeds(rows, hi):
        assert mu_exceeds(rows, lo)
