"""Exact integer and rational matrix arithmetic.

Everything here is decided in integer or ``Fraction`` arithmetic; no float
enters a decision. Vectors are plain tuples.
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, Sequence, Tuple

from . import _poly
from .errors import DegenerateMatrixError, SingularMatrixError

log = logging.getLogger(__name__)

Vector = Tuple[int, ...]

#: default binary precision of rational square-root enclosures
SQRT_BITS = 40


def _rows_of(A):
    return A.rows if isinstance(A, (IntMatrix, RatMatrix)) else A


def _check_square(rows):
    n = len(rows)
    if n == 0:
        raise DegenerateMatrixError("matrix must have dimension n >= 1")
    for r in rows:
        if len(r) != n:
            raise DegenerateMatrixError(f"matrix is not square: row of length {len(r)} in {n}x{n}")
    return n


def det(A) -> int:
    """Determinant by Bareiss fraction-free elimination.

    Integer input gives an exact integer; Fraction input gives a Fraction.
    """
    rows = [list(r) for r in _rows_of(A)]
    n = _check_square(rows)
    if any(isinstance(c, Fraction) and c.denominator != 1 for r in rows for c in r):
        return _det_field(rows)
    rows = [[int(c) for c in r] for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
        prev = rows[k][k]
    return sign * rows[n - 1][n - 1]


def _det_field(rows):
    rows = [[Fraction(c) for c in r] for r in rows]
    n = len(rows)
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            out = -out
        out *= rows[k][k]
        for i in range(k + 1, n):
            f = rows[i][k] / rows[k][k]
            if f:
                for j in range(k, n):
                    rows[i][j] -= f * rows[k][j]
    return out


def solve_inverse(rows):
    """Gauss-Jordan inverse over any exact field (Fraction, Gaussian rationals).

    Entries must support ``+ - * /`` and comparison with 0.
    """
    n = _check_square(rows)
    one = rows[0][0] * 0 + 1
    zero = one - one
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        p = aug[k][k]
        aug[k] = [c / p for c in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    return [r[n:] for r in aug]


@dataclass(frozen=True)
class RatMatrix:
    """Square matrix of exact rationals."""

    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(c) for c in r) for r in self.rows)
        _check_square(rows)
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def apply(self, x) -> Tuple[Fraction, ...]:
        return tuple(sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in self.rows)

    def __matmul__(self, other):
        o = _rows_of(other)
        cols = list(zip(*o))
        return RatMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows])

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.rows)))

    def frobenius_sq(self) -> Fraction:
        return sum((c * c for r in self.rows for c in r), Fraction(0))

    def __mul__(self, k):
        return RatMatrix([[c * k for c in r] for r in self.rows])

    __rmul__ = __mul__


@dataclass(frozen=True)
class IntMatrix:
    """Nonsingular square integer matrix.

    Construction rejects empty, non-square and singular input with a typed
    error, so every instance has an exact inverse.
    """

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        try:
            rows = tuple(tuple(_as_int(c) for c in r) for r in self.rows)
        except TypeError as exc:
            raise DegenerateMatrixError(str(exc)) from None
        _check_square(rows)
        object.__setattr__(self, "rows", rows)
        if self.det == 0:
            raise SingularMatrixError(f"matrix {rows} is singular")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, *entries: int) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    @functools.cached_property
    def det(self) -> int:
        return det(self.rows)

    @functools.cached_property
    def adjugate(self) -> "Tuple[Tuple[int, ...], ...]":
        """Integer adjugate, ``adj(A) = det(A) * A^-1``."""
        inv = solve_inverse([[Fraction(c) for c in r] for r in self.rows])
        return tuple(tuple(int(c * self.det) for c in r) for r in inv)

    @functools.cached_property
    def inverse(self) -> RatMatrix:
        d = self.det
        return RatMatrix([[Fraction(c, d) for c in r] for r in self.adjugate])

    def apply(self, x: Sequence[int]) -> Vector:
        return tuple(sum(a * b for a, b in zip(r, x)) for r in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.rows)))

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            return RatMatrix(self.rows) @ other
        cols = list(zip(*_rows_of(other)))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("negative powers are rational; use inverse")
        result = IntMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def gram(self) -> Tuple[Tuple[int, ...], ...]:
        """``A^T A`` as plain integer rows."""
        cols = list(zip(*self.rows))
        return tuple(tuple(sum(a * b for a, b in zip(ci, cj)) for cj in cols) for ci in cols)

    def is_normal(self) -> bool:
        t = self.transpose()
        return (t @ self).rows == (self @ t).rows

    def frobenius_sq(self) -> int:
        return sum(c * c for r in self.rows for c in r)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


def _as_int(c) -> int:
    if isinstance(c, bool):
        raise TypeError("boolean matrix entry")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    if isinstance(c, str):
        return int(c)
    raise TypeError(f"non-integer matrix entry {c!r}")


def as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


def inverse(A) -> RatMatrix:
    """Exact rational inverse; raises :class:`SingularMatrixError` if det = 0."""
    if isinstance(A, IntMatrix):
        return A.inverse
    rows = [[Fraction(c) for c in r] for r in A]
    return RatMatrix(solve_inverse(rows))


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == diag(diag)`` with unimodular ``U``, ``V``."""

    U: Tuple[Tuple[int, ...], ...]
    V: Tuple[Tuple[int, ...], ...]
    diag: Tuple[int, ...]


def smith_normal_form(A) -> SmithForm:
    """Smith normal form of a nonsingular integer matrix, with transforms."""
    A = as_matrix(A)
    n = A.n
    S = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for M in (S, V):
            for r in M:
                r[dst] += k * r[src]

    for t in range(n):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if S[i][j] != 0 and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = S[t][t]
            clean = True
            for i in range(t + 1, n):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if S[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-c for c in S[t]]
            U[t] = [-c for c in U[t]]
    return SmithForm(
        U=tuple(map(tuple, U)),
        V=tuple(map(tuple, V)),
        diag=tuple(S[i][i] for i in range(n)),
    )


# --------------------------------------------------------------------------
# certified square roots


def sqrt_lower(x, bits: int = SQRT_BITS) -> Fraction:
    """Rational ``r <= sqrt(x)``, exact when ``x`` is a rational square."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative input")
    p, q = x.numerator, x.denominator
    if isqrt(p * q) ** 2 == p * q:
        return Fraction(isqrt(p * q), q)
    return Fraction(isqrt(p * q << (2 * bits)), q << bits)


def sqrt_upper(x, bits: int = SQRT_BITS) -> Fraction:
    """Rational ``r >= sqrt(x)``, exact when ``x`` is a rational square."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative input")
    p, q = x.numerator, x.denominator
    if isqrt(p * q) ** 2 == p * q:
        return Fraction(isqrt(p * q), q)
    return Fraction(isqrt(p * q << (2 * bits)) + 1, q << bits)


# --------------------------------------------------------------------------
# spectral decisions


def charpoly(A) -> list:
    """Characteristic polynomial ``det(zI - A)``, constant term first.

    Faddeev-LeVerrier; every division is exact for integer input.
    """
    rows = [list(r) for r in _rows_of(A)]
    n = _check_square(rows)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = A @ M_{k-1} + c_{n-k+1} I
        prod = [[sum(rows[i][l] * Mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        Mk = prod
        tr = sum(sum(rows[i][l] * Mk[l][i] for l in range(n)) for i in range(n))
        c = Fraction(-tr, k)
        coeffs[n - k] = int(c) if c.denominator == 1 else c
    return coeffs


@dataclass(frozen=True)
class DilationReport:
    is_dilation: bool
    boundary_root: bool
    charpoly: Tuple[int, ...]


def dilation_report(A) -> DilationReport:
    """Decide whether every eigenvalue of ``A`` has modulus > 1.

    The reversed characteristic polynomial has roots ``1/lambda``; Schur-Cohn
    checks they all sit in the open unit disc. A separate exact test flags
    eigenvalues on the unit circle.
    """
    A = as_matrix(A)
    chi = charpoly(A.rows)
    ok = _poly.schur_stable(chi[::-1])
    boundary = False if ok else _poly.has_unit_circle_root(chi)
    if boundary:
        log.info("matrix %s has an eigenvalue of modulus exactly 1", A)
    return DilationReport(ok, boundary, tuple(chi))


def verify_dilation(A) -> bool:
    return dilation_report(A).is_dilation


def positive_definite(rows) -> bool:
    """Sylvester's criterion on a symmetric rational matrix.

    Leading principal minors are the running products of the pivots of
    unpivoted elimination, so all minors are positive iff every pivot is.
    """
    M = [[Fraction(c) for c in r] for r in rows]
    n = len(M)
    for k in range(n):
        p = M[k][k]
        if p <= 0:
            return False
        for i in range(k + 1, n):
            f = M[i][k] / p
            if f:
                for j in range(k + 1, n):
                    M[i][j] -= f * M[k][j]
    return True


def mu_exceeds(A, t2) -> bool:
    """Exact decision of ``mu^2 > t2``, ``mu`` the smallest singular value."""
    A = as_matrix(A)
    t2 = Fraction(t2)
    if t2 < 0:
        raise ValueError("threshold must be nonnegative")
    G = [[Fraction(c) for c in r] for r in A.gram()]
    for i in range(A.n):
        G[i][i] -= t2
    return positive_definite(G)


def sigma_bounds(A, bits: int = SQRT_BITS) -> Tuple[Fraction, Fraction]:
    """Certified ``(sigma_min_lb, sigma_max_ub)`` from Frobenius norms."""
    A = as_matrix(A)
    ub = sqrt_upper(A.frobenius_sq(), bits)
    lb = 1 / sqrt_upper(A.inverse.frobenius_sq(), bits)
    return lb, ub


@dataclass(frozen=True)
class SpectralCert:
    q_abs_det: int
    is_dilation: bool
    sigma_min_lb: Fraction
    sigma_min_ub: Fraction
    sigma_max_ub: Fraction
    mu_gt_threshold_results: Dict[Fraction, bool] = field(default_factory=dict)


def spectral_cert(A, thresholds: Sequence = (4,)) -> SpectralCert:
    A = as_matrix(A)
    lb, ub = sigma_bounds(A)
    # mu <= |A e_i| for every column
    min_col = min(sum(c * c for c in col) for col in zip(*A.rows))
    return SpectralCert(
        q_abs_det=abs(A.det),
        is_dilation=verify_dilation(A),
        sigma_min_lb=lb,
        sigma_min_ub=sqrt_upper(min_col),
        sigma_max_ub=ub,
        mu_gt_threshold_results={Fraction(t): mu_exceeds(A, t) for t in thresholds},
    )
