"""The expanding norm ``|x|' = (sum_j |A^-j x|^2)^(1/2)`` and certified bounds.

Two independent routes to ``|x|'`` live here:

* :func:`norm_prime` sums the series exactly up to a block boundary and
  closes it with a block-geometric tail bound;
* :func:`stein_gram` solves ``P = I + A^-T P A^-1`` exactly, after which
  ``|x|'^2 = x^T P x`` is a rational number.

:func:`bounds_report` turns these into the constants ``m``, ``M``, ``rho``
and the attraction radius ``R = M rho / (m - 1)``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log2
from typing import Optional, Tuple

from . import _poly
from .errors import NotDilationError, NotNormalError
from .linalg import (
    IntMatrix,
    RatMatrix,
    as_matrix,
    charpoly,
    positive_definite,
    sigma_bounds,
    solve_inverse,
    sqrt_lower,
    sqrt_upper,
    verify_dilation,
)

BISECT_STEPS = 48


def _common_denominator(x):
    x = [Fraction(c) for c in x]
    L = 1
    for c in x:
        L = L * c.denominator // _gcd(L, c.denominator)
    return [int(c * L) for c in x], L


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _sq(v):
    return sum(c * c for c in v)


@dataclass(frozen=True)
class NormEvaluator:
    """Truncated-series evaluator for ``|.|'`` with a certified tail.

    ``theta_sq`` is ``|A^-J|_F^2``; it bounds ``|A^-J|_op^2`` and is < 1/4.
    ``partial_frobs[j]`` is ``|A^-j|_F^2`` for ``j < J``.
    """

    A: IntMatrix
    A_inv: RatMatrix
    J: int
    theta_sq: Fraction
    partial_frobs: Tuple[Fraction, ...]

    @property
    def theta(self) -> Fraction:
        return sqrt_upper(self.theta_sq)

    @property
    def tail_factor(self) -> Fraction:
        return self.theta_sq / (1 - self.theta_sq)

    @property
    def C_upper(self) -> Fraction:
        """Upper bound on ``sum_j |A^-j|_op^2``."""
        return sum(self.partial_frobs, Fraction(0)) / (1 - self.theta_sq)


def norm_evaluator(A) -> NormEvaluator:
    return _norm_evaluator(as_matrix(A))


@functools.lru_cache(maxsize=256)
def _norm_evaluator(A: IntMatrix) -> NormEvaluator:
    if not verify_dilation(A):
        raise NotDilationError(f"{A} is not a dilation matrix")
    inv = A.inverse
    frobs = [Fraction(A.n)]
    power = RatMatrix([[int(i == j) for j in range(A.n)] for i in range(A.n)])
    J = 1
    while True:
        while len(frobs) <= J:
            power = inv @ power
            frobs.append(power.frobenius_sq())
        if frobs[J] < Fraction(1, 4):
            break
        J *= 2
    return NormEvaluator(A=A, A_inv=inv, J=J, theta_sq=frobs[J], partial_frobs=tuple(frobs[:J]))


def norm_prime(ev: NormEvaluator, x, tol=Fraction(1, 10**9)) -> Tuple[Fraction, Fraction]:
    """Rational interval ``(lo, hi)`` containing ``|x|'`` with ``hi - lo <= tol``."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    w, L = _common_denominator(x)
    if not any(w):
        return Fraction(0), Fraction(0)
    adj, det = ev.A.adjugate, ev.A.det
    bits = max(40, ceil(log2(4 / tol)) + 2)
    total = Fraction(0)
    j = 0
    scale = L * L
    while True:
        block = Fraction(0)
        for _ in range(ev.J):
            block += Fraction(_sq(w), scale)
            w = [sum(a * c for a, c in zip(r, w)) for r in adj]
            scale *= det * det
            j += 1
        total += block
        lo = sqrt_lower(total, bits)
        hi = sqrt_upper(total + ev.tail_factor * block, bits)
        if hi - lo <= tol:
            return lo, hi


def stein_gram(A) -> RatMatrix:
    """Exact ``P = sum_j (A^-j)^T A^-j``, so that ``|x|'^2 = x^T P x``.

    Solves the linear system ``A^T P A - P = A^T A``.
    """
    return _stein_gram(as_matrix(A))


@functools.lru_cache(maxsize=256)
def _stein_gram(A: IntMatrix) -> RatMatrix:
    n = A.n
    G = A.gram()
    idx = {(k, l): k * n + l for k in range(n) for l in range(n)}
    system = []
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                for l in range(n):
                    row[idx[k, l]] += A.rows[k][i] * A.rows[l][j]
            row[idx[i, j]] -= 1
            system.append(row)
    inv = solve_inverse(system)
    rhs = [G[i][j] for i in range(n) for j in range(n)]
    flat = [sum((a * b for a, b in zip(r, rhs)), Fraction(0)) for r in inv]
    return RatMatrix([flat[i * n:(i + 1) * n] for i in range(n)])


def quad_form(P, x) -> Fraction:
    rows = P.rows if isinstance(P, RatMatrix) else P
    return sum((Fraction(xi) * sum((a * xj for a, xj in zip(r, x)), Fraction(0)) for xi, r in zip(x, rows)), Fraction(0))


def norm_prime_squared(A, x) -> Fraction:
    """Exact ``|x|'^2`` via the Gram matrix."""
    return quad_form(stein_gram(as_matrix(A)), x)


@dataclass(frozen=True)
class ExactNorm:
    """The number ``sqrt(squared)`` kept exact."""

    squared: Fraction

    def lower(self, bits: int = 60) -> Fraction:
        return sqrt_lower(self.squared, bits)

    def upper(self, bits: int = 60) -> Fraction:
        return sqrt_upper(self.squared, bits)

    def __float__(self):
        return float(self.squared) ** 0.5


def norm_prime_normal(A, x) -> ExactNorm:
    """``|x|'`` for normal ``A``: ``|x|'^2 = x^T G (G - I)^-1 x``, ``G = A^T A``.

    This is the eigenspace formula ``sum |l|^2/(|l|^2 - 1) |x_l|^2`` written
    without eigenvectors, and is an exact rational for rational ``x``.
    """
    A = as_matrix(A)
    if not A.is_normal():
        raise NotNormalError(f"{A} is not normal")
    if not verify_dilation(A):
        raise NotDilationError(f"{A} is not a dilation matrix")
    n = A.n
    G = A.gram()
    shifted = [[Fraction(G[i][j] - (i == j)) for j in range(n)] for i in range(n)]
    K = RatMatrix(G) @ RatMatrix(solve_inverse(shifted))
    return ExactNorm(quad_form(K, x))


@dataclass(frozen=True)
class NormalSpectrum:
    """Enclosures of ``m^2 = min |l|^2`` and ``M^2 = max |l|^2`` for normal A."""

    m_sq: Tuple[Fraction, Fraction]
    M_sq: Tuple[Fraction, Fraction]
    exact: bool

    @property
    def m(self) -> Tuple[Fraction, Fraction]:
        return sqrt_lower(self.m_sq[0]), sqrt_upper(self.m_sq[1])

    @property
    def M(self) -> Tuple[Fraction, Fraction]:
        return sqrt_lower(self.M_sq[0]), sqrt_upper(self.M_sq[1])


def _bisect(pred, lo, hi, steps=BISECT_STEPS):
    """Shrink ``[lo, hi]`` keeping ``pred(lo)`` true and ``pred(hi)`` false."""
    for _ in range(steps):
        mid = (lo + hi) / 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def _shift(rows, t, sign=1):
    """``sign * rows - t I``."""
    return [[sign * Fraction(c) - (t if i == j else 0) for j, c in enumerate(r)] for i, r in enumerate(rows)]


def normal_spectrum(A) -> NormalSpectrum:
    A = as_matrix(A)
    if not A.is_normal():
        raise NotNormalError(f"{A} is not normal")
    G = A.gram()
    roots, rest = _poly.integer_roots(charpoly(G))
    if len(roots) == A.n:
        return NormalSpectrum((Fraction(roots[0]),) * 2, (Fraction(roots[-1]),) * 2, True)
    top = Fraction(sum(G[i][i] for i in range(A.n)))
    m_sq = _bisect(lambda t: positive_definite(_shift(G, t)), Fraction(0), top)
    lo, hi = _bisect(lambda t: not positive_definite(_shift(G, -t, -1)), Fraction(0), top + 1)
    return NormalSpectrum(m_sq, (lo, hi), False)


def _sqrt_lower_above_one(x):
    bits = 40
    while True:
        r = sqrt_lower(x, bits)
        if r > 1:
            return r
        bits *= 2


@dataclass(frozen=True)
class BoundsReport:
    """Certified constants for the pseudodigit search; all exact rationals."""

    A: IntMatrix
    C_upper: Fraction
    m_lower: Fraction
    M_upper: Fraction
    rho_upper: Fraction
    R_upper: Fraction
    normal_exact: Optional[NormalSpectrum]
    closed_form_R: Optional[Fraction]
    gram: RatMatrix

    @property
    def candidate_radius_l2(self) -> Fraction:
        return self.R_upper


def bounds_report(A) -> BoundsReport:
    """Certified ``m >= m_lower``, ``M <= M_upper``, ``rho <= rho_upper``.

    Each constant is bounded twice and the sharper bound kept: once from
    Frobenius norms alone and once from generalized eigenvalue tests
    ``A^T P A - t P > 0`` on the exact Gram matrix, decided by Sylvester's
    criterion. For normal ``A`` the eigenvalue moduli are used when exact.
    """
    return _bounds_report(as_matrix(A))


@functools.lru_cache(maxsize=256)
def _bounds_report(A: IntMatrix) -> BoundsReport:
    ev = norm_evaluator(A)
    n = A.n
    C = ev.C_upper
    s_lb, s_ub = sigma_bounds(A)

    m_sq = 1 + s_lb * s_lb / C
    M_sq = 1 + s_ub * s_ub
    rho_sq = C * n / 4

    P = stein_gram(A)
    H = [[p + g for p, g in zip(pr, gr)] for pr, gr in zip(P.rows, A.gram())]

    def m_pred(t):
        return positive_definite([[h - t * p for h, p in zip(hr, pr)] for hr, pr in zip(H, P.rows)])

    def M_pred(t):
        return not positive_definite([[t * p - h for h, p in zip(hr, pr)] for hr, pr in zip(H, P.rows)])

    hi = Fraction(2)
    while m_pred(hi):
        hi *= 2
    m_sq = max(m_sq, _bisect(m_pred, Fraction(1), hi)[0])
    hi = Fraction(2)
    while M_pred(hi):
        hi *= 2
    M_sq = min(M_sq, _bisect(M_pred, Fraction(1), hi)[1])
    vertex = max(quad_form(P, v) for v in itertools.product((Fraction(-1, 2), Fraction(1, 2)), repeat=n))
    rho_sq = min(rho_sq, vertex)

    spectrum = None
    if A.is_normal():
        spectrum = normal_spectrum(A)
        if spectrum.exact:
            m_sq = max(m_sq, spectrum.m_sq[0])
            M_sq = min(M_sq, spectrum.M_sq[1])

    m_lower = _sqrt_lower_above_one(m_sq)
    M_upper = sqrt_upper(M_sq)
    rho_upper = sqrt_upper(rho_sq)
    R_upper = M_upper * rho_upper / (m_lower - 1)

    closed = None
    if s_lb > 1:
        closed = sqrt_upper(s_lb**2 * s_ub**2 * n / (4 * (s_lb - 1) ** 3 * (s_lb + 1)))
    return BoundsReport(
        A=A,
        C_upper=C,
        m_lower=m_lower,
        M_upper=M_upper,
        rho_upper=rho_upper,
        R_upper=R_upper,
        normal_exact=spectrum,
        closed_form_R=closed,
        gram=P,
    )


def l2_ball_points(radius, n: int):
    """Integer points with ``|x|_2 <= radius``, lexicographic order."""
    r2 = Fraction(radius) ** 2

    def rec(prefix, left):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        k = int(sqrt_lower(left, 8)) if left > 0 else 0
        while (k + 1) ** 2 <= left:
            k += 1
        for c in range(-k, k + 1):
            yield from rec(prefix + [c], left - c * c)

    if r2 < 0:
        return
    yield from rec([], r2)


def prime_ball_points(br: BoundsReport):
    """Integer points with ``|x|' <= R_upper`` (a subset of the l2 ball)."""
    r2 = br.R_upper**2
    return [x for x in l2_ball_points(br.R_upper, br.A.n) if quad_form(br.gram, x) <= r2]
