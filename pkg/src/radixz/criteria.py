"""Sufficient conditions for a radix representation, and the power search."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .digits import CONVENTION_F, CONVENTION_U, digit_set, in_half_box
from .errors import InconsistencyError, NotDilationError, PowerSearchError
from .linalg import IntMatrix, SpectralCert, as_matrix, mu_exceeds, sigma_bounds, spectral_cert, verify_dilation
from .representation import pseudodigits, yields_radix

BETA_MAX = 64


class Verdict(str, enum.Enum):
    GUARANTEED_RADIX = "GuaranteedRadix"
    INCONCLUSIVE = "Inconclusive"


class Threshold(str, enum.Enum):
    MU_GT_2 = "MuGt2"
    MU_GT_2_SQRT_N = "MuGt2SqrtN"

    def t2(self, n: int) -> Fraction:
        return Fraction(4) if self is Threshold.MU_GT_2 else Fraction(4 * n)


@dataclass(frozen=True)
class ConditionReport:
    mu_gt_2sqrtn: bool
    mu_gt_2: bool
    jeong_C_in_AU: bool
    jeong_C_in_AF: bool
    is_dilation: bool
    verdict: Verdict
    certificate: SpectralCert


def jeong_set(n: int) -> List[Tuple[int, ...]]:
    """``C = {0, ±e_1, ..., ±e_n}``."""
    out = [(0,) * n]
    for i in range(n):
        for s in (1, -1):
            out.append(tuple(s if j == i else 0 for j in range(n)))
    return out


def jeong_condition(A, convention: str = CONVENTION_U) -> bool:
    """Is every ``c`` in ``C`` inside ``A`` applied to the half-open cube?"""
    A = as_matrix(A)
    adj, d = A.adjugate, A.det
    for c in jeong_set(A.n):
        w = tuple(sum(a * x for a, x in zip(r, c)) for r in adj)
        if not in_half_box(w, d, convention):
            return False
    return True


def check_conditions(A) -> ConditionReport:
    """Evaluate ``mu > 2 sqrt(n)``, ``mu > 2`` and Jeong's ``C ⊂ AU`` exactly.

    ``GuaranteedRadix`` needs a dilation matrix plus ``mu > 2`` or Jeong's
    condition; for a dilation matrix ``A^j U`` exhausts ``R^n``, which is
    Jeong's second hypothesis.
    """
    A = as_matrix(A)
    n = A.n
    dil = verify_dilation(A)
    big = mu_exceeds(A, 4 * n)
    small = mu_exceeds(A, 4)
    ju = jeong_condition(A, CONVENTION_U)
    jf = jeong_condition(A, CONVENTION_F)
    verdict = Verdict.GUARANTEED_RADIX if dil and (small or ju) else Verdict.INCONCLUSIVE
    return ConditionReport(
        mu_gt_2sqrtn=big,
        mu_gt_2=small,
        jeong_C_in_AU=ju,
        jeong_C_in_AF=jf,
        is_dilation=dil,
        verdict=verdict,
        certificate=spectral_cert(A, thresholds=sorted({4, 4 * n})),
    )


@dataclass(frozen=True)
class PowerResult:
    beta: int
    threshold: Threshold
    certificate: SpectralCert


def find_power(A, threshold: Threshold = Threshold.MU_GT_2, beta_max: int = BETA_MAX) -> PowerResult:
    """Smallest ``beta`` with ``mu(A^beta)^2 > t^2``."""
    A = as_matrix(A)
    threshold = Threshold(threshold)
    if beta_max < 1:
        raise ValueError("beta_max must be >= 1")
    if not verify_dilation(A):
        raise NotDilationError(f"{A} is not a dilation matrix")
    t2 = threshold.t2(A.n)
    trace = []
    power = A
    for beta in range(1, beta_max + 1):
        if mu_exceeds(power, t2):
            return PowerResult(beta, threshold, spectral_cert(power, thresholds=[t2]))
        trace.append((beta, *sigma_bounds(power)))
        power = power @ A
    raise PowerSearchError(f"no power up to {beta_max} has mu^2 > {t2}", trace)


@dataclass(frozen=True)
class CrossValidation:
    verdict: Verdict
    yields_radix: bool
    S: Tuple[Tuple[int, ...], ...]
    consistent: bool


def cross_validate(A, convention: str = CONVENTION_F) -> CrossValidation:
    """Check ``GuaranteedRadix => empty pseudodigit set``; fatal if violated."""
    A = as_matrix(A)
    report = check_conditions(A)
    ds = digit_set(A, convention)
    table = pseudodigits(ds)
    radix = yields_radix(ds, table)
    ok = radix or report.verdict is not Verdict.GUARANTEED_RADIX
    if not ok:
        raise InconsistencyError(
            f"{A}: sufficient condition holds but pseudodigits {table.S} exist"
        )
    return CrossValidation(report.verdict, radix, table.S, ok)
