"""Number systems on a general lattice ``Γ = M Z^n`` by change of coordinates.

A map ``A`` on the ambient space that preserves ``Γ`` acts on coefficient
vectors as ``B = M^-1 A M``; since ``A(Mz) = M(Bz)``, every statement about
``B`` on ``Z^n`` transfers to ``A`` on ``Γ`` through ``z -> Mz``. The
l2(Γ) norm is the coefficient l2 norm, so ``B``'s singular values are the
ones that matter for ``A``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .digits import CONVENTION_F, DigitSet, digit_set
from .errors import NonIntegralTransportError
from .linalg import IntMatrix, mu_exceeds, solve_inverse
from .representation import PseudodigitTable, Representation, pseudodigits, represent


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(x) -> "GaussianRational":
        return x if isinstance(x, GaussianRational) else GaussianRational(Fraction(x))

    def __add__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussianRational.of(o))

    def __rsub__(self, o):
        return GaussianRational.of(o) - self

    def __mul__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussianRational.of(o)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, o):
        return GaussianRational.of(o) / self

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if isinstance(o, GaussianRational):
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def _to_field(rows):
    """Exact entries: Fractions, or Gaussian rationals if anything is complex."""
    complex_ = any(isinstance(c, GaussianRational) for r in rows for c in r)
    conv = GaussianRational.of if complex_ else Fraction
    return [[conv(c) for c in r] for r in rows]


def _mul(X, Y):
    return [[sum((a * b for a, b in zip(r, c)), 0 * r[0]) for c in zip(*Y)] for r in X]


def _apply(X, v):
    return tuple(sum((a * b for a, b in zip(r, v)), 0 * r[0]) for r in X)


def _as_integer(c):
    if isinstance(c, GaussianRational):
        if c.im != 0:
            return None
        c = c.re
    c = Fraction(c)
    return int(c) if c.denominator == 1 else None


@dataclass(frozen=True)
class LatticeContext:
    M: Tuple[tuple, ...]
    M_inv: Tuple[tuple, ...]
    A_gamma: Tuple[tuple, ...]
    B: IntMatrix

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def fundamental_domain(self) -> str:
        return "M[-1/2,1/2)^n"

    def to_lattice(self, z: Sequence[int]):
        """Coefficient vector to lattice point ``M z``."""
        return _apply(self.M, z)

    def to_coefficients(self, x) -> Tuple[int, ...]:
        """Lattice point to integer coefficients; rejects points off ``Γ``."""
        z = [_as_integer(c) for c in _apply(self.M_inv, x)]
        if any(c is None for c in z):
            raise NonIntegralTransportError(f"{x} is not a point of the lattice")
        return tuple(z)

    def digit_set(self, convention: str = CONVENTION_F) -> DigitSet:
        return digit_set(self.B, convention)

    def lattice_digits(self, convention: str = CONVENTION_F):
        """``A(F_Γ) ∩ Γ`` as ambient vectors."""
        return [self.to_lattice(d) for d in self.digit_set(convention).digits]

    def pseudodigits(self, convention: str = CONVENTION_F) -> PseudodigitTable:
        return pseudodigits(self.digit_set(convention))

    def lattice_pseudodigits(self, convention: str = CONVENTION_F):
        return [self.to_lattice(s) for s in self.pseudodigits(convention).S]

    def represent(self, x, convention: str = CONVENTION_F) -> Representation:
        """Representation of lattice point ``x`` in coefficient coordinates."""
        ds = self.digit_set(convention)
        return represent(ds, pseudodigits(ds), self.to_coefficients(x))

    def mu_prime_exceeds(self, t2) -> bool:
        """``mu'^2 > t2``; ``mu'`` is the smallest singular value of ``B``."""
        return mu_exceeds(self.B, t2)


def transport(M, A_gamma) -> LatticeContext:
    """Conjugate ``A_gamma`` into coefficient coordinates, ``B = M^-1 A M``."""
    Mf = _to_field(M)
    Af = _to_field(A_gamma)
    if len(Af) != len(Mf):
        raise ValueError("basis and map have different dimensions")
    Minv = solve_inverse(Mf)
    Bf = _mul(_mul(Minv, Af), Mf)
    B = [[_as_integer(c) for c in r] for r in Bf]
    if any(c is None for r in B for c in r):
        raise NonIntegralTransportError(f"M^-1 A M = {Bf} is not an integer matrix")
    return LatticeContext(
        M=tuple(map(tuple, Mf)),
        M_inv=tuple(map(tuple, Minv)),
        A_gamma=tuple(map(tuple, Af)),
        B=IntMatrix(B),
    )
