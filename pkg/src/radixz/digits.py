"""Canonical digit sets ``D = A(F) ∩ Z^n`` and the Euclidean division step."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .errors import DigitSetError, NotDilationError
from .linalg import IntMatrix, SmithForm, Vector, as_matrix, smith_normal_form, verify_dilation

#: F = [-1/2, 1/2)^n, the default fundamental domain
CONVENTION_F = "F"
#: U = (-1/2, 1/2]^n, the domain used in Jeong's criterion
CONVENTION_U = "U"

ResidueLabel = Tuple[int, ...]


def in_half_box(w: Vector, denom: int, convention: str = CONVENTION_F) -> bool:
    """Is ``w / denom`` inside the half-open cube of the given convention?

    Pure integer comparison; ``denom`` may be negative.
    """
    if denom < 0:
        w, denom = tuple(-c for c in w), -denom
    if convention == CONVENTION_F:
        return all(-denom <= 2 * c < denom for c in w)
    if convention == CONVENTION_U:
        return all(-denom < 2 * c <= denom for c in w)
    raise ValueError(f"unknown convention {convention!r}")


def residue_label(snf: SmithForm, x) -> ResidueLabel:
    """Canonical name of the coset ``x + A(Z^n)``: ``(U x) mod diag``."""
    return tuple(sum(u * c for u, c in zip(row, x)) % s for row, s in zip(snf.U, snf.diag))


@dataclass(frozen=True)
class DigitSet:
    A: IntMatrix
    digits: Tuple[Vector, ...]
    snf: SmithForm
    convention: str = CONVENTION_F
    label_index: Dict[ResidueLabel, Vector] = field(default_factory=dict, compare=False, repr=False)

    @property
    def q(self) -> int:
        return len(self.digits)

    @property
    def n(self) -> int:
        return self.A.n

    def __contains__(self, d) -> bool:
        d = tuple(d)
        return len(d) == self.n and self.label_index.get(residue_label(self.snf, d)) == d

    def __iter__(self):
        return iter(self.digits)

    def __len__(self):
        return len(self.digits)


def candidate_box(A: IntMatrix):
    """Integer ranges covering ``A [-1/2, 1/2]^n``.

    Coordinate ``i`` of the image of the cube ranges over
    ``±(1/2) sum_j |a_ij|``, attained at a vertex.
    """
    return [range(-(sum(abs(a) for a in r) // 2), sum(abs(a) for a in r) // 2 + 1) for r in A.rows]


def digit_set(A, convention: str = CONVENTION_F, *, require_dilation: bool = True) -> DigitSet:
    """All integer ``d`` with ``A^-1 d`` in the half-open unit cube.

    Raises :class:`NotDilationError` unless ``A`` is a dilation matrix (pass
    ``require_dilation=False`` for exploratory use) and
    :class:`DigitSetError` if the result is not a complete residue system.
    """
    A = as_matrix(A)
    if require_dilation and not verify_dilation(A):
        raise NotDilationError(f"{A} is not a dilation matrix")
    adj, d = A.adjugate, A.det
    found = []
    for v in itertools.product(*candidate_box(A)):
        w = tuple(sum(a * c for a, c in zip(r, v)) for r in adj)
        if in_half_box(w, d, convention):
            found.append(v)
    found.sort()
    q = abs(d)
    if len(found) != q:
        raise DigitSetError(f"found {len(found)} digits for |det A| = {q}")
    snf = smith_normal_form(A)
    index = {}
    for v in found:
        lab = residue_label(snf, v)
        if lab in index:
            raise DigitSetError(f"digits {index[lab]} and {v} are congruent mod A")
        index[lab] = v
    return DigitSet(A=A, digits=tuple(found), snf=snf, convention=convention, label_index=index)


def _exact_preimage(A: IntMatrix, v):
    """``A^-1 v`` if it is integral, else ``None``."""
    d = A.det
    out = []
    for r in A.adjugate:
        s = sum(a * c for a, c in zip(r, v))
        if s % d:
            return None
        out.append(s // d)
    return tuple(out)


def divide(ds: DigitSet, x) -> Tuple[Vector, Vector]:
    """One Euclidean step: ``x = A y + r`` with ``r`` the digit of x's coset."""
    x = tuple(x)
    r = ds.label_index[residue_label(ds.snf, x)]
    y = _exact_preimage(ds.A, [a - b for a, b in zip(x, r)])
    if y is None:
        raise DigitSetError(f"residue lookup returned non-congruent digit {r} for {x}")
    return y, r


def divide_scan(ds: DigitSet, x) -> Tuple[Vector, Vector]:
    """Same as :func:`divide`, by trying every digit; the independent check."""
    x = tuple(x)
    hits = []
    for r in ds.digits:
        y = _exact_preimage(ds.A, [a - b for a, b in zip(x, r)])
        if y is not None:
            hits.append((y, r))
    if len(hits) != 1:
        raise DigitSetError(f"{len(hits)} digits are congruent to {x}")
    return hits[0]
