"""Euclidean algorithm, cycle search and radix / pseudodigit encoding.

Every ``x`` in ``Z^n`` is either ``sum_{j<=N} A^j d_j`` (radix form) or
``A^N s + sum_{j<N} A^j d_j`` with ``s`` a pseudodigit (pseudo form), never
both. Pseudodigits are the lexicographically smallest elements of the
nonzero cycles of the division step ``x -> y`` where ``x = A y + r``.
"""
from __future__ import annotations

import enum
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from .digits import CONVENTION_F, DigitSet, digit_set, divide
from .errors import DigitNotInSetError, InconsistencyError, StepBudgetExceeded
from .linalg import IntMatrix, Vector, as_matrix, sqrt_upper
from .norms import BoundsReport, bounds_report, l2_ball_points, quad_form

log = logging.getLogger(__name__)

#: the l2 ball is enumerated directly while it holds at most this many cube points
BALL_SEARCH_LIMIT = 50_000


class Kind(str, enum.Enum):
    RADIX = "radix"
    PSEUDO = "pseudo"


class Outcome(str, enum.Enum):
    TERMINATED = "terminated"
    CYCLE = "cycle"


@dataclass(frozen=True)
class Representation:
    """``digits[j]`` multiplies ``A^j``.

    Radix: ``x = sum_{j<=N} A^j d_j``, ``N = len(digits) - 1``.
    Pseudo: ``x = A^N s + sum_{j<N} A^j d_j``, ``N = len(digits)``.
    """

    kind: Kind
    digits: Tuple[Vector, ...]
    pseudodigit: Optional[Vector] = None
    convention: str = CONVENTION_F

    @property
    def N(self) -> int:
        return len(self.digits) - 1 if self.kind is Kind.RADIX else len(self.digits)


@dataclass(frozen=True)
class OrbitTrace:
    """States ``x_0, x_1, ...`` with ``x_j = A x_{j+1} + r_j``.

    On ``TERMINATED`` the last state is 0. On ``CYCLE`` the last state
    repeats ``states[entry_index]``, the first cycle element reached.
    """

    states: Tuple[Vector, ...]
    emitted_digits: Tuple[Vector, ...]
    outcome: Outcome
    entry_index: Optional[int] = None

    @property
    def cycle(self) -> Tuple[Vector, ...]:
        if self.outcome is not Outcome.CYCLE:
            return ()
        return self.states[self.entry_index:-1]


@dataclass(frozen=True)
class PseudodigitTable:
    A: IntMatrix
    cycles: Tuple[Tuple[Vector, ...], ...]
    S: Tuple[Vector, ...]
    ball_radius_used: Fraction
    search: str = "ball"
    candidates: int = 0
    convention: str = CONVENTION_F
    member: Dict[Vector, int] = field(default_factory=dict, compare=False, repr=False)

    def representative(self, x) -> Optional[Vector]:
        """Pseudodigit of the cycle containing ``x``, if any."""
        i = self.member.get(tuple(x))
        return None if i is None else self.S[i]


class Classification(NamedTuple):
    kind: Kind
    pseudodigit: Optional[Vector]


def _zero(n):
    return (0,) * n


def step_budget(br: BoundsReport, x) -> int:
    """Generous cap on the number of division steps starting from ``x``.

    Ten times (steps until the attraction ball is certainly reached plus the
    number of lattice points that could be visited afterwards).
    """
    R = br.R_upper
    n = br.A.n
    xp = math.sqrt(float(quad_form(br.gram, x)))
    m = float(br.m_lower)
    entry = 0 if xp <= float(R) else math.ceil(math.log(xp) / math.log(m)) + 1
    count = (2 * math.floor(R) + 3) ** n
    return 10 * (entry + count)


def orbit(ds: DigitSet, x, max_steps: Optional[int] = None) -> OrbitTrace:
    """Iterate :func:`divide` until reaching 0 or revisiting a state."""
    x = tuple(x)
    if max_steps is None:
        max_steps = step_budget(bounds_report(ds.A), x)
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    zero = _zero(ds.n)
    states = [x]
    digits = []
    seen = {x: 0}
    while x != zero:
        if len(digits) >= max_steps:
            raise StepBudgetExceeded(f"no termination or cycle after {max_steps} steps from {states[0]}")
        x, r = divide(ds, x)
        digits.append(r)
        states.append(x)
        if x in seen:
            return OrbitTrace(tuple(states), tuple(digits), Outcome.CYCLE, seen[x])
        seen[x] = len(states) - 1
    return OrbitTrace(tuple(states), tuple(digits), Outcome.TERMINATED)


def attractor_box(ds: DigitSet, br: Optional[BoundsReport] = None, slack=Fraction(1, 8)):
    """Integer ranges containing every periodic point of the division map.

    A periodic point satisfies ``x = -sum_{j>=1} A^-j d_j`` for digits
    ``d_j``, so each coordinate is bounded by summing the coordinate-wise
    extreme over the digits. The series is cut at ``K`` terms with the tail
    ``|d|' m^-K / (m - 1)``, using ``|A^-1 y|' <= |y|' / m`` and
    ``|.|_2 <= |.|'``.
    """
    A = ds.A
    br = br or bounds_report(A)
    m = br.m_lower
    dprime = sqrt_upper(max(quad_form(br.gram, d) for d in ds.digits))
    K = 1
    while dprime / (m**K * (m - 1)) > slack:
        K += 1
    tail = dprime / (m**K * (m - 1))
    adj, det = A.adjugate, A.det
    ws = [list(d) for d in ds.digits]
    lo = [Fraction(0)] * A.n
    hi = [Fraction(0)] * A.n
    scale = 1
    for _ in range(K):
        ws = [[sum(a * c for a, c in zip(r, w)) for r in adj] for w in ws]
        scale *= det
        for i in range(A.n):
            vals = [Fraction(w[i], scale) for w in ws]
            lo[i] += min(vals)
            hi[i] += max(vals)
    # x = -(element of T)
    return [range(math.ceil(-(h + tail)), math.floor(-(l - tail)) + 1) for l, h in zip(lo, hi)]


def candidate_points(ds: DigitSet, br: Optional[BoundsReport] = None, method: str = "auto"):
    """The search method used and the lattice points the cycle search starts from."""
    br = br or bounds_report(ds.A)
    R = br.R_upper
    cube = (2 * math.floor(R) + 1) ** ds.n
    if method == "auto":
        method = "ball" if cube <= BALL_SEARCH_LIMIT else "attractor"
    if method == "ball":
        return "ball", list(l2_ball_points(R, ds.n))
    if method == "attractor":
        return "attractor", list(itertools.product(*attractor_box(ds, br)))
    raise ValueError(f"unknown search method {method!r}")


def pseudodigits(ds: DigitSet, br: Optional[BoundsReport] = None, method: str = "auto") -> PseudodigitTable:
    """Find every nonzero cycle of the division map and its pseudodigit.

    ``method="ball"`` runs the algorithm from every lattice point of the l2
    ball of radius ``R_upper``; ``method="attractor"`` from every lattice
    point of :func:`attractor_box`. Both regions contain all cycles; ``auto``
    uses the ball when it is small.
    """
    br = br or bounds_report(ds.A)
    if br.A != ds.A:
        raise ValueError("bounds report belongs to a different matrix")
    search, cands = candidate_points(ds, br, method)
    zero = _zero(ds.n)
    radix_states = {zero}
    cycle_of: Dict[Vector, int] = {}
    cycles: List[Tuple[Vector, ...]] = []
    for x0 in cands:
        budget = step_budget(br, x0)
        x = x0
        path = {}
        order = []
        while x not in radix_states and x not in cycle_of and x not in path:
            if len(order) >= budget:
                raise StepBudgetExceeded(f"orbit of {x0} exceeded {budget} steps")
            path[x] = len(order)
            order.append(x)
            x = divide(ds, x)[0]
        if x in radix_states:
            radix_states.update(order)
        elif x in path:
            cyc = order[path[x]:]
            s = min(cyc)
            k = cyc.index(s)
            cyc = tuple(cyc[k:] + cyc[:k])
            for c in cyc:
                cycle_of[c] = len(cycles)
            cycles.append(cyc)
    cycles.sort()
    S = tuple(c[0] for c in cycles)
    member = {c: i for i, cyc in enumerate(cycles) for c in cyc}
    log.debug("%s search over %d points found %d cycles", search, len(cands), len(cycles))
    return PseudodigitTable(
        A=ds.A,
        cycles=tuple(cycles),
        S=S,
        ball_radius_used=br.R_upper,
        search=search,
        candidates=len(cands),
        convention=ds.convention,
        member=member,
    )


def represent(ds: DigitSet, table: PseudodigitTable, x) -> Representation:
    """Encode ``x`` in the unique radix or pseudodigit form."""
    tr = orbit(ds, x)
    if tr.outcome is Outcome.TERMINATED:
        digits = tr.emitted_digits or (_zero(ds.n),)
        return Representation(Kind.RADIX, digits, None, ds.convention)
    entry = tr.states[tr.entry_index]
    s = table.representative(entry)
    if s is None:
        raise InconsistencyError(f"orbit of {tuple(x)} entered a cycle at {entry} missing from the table")
    j = tr.states.index(s, tr.entry_index)
    return Representation(Kind.PSEUDO, tr.emitted_digits[:j], s, ds.convention)


def evaluate(A, rep: Representation, digits: Optional[DigitSet] = None) -> Vector:
    """Horner evaluation, the left inverse of :func:`represent`."""
    A = as_matrix(A)
    ds = digits or digit_set(A, rep.convention, require_dilation=False)
    for d in rep.digits:
        if tuple(d) not in ds:
            raise DigitNotInSetError(f"{tuple(d)} is not a digit of {A}")
    if rep.kind is Kind.RADIX:
        if not rep.digits:
            raise ValueError("radix representation needs at least one digit")
        x, rest = tuple(rep.digits[-1]), rep.digits[:-1]
    else:
        if rep.pseudodigit is None:
            raise ValueError("pseudo representation needs a pseudodigit")
        x, rest = tuple(rep.pseudodigit), rep.digits
    for d in reversed(rest):
        x = tuple(a + b for a, b in zip(A.apply(x), d))
    return x


def classify(ds: DigitSet, table: PseudodigitTable, x) -> Classification:
    """Kind of :func:`represent` ``(x)``, stopping at the first cycle element."""
    x = tuple(x)
    zero = _zero(ds.n)
    budget = step_budget(bounds_report(ds.A), x)
    for _ in range(budget):
        if x == zero:
            return Classification(Kind.RADIX, None)
        s = table.representative(x)
        if s is not None:
            return Classification(Kind.PSEUDO, s)
        x = divide(ds, x)[0]
    raise StepBudgetExceeded(f"classification of {x} exceeded {budget} steps")


def yields_radix(ds: DigitSet, table: PseudodigitTable) -> bool:
    return not table.S


def atlas(ds: DigitSet, table: PseudodigitTable, n_max: int):
    """Points with a radix (resp. pseudo) form of length at most ``n_max``.

    Returns two sorted lists: ``{sum_{j<=n_max} A^j d_j}`` and
    ``{A^N s + sum_{j<N} A^j d_j : N <= n_max}``.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    A = ds.A

    def extend(points):
        return {tuple(a + b for a, b in zip(A.apply(v), d)) for v in points for d in ds.digits}

    radix = set(ds.digits)
    for _ in range(n_max):
        radix = extend(radix)
    layer = set(table.S)
    pseudo = set(layer)
    for _ in range(n_max):
        layer = extend(layer)
        pseudo |= layer
    return sorted(radix), sorted(pseudo)
