"""Exact polynomial helpers.

Polynomials are coefficient lists ordered from the constant term upward,
with integer or Fraction entries.
"""
from fractions import Fraction


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return [k * p[k] for k in range(1, len(p))]


def divmod_poly(a, b):
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = trim(a)
    return trim(q), a


def gcd(a, b):
    """Monic gcd over the rationals."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def sturm_count(p):
    """Number of distinct real roots of ``p``."""
    p = trim(p)
    if len(p) <= 1:
        return 0
    seq = [p, trim(derivative(p))]
    while seq[-1] and len(seq[-1]) > 1:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])

    def changes(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    def sign(c):
        return (c > 0) - (c < 0)

    at_pos = [sign(s[-1]) for s in seq if s]
    at_neg = [sign(s[-1]) * (-1) ** (len(s) - 1) for s in seq if s]
    return changes(at_neg) - changes(at_pos)


def schur_stable(p):
    """True iff every root of ``p`` lies in the open unit disc.

    Schur-Cohn recursion on real coefficients: ``p`` is stable iff
    ``|p_0| < |p_n|`` and ``(p_n p(z) - p_0 p*(z)) / z`` is stable, where
    ``p*`` is the reversed polynomial. Integer input stays integer.
    """
    p = trim(p)
    if not p:
        raise ValueError("zero polynomial")
    while len(p) > 1:
        a0, an = p[0], p[-1]
        if abs(a0) >= abs(an):
            return False
        rev = p[::-1]
        t = [an * c - a0 * r for c, r in zip(p, rev)]
        # t[0] == 0 by construction; t[-1] == an^2 - a0^2 > 0
        p = trim(t[1:])
    return True


def _gmul(a, b):
    out = [(0, 0)] * (len(a) + len(b) - 1)
    for i, (ar, ai) in enumerate(a):
        for j, (br, bi) in enumerate(b):
            r, im = out[i + j]
            out[i + j] = (r + ar * br - ai * bi, im + ar * bi + ai * br)
    return out


def _gpow(a, k):
    out = [(1, 0)]
    for _ in range(k):
        out = _gmul(out, a)
    return out


def has_unit_circle_root(p):
    """True iff some root ``z`` of the real polynomial ``p`` has ``|z| == 1``.

    Decided exactly with the Cayley substitution ``z = (1+it)/(1-it)``: roots
    on the circle other than ``-1`` become common real roots of the real and
    imaginary parts of ``(1-it)^n p(z)``.
    """
    p = trim(p)
    n = len(p) - 1
    if n < 1:
        return False
    if evaluate(p, -1) == 0:
        return True
    plus = [(1, 0), (0, 1)]
    minus = [(1, 0), (0, -1)]
    q = [(0, 0)] * (n + 1)
    for k, c in enumerate(p):
        if c == 0:
            continue
        term = _gmul(_gpow(plus, k), _gpow(minus, n - k))
        for i, (r, im) in enumerate(term):
            q[i] = (q[i][0] + c * r, q[i][1] + c * im)
    g = gcd([r for r, _ in q], [im for _, im in q])
    return sturm_count(g) > 0


def integer_roots(p):
    """Integer roots of a monic integer polynomial, with multiplicity."""
    p = trim(p)
    roots = []
    while len(p) > 1:
        c0 = p[0]
        if c0 == 0:
            roots.append(0)
            p = p[1:]
            continue
        found = None
        for d in _divisors(abs(c0)):
            for cand in (d, -d):
                if evaluate(p, cand) == 0:
                    found = cand
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        # synthetic division by (x - found)
        q = [0] * (len(p) - 1)
        acc = 0
        for i in range(len(p) - 1, 0, -1):
            acc = acc * found + p[i]
            q[i - 1] = acc
        p = q
    return sorted(roots), p


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
