"""Exact and outward-rounded kernels behind the eigenvalue counters.

* :func:`charpoly` -- integer characteristic polynomial (Faddeev--LeVerrier).
* :class:`SturmCounter` -- squarefree (Yun) decomposition plus one Sturm chain
  per factor; counts eigenvalues below / at a rational point with multiplicity.
* :func:`inertia_exact` -- symmetric elimination of ``A - tI`` over the
  rationals with 1x1 / 2x2 pivots (Sylvester inertia).
* :func:`negative_count_interval` -- the same elimination in float64 interval
  arithmetic with ``nextafter`` outward rounding; returns ``None`` when a pivot
  sign cannot be decided.

Polynomials are coefficient lists, highest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _rational = Fraction

Poly = list  # list[int] or list[Fraction], highest degree first


# ---------------------------------------------------------------------------
# Characteristic polynomial

def charpoly(adj_rows: Sequence[Sequence[int]]) -> list[int]:
    """``det(xI - A)`` for an integer matrix given as rows."""
    n = len(adj_rows)
    a = [list(map(int, row)) for row in adj_rows]
    coeffs = [1]
    m = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        am = _matmul(a, m)
        for i in range(n):
            am[i][i] += c
        m = am
        tr = sum(sum(a[i][j] * m[j][i] for j in range(n)) for i in range(n))
        if tr % k:
            raise ArithmeticError("Faddeev-LeVerrier division was not exact")
        c = -tr // k
        coeffs.append(c)
    return coeffs


def _matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


# ---------------------------------------------------------------------------
# Polynomial helpers over Q

def _trim(p: Poly) -> Poly:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _deriv(p: Poly) -> Poly:
    d = len(p) - 1
    if d == 0:
        return [Fraction(0)]
    return [c * (d - i) for i, c in enumerate(p[:-1])]


def _divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in _trim(b)]
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = a[:]
    while len(r) >= len(b) and r != [0]:
        f = r[0] / b[0]
        shift = len(r) - len(b)
        q[len(q) - 1 - shift] = f
        for i in range(len(b)):
            r[i] -= f * b[i]
        r = _trim(r[1:] if r[0] == 0 else r)
        if len(r) == 0:
            r = [Fraction(0)]
    return _trim(q), _trim(r)


def _monic(p: Poly) -> Poly:
    p = _trim([Fraction(x) for x in p])
    return [c / p[0] for c in p]


def _gcd(a: Poly, b: Poly) -> Poly:
    a, b = _trim([Fraction(x) for x in a]), _trim([Fraction(x) for x in b])
    while b != [0]:
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def _exact_div(a: Poly, b: Poly) -> Poly:
    q, r = _divmod(a, b)
    if r != [0]:
        raise ArithmeticError("inexact polynomial division")
    return q


def _sub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = [Fraction(0)] * (n - len(a)) + list(a)
    b = [Fraction(0)] * (n - len(b)) + list(b)
    return _trim([x - y for x, y in zip(a, b)])


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = lc * prod f_i**i`` with monic squarefree ``f_i``."""
    p = _monic(p)
    if len(p) == 1:
        return []
    dp = _deriv(p)
    a = _gcd(p, dp)
    b = _exact_div(p, a)
    c = _exact_div(dp, a)
    d = _sub(c, _deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        f = _gcd(b, d)
        b = _exact_div(b, f)
        c = _exact_div(d, f)
        d = _sub(c, _deriv(b))
        if len(f) > 1:
            out.append((f, i))
        i += 1
    return out


def _primitive_int(p: Poly) -> list[int]:
    """Positive rescaling of a rational polynomial to coprime integers."""
    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def sign_at(p: Sequence[int], t: Fraction) -> int:
    """Sign of the integer polynomial ``p`` at the rational ``t``."""
    num, den = t.numerator, t.denominator
    acc = p[0]
    scale = 1
    for c in p[1:]:
        scale *= den
        acc = acc * num + c * scale
    return (acc > 0) - (acc < 0)


def sign_at_minus_inf(p: Sequence[int]) -> int:
    s = (p[0] > 0) - (p[0] < 0)
    return s if (len(p) - 1) % 2 == 0 else -s


def sturm_chain(f: Poly) -> list[list[int]]:
    chain = [_primitive_int(f), _primitive_int(_deriv([Fraction(x) for x in f]))]
    while len(chain[-1]) > 1:
        _, r = _divmod(chain[-2], chain[-1])
        if r == [0]:
            break
        chain.append(_primitive_int([-x for x in r]))
    return chain


def _variations(signs: list[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


class SturmCounter:
    """Counts roots of an integer polynomial below / at rational points,
    with multiplicity."""

    def __init__(self, poly: Sequence[int]):
        self.poly = [int(c) for c in poly]
        self.degree = len(self.poly) - 1
        self.factors = []
        for f, mult in squarefree_decomposition(self.poly):
            chain = sturm_chain(f)
            v_inf = _variations([sign_at_minus_inf(q) for q in chain])
            self.factors.append((chain, mult, v_inf))

    def count(self, t: Fraction) -> tuple[int, int]:
        """``(roots < t, roots == t)`` counted with multiplicity."""
        t = Fraction(t)
        below = at = 0
        for chain, mult, v_inf in self.factors:
            signs = [sign_at(q, t) for q in chain]
            in_closed = v_inf - _variations(signs)  # distinct roots in (-inf, t]
            zero = signs[0] == 0
            below += mult * (in_closed - zero)
            at += mult * zero
        return below, at

    def multiplicity_in(self, lo: Fraction, hi: Fraction) -> list[int]:
        """Multiplicities of the distinct roots lying in ``(lo, hi]``."""
        out = []
        for chain, mult, _ in self.factors:
            k = (_variations([sign_at(q, Fraction(lo)) for q in chain])
                 - _variations([sign_at(q, Fraction(hi)) for q in chain]))
            out.extend([mult] * k)
        return out


# ---------------------------------------------------------------------------
# Exact symmetric elimination

def inertia_exact(adj_rows: Sequence[Sequence[int]], t: Fraction) -> tuple[int, int, int]:
    """Inertia ``(negative, zero, positive)`` of ``A - tI`` (exact)."""
    t = Fraction(t)
    p, q = t.numerator, t.denominator
    n = len(adj_rows)
    # q*A - p*I has the same inertia as A - tI
    s = [[_rational(q * int(x)) for x in row] for row in adj_rows]
    for i in range(n):
        s[i][i] -= p
    idx = list(range(n))
    neg = pos = 0
    while idx:
        piv = next((i for i in idx if s[i][i] != 0), None)
        if piv is not None:
            d = s[piv][piv]
            if d < 0:
                neg += 1
            else:
                pos += 1
            idx.remove(piv)
            prow = s[piv]
            for r in idx:
                f = s[r][piv]
                if f == 0:
                    continue
                f = f / d
                row = s[r]
                for c in idx:
                    pc = prow[c]
                    if pc != 0:
                        row[c] -= f * pc
            continue
        pair = next(((i, j) for i in idx for j in idx if j > i and s[i][j] != 0), None)
        if pair is None:
            break  # remaining block is zero
        i, j = pair
        b = s[i][j]
        neg += 1
        pos += 1
        idx.remove(i)
        idx.remove(j)
        ri, rj = s[i], s[j]
        # Schur complement of [[0, b], [b, 0]]: subtract (c_i r_j + c_j r_i) / b
        for r in idx:
            ci, cj = s[r][i], s[r][j]
            if ci == 0 and cj == 0:
                continue
            ci, cj = ci / b, cj / b
            row = s[r]
            for c in idx:
                row[c] -= ci * rj[c] + cj * ri[c]
    zero = n - neg - pos
    return neg, zero, pos


# ---------------------------------------------------------------------------
# Float64 interval elimination

def _down(x):
    return np.nextafter(x, -np.inf)


def _up(x):
    return np.nextafter(x, np.inf)


def _imul(alo, ahi, blo, bhi):
    p = np.stack([alo * blo, alo * bhi, ahi * blo, ahi * bhi])
    return _down(p.min(axis=0)), _up(p.max(axis=0))


def negative_count_interval(a: np.ndarray, t: Fraction) -> int | None:
    """Number of eigenvalues of ``a`` below ``t`` or ``None`` if undecided."""
    n = a.shape[0]
    t = Fraction(t)
    tf = float(t)
    tlo = tf if Fraction(tf) <= t else float(_down(tf))
    thi = tf if Fraction(tf) >= t else float(_up(tf))
    lo = a.astype(np.float64).copy()
    hi = lo.copy()
    diag = np.arange(n)
    lo[diag, diag] -= thi
    hi[diag, diag] -= tlo
    lo[diag, diag] = _down(lo[diag, diag])
    hi[diag, diag] = _up(hi[diag, diag])
    active = np.ones(n, dtype=bool)
    neg = 0
    for _ in range(n):
        rest = np.flatnonzero(active)
        if rest.size == 0:
            break
        dlo, dhi = lo[rest, rest], hi[rest, rest]
        decided = (dlo > 0) | (dhi < 0)
        if not decided.any():
            if rest.size < 2 or not _pivot2(lo, hi, active, rest):
                return None
            neg += 1
            continue
        mag = np.where(decided, np.minimum(np.abs(dlo), np.abs(dhi)), -1.0)
        k = rest[int(np.argmax(mag))]
        plo, phi = lo[k, k], hi[k, k]
        if phi < 0:
            neg += 1
        active[k] = False
        others = np.flatnonzero(active)
        if others.size == 0:
            break
        clo, chi = lo[others, k], hi[others, k]
        # reciprocal of the pivot interval
        rlo, rhi = _down(1.0 / phi), _up(1.0 / plo)
        qlo, qhi = _imul(clo, chi, rlo, rhi)
        olo, ohi = _imul(qlo[:, None], qhi[:, None], clo[None, :], chi[None, :])
        sub = np.ix_(others, others)
        lo[sub] = _down(lo[sub] - ohi)
        hi[sub] = _up(hi[sub] - olo)
    return neg


def _iadd(alo, ahi, blo, bhi):
    return _down(alo + blo), _up(ahi + bhi)


def _pivot2(lo, hi, active, rest) -> bool:
    """Eliminate a 2x2 block with certified negative determinant.

    Such a block contributes one negative and one positive eigenvalue.
    Returns ``False`` when no block qualifies.
    """
    sub = np.ix_(rest, rest)
    blo, bhi = lo[sub], hi[sub]
    # |b|^2 lower bound against |d_i d_j| upper bound
    babs = np.where((blo > 0) | (bhi < 0), np.minimum(np.abs(blo), np.abs(bhi)), 0.0)
    dmax = np.maximum(np.abs(np.diag(blo)), np.abs(np.diag(bhi)))
    score = _down(babs * babs) - _up(np.outer(dmax, dmax))
    np.fill_diagonal(score, -np.inf)
    a, b = np.unravel_index(int(np.argmax(score)), score.shape)
    if not score[a, b] > 0:
        return False
    i, j = int(rest[a]), int(rest[b])
    # det = d_i d_j - b^2, certified negative
    dd = _imul(lo[i, i], hi[i, i], lo[j, j], hi[j, j])
    bb = _imul(lo[i, j], hi[i, j], lo[i, j], hi[i, j])
    det_lo, det_hi = _down(dd[0] - bb[1]), _up(dd[1] - bb[0])
    if not det_hi < 0:
        return False
    rlo, rhi = _down(1.0 / det_hi), _up(1.0 / det_lo)
    # inverse block entries (1/det) * [[d_j, -b], [-b, d_i]]
    inv = {
        (0, 0): _imul(lo[j, j], hi[j, j], rlo, rhi),
        (1, 1): _imul(lo[i, i], hi[i, i], rlo, rhi),
        (0, 1): _imul(-hi[i, j], -lo[i, j], rlo, rhi),
    }
    inv[(1, 0)] = inv[(0, 1)]
    active[i] = active[j] = False
    others = np.flatnonzero(active)
    if others.size == 0:
        return True
    cols = [(lo[others, i], hi[others, i]), (lo[others, j], hi[others, j])]
    # W = C P^{-1}
    w = []
    for c in range(2):
        acc = (np.zeros(others.size), np.zeros(others.size))
        for r in range(2):
            acc = _iadd(*acc, *_imul(cols[r][0], cols[r][1], *inv[(r, c)]))
        w.append(acc)
    upd_lo = np.zeros((others.size, others.size))
    upd_hi = np.zeros((others.size, others.size))
    for c in range(2):
        plo, phi = _imul(w[c][0][:, None], w[c][1][:, None],
                         cols[c][0][None, :], cols[c][1][None, :])
        upd_lo, upd_hi = _iadd(upd_lo, upd_hi, plo, phi)
    sub = np.ix_(others, others)
    lo[sub] = _down(lo[sub] - upd_hi)
    hi[sub] = _up(hi[sub] - upd_lo)
    return True
