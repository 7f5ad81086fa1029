"""Certified enclosures of adjacency eigenvalues and eigenvector estimates.

Every enclosure comes from exact eigenvalue counting at dyadic probe points:
``count_below(t)`` is the number of eigenvalues strictly below ``t``.  If
``count_below(a) <= k < count_below(b)`` then the k-th smallest eigenvalue
lies in ``[a, b)``.  Floating-point eigenvalues are only used to place the
first bracket; the bracket is verified by counting and then bisected.

Backends:

``sturm_exact``
    Sturm chains of the squarefree factors of the integer characteristic
    polynomial.  Also yields exact multiplicities.
``ldl_exact``
    Rational symmetric elimination of ``A - tI`` (Sylvester inertia).
``interval_ldl``
    Float64 interval elimination; on an undecided pivot the count falls back
    to ``ldl_exact`` (up to ``EXACT_LDL_CAP`` vertices).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Graph, is_connected
from .interval import Interval, round_up, sqrt_up
from .linalg import SturmCounter, charpoly, inertia_exact, negative_count_interval

DEFAULT_MAX_BITS = int(os.environ.get("SPECTRALCERT_MAX_BITS", "512"))
DEFAULT_TOL = Fraction(1, 1 << 40)
STURM_AUTO_MAX_N = 32
EXACT_LDL_CAP = 400
BACKENDS = ("sturm_exact", "ldl_exact", "interval_ldl")

_FIRST_HALF_WIDTH = Fraction(1, 1 << 30)


class Undecided(RuntimeError):
    """A certified answer is out of reach under the current resource caps."""


@dataclass(frozen=True)
class SpectralSummary:
    mu: Interval
    mu_min: Interval
    precision_bits: int
    method: str
    capped: bool = False


@dataclass(frozen=True)
class EigenvectorEstimate:
    """Approximate eigenvector with a certified entrywise error bound.

    Some exact eigenvector ``x`` of ``eigenvalue`` with ``||x|| = 1``
    satisfies ``|x_i - entries[i]| <= delta`` for every ``i``.  When the
    eigenvalue is multiple, ``x`` lies in its eigenspace.
    """

    entries: tuple[Fraction, ...]
    delta: Fraction
    eigenvalue: Interval
    multiplicity: int
    gap: Fraction
    meets_tol: bool = True

    @property
    def norm(self) -> float:
        return math.sqrt(sum(float(x) ** 2 for x in self.entries))

    def entry(self, i: int) -> Interval:
        return Interval(self.entries[i] - self.delta, self.entries[i] + self.delta)

    @property
    def certified_positive(self) -> bool:
        return all(x - self.delta > 0 for x in self.entries)


def _dyadic_floor(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _dyadic_ceil(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


def _bits(x: Fraction) -> int:
    return x.denominator.bit_length() - 1


class SpectralOracle:
    """Per-graph eigenvalue counter with cached brackets.

    ``charpoly`` may be supplied when it is already known exactly.
    """

    def __init__(self, g: Graph, backend: str = "auto", max_bits: int = DEFAULT_MAX_BITS,
                 charpoly_coeffs: Sequence[int] | None = None):
        if backend == "auto":
            backend = "sturm_exact" if g.n <= STURM_AUTO_MAX_N else "interval_ldl"
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        self.g = g
        self.n = g.n
        self.backend = backend
        self.max_bits = max_bits
        self._rows = g.adjacency_matrix().tolist()
        self._matrix = g.adjacency_matrix(np.float64)
        self._cp = list(charpoly_coeffs) if charpoly_coeffs is not None else None
        self._sturm: SturmCounter | None = None
        self._approx: np.ndarray | None = None
        self._brackets: dict[int, tuple[Fraction, Fraction]] = {}
        self._points: dict[int, Fraction] = {}
        self._cache: dict[Fraction, tuple[int, int | None]] = {}
        self.bits_used = 0
        self.capped = False

    # -- counting ------------------------------------------------------

    @property
    def sturm(self) -> SturmCounter:
        if self._sturm is None:
            if self._cp is None:
                self._cp = charpoly(self._rows)
            self._sturm = SturmCounter(self._cp)
        return self._sturm

    def count(self, t: Fraction, need_zero: bool = False) -> tuple[int, int | None]:
        """``(eigenvalues < t, eigenvalues == t or None if unknown)``."""
        t = Fraction(t)
        hit = self._cache.get(t)
        if hit is not None and (hit[1] is not None or not need_zero):
            return hit
        if self.backend == "sturm_exact":
            res = self.sturm.count(t)
        elif self.backend == "ldl_exact" or need_zero:
            neg, zero, _ = inertia_exact(self._rows, t)
            res = (neg, zero)
        else:
            neg = negative_count_interval(self._matrix, t)
            if neg is None:
                if self.n > EXACT_LDL_CAP:
                    raise Undecided(f"interval elimination undecided at t={float(t)!r}")
                neg = inertia_exact(self._rows, t)[0]
            res = (neg, None)
        self._cache[t] = res
        return res

    def count_below(self, t: Fraction) -> int:
        return self.count(t)[0]

    # -- enclosures ----------------------------------------------------

    @property
    def approx(self) -> np.ndarray:
        if self._approx is None:
            self._approx = np.linalg.eigvalsh(self._matrix) if self.n > 1 else np.zeros(1)
        return self._approx

    def _exact_point(self, idx: int, t: Fraction) -> bool:
        below, at = self.count(t, need_zero=True)
        if at and below <= idx < below + at:
            for k in range(below, below + at):
                self._points[k] = t
            return True
        return False

    def _initial_bracket(self, idx: int) -> tuple[Fraction, Fraction]:
        guess = float(self.approx[idx])
        r = round(guess)
        if abs(guess - r) < 1e-6 and self._exact_point(idx, Fraction(r)):
            t = Fraction(r)
            return t, t
        h = _FIRST_HALF_WIDTH
        g = Fraction(guess)
        delta = max(self.g.degrees)
        while h < 2 * delta + 2:
            a = _dyadic_floor(g - h, 40)
            b = _dyadic_ceil(g + h, 40)
            if self.count_below(a) <= idx < self.count_below(b):
                return a, b
            h *= 64
        # every eigenvalue lies in [-Delta, Delta]
        a, b = Fraction(-delta), Fraction(delta + 1)
        assert self.count_below(a) <= idx < self.count_below(b)
        return a, b

    def enclosure(self, idx: int, tol: Fraction = DEFAULT_TOL) -> Interval:
        """Enclosure of the ``idx``-th smallest eigenvalue (with multiplicity)."""
        if not 0 <= idx < self.n:
            raise IndexError(idx)
        if self.n == 1:
            return Interval.point(0)
        if idx in self._points:
            return Interval.point(self._points[idx])
        a, b = self._brackets.get(idx) or self._initial_bracket(idx)
        if idx in self._points:
            return Interval.point(self._points[idx])
        tol = Fraction(tol)
        while b - a > tol:
            mid = (a + b) / 2
            if _bits(mid) > self.max_bits:
                self.capped = True
                break
            below, at = self.count(mid)
            if at and below <= idx < below + at:
                for k in range(below, below + at):
                    self._points[k] = mid
                return Interval.point(mid)
            if below >= idx + 1:
                b = mid
            else:
                a = mid
        self._brackets[idx] = (a, b)
        self.bits_used = max(self.bits_used, _bits(a), _bits(b))
        return Interval(a, b)

    def mu(self, tol: Fraction = DEFAULT_TOL) -> Interval:
        return self.enclosure(self.n - 1, tol)

    def mu_min(self, tol: Fraction = DEFAULT_TOL) -> Interval:
        return self.enclosure(0, tol)

    def cluster(self, idx: int) -> tuple[int, int]:
        """Index range ``[first, last]`` of the eigenvalues equal to ``λ_idx``.

        Rational eigenvalues found by counting give exact multiplicities;
        otherwise the Sturm factorisation does (small graphs), and large
        graphs only get an answer when ``λ_idx`` is certified simple.
        """
        enc = self.enclosure(idx)
        tol = max(enc.width, Fraction(1, 1 << 20))
        use_sturm = self.backend == "sturm_exact" or self.n <= STURM_AUTO_MAX_N
        while True:
            enc = self.enclosure(idx, tol)
            if idx in self._points:
                below, at = self.count(self._points[idx], need_zero=True)
                return below, below + at - 1
            a, b = enc.lo, enc.hi
            if use_sturm:
                sturm = self.sturm
                if sturm.count(a)[1] == 0 and sturm.count(b)[1] == 0:
                    if len(sturm.multiplicity_in(a, b)) == 1:
                        return sturm.count(a)[0], sturm.count(b)[0] - 1
            elif self.count_below(b) - self.count_below(a) == 1:
                return idx, idx
            if _bits(a) >= self.max_bits or _bits(b) >= self.max_bits:
                raise Undecided("could not isolate the eigenvalue cluster")
            tol /= 1024

    def summary(self, tol: Fraction = DEFAULT_TOL) -> SpectralSummary:
        mu = self.mu(tol)
        mu_min = self.mu_min(tol)
        return SpectralSummary(mu=mu, mu_min=mu_min, precision_bits=self.bits_used,
                               method=self.backend, capped=self.capped)


def eigenvalue_count_below(g: Graph, t, backend: str = "auto") -> int:
    """Exact number of adjacency eigenvalues strictly below ``t``."""
    t = Fraction(t)
    if backend == "interval_ldl":
        neg = negative_count_interval(g.adjacency_matrix(np.float64), t)
        if neg is not None:
            return neg
        backend = "ldl_exact"
    return SpectralOracle(g, backend=backend).count_below(t)


def extreme_eigenvalues(g: Graph, tol=DEFAULT_TOL, backend: str = "auto",
                        max_bits: int = DEFAULT_MAX_BITS) -> SpectralSummary:
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    return SpectralOracle(g, backend=backend, max_bits=max_bits).summary(tol)


# ---------------------------------------------------------------------------
# Eigenvectors

def _float_eigvec(a: np.ndarray, idx: int) -> np.ndarray:
    _, vecs = np.linalg.eigh(a)
    return vecs[:, idx]


def _refine_mp(g: Graph, x0: Sequence[Fraction], sigma: Fraction, prec: int) -> list[Fraction]:
    """Inverse iteration at ``prec`` bits, returning exact dyadic entries.

    ``sigma`` should sit just outside the spectrum next to the wanted
    eigenvalue so the shifted matrix stays nonsingular.
    """
    import mpmath

    ctx = mpmath.mp.clone()
    ctx.prec = prec
    n = g.n
    a = ctx.matrix(n, n)
    s = ctx.mpf(sigma.numerator) / sigma.denominator
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    for i in range(n):
        a[i, i] -= s
    x = ctx.matrix([ctx.mpf(v.numerator) / v.denominator for v in x0])
    for _ in range(3):
        try:
            y = ctx.lu_solve(a, x)
        except ZeroDivisionError:
            break
        nrm = ctx.norm(y)
        if not nrm:
            break
        x = y / nrm
    out = []
    for v in x:
        sign, man, exp, _ = ctx.mpf(v)._mpf_
        out.append((-1) ** sign * Fraction(int(man)) * Fraction(2) ** int(exp))
    return out


def _certify(g: Graph, x: Sequence[Fraction], sigma: Fraction, gap: Fraction) -> Fraction:
    """Entrywise distance bound from ``x`` to a unit vector of the eigenspace.

    With ``r = (A - σI)x`` and every eigenvalue outside the cluster at
    distance ``>= gap`` from σ, ``sin θ <= ||r|| / (||x|| gap)`` where θ is
    the angle between ``x`` and its projection onto the eigenspace.
    """
    adj = g.adjacency_lists()
    r = [sum((x[j] for j in adj[i]), Fraction(0)) - sigma * x[i] for i in range(g.n)]
    rr = sum(v * v for v in r)
    xx = sum(v * v for v in x)
    sin2 = rr / (xx * gap * gap)
    direction = sqrt_up(round_up(2 * sin2, 64), 64)
    norm = Interval.point(xx).sqrt()
    scale = (1 - norm.reciprocal()).abs().hi
    biggest = max(abs(v) for v in x)
    return round_up(direction + biggest * scale, 64)


def eigenvector_estimate(g: Graph, which: str = "max", tol=Fraction(1, 10**12),
                         oracle: SpectralOracle | None = None) -> EigenvectorEstimate:
    """Certified eigenvector for μ (``which="max"``) or μ_min (``"min"``)."""
    if which not in ("max", "min"):
        raise ValueError("which must be 'max' or 'min'")
    tol = Fraction(tol)
    oracle = oracle or SpectralOracle(g)
    n = g.n
    if n == 1:
        return EigenvectorEstimate((Fraction(1),), Fraction(0), Interval.point(0), 1, Fraction(1))
    idx = n - 1 if which == "max" else 0
    first, last = oracle.cluster(idx)
    mult = last - first + 1
    if mult == n:
        raise Undecided("all eigenvalues coincide; no gap to certify against")
    lam = oracle.enclosure(idx, tol)
    neighbour = first - 1 if which == "max" else last + 1
    other = oracle.enclosure(neighbour, tol)
    gap = lam.lo - other.hi if which == "max" else other.lo - lam.hi
    if gap <= 0:
        raise Undecided("eigenvalue gap not resolved")
    # residual contains |λ - σ| so the enclosure must be tight relative to tol*gap
    lam = oracle.enclosure(idx, min(tol * gap / 4, tol))
    sigma = lam.lo if which == "max" else lam.hi
    gap = lam.lo - other.hi if which == "max" else other.lo - lam.hi

    x = [Fraction(float(v)) for v in _float_eigvec(oracle._matrix, idx)]
    delta = _certify(g, x, sigma, gap)
    prec = 128
    while delta > tol and prec <= oracle.max_bits:
        nudge = Fraction(1, 1 << (prec // 2))
        shift = lam.hi + nudge if which == "max" else lam.lo - nudge
        x = _refine_mp(g, x, shift, prec)
        delta = _certify(g, x, sigma, gap)
        prec *= 2
    lead = next((v for v in x if abs(v) > delta), None)
    if lead is None:
        lead = next((v for v in x if v != 0), Fraction(1))
    if lead < 0:
        x = [-v for v in x]
    return EigenvectorEstimate(tuple(x), delta, lam, mult, gap, meets_tol=delta <= tol)


def perron_vector_estimate(g: Graph, tol=Fraction(1, 10**12),
                           oracle: SpectralOracle | None = None) -> EigenvectorEstimate:
    if not is_connected(g):
        raise ValueError("Perron vector requires a connected graph")
    est = eigenvector_estimate(g, "max", tol, oracle)
    if est.multiplicity != 1:
        raise Undecided("spectral radius of a connected graph must be simple")
    return est


def rayleigh_quotient(g: Graph, x: Sequence) -> Interval:
    """Exact Rayleigh quotient ``x^T A x / x^T x`` as a point interval."""
    if len(x) != g.n:
        raise ValueError("vector length must equal the vertex count")
    xs = [Fraction(v) for v in x]
    den = sum(v * v for v in xs)
    if den == 0:
        raise ValueError("Rayleigh quotient of the zero vector")
    num = 2 * sum(xs[u] * xs[v] for u, v in g.edges())
    return Interval.point(num / den)
