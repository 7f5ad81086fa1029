"""Vectorised tables over the whole edge-mask space of small orders.

For ``n <= 7`` every labelled graph is an integer mask over
:func:`graph.pair_order`.  :class:`MaskTable` computes, for all ``2**N`` masks
at once, the exact integer characteristic polynomial (Newton identities on
traces of adjacency powers), connectivity, distances, diameter, walk counts,
degrees and bipartiteness.

Matrix powers run in float64; every entry stays below ``6**7 * 7 < 2**53`` so
the products are exact and are cast back to int64.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .graph import MAX_ENUMERATE_N, GraphError, pair_order

CHUNK = 1 << 15


def pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    pairs = pair_order(n)
    return (np.array([p[0] for p in pairs], dtype=np.int64),
            np.array([p[1] for p in pairs], dtype=np.int64))


def adjacency_stack(n: int, masks: np.ndarray) -> np.ndarray:
    """``(len(masks), n, n)`` float64 adjacency matrices."""
    masks = np.asarray(masks, dtype=np.int64)
    ii, jj = pair_arrays(n)
    a = np.zeros((masks.size, n, n), dtype=np.float64)
    for k in range(ii.size):
        bit = ((masks >> k) & 1).astype(np.float64)
        a[:, ii[k], jj[k]] = bit
        a[:, jj[k], ii[k]] = bit
    return a


def charpoly_from_traces(traces: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients (highest degree first).

    ``traces[:, k-1] = tr(A**k)`` for ``k = 1..n``.  Newton's identities give
    the elementary symmetric functions ``e_k``; the polynomial is
    ``sum (-1)**k e_k x**(n-k)``.
    """
    traces = np.asarray(traces, dtype=np.int64)
    rows, n = traces.shape
    e = np.zeros((rows, n + 1), dtype=np.int64)
    e[:, 0] = 1
    for k in range(1, n + 1):
        acc = np.zeros(rows, dtype=np.int64)
        for i in range(1, k + 1):
            term = e[:, k - i] * traces[:, i - 1]
            acc += term if i % 2 == 1 else -term
        if np.any(acc % k):
            raise ArithmeticError("Newton identity division was not exact")
        e[:, k] = acc // k
    signs = np.array([(-1) ** k for k in range(n + 1)], dtype=np.int64)
    return e * signs


class MaskTable:
    """All per-mask invariants for order ``n``.

    Attributes (arrays indexed by mask):
      charpoly  (M, n+1) int64
      connected (M,) bool
      diameter  (M,) int8, -1 when disconnected
      dist      (M, n, n) int8, -1 for unreachable pairs
      walks     (M, n+1) int64, ``walks[:, k] = w_{k+1}`` (grand sum of A**k)
      bipartite (M,) bool
      max_degree, min_degree, edges (M,) int8
    """

    def __init__(self, n: int):
        if not 1 <= n <= MAX_ENUMERATE_N:
            raise GraphError(f"mask tables support 1 <= n <= {MAX_ENUMERATE_N}")
        self.n = n
        self.npairs = n * (n - 1) // 2
        self.size = 1 << self.npairs
        M = self.size
        self.charpoly = np.zeros((M, n + 1), dtype=np.int64)
        self.connected = np.zeros(M, dtype=bool)
        self.diameter = np.full(M, -1, dtype=np.int8)
        self.dist = np.full((M, n, n), -1, dtype=np.int8)
        self.walks = np.zeros((M, n + 1), dtype=np.int64)
        self.bipartite = np.zeros(M, dtype=bool)
        self.max_degree = np.zeros(M, dtype=np.int8)
        self.min_degree = np.zeros(M, dtype=np.int8)
        self.edges = np.zeros(M, dtype=np.int8)
        for start in range(0, M, CHUNK):
            self._fill(np.arange(start, min(M, start + CHUNK), dtype=np.int64))

    def _fill(self, masks: np.ndarray) -> None:
        n = self.n
        sl = slice(int(masks[0]), int(masks[-1]) + 1)
        a = adjacency_stack(n, masks)
        deg = a.sum(axis=2)
        self.max_degree[sl] = deg.max(axis=1)
        self.min_degree[sl] = deg.min(axis=1)
        self.edges[sl] = deg.sum(axis=1) // 2

        ones = np.ones(n)
        traces = np.zeros((masks.size, n), dtype=np.int64)
        walks = np.zeros((masks.size, n + 1), dtype=np.int64)
        walks[:, 0] = n
        power = np.broadcast_to(np.eye(n), a.shape).copy()
        odd_closed = np.zeros(masks.size, dtype=bool)
        for k in range(1, n + 1):
            power = power @ a
            traces[:, k - 1] = np.trace(power, axis1=1, axis2=2).astype(np.int64)
            walks[:, k] = (power @ ones).sum(axis=1).astype(np.int64)
            if k % 2 == 1:
                odd_closed |= traces[:, k - 1] > 0
        self.charpoly[sl] = charpoly_from_traces(traces)
        self.walks[sl] = walks
        # an odd cycle, if any, has length <= n and shows up as a closed odd walk
        self.bipartite[sl] = ~odd_closed

        reach = np.broadcast_to(np.eye(n, dtype=bool), a.shape).copy()
        dist = np.where(reach, 0, -1).astype(np.int8)
        step = a + np.eye(n)
        for k in range(1, n):
            new = (reach.astype(np.float64) @ step) > 0
            dist[new & ~reach] = k
            reach = new
        self.dist[sl] = dist
        conn = reach.all(axis=(1, 2))
        self.connected[sl] = conn
        diam = dist.max(axis=(1, 2))
        self.diameter[sl] = np.where(conn, diam, -1)


@lru_cache(maxsize=None)
def mask_table(n: int) -> MaskTable:
    return MaskTable(n)


def connected_masks(n: int) -> np.ndarray:
    """Sorted masks of the connected labelled graphs on ``n`` vertices."""
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    return np.flatnonzero(_connected_flags(n)).astype(np.int64)


@lru_cache(maxsize=None)
def _connected_flags(n: int) -> np.ndarray:
    npairs = n * (n - 1) // 2
    M = 1 << npairs
    flags = np.zeros(M, dtype=bool)
    step_eye = np.eye(n)
    for start in range(0, M, CHUNK):
        masks = np.arange(start, min(M, start + CHUNK), dtype=np.int64)
        a = adjacency_stack(n, masks)
        reach = np.broadcast_to(np.eye(n), a.shape).copy()
        step = a + step_eye
        for _ in range(n - 1):
            reach = ((reach @ step) > 0).astype(np.float64)
        flags[start:start + masks.size] = reach[:, 0, :].all(axis=1)
    return flags
