"""Hot numeric kernels, numba-compiled by default with a pure-NumPy fallback.

Two inner loops dominate the runtime of this package: the simplex pivot loop
of the LP membership oracle and the per-sample inverse-CDF loop of the
homodyne Monte Carlo. Both are implemented twice, once as a numba ``@njit``
kernel and once in vectorised NumPy, with identical arithmetic so the two
paths produce bit-identical results.

Set ``CHSH_STEERING_NO_NUMBA=1`` in the environment (before import) to force
the NumPy path; it is also selected automatically when numba is unavailable.
``benchmarks/bench_kernels.py`` times one path against the other.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("CHSH_STEERING_NO_NUMBA", "").strip().lower()
_numba_requested = _flag not in ("1", "true", "yes", "on")

if _numba_requested:
    try:
        import numba
    except ImportError:  # pragma: no cover - depends on environment
        numba = None
else:
    numba = None

NUMBA_ENABLED = numba is not None

# Simplex status codes shared by both implementations.
OPTIMAL = 0
UNBOUNDED = 1
ITERATION_LIMIT = 2


# ---------------------------------------------------------------------------
# Simplex pivot loop
# ---------------------------------------------------------------------------

def simplex_pivots_numpy(tableau, basis, eps, max_iter, bland_after):
    """Run simplex pivots on a dense minimisation tableau, in place.

    ``tableau`` has shape (m+1, n+1): m constraint rows kept with nonnegative
    right-hand sides, a reduced-cost row at the bottom and the RHS in the last
    column. ``basis`` holds the m basic column indices.

    The entering column is the most negative reduced cost (first index on
    ties) while the objective makes strict progress; after ``bland_after``
    consecutive stalled pivots the rule switches permanently to Bland's
    lowest-eligible-index, which rules out cycling and guarantees
    termination. The leaving row is always the minimum-ratio row with ties
    broken by the lowest basic index. Returns OPTIMAL, UNBOUNDED or
    ITERATION_LIMIT.
    """
    m = basis.shape[0]
    n = tableau.shape[1] - 1
    stall = 0
    bland = False
    last_objective = tableau[m, -1]
    for _ in range(max_iter):
        reduced = tableau[m, :n]
        if bland:
            negative = np.nonzero(reduced < -eps)[0]
            if negative.size == 0:
                return OPTIMAL
            col = int(negative[0])
        else:
            col = int(np.argmin(reduced))
            if reduced[col] >= -eps:
                return OPTIMAL
        column = tableau[:m, col]
        rows = np.nonzero(column > eps)[0]
        if rows.size == 0:
            return UNBOUNDED
        ratios = tableau[rows, -1] / column[rows]
        best = ratios.min()
        tied = rows[ratios == best]
        row = int(tied[np.argmin(basis[tied])])

        piv = tableau[row, col]
        tableau[row, :] /= piv
        factors = tableau[:, col].copy()
        factors[row] = 0.0
        tableau -= np.outer(factors, tableau[row, :])
        basis[row] = col

        if tableau[m, -1] > last_objective:
            last_objective = tableau[m, -1]
            stall = 0
        else:
            stall += 1
            if stall >= bland_after:
                bland = True
    return ITERATION_LIMIT


def _simplex_pivots_loops(tableau, basis, eps, max_iter, bland_after):
    # Same pivot sequence and per-element arithmetic as the NumPy version.
    m = basis.shape[0]
    n = tableau.shape[1] - 1
    stall = 0
    bland = False
    last_objective = tableau[m, n]
    for _ in range(max_iter):
        col = -1
        if bland:
            for j in range(n):
                if tableau[m, j] < -eps:
                    col = j
                    break
            if col == -1:
                return 0
        else:
            col = 0
            most = tableau[m, 0]
            for j in range(1, n):
                if tableau[m, j] < most:
                    most = tableau[m, j]
                    col = j
            if most >= -eps:
                return 0
        best = np.inf
        for i in range(m):
            if tableau[i, col] > eps:
                r = tableau[i, n] / tableau[i, col]
                if r < best:
                    best = r
        if best == np.inf:
            return 1
        row = -1
        for i in range(m):
            if tableau[i, col] > eps:
                r = tableau[i, n] / tableau[i, col]
                if r == best and (row == -1 or basis[i] < basis[row]):
                    row = i

        piv = tableau[row, col]
        for k in range(n + 1):
            tableau[row, k] /= piv
        for i in range(m + 1):
            if i != row:
                f = tableau[i, col]
                for k in range(n + 1):
                    tableau[i, k] -= f * tableau[row, k]
        basis[row] = col

        if tableau[m, n] > last_objective:
            last_objective = tableau[m, n]
            stall = 0
        else:
            stall += 1
            if stall >= bland_after:
                bland = True
    return 2


# ---------------------------------------------------------------------------
# Homodyne Monte Carlo sampling loop
# ---------------------------------------------------------------------------

def mc_products_numpy(u, grid, cdf_a, coef, cum_b):
    """Sign products of quadrature sample pairs drawn by inverse CDF.

    ``u`` is (n, 2) uniforms; ``grid`` the quadrature abscissae; ``cdf_a`` the
    normalised CDF of the first party's marginal on the grid; ``coef`` the
    3x3 polynomial coefficient matrix of the joint density; ``cum_b`` the
    (3, g) cumulative integrals of the second party's envelope times
    (1, y, y^2). Returns the (n,) array of sign(x)*sign(y) products.
    """
    g = grid.shape[0]
    u1 = u[:, 0]
    k = np.searchsorted(cdf_a, u1, side="right") - 1
    k = np.clip(k, 0, g - 2)
    dc = cdf_a[k + 1] - cdf_a[k]
    safe = np.where(dc > 0.0, dc, 1.0)
    x = np.where(dc > 0.0,
                 grid[k] + (u1 - cdf_a[k]) * (grid[k + 1] - grid[k]) / safe,
                 grid[k])

    d0 = coef[0, 0] + coef[1, 0] * x + coef[2, 0] * x * x
    d1 = coef[0, 1] + coef[1, 1] * x + coef[2, 1] * x * x
    d2 = coef[0, 2] + coef[1, 2] * x + coef[2, 2] * x * x
    total = d0 * cum_b[0, g - 1] + d1 * cum_b[1, g - 1] + d2 * cum_b[2, g - 1]
    target = u[:, 1] * total

    lo = np.zeros(u.shape[0], dtype=np.int64)
    hi = np.full(u.shape[0], g - 1, dtype=np.int64)
    for _ in range(int(np.ceil(np.log2(g))) + 2):
        active = hi - lo > 1
        mid = (lo + hi) // 2
        val = d0 * cum_b[0, mid] + d1 * cum_b[1, mid] + d2 * cum_b[2, mid]
        le = val <= target
        lo = np.where(active & le, mid, lo)
        hi = np.where(active & ~le, mid, hi)

    m_lo = d0 * cum_b[0, lo] + d1 * cum_b[1, lo] + d2 * cum_b[2, lo]
    m_hi = d0 * cum_b[0, lo + 1] + d1 * cum_b[1, lo + 1] + d2 * cum_b[2, lo + 1]
    dm = m_hi - m_lo
    safe_m = np.where(dm > 0.0, dm, 1.0)
    y = np.where(dm > 0.0,
                 grid[lo] + (target - m_lo) * (grid[lo + 1] - grid[lo]) / safe_m,
                 grid[lo])

    sx = np.where(x >= 0.0, 1.0, -1.0)
    sy = np.where(y >= 0.0, 1.0, -1.0)
    return sx * sy


def _mc_products_loops(u, grid, cdf_a, coef, cum_b):
    n = u.shape[0]
    g = grid.shape[0]
    out = np.empty(n)
    for i in range(n):
        u1 = u[i, 0]
        lo = 0
        hi = g
        while lo < hi:
            mid = (lo + hi) // 2
            if cdf_a[mid] <= u1:
                lo = mid + 1
            else:
                hi = mid
        k = lo - 1
        if k < 0:
            k = 0
        if k > g - 2:
            k = g - 2
        dc = cdf_a[k + 1] - cdf_a[k]
        if dc > 0.0:
            x = grid[k] + (u1 - cdf_a[k]) * (grid[k + 1] - grid[k]) / dc
        else:
            x = grid[k]

        d0 = coef[0, 0] + coef[1, 0] * x + coef[2, 0] * x * x
        d1 = coef[0, 1] + coef[1, 1] * x + coef[2, 1] * x * x
        d2 = coef[0, 2] + coef[1, 2] * x + coef[2, 2] * x * x
        total = d0 * cum_b[0, g - 1] + d1 * cum_b[1, g - 1] + d2 * cum_b[2, g - 1]
        target = u[i, 1] * total

        lo = 0
        hi = g - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            val = d0 * cum_b[0, mid] + d1 * cum_b[1, mid] + d2 * cum_b[2, mid]
            if val <= target:
                lo = mid
            else:
                hi = mid
        m_lo = d0 * cum_b[0, lo] + d1 * cum_b[1, lo] + d2 * cum_b[2, lo]
        m_hi = d0 * cum_b[0, lo + 1] + d1 * cum_b[1, lo + 1] + d2 * cum_b[2, lo + 1]
        dm = m_hi - m_lo
        if dm > 0.0:
            y = grid[lo] + (target - m_lo) * (grid[lo + 1] - grid[lo]) / dm
        else:
            y = grid[lo]

        sx = 1.0 if x >= 0.0 else -1.0
        sy = 1.0 if y >= 0.0 else -1.0
        out[i] = sx * sy
    return out


if NUMBA_ENABLED:
    simplex_pivots_numba = numba.njit(cache=True)(_simplex_pivots_loops)
    mc_products_numba = numba.njit(cache=True)(_mc_products_loops)
    simplex_pivots = simplex_pivots_numba
    mc_products = mc_products_numba
else:  # pragma: no cover - exercised via the env flag in tests
    simplex_pivots_numba = None
    mc_products_numba = None
    simplex_pivots = simplex_pivots_numpy
    mc_products = mc_products_numpy
