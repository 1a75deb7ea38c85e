"""
Compiled graph kernels.

Every routine works on the raw buffers of a graph:

- ``adj``        (n, n) uint8 symmetric adjacency, zero diagonal
- ``degree``     (n,) int64
- ``edges``      (D, 2) int64, rows [0, edge_count) hold the current edges (i < j)
- ``edge_pos``   (n, n) int64, row of (i, j) in ``edges`` or -1
- ``edge_count`` (1,) int64

Model terms are passed as a compiled table: ``codes`` (d,) int64,
``params`` (d,) float64 and ``indicators`` (d, n) float64.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Term codes shared with statistics.registry
EDGES = 0
KSTAR = 1
TRIANGLES = 2
GWESP = 3
NODEFACTOR = 4


# =========================
# Structure
# =========================

@njit(cache=True, nogil=True)
def toggle_dyad(adj, degree, edges, edge_pos, edge_count, i, j):
    """Flip dyad (i, j), i < j, keeping every buffer consistent."""
    if adj[i, j]:
        k = edge_pos[i, j]
        last = edge_count[0] - 1
        if k != last:
            a = edges[last, 0]
            b = edges[last, 1]
            edges[k, 0] = a
            edges[k, 1] = b
            edge_pos[a, b] = k
        edge_pos[i, j] = -1
        edge_count[0] = last
        adj[i, j] = 0
        adj[j, i] = 0
        degree[i] -= 1
        degree[j] -= 1
    else:
        m = edge_count[0]
        edges[m, 0] = i
        edges[m, 1] = j
        edge_pos[i, j] = m
        edge_count[0] = m + 1
        adj[i, j] = 1
        adj[j, i] = 1
        degree[i] += 1
        degree[j] += 1


@njit(cache=True, nogil=True)
def undo_toggles(adj, degree, edges, edge_pos, edge_count, log, count):
    for t in range(count - 1, -1, -1):
        toggle_dyad(adj, degree, edges, edge_pos, edge_count, log[t, 0], log[t, 1])


@njit(cache=True, nogil=True)
def shared_partners(adj, a, b):
    n = adj.shape[0]
    c = 0
    for k in range(n):
        if adj[a, k] and adj[b, k]:
            c += 1
    return c


# =========================
# Change statistics
# =========================

@njit(cache=True, nogil=True)
def _binom(n, k):
    if k < 0 or n < k:
        return 0.0
    out = 1.0
    for t in range(k):
        out = out * (n - t) / (t + 1)
    return out


@njit(cache=True, nogil=True)
def _gwesp_change(adj, i, j, decay):
    # Partner counts are taken with (i, j) absent.
    present = 1 if adj[i, j] else 0
    r = 1.0 - np.exp(-decay)
    n = adj.shape[0]
    c = 0
    total = 0.0
    for k in range(n):
        if adj[i, k] and adj[j, k]:
            c += 1
            sik = shared_partners(adj, i, k) - present
            sjk = shared_partners(adj, j, k) - present
            total += r ** sik - r ** (sik + 1)
            total += r ** sjk - r ** (sjk + 1)
    total += 1.0 - r ** c
    return np.exp(decay) * total


@njit(cache=True, nogil=True)
def change_vector(adj, degree, i, j, codes, params, indicators, out):
    """Fill ``out`` with s(y with ij=1) - s(y with ij=0)."""
    present = 1 if adj[i, j] else 0
    for t in range(codes.shape[0]):
        code = codes[t]
        if code == EDGES:
            out[t] = 1.0
        elif code == KSTAR:
            k = int(params[t])
            out[t] = (_binom(degree[i] - present, k - 1)
                      + _binom(degree[j] - present, k - 1))
        elif code == TRIANGLES:
            out[t] = float(shared_partners(adj, i, j))
        elif code == GWESP:
            out[t] = _gwesp_change(adj, i, j, params[t])
        else:
            out[t] = indicators[t, i] + indicators[t, j]


@njit(cache=True, nogil=True)
def change_matrix(adj, degree, codes, params, indicators):
    n = adj.shape[0]
    n_dyads = n * (n - 1) // 2
    d = codes.shape[0]
    rows = np.empty((n_dyads, d))
    response = np.empty(n_dyads, dtype=np.uint8)
    buf = np.empty(d)
    r = 0
    for i in range(n):
        for j in range(i + 1, n):
            change_vector(adj, degree, i, j, codes, params, indicators, buf)
            for t in range(d):
                rows[r, t] = buf[t]
            response[r] = adj[i, j]
            r += 1
    return rows, response


# =========================
# Tie-no-tie sampler
# =========================

@njit(cache=True, nogil=True)
def _proposal_prob(edge_count, present, n_dyads):
    if edge_count == 0:
        return 1.0 / n_dyads
    return 0.5 * present / edge_count + 0.5 / n_dyads


@njit(cache=True, nogil=True)
def tnt_run(adj, degree, edges, edge_pos, edge_count,
            theta, codes, params, indicators,
            uniforms, stats, burn, thin,
            out_stats, out_density, toggle_log):
    """
    Run ``uniforms.shape[0]`` TNT steps in place.

    ``stats`` is advanced by the change statistics of accepted toggles.
    After step ``burn + r * thin`` (r = 1, 2, ...) the current ``stats``
    and density are written to row r - 1 of the outputs while rows remain.
    Accepted toggles are written to ``toggle_log`` while it has room.

    Returns (accepted, logged).
    """
    n = adj.shape[0]
    n_dyads = n * (n - 1) // 2
    d = codes.shape[0]
    delta = np.empty(d)
    accepted = 0
    logged = 0
    row = 0
    rows_out = out_stats.shape[0]
    for step in range(uniforms.shape[0]):
        m = edge_count[0]
        if m > 0 and uniforms[step, 0] < 0.5:
            k = int(uniforms[step, 1] * m)
            if k >= m:
                k = m - 1
            i = edges[k, 0]
            j = edges[k, 1]
        else:
            i = int(uniforms[step, 1] * n)
            if i >= n:
                i = n - 1
            j = int(uniforms[step, 2] * (n - 1))
            if j >= n - 1:
                j = n - 2
            if j >= i:
                j += 1
            if i > j:
                i, j = j, i

        present = 1 if adj[i, j] else 0
        change_vector(adj, degree, i, j, codes, params, indicators, delta)
        eta = 0.0
        for t in range(d):
            eta += theta[t] * delta[t]
        sign = 1.0 - 2.0 * present
        m_new = m + 1 - 2 * present
        log_ratio = (sign * eta
                     + np.log(_proposal_prob(m_new, 1 - present, n_dyads))
                     - np.log(_proposal_prob(m, present, n_dyads)))

        if log_ratio >= 0.0 or uniforms[step, 3] < np.exp(log_ratio):
            toggle_dyad(adj, degree, edges, edge_pos, edge_count, i, j)
            for t in range(d):
                stats[t] += sign * delta[t]
            accepted += 1
            if logged < toggle_log.shape[0]:
                toggle_log[logged, 0] = i
                toggle_log[logged, 1] = j
                logged += 1

        done = step + 1 - burn
        if done > 0 and done % thin == 0 and row < rows_out:
            for t in range(d):
                out_stats[row, t] = stats[t]
            out_density[row] = edge_count[0] / n_dyads
            row += 1
    return accepted, logged
