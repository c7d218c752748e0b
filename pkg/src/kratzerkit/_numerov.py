"""Numerov integration kernels for the radial solver.

All kernels work on a uniform grid and integrate u'' = Q(r) u with
Q = (V_eff - E)/k.  Node counts of the outward sweep are monotone in the
energy (discrete oscillation theorem), which is what the bisection in the
solver module relies on.  That monotonicity requires the Numerov mass factor
1 - h**2 Q/12 to stay positive; near the 1/r**2 core it does not, so every
kernel starts at a caller-chosen index i0 where h**2 (V_eff - E_min)/(12 k)
has already dropped to 1/2 or below.  The wavefunction is vanishingly small
inside that cutoff for any energy of interest.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# rescale sweeps before they overflow; ratios and signs are all that matter
_BIG = 1e150


@njit(cache=True)
def count_nodes(veff, energy, k, h, i0):
    """Sign changes of the outward Numerov solution over (i0, n-1]."""
    n = veff.shape[0]
    c = h * h / (12.0 * k)
    t_prev = c * (veff[i0] - energy)
    t_cur = c * (veff[i0 + 1] - energy)
    u_prev = 0.0
    u_cur = 1.0
    nodes = 0
    for i in range(i0 + 1, n - 1):
        t_next = c * (veff[i + 1] - energy)
        u_next = ((2.0 + 10.0 * t_cur) * u_cur
                  - (1.0 - t_prev) * u_prev) / (1.0 - t_next)
        if u_next * u_cur < 0.0:
            nodes += 1
        mag = abs(u_next)
        if mag > _BIG:
            u_cur /= mag
            u_next /= mag
        u_prev = u_cur
        u_cur = u_next
        t_prev = t_cur
        t_cur = t_next
    return nodes


@njit(cache=True)
def outward(veff, energy, k, h, i0, m, u):
    """Fill u[i0..m] with the outward sweep (u[i0]=0); u below i0 stays 0."""
    c = h * h / (12.0 * k)
    u[i0] = 0.0
    u[i0 + 1] = 1.0
    t_prev = c * (veff[i0] - energy)
    t_cur = c * (veff[i0 + 1] - energy)
    for i in range(i0 + 1, m):
        t_next = c * (veff[i + 1] - energy)
        u[i + 1] = ((2.0 + 10.0 * t_cur) * u[i]
                    - (1.0 - t_prev) * u[i - 1]) / (1.0 - t_next)
        mag = abs(u[i + 1])
        if mag > _BIG:
            for j in range(i0, i + 2):
                u[j] /= mag
        t_prev = t_cur
        t_cur = t_next


@njit(cache=True)
def inward(veff, energy, k, h, m, v):
    """Fill v[m..n-1] with the inward sweep (v[n-1]=0)."""
    n = veff.shape[0]
    c = h * h / (12.0 * k)
    v[n - 1] = 0.0
    v[n - 2] = 1.0
    t_prev = c * (veff[n - 1] - energy)
    t_cur = c * (veff[n - 2] - energy)
    for i in range(n - 2, m, -1):
        t_next = c * (veff[i - 1] - energy)
        v[i - 1] = ((2.0 + 10.0 * t_cur) * v[i]
                    - (1.0 - t_prev) * v[i + 1]) / (1.0 - t_next)
        mag = abs(v[i - 1])
        if mag > _BIG:
            for j in range(i - 1, n):
                v[j] /= mag
        t_prev = t_cur
        t_cur = t_next
