"""Compiled inner loops for the slit-chain evolution.

Elementary centered slit step with capacity dt and driving increment dl:

    forward   E(z)      = sqrt((z - dl)^2 + 4 dt)
    inverse   E^-1(w)   = dl + sqrt(w^2 - 4 dt)

with the square-root branch chosen in the closed upper half plane and
matching w at infinity.  Real points outside the window |w| < 2 sqrt(dt)
stay real (sign-preserving root); real points inside the window lift onto
the slit i sqrt(4 dt - w^2).  All complex arithmetic is written out in
real/imaginary parts: the branch logic is explicit and the hot loops stay
cheap.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(inline="always")
def _sqrt_upper(u, v):
    """Root of u + iv with nonnegative imaginary part (v != 0 or u < 0)."""
    r = np.sqrt(u * u + v * v)
    if u >= 0.0:
        a = np.sqrt(0.5 * (r + u))
        b = 0.5 * abs(v) / a if a > 0.0 else 0.0
    else:
        b = np.sqrt(0.5 * (r - u))
        a = 0.5 * abs(v) / b
    if v < 0.0:
        a = -a
    return a, b


@njit(cache=True, parallel=True)
def zip_points(x0, prefix, dt, dl):
    """Apply prefix[i] inverse slit steps (tip first) to each real point x0[i].

    Returns the complex images and, per point, the step index at which the
    point lifted off the boundary (-1 if it never did).  A point that hits a
    window endpoint exactly stays on the boundary (ties are not zipped).
    """
    n = x0.size
    out = np.empty(n, np.complex128)
    lifted = np.empty(n, np.int64)
    for i in prange(n):
        x = x0[i]
        wr = 0.0
        wi = 0.0
        zi = -1
        for k in range(prefix[i] - 1, -1, -1):
            d4 = 4.0 * dt[k]
            if zi < 0:
                a = x * x - d4
                if a < 0.0:
                    wr = dl[k]
                    wi = np.sqrt(-a)
                    zi = k
                elif x >= 0.0:
                    x = dl[k] + np.sqrt(a)
                else:
                    x = dl[k] - np.sqrt(a)
            else:
                u = wr * wr - wi * wi - d4
                v = 2.0 * wr * wi
                a, b = _sqrt_upper(u, v)
                wr = dl[k] + a
                wi = b if b > 0.0 else 1e-300  # roundoff guard: stay interior
        if zi >= 0:
            out[i] = complex(wr, wi)
        else:
            out[i] = complex(x, 0.0)
        lifted[i] = zi
    return out, lifted


@njit(cache=True, parallel=True)
def reverse_interior(zr0, zi0, dt, dl):
    """Full inverse chain applied to interior points (tip first)."""
    n = zr0.size
    out = np.empty(n, np.complex128)
    nsteps = dt.size
    for i in prange(n):
        wr = zr0[i]
        wi = zi0[i]
        for k in range(nsteps - 1, -1, -1):
            u = wr * wr - wi * wi - 4.0 * dt[k]
            v = 2.0 * wr * wi
            a, b = _sqrt_upper(u, v)
            wr = dl[k] + a
            wi = b if b > 0.0 else 1e-300  # roundoff guard: stay interior
        out[i] = complex(wr, wi)
    return out


@njit(cache=True, parallel=True)
def push_forward(zr0, zi0, dt, dl):
    """Full forward chain; flags real points that enter a slit window."""
    n = zr0.size
    out = np.empty(n, np.complex128)
    swallowed = np.zeros(n, np.bool_)
    nsteps = dt.size
    for i in prange(n):
        wr = zr0[i]
        wi = zi0[i]
        for k in range(nsteps):
            d4 = 4.0 * dt[k]
            ur = wr - dl[k]
            if wi == 0.0:
                a = ur * ur + d4
                if ur * ur < d4:
                    swallowed[i] = True
                if ur >= 0.0:
                    wr = np.sqrt(a)
                else:
                    wr = -np.sqrt(a)
            else:
                u = ur * ur - wi * wi + d4
                v = 2.0 * ur * wi
                a, b = _sqrt_upper(u, v)
                wr = a
                wi = b if b > 0.0 else 1e-300  # roundoff guard: stay interior
        out[i] = complex(wr, wi)
    return out, swallowed


@njit(cache=True)
def ancestor_free_mask(left, right, stride):
    """Times with no earlier simultaneous two-sided running infimum.

    Index j (j >= 1) is rejected when some earlier candidate i (restricted
    to multiples of ``stride``) satisfies left[i] = min(left[i..j]) and
    right[i] = min(right[i..j]) under exact comparisons.  Runs two monotone
    stacks and a shared-membership counter: O(n) total.
    """
    n = left.size
    free = np.zeros(n, np.bool_)
    stack_l = np.empty(n, np.int64)
    stack_r = np.empty(n, np.int64)
    on_l = np.zeros(n, np.bool_)
    on_r = np.zeros(n, np.bool_)
    top_l = -1
    top_r = -1
    both = 0
    for j in range(n):
        while top_l >= 0 and left[stack_l[top_l]] >= left[j]:
            i = stack_l[top_l]
            top_l -= 1
            on_l[i] = False
            if on_r[i]:
                both -= 1
        while top_r >= 0 and right[stack_r[top_r]] >= right[j]:
            i = stack_r[top_r]
            top_r -= 1
            on_r[i] = False
            if on_l[i]:
                both -= 1
        free[j] = both == 0
        if j % stride == 0:
            top_l += 1
            stack_l[top_l] = j
            on_l[j] = True
            top_r += 1
            stack_r[top_r] = j
            on_r[j] = True
            both += 1
    return free
