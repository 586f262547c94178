"""Sequential inner loops of the recurrences.

Each function here is a plain loop over nodes and is compiled with numba
unless ``GLNM_DISABLE_NUMBA`` is set (see ``_accel``).  The undecorated
Python source stays reachable as ``kernel.py_func`` when numba is active.

Array conventions (``n`` nodes, ``T*`` full length, endpoints unused):

* outward ratios ``q[k] = y[k] / y[k+1]``; ``pole[k]`` marks ``y[k+1] == 0``
* inward ratios ``r[k] = y[k] / y[k-1]``; ``pole[k]`` marks ``y[k-1] == 0``
"""

import math

import numpy as np

from ._accel import jit

BIG = 1e300
POLE_TOL = 1e-14
RESCALE = 2.0**512
RESCALE_INV = 2.0**-512
RESCALE_BITS = 512


@jit
def _clamped_div(num, den, scale):
    # returns (value, pole)
    if den == 0.0 or abs(den) < POLE_TOL * scale:
        s = 1.0 if num >= 0.0 else -1.0
        if den < 0.0:
            s = -s
        return s * BIG, True
    r = num / den
    if abs(r) > BIG:
        return math.copysign(BIG, r), True
    return r, False


@jit
def _thomas_fill(T0, Tp, Tm, lo, hi, y):
    """Solve the uniform stencils centred at ``lo+1 .. hi-1`` for the
    interior values, given ``y[lo]`` and ``y[hi]``."""
    m = hi - lo - 1
    if m <= 0:
        return
    cp = np.empty(m)
    dp = np.empty(m)
    for r in range(m):
        j = lo + 1 + r
        sub = -Tm[j]
        diag = T0[j]
        sup = -Tp[j]
        rhs = 0.0
        if r == 0:
            rhs += Tm[j] * y[lo]
            sub = 0.0
        if r == m - 1:
            rhs += Tp[j] * y[hi]
            sup = 0.0
        if r == 0:
            denom = diag
            cp[r] = sup / denom
            dp[r] = rhs / denom
        else:
            denom = diag - sub * cp[r - 1]
            cp[r] = sup / denom
            dp[r] = (rhs - sub * dp[r - 1]) / denom
    y[lo + m] = dp[m - 1]
    for r in range(m - 2, -1, -1):
        y[lo + 1 + r] = dp[r] - cp[r] * y[lo + 2 + r]


@jit
def outward_ratios(T0, Tp, Tm, left, seed, stop, q, pole):
    """Fill ``q[0..stop]`` from the origin seed ``q[0] = y0/y1``."""
    q[0] = seed
    pole[0] = False
    for i in range(1, stop + 1):
        L = left[i]
        if L == i - 1:
            ym = q[i - 1]
        else:
            ym = 1.0
            for j in range(L, i):
                ym *= q[j]
            if not (abs(ym) <= BIG):
                ym = BIG if not (ym < 0.0) else -BIG
        tm = Tm[i] * ym
        q[i], pole[i] = _clamped_div(Tp[i], T0[i] - tm, max(abs(T0[i]), abs(tm)))


@jit
def inward_ratios(T0, Tp, Tm, left, seed, stop, r, pole):
    """Fill ``r[stop..n-1]`` from the tail seed ``r[n-1] = y_N/y_{N-1}``.

    Crossing into a finer segment, the coarse stencil gives ``y_i/y_L``
    and the skipped fine nodes are recovered from the fine stencils as a
    two-point boundary problem.
    """
    n = T0.shape[0]
    r[n - 1] = seed
    pole[n - 1] = False
    work = np.empty(n)
    i = n - 2
    while i >= stop:
        L = left[i]
        tp = Tp[i] * r[i + 1]
        rho, flag = _clamped_div(Tm[i], T0[i] - tp, max(abs(T0[i]), abs(tp)))
        if L == i - 1:
            r[i] = rho
            pole[i] = flag
        else:
            if flag:
                work[i] = 1.0
                work[L] = 0.0
            elif abs(rho) >= 1.0:
                work[i] = 1.0
                work[L] = 1.0 / rho
            else:
                work[i] = rho
                work[L] = 1.0
            _thomas_fill(T0, Tp, Tm, L, i, work)
            for j in range(i, L, -1):
                r[j], pole[j] = _clamped_div(work[j], work[j - 1], abs(work[j]))
        i = L


@jit
def outward_values(T0, Tp, Tm, left, y, first, last):
    """Step ``y[first+2 .. last]`` from ``y[first], y[first+1]``.

    Returns the base-2 exponent of the accumulated rescaling; true values
    are ``y * 2**exponent``.
    """
    e2 = 0
    for i in range(first + 1, last):
        L = left[i]
        y[i + 1] = (T0[i] * y[i] - Tm[i] * y[L]) / Tp[i]
        if abs(y[i + 1]) > RESCALE:
            for k in range(first, i + 2):
                y[k] *= RESCALE_INV
            e2 += RESCALE_BITS
    return e2


@jit
def inward_values(T0, Tp, Tm, left, y, first, last):
    """Step ``y[last-2 .. first]`` from ``y[last-1], y[last]`` (mirror of ``outward_values``)."""
    e2 = 0
    i = last - 1
    while i > first:
        L = left[i]
        y[L] = (T0[i] * y[i] - Tp[i] * y[i + 1]) / Tm[i]
        if L != i - 1:
            _thomas_fill(T0, Tp, Tm, L, i, y)
        big = False
        for k in range(L, i):
            if abs(y[k]) > RESCALE:
                big = True
        if big:
            for k in range(L, last + 1):
                y[k] *= RESCALE_INV
            e2 += RESCALE_BITS
        i = L
    return e2


@jit
def walk_ratios(q, pole, anchor, value, y):
    """Rebuild ``y[0..m]`` from ``q[k] = y[k]/y[k+1]`` (``m = len(q)``).

    A pole at ``k`` pins ``y[k+1]`` to exactly zero; the neighbours are
    bridged with the product of the two ratios around it.
    """
    m = q.shape[0]
    y[anchor] = value
    k = anchor - 1
    while k >= 0:
        if pole[k] and k + 2 <= anchor:
            y[k + 1] = 0.0
            y[k] = (q[k] * q[k + 1]) * y[k + 2]
        else:
            y[k] = q[k] * y[k + 1]
        k -= 1
    for k in range(anchor + 1, m + 1):
        if pole[k - 1]:
            y[k] = 0.0
        elif k - 2 >= anchor and pole[k - 2]:
            y[k] = y[k - 2] / (q[k - 2] * q[k - 1])
        else:
            y[k] = y[k - 1] / q[k - 1]
