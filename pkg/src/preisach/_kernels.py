"""Numba kernels shared by the model front-ends.

Everything here operates on a *packed* representation so the hot loops stay
inside compiled code:

* a density is ``(kind, params)`` where ``kind`` selects the functional form
  (0 uniform, 1 exponential radial decay, 2 Gaussian mixture) and ``params``
  is a flat float64 vector produced by :meth:`preisach.density.Density.pack`,
* a staircase memory is the first ``n`` rows of an ``(cap, 2)`` float64 buffer
  holding ``(alpha, beta)`` corners, margin vertex first, operative point last.

Quadrature is an adaptive Lobatto scheme (the classic ``quadl`` 4/7-point
pair with a 13-node opening pass that sets the roundoff floor).  Both the
one-dimensional segment rule and the iterated strip rule return a *flag
count* instead of raising: callers surface flags as warnings so a run never
aborts mid-trajectory.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# Lobatto node positions for the 13-point opening pass (quadl layout).
_ALPHA = math.sqrt(2.0 / 3.0)
_BETA = 1.0 / math.sqrt(5.0)
_X1 = 0.942882415695480
_X2 = 0.641853342345781
_X3 = 0.236383199662150

# Strip integrals force one refinement level so the outer error estimate is
# never trusted on the raw interval: the inner quadrature makes the outer
# integrand only piecewise smooth, and a depth-0 pair can agree by accident.
OUTER_MIN_DEPTH = 1


@njit(cache=True, nogil=True)
def density_kernel(kind, params, alpha, beta):
    if kind == 0:
        return params[0]
    if kind == 1:
        return params[0] * math.exp(-params[1] * math.sqrt(alpha * alpha + beta * beta)) + params[2]
    total = 0.0
    for i in range(params.shape[0] // 6):
        o = 6 * i
        da = alpha - params[o + 1]
        db = beta - params[o + 2]
        q = params[o + 3] * da * da + 2.0 * params[o + 4] * da * db + params[o + 5] * db * db
        total += params[o] * math.exp(-0.5 * q)
    return total


@njit(cache=True, nogil=True)
def _line_eval(kind, params, axis, c, t):
    # axis 0: vary beta at fixed alpha=c; axis 1: vary alpha at fixed beta=c
    if axis == 0:
        return density_kernel(kind, params, c, t)
    return density_kernel(kind, params, t, c)


@njit(cache=True, nogil=True)
def _fill_nodes(lo, hi, xs):
    h0 = 0.5 * (hi - lo)
    m0 = 0.5 * (lo + hi)
    xs[0] = lo
    xs[1] = m0 - _X1 * h0
    xs[2] = m0 - _ALPHA * h0
    xs[3] = m0 - _X2 * h0
    xs[4] = m0 - _BETA * h0
    xs[5] = m0 - _X3 * h0
    xs[6] = m0
    xs[7] = m0 + _X3 * h0
    xs[8] = m0 + _BETA * h0
    xs[9] = m0 + _X2 * h0
    xs[10] = m0 + _ALPHA * h0
    xs[11] = m0 + _X1 * h0
    xs[12] = hi


@njit(cache=True, nogil=True)
def _thirteen_point(h0, ys):
    return h0 * (
        0.0158271919734802 * (ys[0] + ys[12])
        + 0.0942738402188500 * (ys[1] + ys[11])
        + 0.155071987336585 * (ys[2] + ys[10])
        + 0.188821573960182 * (ys[3] + ys[9])
        + 0.199773405226859 * (ys[4] + ys[8])
        + 0.224926465333340 * (ys[5] + ys[7])
        + 0.242611071901408 * ys[6]
    )


@njit(cache=True, nogil=True)
def line_integral(kind, params, axis, c, lo, hi, tol, max_depth, min_depth):
    """Integrate the density along one axis over ``[lo, hi]``.

    Returns ``(value, flagged)``; ``flagged`` is True when the requested
    absolute tolerance could not be certified (depth cap or an interval
    collapsed to roundoff width).
    """
    if hi - lo <= 0.0:
        return 0.0, False
    xs = np.empty(13)
    ys = np.empty(13)
    _fill_nodes(lo, hi, xs)
    for i in range(13):
        ys[i] = _line_eval(kind, params, axis, c, xs[i])
    i13 = _thirteen_point(0.5 * (hi - lo), ys)
    noise = abs(i13) * 1e-14
    tol_w = tol / (hi - lo)  # per-unit-width budget

    # iterative depth-first refinement; stack rows: a, b, fa, fb, depth
    stack = np.empty((6 * max_depth + 8, 5))
    stack[0, 0] = lo
    stack[0, 1] = hi
    stack[0, 2] = ys[0]
    stack[0, 3] = ys[12]
    stack[0, 4] = 0.0
    top = 1
    total = 0.0
    flagged = False
    while top > 0:
        top -= 1
        a = stack[top, 0]
        b = stack[top, 1]
        fa = stack[top, 2]
        fb = stack[top, 3]
        depth = int(stack[top, 4])
        h = 0.5 * (b - a)
        m = 0.5 * (a + b)
        mll = m - _ALPHA * h
        ml = m - _BETA * h
        mr = m + _BETA * h
        mrr = m + _ALPHA * h
        fmll = _line_eval(kind, params, axis, c, mll)
        fml = _line_eval(kind, params, axis, c, ml)
        fm = _line_eval(kind, params, axis, c, m)
        fmr = _line_eval(kind, params, axis, c, mr)
        fmrr = _line_eval(kind, params, axis, c, mrr)
        i2 = (h / 6.0) * (fa + fb + 5.0 * (fml + fmr))
        i1 = (h / 1470.0) * (77.0 * (fa + fb) + 432.0 * (fmll + fmrr) + 625.0 * (fml + fmr) + 672.0 * fm)
        err = abs(i1 - i2)
        if depth >= min_depth and (err <= tol_w * (b - a) or err <= noise):
            total += i1
        elif depth >= max_depth or mll <= a or b <= mrr:
            total += i1
            flagged = True
        else:
            stack[top, 0] = a
            stack[top, 1] = mll
            stack[top, 2] = fa
            stack[top, 3] = fmll
            stack[top, 4] = depth + 1
            stack[top + 1, 0] = mll
            stack[top + 1, 1] = ml
            stack[top + 1, 2] = fmll
            stack[top + 1, 3] = fml
            stack[top + 1, 4] = depth + 1
            stack[top + 2, 0] = ml
            stack[top + 2, 1] = m
            stack[top + 2, 2] = fml
            stack[top + 2, 3] = fm
            stack[top + 2, 4] = depth + 1
            stack[top + 3, 0] = m
            stack[top + 3, 1] = mr
            stack[top + 3, 2] = fm
            stack[top + 3, 3] = fmr
            stack[top + 3, 4] = depth + 1
            stack[top + 4, 0] = mr
            stack[top + 4, 1] = mrr
            stack[top + 4, 2] = fmr
            stack[top + 4, 3] = fmrr
            stack[top + 4, 4] = depth + 1
            stack[top + 5, 0] = mrr
            stack[top + 5, 1] = b
            stack[top + 5, 2] = fmrr
            stack[top + 5, 3] = fb
            stack[top + 5, 4] = depth + 1
            top += 6
    return total, flagged


@njit(cache=True, nogil=True)
def strip_integral(kind, params, b1, b2, a_level, tol, tol_inner, max_depth, min_depth):
    """Iterated integral over the strip ``{b1<=beta<=b2, beta<=alpha<=a_level}``.

    Outer adaptive pass over beta; each outer evaluation is an inner
    ``line_integral`` over alpha from the diagonal up to ``a_level`` at
    absolute tolerance ``tol_inner``.  ``tol`` is the absolute budget for the
    outer pass alone; the inner tolerance is folded into the acceptance floor
    so outer refinement stops chasing error the inner rule cannot resolve.
    """
    if b2 - b1 <= 0.0:
        return 0.0, False
    xs = np.empty(13)
    ys = np.empty(13)
    _fill_nodes(b1, b2, xs)
    flagged = False
    for i in range(13):
        v, f = line_integral(kind, params, 1, xs[i], xs[i], a_level, tol_inner, max_depth, 0)
        ys[i] = v
        flagged = flagged or f
    i13 = _thirteen_point(0.5 * (b2 - b1), ys)
    noise = abs(i13) * 1e-14 + tol_inner
    tol_w = tol / (b2 - b1)
    stack = np.empty((6 * max_depth + 8, 5))
    stack[0, 0] = b1
    stack[0, 1] = b2
    stack[0, 2] = ys[0]
    stack[0, 3] = ys[12]
    stack[0, 4] = 0.0
    top = 1
    total = 0.0
    while top > 0:
        top -= 1
        a = stack[top, 0]
        b = stack[top, 1]
        fa = stack[top, 2]
        fb = stack[top, 3]
        depth = int(stack[top, 4])
        h = 0.5 * (b - a)
        m = 0.5 * (a + b)
        mll = m - _ALPHA * h
        ml = m - _BETA * h
        mr = m + _BETA * h
        mrr = m + _ALPHA * h
        fmll, f1 = line_integral(kind, params, 1, mll, mll, a_level, tol_inner, max_depth, 0)
        fml, f2 = line_integral(kind, params, 1, ml, ml, a_level, tol_inner, max_depth, 0)
        fm, f3 = line_integral(kind, params, 1, m, m, a_level, tol_inner, max_depth, 0)
        fmr, f4 = line_integral(kind, params, 1, mr, mr, a_level, tol_inner, max_depth, 0)
        fmrr, f5 = line_integral(kind, params, 1, mrr, mrr, a_level, tol_inner, max_depth, 0)
        flagged = flagged or f1 or f2 or f3 or f4 or f5
        i2 = (h / 6.0) * (fa + fb + 5.0 * (fml + fmr))
        i1 = (h / 1470.0) * (77.0 * (fa + fb) + 432.0 * (fmll + fmrr) + 625.0 * (fml + fmr) + 672.0 * fm)
        err = abs(i1 - i2)
        if depth >= min_depth and (err <= tol_w * (b - a) or err <= noise):
            total += i1
        elif depth >= max_depth or mll <= a or b <= mrr:
            total += i1
            flagged = True
        else:
            stack[top, 0] = a
            stack[top, 1] = mll
            stack[top, 2] = fa
            stack[top, 3] = fmll
            stack[top, 4] = depth + 1
            stack[top + 1, 0] = mll
            stack[top + 1, 1] = ml
            stack[top + 1, 2] = fmll
            stack[top + 1, 3] = fml
            stack[top + 1, 4] = depth + 1
            stack[top + 2, 0] = ml
            stack[top + 2, 1] = m
            stack[top + 2, 2] = fml
            stack[top + 2, 3] = fm
            stack[top + 2, 4] = depth + 1
            stack[top + 3, 0] = m
            stack[top + 3, 1] = mr
            stack[top + 3, 2] = fm
            stack[top + 3, 3] = fmr
            stack[top + 3, 4] = depth + 1
            stack[top + 4, 0] = mr
            stack[top + 4, 1] = mrr
            stack[top + 4, 2] = fmr
            stack[top + 4, 3] = fmrr
            stack[top + 4, 4] = depth + 1
            stack[top + 5, 0] = mrr
            stack[top + 5, 1] = b
            stack[top + 5, 2] = fmrr
            stack[top + 5, 3] = fb
            stack[top + 5, 4] = depth + 1
            top += 6
    return total, flagged


@njit(cache=True, nogil=True)
def region_kernel(kind, params, corners, n, tol, max_depth):
    """Integral of the density over the switched-up region of the staircase.

    The region decomposes into one horizontal strip per consecutive corner
    pair; zero-width strips contribute nothing and are skipped.  The absolute
    budget ``tol`` is split half to the outer passes (proportional to strip
    width) and half to the shared inner tolerance.
    """
    acc = 0.0
    flags = 0
    wsum = 0.0
    for i in range(n - 1):
        w = corners[i + 1, 1] - corners[i, 1]
        if w > 0.0:
            wsum += w
    if wsum <= 0.0:
        return 0.0, 0
    tol_inner = tol / (2.0 * wsum)
    for i in range(n - 1):
        b1 = corners[i, 1]
        b2 = corners[i + 1, 1]
        if b2 - b1 > 0.0:
            v, f = strip_integral(
                kind, params, b1, b2, corners[i + 1, 0],
                0.5 * tol * (b2 - b1) / wsum, tol_inner, max_depth, OUTER_MIN_DEPTH,
            )
            acc += v
            if f:
                flags += 1
    return acc, flags


# --- staircase memory updates ---


@njit(cache=True, nogil=True)
def wipe_up(corners, n, x):
    # drop trailing corners whose switch-up threshold the input has reached
    k = n
    while k > 1 and corners[k - 1, 0] <= x:
        k -= 1
    return k


@njit(cache=True, nogil=True)
def wipe_down(corners, n, x):
    k = n
    while k > 1 and corners[k - 1, 1] >= x:
        k -= 1
    return k


@njit(cache=True, nogil=True)
def apply_input(corners, n, x, eps):
    """Advance the staircase to input ``x``; returns the new corner count.

    Moves smaller than ``eps`` leave the memory untouched.  The attach corner
    is skipped when it would duplicate the surviving corner, which happens
    exactly when the input reaches a bound and the memory collapses to the
    two-corner saturation state.
    """
    op = corners[n - 1, 0]
    if abs(x - op) <= eps:
        return n
    if x > op:
        k = wipe_up(corners, n, x)
        if corners[k - 1, 0] != x:
            corners[k, 0] = x
            corners[k, 1] = corners[k - 1, 1]
            k += 1
    else:
        k = wipe_down(corners, n, x)
        if corners[k - 1, 1] != x:
            corners[k, 0] = corners[k - 1, 0]
            corners[k, 1] = x
            k += 1
    corners[k, 0] = x
    corners[k, 1] = x
    return k + 1


# --- model steps ---


@njit(cache=True, nogil=True)
def cspm_step_kernel(kind, params, corners, n, x, tol, max_depth, mass, eps, xmin, xmax):
    if x < xmin:
        x = xmin
    elif x > xmax:
        x = xmax
    n = apply_input(corners, n, x, eps)
    acc, flags = region_kernel(kind, params, corners, n, tol, max_depth)
    return n, 2.0 * acc - mass, flags


@njit(cache=True, nogil=True)
def sspm_step_kernel(kind, params, corners, n, y, x, tol, max_depth, eps, xmin, xmax, substep, unscaled):
    """One state-space update: wipe, one segment quadrature, increment.

    The increment is the midpoint rule applied to the swept sliver: the
    segment runs at the level ``x_mid = op + dx/2`` from the old staircase
    profile *at that row* up to the diagonal, so the far end comes from
    wiping at ``x_mid`` (the profile the front is actually covering halfway
    through the move), not at the final input.  The distinction only matters
    when one step crosses old corners — there the final-input survivor lies
    beyond the swept region and overcounts mass that was already switched.
    With ``substep`` > 0 any larger move is split into equal internal
    increments; with ``unscaled`` the increment drops the ``|dx|`` factor
    (midpoint-rule width) and keeps only the sign, which overweights coarse
    steps and is provided for comparison experiments.
    """
    if x < xmin:
        x = xmin
    elif x > xmax:
        x = xmax
    flags = 0
    op0 = corners[n - 1, 0]
    dxt = x - op0
    if abs(dxt) <= eps:
        return n, y, 0
    nsub = 1
    if substep > 0.0 and abs(dxt) > substep:
        nsub = int(math.ceil(abs(dxt) / substep))
    for i in range(1, nsub + 1):
        xt = x if i == nsub else op0 + dxt * i / nsub
        op = corners[n - 1, 0]
        dx = xt - op
        if abs(dx) <= eps:
            continue
        x_mid = op + 0.5 * dx
        if dx > 0.0:
            k = wipe_up(corners, n, x_mid)
            far = corners[k - 1, 1]
            seg, f = line_integral(kind, params, 0, x_mid, far, x_mid, tol, max_depth, 0)
        else:
            k = wipe_down(corners, n, x_mid)
            far = corners[k - 1, 0]
            seg, f = line_integral(kind, params, 1, x_mid, x_mid, far, tol, max_depth, 0)
        if f:
            flags += 1
        if unscaled:
            y += 2.0 * seg if dx > 0.0 else -2.0 * seg
        else:
            y += 2.0 * dx * seg
        n = apply_input(corners, n, xt, eps)
    return n, y, flags


# --- whole-sequence drivers (same step kernels, loop kept in compiled code) ---


@njit(cache=True, nogil=True)
def run_cspm(kind, params, corners, n, xs, tol, max_depth, mass, eps, xmin, xmax):
    ys = np.empty(xs.shape[0])
    flags = 0
    for s in range(xs.shape[0]):
        n, y, f = cspm_step_kernel(kind, params, corners, n, xs[s], tol, max_depth, mass, eps, xmin, xmax)
        ys[s] = y
        flags += f
    return ys, n, flags


@njit(cache=True, nogil=True)
def run_sspm(kind, params, corners, n, y0, xs, tol, max_depth, eps, xmin, xmax,
             substep, unscaled, reanchor, mass):
    ys = np.empty(xs.shape[0])
    y = y0
    flags = 0
    for s in range(xs.shape[0]):
        n, y, f = sspm_step_kernel(kind, params, corners, n, y, xs[s], tol, max_depth,
                                   eps, xmin, xmax, substep, unscaled)
        flags += f
        if reanchor and n == 2:
            # two corners <=> saturation; reset the accumulator to the exact
            # saturated output so drift cannot carry across major excursions
            y = mass if corners[1, 0] == xmax else -mass
        ys[s] = y
    return ys, n, flags
