"""Pure-Python hot loops. ``_ckernels.pyx`` mirrors this module function for function.

Lattice routines take the integer matrix ``M = 2 * delta * G`` and an integer
bound ``rmax``; a point ``k >= 0`` is emitted iff ``k^T M k <= rmax``. The
floating-point data only prunes the search tree (with slack), so the emitted
set is decided exactly at the leaves.
"""

from math import ceil, floor, sqrt

from .errors import LatticeLimitError

BACKEND = "python"


def convolve(a, b, n):
    """Cauchy product of two coefficient lists, truncated to length ``n + 1``."""
    out = [0] * (n + 1)
    la = min(len(a), n + 1)
    lb = len(b)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n + 1 - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def divide_by_pochhammer(c, n):
    """Coefficients of ``c(q) / (q)_n`` truncated to ``len(c)`` (integer grading)."""
    out = list(c)
    length = len(out)
    for j in range(1, min(n, length - 1) + 1):
        for m in range(j, length):
            out[m] += out[m - j]
    return out


def _partial(M, k, p, base):
    """Exact ``k^T M k`` over the first ``p + 1`` coordinates, given the value on the first ``p``."""
    row = M[p]
    kp = k[p]
    cross = 0
    for q in range(p):
        cross += row[q] * k[q]
    return base + kp * (2 * cross + row[p] * kp)


def _bounds(W, d, k, p, rem, slack):
    if rem < -slack:
        return 0, -1
    c = 0.0
    wp = W[p]
    for q in range(p):
        c += wp[q] * k[q]
    r = sqrt(max(rem, 0.0) / d[p]) + slack
    lo = max(0, ceil(-c - r))
    hi = floor(-c + r)
    return lo, hi


def _walk_ellipsoid(M, rmax, W, d, cutoff, first_lo, first_hi, limit, emit):
    T = len(M)
    if T == 0:
        emit((), 0)
        return
    slack = 1e-9 * (1.0 + abs(cutoff))
    k = [0] * T
    lo = [0] * T
    hi = [0] * T
    rem = [0.0] * (T + 1)
    val = [0] * (T + 1)
    rem[0] = float(cutoff)
    lo[0], hi[0] = _bounds(W, d, k, 0, rem[0], slack)
    lo[0] = max(lo[0], first_lo)
    if first_hi >= 0:
        hi[0] = min(hi[0], first_hi)
    k[0] = lo[0]
    p = 0
    visited = 0
    while True:
        if k[p] > hi[p]:
            p -= 1
            if p < 0:
                break
            k[p] += 1
            continue
        val[p + 1] = _partial(M, k, p, val[p])
        if p == T - 1:
            visited += 1
            if visited > limit:
                raise LatticeLimitError(limit)
            if val[T] <= rmax:
                emit(tuple(k), val[T])
            k[p] += 1
            continue
        c = 0.0
        wp = W[p]
        for q in range(p):
            c += wp[q] * k[q]
        t = k[p] + c
        rem[p + 1] = rem[p] - d[p] * t * t
        p += 1
        lo[p], hi[p] = _bounds(W, d, k, p, rem[p], slack)
        k[p] = lo[p]


def _walk_simplex(M, rmax, total, first_lo, first_hi, limit, emit):
    T = len(M)
    if T == 0:
        emit((), 0)
        return
    k = [0] * T
    hi = [0] * T
    used = [0] * (T + 1)
    val = [0] * (T + 1)
    hi[0] = total if first_hi < 0 else min(total, first_hi)
    k[0] = first_lo
    p = 0
    visited = 0
    while True:
        if k[p] > hi[p]:
            p -= 1
            if p < 0:
                break
            k[p] += 1
            continue
        val[p + 1] = _partial(M, k, p, val[p])
        if p == T - 1:
            visited += 1
            if visited > limit:
                raise LatticeLimitError(limit)
            if val[T] <= rmax:
                emit(tuple(k), val[T])
            k[p] += 1
            continue
        used[p + 1] = used[p] + k[p]
        p += 1
        hi[p] = total - used[p]
        k[p] = 0


def enumerate_ellipsoid(M, rmax, W, d, cutoff, first_lo=0, first_hi=-1, limit=10**7):
    out = []
    _walk_ellipsoid(M, rmax, W, d, cutoff, first_lo, first_hi, limit, lambda k, v: out.append((k, v)))
    return out


def enumerate_simplex(M, rmax, total, first_lo=0, first_hi=-1, limit=10**7):
    out = []
    _walk_simplex(M, rmax, total, first_lo, first_hi, limit, lambda k, v: out.append((k, v)))
    return out


def _profile_sink(profile):
    def emit(k, v):
        parts = tuple(sorted((x for x in k if x), reverse=True))
        key = (v, parts)
        profile[key] = profile.get(key, 0) + 1

    return emit


def profile_ellipsoid(M, rmax, W, d, cutoff, first_lo=0, first_hi=-1, limit=10**7):
    """Count lattice points by ``(k^T M k, nonzero parts of k in decreasing order)``."""
    profile = {}
    _walk_ellipsoid(M, rmax, W, d, cutoff, first_lo, first_hi, limit, _profile_sink(profile))
    return profile


def profile_simplex(M, rmax, total, first_lo=0, first_hi=-1, limit=10**7):
    profile = {}
    _walk_simplex(M, rmax, total, first_lo, first_hi, limit, _profile_sink(profile))
    return profile
