# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; same contracts as ``_kernels_py``.

Lattice walks use 64-bit integers for the exact leaf test. Callers must make
sure ``max|M| * T^2 * kmax^2`` fits (see ``lattice.fits_int64``).
"""

from libc.math cimport ceil, floor, sqrt
from libc.stdlib cimport free, malloc

from .errors import LatticeLimitError

BACKEND = "cython"


def convolve(list a, list b, Py_ssize_t n):
    cdef list out = [0] * (n + 1)
    cdef Py_ssize_t la = min(len(a), n + 1)
    cdef Py_ssize_t lb = len(b)
    cdef Py_ssize_t i, j, top
    cdef object ai, bj
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n + 1 - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def divide_by_pochhammer(list c, Py_ssize_t n):
    cdef list out = list(c)
    cdef Py_ssize_t length = len(out)
    cdef Py_ssize_t j, m, top = min(n, length - 1)
    for j in range(1, top + 1):
        for m in range(j, length):
            out[m] = out[m] + out[m - j]
    return out


cdef class _Walk:
    cdef Py_ssize_t T
    cdef long long *M
    cdef double *W
    cdef double *d
    cdef long long *k
    cdef long long *lo
    cdef long long *hi
    cdef double *rem
    cdef long long *val
    cdef long long *used

    def __cinit__(self, list M, list W, list d):
        cdef Py_ssize_t T = len(M), i, j
        self.T = T
        n = max(T, 1)
        self.M = <long long *> malloc(n * n * sizeof(long long))
        self.W = <double *> malloc(n * n * sizeof(double))
        self.d = <double *> malloc(n * sizeof(double))
        self.k = <long long *> malloc(n * sizeof(long long))
        self.lo = <long long *> malloc(n * sizeof(long long))
        self.hi = <long long *> malloc(n * sizeof(long long))
        self.rem = <double *> malloc((n + 1) * sizeof(double))
        self.val = <long long *> malloc((n + 1) * sizeof(long long))
        self.used = <long long *> malloc((n + 1) * sizeof(long long))
        if not (self.M and self.W and self.d and self.k and self.lo and self.hi
                and self.rem and self.val and self.used):
            raise MemoryError()
        for i in range(T):
            self.d[i] = float(d[i]) if d else 1.0
            for j in range(T):
                self.M[i * T + j] = M[i][j]
                self.W[i * T + j] = float(W[i][j]) if W else 0.0

    def __dealloc__(self):
        free(self.M); free(self.W); free(self.d); free(self.k)
        free(self.lo); free(self.hi); free(self.rem); free(self.val); free(self.used)

    cdef inline long long partial(self, Py_ssize_t p):
        cdef long long cross = 0
        cdef Py_ssize_t q
        cdef long long *row = self.M + p * self.T
        for q in range(p):
            cross += row[q] * self.k[q]
        return self.val[p] + self.k[p] * (2 * cross + row[p] * self.k[p])

    cdef inline double center(self, Py_ssize_t p):
        cdef double c = 0.0
        cdef Py_ssize_t q
        cdef double *wp = self.W + p * self.T
        for q in range(p):
            c += wp[q] * self.k[q]
        return c

    cdef void bounds(self, Py_ssize_t p, double slack):
        cdef double c, r, rem = self.rem[p]
        cdef long long lo
        if rem < -slack:
            self.lo[p] = 0
            self.hi[p] = -1
            return
        c = self.center(p)
        if rem < 0:
            rem = 0
        r = sqrt(rem / self.d[p]) + slack
        lo = <long long> ceil(-c - r)
        self.lo[p] = lo if lo > 0 else 0
        self.hi[p] = <long long> floor(-c + r)

    cdef tuple point(self):
        return tuple([self.k[i] for i in range(self.T)])

    def ellipsoid(self, long long rmax, double cutoff, long long first_lo,
                  long long first_hi, long long limit, sink):
        cdef Py_ssize_t T = self.T, p = 0
        cdef double slack = 1e-9 * (1.0 + abs(cutoff)), t
        cdef long long visited = 0
        if T == 0:
            sink((), 0)
            return
        self.k[0] = 0
        self.val[0] = 0
        self.rem[0] = cutoff
        self.bounds(0, slack)
        if self.lo[0] < first_lo:
            self.lo[0] = first_lo
        if first_hi >= 0 and self.hi[0] > first_hi:
            self.hi[0] = first_hi
        self.k[0] = self.lo[0]
        while True:
            if self.k[p] > self.hi[p]:
                if p == 0:
                    break
                p -= 1
                self.k[p] += 1
                continue
            self.val[p + 1] = self.partial(p)
            if p == T - 1:
                visited += 1
                if visited > limit:
                    raise LatticeLimitError(limit)
                if self.val[T] <= rmax:
                    sink(self.point(), self.val[T])
                self.k[p] += 1
                continue
            t = self.k[p] + self.center(p)
            self.rem[p + 1] = self.rem[p] - self.d[p] * t * t
            p += 1
            self.bounds(p, slack)
            self.k[p] = self.lo[p]

    def simplex(self, long long rmax, long long total, long long first_lo,
                long long first_hi, long long limit, sink):
        cdef Py_ssize_t T = self.T, p = 0
        cdef long long visited = 0
        if T == 0:
            sink((), 0)
            return
        self.val[0] = 0
        self.used[0] = 0
        self.hi[0] = total if first_hi < 0 or first_hi > total else first_hi
        self.k[0] = first_lo
        while True:
            if self.k[p] > self.hi[p]:
                if p == 0:
                    break
                p -= 1
                self.k[p] += 1
                continue
            self.val[p + 1] = self.partial(p)
            if p == T - 1:
                visited += 1
                if visited > limit:
                    raise LatticeLimitError(limit)
                if self.val[T] <= rmax:
                    sink(self.point(), self.val[T])
                self.k[p] += 1
                continue
            self.used[p + 1] = self.used[p] + self.k[p]
            p += 1
            self.hi[p] = total - self.used[p]
            self.k[p] = 0


cdef class _Profile:
    cdef public dict counts

    def __init__(self):
        self.counts = {}

    def __call__(self, tuple k, long long v):
        cdef list parts = [x for x in k if x]
        parts.sort(reverse=True)
        key = (v, tuple(parts))
        self.counts[key] = self.counts.get(key, 0) + 1


def enumerate_ellipsoid(M, rmax, W, d, cutoff, first_lo=0, first_hi=-1, limit=10**7):
    out = []
    _Walk(M, W, d).ellipsoid(rmax, cutoff, first_lo, first_hi, limit, lambda k, v: out.append((k, v)))
    return out


def enumerate_simplex(M, rmax, total, first_lo=0, first_hi=-1, limit=10**7):
    out = []
    _Walk(M, [], []).simplex(rmax, total, first_lo, first_hi, limit, lambda k, v: out.append((k, v)))
    return out


def profile_ellipsoid(M, rmax, W, d, cutoff, first_lo=0, first_hi=-1, limit=10**7):
    prof = _Profile()
    _Walk(M, W, d).ellipsoid(rmax, cutoff, first_lo, first_hi, limit, prof)
    return prof.counts


def profile_simplex(M, rmax, total, first_lo=0, first_hi=-1, limit=10**7):
    prof = _Profile()
    _Walk(M, [], []).simplex(rmax, total, first_lo, first_hi, limit, prof)
    return prof.counts
