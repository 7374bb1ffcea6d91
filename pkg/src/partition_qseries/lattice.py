"""Enumeration of ``{k in N^T : F(k) <= cutoff}`` for a positive exponent form."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt, sqrt
from typing import Iterator

from . import _backend, linalg
from .errors import LatticeLimitError
from .variables import COPOSITIVE, FAILED, POSITIVE_DEFINITE, ExponentForm, PositivityError, simplex_minimum

PD_RECURSIVE = "pd-recursive"
SIMPLEX_BOUND = "simplex-bound"
STRATEGIES = (PD_RECURSIVE, SIMPLEX_BOUND)

DEFAULT_LIMIT = 10**7
_INT64_SAFE = 2**61

__all__ = [
    "DEFAULT_LIMIT",
    "LatticeLimitError",
    "LatticePlan",
    "PD_RECURSIVE",
    "SIMPLEX_BOUND",
    "enumerate_lattice",
    "lattice_profile",
    "plan",
]


@dataclass(frozen=True)
class LatticePlan:
    """Everything the kernels need for one enumeration."""

    strategy: str
    M: list
    rmax: int
    cutoff: Fraction
    W: list | None = None
    d: list | None = None
    total: int = 0
    kmax: int = 0

    def fits_int64(self) -> bool:
        T = len(self.M)
        big = max((abs(x) for row in self.M for x in row), default=0)
        return big * T * T * (self.kmax + 1) ** 2 < _INT64_SAFE and self.rmax < _INT64_SAFE


def _reverse_ldl(gram):
    """Float pruning data so that coordinate 0 is the outermost loop.

    With ``R = P G P`` (index reversal) and ``R = L D L^T``, level ``p`` of the
    walk fixes ``k_p`` and contributes ``d_p (k_p + sum_{q<p} W[p][q] k_q)^2``.
    """
    T = len(gram)
    rev = [[gram[T - 1 - i][T - 1 - j] for j in range(T)] for i in range(T)]
    dec = linalg.ldl(rev)
    if dec is None:
        raise PositivityError("Gram matrix has a zero pivot")
    L, dvec = dec
    W = [[0.0] * T for _ in range(T)]
    d = [0.0] * T
    for p in range(T):
        i = T - 1 - p
        d[p] = float(dvec[i])
        for q in range(p):
            W[p][q] = float(L[T - 1 - q][i])
    return W, d


def plan(form: ExponentForm, cutoff, strategy: str | None = None) -> LatticePlan:
    cutoff = Fraction(cutoff)
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    if form.positivity == FAILED:
        raise PositivityError("exponent form is not positive on the nonnegative orthant")
    if strategy is None:
        strategy = PD_RECURSIVE if form.positivity == POSITIVE_DEFINITE else SIMPLEX_BOUND
    M = form.integer_matrix()
    rmax = floor(2 * form.delta * cutoff)
    T = form.T
    if strategy == PD_RECURSIVE:
        if form.positivity != POSITIVE_DEFINITE:
            raise PositivityError("pd-recursive enumeration needs a positive definite form")
        W, d = _reverse_ldl(form.gram)
        inv = linalg.inverse([list(r) for r in form.gram]) if T else []
        kmax = max((floor(sqrt(float(cutoff * inv[i][i]))) + 1 for i in range(T)), default=0)
        return LatticePlan(strategy, M, rmax, cutoff, W=W, d=d, kmax=kmax)
    if strategy == SIMPLEX_BOUND:
        m = form.bound if form.positivity == COPOSITIVE else (simplex_minimum(form.gram) if T else Fraction(1))
        total = isqrt(floor(cutoff / m))
        return LatticePlan(strategy, M, rmax, cutoff, total=total, kmax=total)
    raise ValueError(f"unknown strategy {strategy!r}")


def _kernels_for(p: LatticePlan, backend: str | None):
    k = _backend.get(backend)
    if k.BACKEND == "cython" and not p.fits_int64():
        return _backend.python_kernels
    return k


def _first_range(p: LatticePlan) -> int:
    if p.strategy == SIMPLEX_BOUND:
        return p.total
    return p.kmax


def _run(p: LatticePlan, backend, first_lo, first_hi, limit, profile: bool):
    k = _kernels_for(p, backend)
    if p.strategy == PD_RECURSIVE:
        fn = k.profile_ellipsoid if profile else k.enumerate_ellipsoid
        return fn(p.M, p.rmax, p.W, p.d, float(p.cutoff), first_lo, first_hi, limit)
    fn = k.profile_simplex if profile else k.enumerate_simplex
    return fn(p.M, p.rmax, p.total, first_lo, first_hi, limit)


def _profile_task(args):
    p, backend, lo, hi, limit = args
    return _run(p, backend, lo, hi, limit, True)


def enumerate_lattice(
    form: ExponentForm,
    cutoff,
    strategy: str | None = None,
    limit: int = DEFAULT_LIMIT,
    backend: str | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every ``k >= 0`` with ``F(k) <= cutoff`` once, in lexicographic order."""
    p = plan(form, cutoff, strategy)
    for k, _ in _run(p, backend, 0, -1, limit, False):
        yield k


def lattice_points(form, cutoff, strategy=None, limit=DEFAULT_LIMIT, backend=None):
    """``[(k, Delta * F(k)), ...]`` in lexicographic order of ``k``."""
    p = plan(form, cutoff, strategy)
    return [(k, v // 2) for k, v in _run(p, backend, 0, -1, limit, False)]


def lattice_profile(
    form: ExponentForm,
    cutoff,
    strategy: str | None = None,
    limit: int = DEFAULT_LIMIT,
    backend: str | None = None,
    jobs: int = 1,
) -> dict[tuple[int, tuple[int, ...]], int]:
    """Count lattice points by ``(Delta * F(k), nonzero entries of k sorted decreasingly)``.

    With ``jobs > 1`` the first coordinate is split across worker processes;
    the merge is a plain sum so the result does not depend on ``jobs``.
    """
    p = plan(form, cutoff, strategy)
    if jobs <= 1 or form.T == 0:
        raw = _run(p, backend, 0, -1, limit, True)
    else:
        tasks = [(p, backend, v, v, limit) for v in range(_first_range(p) + 1)]
        raw = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_profile_task, tasks):
                for key, c in part.items():
                    raw[key] = raw.get(key, 0) + c
        if sum(raw.values()) > limit:
            raise LatticeLimitError(limit)
    return {(v // 2, parts): c for (v, parts), c in raw.items()}
