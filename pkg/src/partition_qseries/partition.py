"""The partition q-series ``Z = sum_{k >= 0} q^F(k) / prod_t (q)_{k_t}``."""

from __future__ import annotations

from fractions import Fraction
from math import floor

from .lattice import DEFAULT_LIMIT, lattice_profile
from .loops import MutationLoop
from .series import QSeries, inv_pochhammer, inv_pochhammer_product
from .variables import ExponentForm, exponent_form


def partition_series(
    form: ExponentForm,
    cutoff,
    *,
    strategy: str | None = None,
    jobs: int = 1,
    limit: int = DEFAULT_LIMIT,
    backend: str | None = None,
) -> QSeries:
    """Sum ``q^F(k) / (q)_k`` over the lattice points with ``F(k) <= cutoff``.

    Points with ``F(k) > cutoff`` only contribute above the cutoff, so every
    retained coefficient is exact.
    """
    cutoff = Fraction(cutoff)
    delta = form.delta
    top = floor(cutoff * delta)
    profile = lattice_profile(form, cutoff, strategy=strategy, limit=limit, backend=backend, jobs=jobs)
    coeffs = [0] * (top + 1)
    for (e, parts), count in sorted(profile.items()):
        length = (top - e) // delta + 1
        prod = inv_pochhammer_product(parts, length)
        for j, c in enumerate(prod):
            if c:
                coeffs[e + j * delta] += count * c
    return QSeries(delta, cutoff, tuple(coeffs))


def sum_loop(loop: MutationLoop, cutoff, **kwargs) -> QSeries:
    """Partition q-series of a nondegenerate, positive mutation loop."""
    return partition_series(exponent_form(loop), cutoff, **kwargs)


def q_pentagon_sides(m: int, n: int, cutoff) -> tuple[QSeries, QSeries]:
    """Both sides of ``1/((q)_m (q)_n) = sum_{r+s=m, s+t=n} q^(rt) / ((q)_r (q)_s (q)_t)``."""
    lhs = inv_pochhammer(m, cutoff) * inv_pochhammer(n, cutoff)
    rhs = QSeries.zero(cutoff)
    for s in range(min(m, n) + 1):
        r, t = m - s, n - s
        term = inv_pochhammer(r, cutoff) * inv_pochhammer(s, cutoff) * inv_pochhammer(t, cutoff)
        rhs = rhs + term.shift(r * t)
    return lhs, rhs


def q_pentagon_check(m: int, n: int, cutoff) -> bool:
    lhs, rhs = q_pentagon_sides(m, n, cutoff)
    return lhs == rhs
