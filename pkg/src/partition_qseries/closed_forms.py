"""Alternating ADE quivers, their canonical loops and the matching fermionic sums.

Vertex numbering: A_n is the path 1..n; D_n is the path 1..n-2 with n-1 and n
attached to n-2; E_n is the path 1..n-1 with n attached to 3. Vertex 1 is
always a source.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import linalg
from .loops import MutationLoop
from .partition import partition_series, sum_loop
from .quiver import Quiver, sign_classes, square_product
from .series import QSeries, pochhammer
from .variables import ExponentForm

PLUS_FIRST = "plus"
MINUS_FIRST = "minus"


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        ok = (
            (fam == "A" and self.rank >= 1)
            or (fam == "D" and self.rank >= 4)
            or (fam == "E" and self.rank in (6, 7, 8))
        )
        if not ok:
            raise ValueError(f"no simply-laced Dynkin diagram {fam}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> DynkinType:
        m = re.fullmatch(r"\s*([AaDdEe])_?(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse Dynkin type {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"

    def edges(self) -> list[tuple[int, int]]:
        n = self.rank
        if self.family == "A":
            return [(i, i + 1) for i in range(1, n)]
        if self.family == "D":
            return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
        return [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]


def _as_type(t) -> DynkinType:
    return t if isinstance(t, DynkinType) else DynkinType.parse(t)


def cartan_matrix(t) -> list[list[int]]:
    t = _as_type(t)
    n = t.rank
    c = [[2 * int(i == j) for j in range(n)] for i in range(n)]
    for i, j in t.edges():
        c[i - 1][j - 1] = c[j - 1][i - 1] = -1
    return c


def inverse_cartan(t) -> list[list[Fraction]]:
    inv = linalg.inverse(linalg.to_fractions(cartan_matrix(t)))
    assert inv is not None
    return inv


def _colouring(t: DynkinType) -> list[int]:
    n = t.rank
    adj = {v: [] for v in range(1, n + 1)}
    for i, j in t.edges():
        adj[i].append(j)
        adj[j].append(i)
    sign = {1: 1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in sign:
                sign[w] = -sign[v]
                stack.append(w)
    return [sign[v] for v in range(1, n + 1)]


def alternating_dynkin(t) -> tuple[Quiver, tuple[int, ...]]:
    """Alternating orientation with vertex 1 a source; returns the quiver and its signs."""
    t = _as_type(t)
    sign = _colouring(t)
    arrows = []
    for i, j in t.edges():
        arrows.append((i, j) if sign[i - 1] > 0 else (j, i))
    q = Quiver.from_arrows(t.rank, arrows)
    return q, q.signs()


def dynkin_loop(t) -> MutationLoop:
    """``(Q; sinks then sources, id)``, each block in increasing vertex order."""
    q, signs = alternating_dynkin(t)
    sinks = [v for v, s in enumerate(signs, start=1) if s < 0]
    sources = [v for v, s in enumerate(signs, start=1) if s > 0]
    return MutationLoop.from_normal_form(q, sinks + sources)


def dynkin_form(t) -> ExponentForm:
    return ExponentForm.from_gram(inverse_cartan(t))


def dynkin_closed_form(t, cutoff, **kwargs) -> QSeries:
    """``sum_k q^(k^T C^-1 k) / (q)_k`` for the Cartan matrix ``C`` of ``t``."""
    return partition_series(dynkin_form(t), cutoff, **kwargs)


def _check_square_factor(t: DynkinType) -> None:
    if t.family == "A" and t.rank == 1:
        raise ValueError("square products need factors with at least one arrow (A1 is excluded)")


def square_quiver(t, tp) -> Quiver:
    t, tp = _as_type(t), _as_type(tp)
    _check_square_factor(t)
    _check_square_factor(tp)
    return square_product(alternating_dynkin(t)[0], alternating_dynkin(tp)[0])


def square_loop(t, tp, order: str = PLUS_FIRST) -> MutationLoop:
    t, tp = _as_type(t), _as_type(tp)
    sq = square_quiver(t, tp)
    plus, minus = sign_classes(alternating_dynkin(t)[0], alternating_dynkin(tp)[0])
    if order == PLUS_FIRST:
        seq = plus + minus
    elif order == MINUS_FIRST:
        seq = minus + plus
    else:
        raise ValueError(f"order must be {PLUS_FIRST!r} or {MINUS_FIRST!r}")
    return MutationLoop.from_normal_form(sq, seq)


def square_gram(t, tp, order: str = PLUS_FIRST) -> list[list[Fraction]]:
    """``1/2 (C (x) C'^-1)`` for plus-first, ``1/2 (C^-1 (x) C')`` for minus-first."""
    t, tp = _as_type(t), _as_type(tp)
    _check_square_factor(t)
    _check_square_factor(tp)
    if order == PLUS_FIRST:
        g = linalg.kron(linalg.to_fractions(cartan_matrix(t)), inverse_cartan(tp))
    elif order == MINUS_FIRST:
        g = linalg.kron(inverse_cartan(t), linalg.to_fractions(cartan_matrix(tp)))
    else:
        raise ValueError(f"order must be {PLUS_FIRST!r} or {MINUS_FIRST!r}")
    return linalg.scale(g, Fraction(1, 2))


def square_closed_form(t, tp, order: str = PLUS_FIRST, cutoff=0, **kwargs) -> QSeries:
    return partition_series(ExponentForm.from_gram(square_gram(t, tp, order)), cutoff, **kwargs)


def theta_a3(cutoff) -> QSeries:
    """``sum_{n in Z} q^(3 n^2 / 4)`` truncated at ``cutoff``."""
    cutoff = Fraction(cutoff)
    terms: dict[int, int] = {}
    nmax = isqrt(int(4 * cutoff / 3)) + 1
    for n in range(-nmax, nmax + 1):
        e = 3 * n * n
        terms[e] = terms.get(e, 0) + 1
    return QSeries.from_terms(4, cutoff, terms)


def theta_check_a3(cutoff, **kwargs) -> bool:
    """``Z(A3 loop) * (q)_M`` against the theta sum; ``M >= cutoff`` makes ``(q)_M`` exact there."""
    cutoff = Fraction(cutoff)
    z = sum_loop(dynkin_loop("A3"), cutoff, **kwargs)
    big_m = int(cutoff) + 1
    lhs = z * pochhammer(big_m, cutoff, z.delta)
    return lhs.agrees_with(theta_a3(cutoff))
