"""The s/k-variable system of a mutation loop and its exponent quadratic form.

Every mutation at ``v`` contributes one row to ``k = A s``::

    k_t = s_v + s'_v - sum_{a -> v} s_a

and one row to ``kv = B s`` with the outgoing arrows instead. The weight
exponent is ``H(s) = 1/2 sum_t k_t kv_t``; on a nondegenerate loop it becomes a
quadratic form ``F(k) = k^T G k`` in the k-variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import linalg
from .linalg import Matrix
from .loops import MutationLoop, Mutate

POSITIVE_DEFINITE = "positive-definite"
COPOSITIVE = "copositive-certified"
FAILED = "failed"

MAX_COPOSITIVE_RANK = 20


class DegenerateLoopError(ValueError):
    pass


class PositivityError(ValueError):
    pass


@dataclass(frozen=True)
class VariableSystem:
    """``k = A s`` and ``kv = B s`` over the independent s-variables.

    Rows follow mutation order; columns are the s-variable classes left after
    the boundary identification, ordered by their first slot.
    """

    A: tuple[tuple[Fraction, ...], ...]
    B: tuple[tuple[Fraction, ...], ...]
    mutated: tuple[int, ...]
    slot_names: tuple[str, ...]

    @property
    def T(self) -> int:
        return len(self.A)

    @property
    def inverse(self) -> Matrix | None:
        if len(self.slot_names) != self.T:
            return None
        return linalg.inverse([list(r) for r in self.A])

    def is_nondegenerate(self) -> bool:
        return self.inverse is not None

    def weight_matrix(self) -> Matrix:
        """Symmetric matrix of ``H(s) = 1/2 sum_t (A_t s)(B_t s)``."""
        atb = linalg.matmul(linalg.transpose([list(r) for r in self.A]), [list(r) for r in self.B])
        return linalg.scale(linalg.symmetrize(atb), Fraction(1, 2))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller id as representative
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def build_system(loop: MutationLoop) -> VariableSystem:
    n = loop.n
    q = loop.quiver
    current = list(range(n))  # slot held by each vertex (0-based)
    names = [f"s{v}" for v in range(1, n + 1)]
    primes = [0] * n
    rows_a: list[dict[int, int]] = []
    rows_b: list[dict[int, int]] = []
    mutated = []
    for st in loop.steps:
        if isinstance(st, Mutate):
            v = st.vertex
            new = len(names)
            primes[v - 1] += 1
            names.append(f"s{v}" + "'" * primes[v - 1])
            ra = {current[v - 1]: 1}
            ra[new] = ra.get(new, 0) + 1
            rb = dict(ra)
            for a, mult in q.incoming(v):
                ra[current[a - 1]] = ra.get(current[a - 1], 0) - mult
            for c, mult in q.outgoing(v):
                rb[current[c - 1]] = rb.get(current[c - 1], 0) - mult
            rows_a.append(ra)
            rows_b.append(rb)
            mutated.append(v)
            current[v - 1] = new
            q = q.mutate(v)
        else:
            moved = [0] * n
            for i, s in enumerate(st.sigma):
                moved[s - 1] = current[i]
            current = moved
            q = q.relabel(st.sigma)
    uf = _UnionFind(len(names))
    for v in range(n):
        uf.union(current[v], v)
    reps = sorted({uf.find(x) for x in range(len(names))})
    col = {r: i for i, r in enumerate(reps)}

    def dense(rows):
        out = []
        for row in rows:
            vec = [Fraction(0)] * len(reps)
            for slot, c in row.items():
                vec[col[uf.find(slot)]] += c
            out.append(tuple(vec))
        return tuple(out)

    return VariableSystem(dense(rows_a), dense(rows_b), tuple(mutated), tuple(names[r] for r in reps))


@dataclass(frozen=True)
class ExponentForm:
    """``F(k) = k^T G k`` with grading denominator ``delta``.

    ``positivity`` is one of ``positive-definite``, ``copositive-certified`` or
    ``failed``; ``bound`` is the certified ``m`` with ``F(k) >= m (sum k)^2``
    on the nonnegative orthant (zero unless copositive-certified).
    """

    gram: tuple[tuple[Fraction, ...], ...]
    delta: int
    positivity: str
    bound: Fraction = Fraction(0)

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence]) -> ExponentForm:
        g = linalg.to_fractions(gram)
        n = len(g)
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        tag, bound = certify_positive(g)
        return cls(tuple(map(tuple, g)), grading_denominator(g), tag, bound)

    @property
    def T(self) -> int:
        return len(self.gram)

    def value(self, k: Sequence[int]) -> Fraction:
        return linalg.quadratic_value(self.gram, k)

    def integer_matrix(self) -> list[list[int]]:
        """``2 * delta * G``; integral, with ``k^T M k = 2 * delta * F(k)``."""
        return [[int(2 * self.delta * x) for x in row] for row in self.gram]

    def permuted(self, order: Sequence[int]) -> ExponentForm:
        """Reindex so that new variable ``i`` is old variable ``order[i]`` (0-based)."""
        g = tuple(tuple(self.gram[a][b] for b in order) for a in order)
        return ExponentForm(g, self.delta, self.positivity, self.bound)

    def to_json(self) -> dict:
        den = linalg.common_denominator(self.gram)
        return {
            "delta": self.delta,
            "gram_num": [[int(x * den) for x in row] for row in self.gram],
            "gram_den": den,
            "positivity": self.positivity,
        }

    @classmethod
    def from_json(cls, data: dict) -> ExponentForm:
        den = int(data["gram_den"])
        g = [[Fraction(int(x), den) for x in row] for row in data["gram_num"]]
        form = cls.from_gram(g)
        if int(data["delta"]) != form.delta:
            raise ValueError(f"stored delta {data['delta']} disagrees with the Gram matrix ({form.delta})")
        return form


def grading_denominator(g: Matrix) -> int:
    """Least ``D > 0`` with ``D * k^T G k`` integral on all integer vectors."""
    d = 1
    n = len(g)
    for i in range(n):
        d = lcm(d, Fraction(g[i][i]).denominator)
        for j in range(i + 1, n):
            d = lcm(d, (2 * Fraction(g[i][j])).denominator)
    return d


def simplex_minimum(g: Matrix) -> Fraction:
    """Exact minimum of ``k^T G k`` over ``{k >= 0, sum k = 1}``.

    Checks the stationary point of every face. Faces whose KKT system is
    singular are skipped: their minimum is also attained on a smaller face.
    """
    n = len(g)
    best = None
    for size in range(1, n + 1):
        for support in itertools.combinations(range(n), size):
            kkt = [[g[i][j] for j in support] + [Fraction(-1)] for i in support]
            kkt.append([Fraction(1)] * size + [Fraction(0)])
            sol = linalg.solve(kkt, [Fraction(0)] * size + [Fraction(1)])
            if sol is None or any(x < 0 for x in sol[:size]):
                continue
            val = sol[size]  # k^T G k = lambda * sum(k) = lambda
            if best is None or val < best:
                best = val
    assert best is not None  # vertices always give a solution
    return best


def certify_positive(g: Matrix) -> tuple[str, Fraction]:
    if len(g) == 0:
        return POSITIVE_DEFINITE, Fraction(0)
    if linalg.is_positive_definite(g):
        return POSITIVE_DEFINITE, Fraction(0)
    if len(g) > MAX_COPOSITIVE_RANK:
        raise PositivityError(
            f"form of rank {len(g)} is not positive definite and too large for the copositivity check"
        )
    m = simplex_minimum(g)
    if m > 0:
        return COPOSITIVE, m
    return FAILED, Fraction(0)


def exponent_form(loop_or_system) -> ExponentForm:
    sys = loop_or_system if isinstance(loop_or_system, VariableSystem) else build_system(loop_or_system)
    inv = sys.inverse
    if inv is None:
        raise DegenerateLoopError("the k = A s relation of this loop is not invertible")
    h = sys.weight_matrix()
    g = linalg.matmul(linalg.matmul(linalg.transpose(inv), h), inv)
    return ExponentForm.from_gram(linalg.symmetrize(g))


def vertex_indexed(form: ExponentForm, sys: VariableSystem) -> ExponentForm:
    """Reindex k-variables by vertex; valid when each vertex is mutated exactly once."""
    order = sorted(range(sys.T), key=lambda t: sys.mutated[t])
    if sorted(sys.mutated) != list(range(1, sys.T + 1)):
        raise ValueError("vertex indexing needs every vertex mutated exactly once")
    return form.permuted(order)
