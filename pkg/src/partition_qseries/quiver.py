"""Quivers without loops or 2-cycles, stored as skew-symmetric exchange matrices.

Vertices are labelled ``1..n`` throughout. Product quivers flatten the pair
``(i, i')`` to ``(i - 1) * n' + i'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class QuiverError(ValueError):
    """Raised for malformed quivers or invalid operations on them."""


class NotAlternatingError(QuiverError):
    pass


Permutation = tuple[int, ...]


def check_permutation(sigma: Sequence[int], n: int | None = None) -> Permutation:
    """Validate a permutation in one-line notation ``(sigma(1), ..., sigma(n))``."""
    sigma = tuple(int(x) for x in sigma)
    if n is not None and len(sigma) != n:
        raise QuiverError(f"permutation {sigma} has length {len(sigma)}, expected {n}")
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise QuiverError(f"{sigma} is not a permutation of 1..{len(sigma)}")
    return sigma


def identity_permutation(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(sigma: Sequence[int], tau: Sequence[int]) -> Permutation:
    """``sigma o tau`` (apply ``tau`` first)."""
    return tuple(sigma[t - 1] for t in tau)


def invert(sigma: Sequence[int]) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, start=1):
        inv[s - 1] = i
    return tuple(inv)


def transposition(n: int, x: int, y: int) -> Permutation:
    p = list(range(1, n + 1))
    p[x - 1], p[y - 1] = y, x
    return tuple(p)


@dataclass(frozen=True)
class Quiver:
    """A labelled quiver given by its exchange matrix ``b``.

    ``b[i][j]`` (0-based storage) is the number of arrows ``i+1 -> j+1`` minus
    the number of arrows ``j+1 -> i+1``.
    """

    b: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.b)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise QuiverError("exchange matrix must be square")
            if row[i] != 0:
                raise QuiverError(f"vertex {i + 1} carries a loop")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise QuiverError(f"matrix is not skew-symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "b", rows)

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[Sequence[int]]) -> Quiver:
        """Build from a list of arrows ``(i, j)``; repeated arrows add up.

        Loops and 2-cycles are rejected, since mutation is not defined for them here.
        """
        b = [[0] * n for _ in range(n)]
        seen = set()
        for arrow in arrows:
            i, j = (int(x) for x in arrow)
            if not (1 <= i <= n and 1 <= j <= n):
                raise QuiverError(f"arrow {i}->{j} out of range 1..{n}")
            if i == j:
                raise QuiverError(f"loop at vertex {i}")
            if (j, i) in seen:
                raise QuiverError(f"2-cycle between {i} and {j}")
            seen.add((i, j))
            b[i - 1][j - 1] += 1
            b[j - 1][i - 1] -= 1
        return cls(tuple(map(tuple, b)))

    @classmethod
    def zero(cls, n: int) -> Quiver:
        return cls(tuple((0,) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.b)

    def entry(self, i: int, j: int) -> int:
        """``b_ij`` with 1-based vertex labels."""
        return self.b[i - 1][j - 1]

    def arrows(self) -> list[tuple[int, int]]:
        """Arrows ``(i, j)`` with multiplicity, in row-major order."""
        out = []
        for i, row in enumerate(self.b, start=1):
            for j, x in enumerate(row, start=1):
                out.extend([(i, j)] * max(x, 0))
        return out

    def incoming(self, v: int) -> list[tuple[int, int]]:
        """``(a, multiplicity)`` for each ``a`` with arrows ``a -> v``."""
        return [(a, self.b[a - 1][v - 1]) for a in range(1, self.n + 1) if self.b[a - 1][v - 1] > 0]

    def outgoing(self, v: int) -> list[tuple[int, int]]:
        return [(c, self.b[v - 1][c - 1]) for c in range(1, self.n + 1) if self.b[v - 1][c - 1] > 0]

    def _check_vertex(self, k: int) -> None:
        if not 1 <= k <= self.n:
            raise QuiverError(f"vertex {k} out of range 1..{self.n}")

    def mutate(self, k: int) -> Quiver:
        self._check_vertex(k)
        b = self.b
        kk = k - 1
        n = self.n
        out = []
        for i in range(n):
            bik = b[i][kk]
            row = []
            for j in range(n):
                if i == kk or j == kk:
                    row.append(-b[i][j])
                else:
                    prod = bik * b[kk][j]
                    if prod > 0:
                        row.append(b[i][j] + (prod if bik > 0 else -prod))
                    else:
                        row.append(b[i][j])
            out.append(tuple(row))
        return Quiver(tuple(out))

    def relabel(self, sigma: Sequence[int]) -> Quiver:
        """Rename vertex ``i`` to ``sigma(i)``: ``b'[sigma(i)][sigma(j)] = b[i][j]``."""
        sigma = check_permutation(sigma, self.n)
        n = self.n
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            si = sigma[i] - 1
            for j in range(n):
                out[si][sigma[j] - 1] = self.b[i][j]
        return Quiver(tuple(map(tuple, out)))

    def opposite(self) -> Quiver:
        return Quiver(tuple(tuple(-x for x in row) for row in self.b))

    def is_source(self, v: int) -> bool:
        return not self.incoming(v)

    def is_sink(self, v: int) -> bool:
        return not self.outgoing(v)

    def signs(self) -> tuple[int, ...]:
        """Per-vertex sign: +1 for a source, -1 for a sink.

        An isolated vertex counts as a source. Raises NotAlternatingError when
        some vertex has both incoming and outgoing arrows.
        """
        out = []
        for v in range(1, self.n + 1):
            if not self.incoming(v):
                out.append(1)
            elif not self.outgoing(v):
                out.append(-1)
            else:
                raise NotAlternatingError(f"vertex {v} is neither a source nor a sink")
        return tuple(out)

    def is_alternating(self) -> bool:
        try:
            self.signs()
        except NotAlternatingError:
            return False
        return True

    def sources(self) -> list[int]:
        return [v for v, s in enumerate(self.signs(), start=1) if s > 0]

    def sinks(self) -> list[int]:
        return [v for v, s in enumerate(self.signs(), start=1) if s < 0]

    def has_oriented_cycle(self) -> bool:
        n = self.n
        state = [0] * n  # 0 new, 1 on stack, 2 done
        for root in range(n):
            if state[root]:
                continue
            stack = [(root, 0)]
            state[root] = 1
            while stack:
                v, j = stack[-1]
                while j < n and self.b[v][j] <= 0:
                    j += 1
                if j == n:
                    state[v] = 2
                    stack.pop()
                    continue
                stack[-1] = (v, j + 1)
                if state[j] == 1:
                    return True
                if state[j] == 0:
                    state[j] = 1
                    stack.append((j, 0))
        return False

    def to_json(self) -> dict:
        return {"n": self.n, "b": [list(row) for row in self.b]}

    @classmethod
    def from_json(cls, data: dict) -> Quiver:
        if not isinstance(data, dict) or "n" not in data:
            raise QuiverError("quiver JSON needs an 'n' field")
        n = int(data["n"])
        if "b" in data:
            q = cls(tuple(tuple(row) for row in data["b"]))
            if q.n != n:
                raise QuiverError(f"'n' is {n} but matrix has size {q.n}")
            return q
        if "arrows" in data:
            return cls.from_arrows(n, data["arrows"])
        raise QuiverError("quiver JSON needs 'b' or 'arrows'")

    def __str__(self):
        arrows = []
        for i, row in enumerate(self.b, start=1):
            for j, x in enumerate(row, start=1):
                if x > 0:
                    arrows.append(f"{i}->{j}" if x == 1 else f"{i}=({x})=>{j}")
        return f"Quiver(n={self.n}; {', '.join(arrows) or 'no arrows'})"


def tensor_product(q: Quiver, qp: Quiver) -> Quiver:
    """``B(Q) (x) I + I (x) B(Q')`` on the lexicographically ordered vertex pairs."""
    if q.has_oriented_cycle() or qp.has_oriented_cycle():
        raise QuiverError("tensor product needs quivers without oriented cycles")
    n, m = q.n, qp.n
    size = n * m
    out = [[0] * size for _ in range(size)]
    for i in range(n):
        for ip in range(m):
            row = i * m + ip
            for j in range(n):
                if q.b[i][j]:
                    out[row][j * m + ip] += q.b[i][j]
            for jp in range(m):
                if qp.b[ip][jp]:
                    out[row][i * m + jp] += qp.b[ip][jp]
    return Quiver(tuple(map(tuple, out)))


def square_product(q: Quiver, qp: Quiver) -> Quiver:
    """Square product of two alternating quivers.

    Starts from the tensor product and reverses the copies ``{i} x Q'`` for each
    source ``i`` of ``Q`` and ``Q x {i'}`` for each sink ``i'`` of ``Q'``.
    """
    sq = q.signs()
    sqp = qp.signs()
    t = [list(row) for row in tensor_product(q, qp).b]
    n, m = q.n, qp.n
    for i in range(n):
        for ip in range(m):
            v = i * m + ip
            for jp in range(m):
                w = i * m + jp
                # vertical arrow inside {i} x Q'
                if qp.b[ip][jp] and sq[i] > 0:
                    t[v][w] = -qp.b[ip][jp]
            for j in range(n):
                w = j * m + ip
                if q.b[i][j] and sqp[ip] < 0:
                    t[v][w] = -q.b[i][j]
    return Quiver(tuple(map(tuple, t)))


def sign_classes(q: Quiver, qp: Quiver) -> tuple[list[int], list[int]]:
    """Vertices of ``Q square Q'`` with ``sgn(i) sgn(i') = +1`` and ``-1``."""
    sq = q.signs()
    sqp = qp.signs()
    plus, minus = [], []
    m = qp.n
    for i in range(q.n):
        for ip in range(m):
            (plus if sq[i] * sqp[ip] > 0 else minus).append(i * m + ip + 1)
    return plus, minus


def product_vertex(i: int, ip: int, m: int) -> int:
    """Flattened label of the pair ``(i, i')`` when the second factor has ``m`` vertices."""
    return (i - 1) * m + ip
