"""Small dense linear algebra over the rationals (lists of Fraction rows)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(a: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def kron(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    ra, ca, rb, cb = len(a), len(a[0]), len(b), len(b[0])
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            if a[i][j] == 0:
                continue
            for k in range(rb):
                for m in range(cb):
                    out[i * rb + k][j * cb + m] = Fraction(a[i][j]) * b[k][m]
    return out


def scale(a: Matrix, c) -> Matrix:
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def symmetrize(a: Matrix) -> Matrix:
    n = len(a)
    return [[(a[i][j] + a[j][i]) / 2 for j in range(n)] for i in range(n)]


def inverse(a: Matrix) -> Matrix | None:
    """Gauss-Jordan inverse; ``None`` when singular."""
    n = len(a)
    if any(len(row) != n for row in a):
        return None
    m = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def solve(a: Matrix, b: Sequence) -> list[Fraction] | None:
    inv = inverse(a)
    return None if inv is None else matvec(inv, b)


def ldl(a: Matrix) -> tuple[Matrix, list[Fraction]] | None:
    """``a = L diag(d) L^T`` without pivoting; ``None`` if a zero pivot shows up."""
    n = len(a)
    L = identity(n)
    d: list[Fraction] = []
    for j in range(n):
        dj = Fraction(a[j][j]) - sum((L[j][k] ** 2 * d[k] for k in range(j)), Fraction(0))
        if dj == 0:
            return None
        d.append(dj)
        for i in range(j + 1, n):
            L[i][j] = (Fraction(a[i][j]) - sum((L[i][k] * L[j][k] * d[k] for k in range(j)), Fraction(0))) / dj
    return L, d


def is_positive_definite(a: Matrix) -> bool:
    dec = ldl(a)
    return dec is not None and all(x > 0 for x in dec[1])


def quadratic_value(g: Matrix, k: Sequence) -> Fraction:
    return sum((g[i][j] * k[i] * k[j] for i in range(len(k)) for j in range(len(k))), Fraction(0))


def common_denominator(a: Matrix) -> int:
    out = 1
    for row in a:
        for x in row:
            out = lcm(out, Fraction(x).denominator)
    return out
