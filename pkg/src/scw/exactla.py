"""Exact linear algebra over the rationals and the integers.

Small dense matrices only (dimension <= ~25 throughout the workbench), so
plain row reduction with exact arithmetic is both simple and fast.  No
floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Matrix = list[list[Fraction]]


def as_fraction_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def det_bareiss(rows) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Rational input is first scaled row-by-row to integers; the determinant
    is divided back by the scaling factors at the end.
    """
    m = as_fraction_matrix(rows)
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    scale = Fraction(1)
    a: list[list[int]] = []
    for row in m:
        d = lcm(*(x.denominator for x in row))
        scale *= d
        a.append([int(x * d) for x in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], 1) / scale


def rank(rows) -> int:
    """Rank over Q by Gaussian elimination."""
    m = as_fraction_matrix(rows)
    if not m:
        return 0
    n_cols = len(m[0])
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


class _SnfState:
    """Row/column operation bookkeeping for Smith reduction."""

    def __init__(self, rows: list[list[int]]):
        self.a = [list(map(int, row)) for row in rows]
        self.m = len(self.a)
        self.n = len(self.a[0]) if self.m else 0
        self.u = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
        # vt holds the columns of V as rows
        self.vt = [[int(i == j) for j in range(self.n)] for i in range(self.n)]

    def row_swap(self, i, j):
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]

    def row_add(self, i, j, q):
        self.a[i] = [x + q * y for x, y in zip(self.a[i], self.a[j])]
        self.u[i] = [x + q * y for x, y in zip(self.u[i], self.u[j])]

    def col_swap(self, i, j):
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        self.vt[i], self.vt[j] = self.vt[j], self.vt[i]

    def col_add(self, i, j, q):
        for row in self.a:
            row[i] += q * row[j]
        self.vt[i] = [x + q * y for x, y in zip(self.vt[i], self.vt[j])]

    def diagonalize(self):
        a = self.a
        for t in range(min(self.m, self.n)):
            while True:
                piv = None
                for i in range(t, self.m):
                    for j in range(t, self.n):
                        if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                            piv = (i, j)
                if piv is None:
                    return
                if piv != (t, t):
                    if piv[0] != t:
                        self.row_swap(t, piv[0])
                    if piv[1] != t:
                        self.col_swap(t, piv[1])
                clean = True
                for i in range(t + 1, self.m):
                    if a[i][t] != 0:
                        self.row_add(i, t, -(a[i][t] // a[t][t]))
                        clean = clean and a[i][t] == 0
                for j in range(t + 1, self.n):
                    if a[t][j] != 0:
                        self.col_add(j, t, -(a[t][j] // a[t][t]))
                        clean = clean and a[t][j] == 0
                if clean:
                    break


def smith_normal_form(rows: list[list[int]]):
    """Return (U, S, V) with U*A*V = S, U and V unimodular, S diagonal
    with the divisibility chain s_1 | s_2 | ...
    """
    st = _SnfState(rows)
    st.diagonalize()
    r = min(st.m, st.n)
    while True:
        bad = next(
            (k for k in range(r - 1)
             if st.a[k][k] != 0 and st.a[k + 1][k + 1] % st.a[k][k] != 0),
            None,
        )
        if bad is None:
            break
        st.col_add(bad, bad + 1, 1)
        st.diagonalize()
    for i in range(r):
        if st.a[i][i] < 0:
            st.row_add(i, i, -2)
    v = [[st.vt[j][i] for j in range(st.n)] for i in range(st.n)]
    return st.u, st.a, v


def verify_snf(a_rows, u, s, v) -> bool:
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    ua = [[sum(u[i][k] * a_rows[k][j] for k in range(m)) for j in range(n)] for i in range(m)]
    uav = [[sum(ua[i][k] * v[k][j] for k in range(n)) for j in range(n)] for i in range(m)]
    return uav == [list(map(int, row)) for row in s]
