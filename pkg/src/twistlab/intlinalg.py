"""Exact integer linear algebra: Smith normal form, determinants, kernels,
and linear congruence systems.

All core routines use plain Python integers, so results are exact at any
magnitude.  numpy appears only as a fast matvec backend inside
:class:`CongruenceSolver`, with an automatic fallback to object dtype when
int64 could overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    oi[j] += aik * bk[j]
    return out


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(r[j] * v[j] for j in range(len(v))) for r in a]


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in mat]
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
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(mat: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return unimodular (U, S, V) with U @ mat @ V == S, S diagonal with a
    divisibility chain d1 | d2 | ... and nonnegative entries."""
    a = [list(map(int, row)) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row_dst -= q * row_src
        if q:
            arow, srow = a[dst], a[src]
            for j in range(cols):
                arow[j] -= q * srow[j]
            urow, usrow = u[dst], u[src]
            for j in range(rows):
                urow[j] -= q * usrow[j]

    def add_col(src, dst, q):  # col_dst -= q * col_src
        if q:
            for r in a:
                r[dst] -= q * r[src]
            for r in v:
                r[dst] -= q * r[src]

    t = 0
    while t < min(rows, cols):
        # pivot: nonzero entry of least magnitude in the trailing block
        pi = pj = -1
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best, pi, pj = abs(x), i, j
        if best is None:
            break
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)

        while True:
            # clear column t with Euclidean row steps
            dirty = False
            for i in range(t + 1, rows):
                while a[i][t]:
                    if abs(a[i][t]) < abs(a[t][t]):
                        swap_rows(i, t)
                        dirty = True
                    add_row(t, i, a[i][t] // a[t][t])
            # clear row t with Euclidean column steps
            for j in range(t + 1, cols):
                while a[t][j]:
                    if abs(a[t][j]) < abs(a[t][t]):
                        swap_cols(j, t)
                        dirty = True
                        # column swap may repopulate column t below
                    add_col(t, j, a[t][j] // a[t][t])
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            if dirty:
                continue
            # force divisibility of the trailing block by the pivot
            offender = None
            p = a[t][t]
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, -1)  # row_t += row_offender, then re-clear

        if a[t][t] < 0:
            add_row(t, t, 2)  # negate row t: row -= 2*row
        t += 1

    return u, a, v


def diagonal_of(s: Sequence[Sequence[int]]) -> list[int]:
    rows = len(s)
    cols = len(s[0]) if rows else 0
    return [s[i][i] for i in range(min(rows, cols))]


def kernel_basis(mat: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis (as column vectors) of the integer kernel of mat."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    _, s, v = smith_normal_form(mat)
    diag = diagonal_of(s)
    basis = []
    for j in range(cols):
        if j >= len(diag) or diag[j] == 0:
            basis.append([v[i][j] for i in range(cols)])
    return basis


def solve_integer(mat: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[list[int]]:
    """One integer solution of mat @ x == target, or None."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    u, s, v = smith_normal_form(mat)
    y = mat_vec(u, list(target))
    diag = diagonal_of(s)
    w = [0] * cols
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % d:
                return None
            if i < cols:
                w[i] = y[i] // d
    return mat_vec(v, w)


class CongruenceSolver:
    """Solver for systems  sum_j M[r][j] x_j = t_r (mod m_r)  over the
    integers, with the Smith decomposition of the augmented matrix computed
    once so that many right-hand sides are cheap.

    A modulus of 0 marks an equation over Z.
    """

    def __init__(self, matrix: Sequence[Sequence[int]], moduli: Sequence[int]):
        rows = len(matrix)
        if rows != len(moduli):
            raise ValueError("one modulus per row required")
        self.n_unknowns = len(matrix[0]) if rows else 0
        self.moduli = [int(m) for m in moduli]
        self.matrix = [list(map(int, row)) for row in matrix]
        aug = [row[:] for row in self.matrix]
        self._slack_cols = 0
        for r, m in enumerate(self.moduli):
            if m < 0:
                raise ValueError("moduli must be nonnegative")
        slack_rows = [r for r, m in enumerate(self.moduli) if m]
        self._slack_cols = len(slack_rows)
        for k, r in enumerate(slack_rows):
            for rr in range(rows):
                aug[rr].append(self.moduli[r] if rr == r else 0)
        self.rows = rows
        self.cols = self.n_unknowns + self._slack_cols
        u, s, v = smith_normal_form(aug) if rows else (identity_matrix(0), [], identity_matrix(self.cols))
        self._diag = diagonal_of(s)
        self._u = self._as_array(u)
        # only the x-part of V is ever needed
        self._v_top = self._as_array([row[: self.cols] for row in v[: self.n_unknowns]]) \
            if self.cols else np.zeros((self.n_unknowns, 0), dtype=np.int64)

    @staticmethod
    def _as_array(m: Matrix) -> np.ndarray:
        if not m:
            return np.zeros((0, 0), dtype=np.int64)
        peak = max((abs(x) for row in m for x in row), default=0)
        dtype = np.int64 if peak < 2**31 else object
        return np.array(m, dtype=dtype)

    def solve(self, target: Sequence[int]) -> Optional[list[int]]:
        """One solution vector (unknowns only), or None if unsolvable."""
        if self.rows == 0:
            return [0] * self.n_unknowns
        target = list(target)
        peak_t = max((abs(x) for x in target), default=0)
        dtype = self._u.dtype
        if dtype == np.int64 and peak_t * (2**31) * max(self.rows, 1) >= 2**62:
            dtype = object
        t = np.array(target, dtype=dtype)
        y = (self._u.astype(object) if dtype == object else self._u) @ t
        w = [0] * self.cols
        for i in range(self.rows):
            d = self._diag[i] if i < len(self._diag) else 0
            yi = int(y[i])
            if d == 0:
                if yi != 0:
                    return None
            else:
                if yi % d:
                    return None
                if i < self.cols:
                    w[i] = yi // d
        peak_w = max((abs(x) for x in w), default=0)
        vdtype = self._v_top.dtype
        if vdtype == np.int64 and peak_w * (2**31) * max(self.cols, 1) >= 2**62:
            vdtype = object
        x = (self._v_top.astype(object) if vdtype == object else self._v_top) \
            @ np.array(w, dtype=vdtype)
        sol = [int(v) for v in x]
        assert self.check(sol, target), "congruence solver produced a bad solution"
        return sol

    def check(self, x: Sequence[int], target: Sequence[int]) -> bool:
        """Substitute x into every congruence."""
        for r in range(self.rows):
            row = self.matrix[r]
            lhs = sum(row[j] * x[j] for j in range(self.n_unknowns))
            m = self.moduli[r]
            if m:
                if (lhs - target[r]) % m:
                    return False
            elif lhs != target[r]:
                return False
        return True

    def homogeneous_generators(self) -> list[list[int]]:
        """Generators (unknown part) of the solution set of the homogeneous
        system; together with the unknowns' own moduli these span every
        solution."""
        aug = [row[:] for row in self.matrix]
        slack_rows = [r for r, m in enumerate(self.moduli) if m]
        for k, r in enumerate(slack_rows):
            for rr in range(self.rows):
                aug[rr].append(self.moduli[r] if rr == r else 0)
        return [vec[: self.n_unknowns] for vec in kernel_basis(aug)]


@dataclass
class CongruenceSystem:
    """matrix @ x = target, row r taken mod moduli[r] (0 means over Z)."""

    matrix: list[list[int]]
    target: list[int]
    moduli: list[int]


def solve_congruences(system: CongruenceSystem) -> Optional[list[int]]:
    """Solve the system; any returned solution has been verified by
    substitution."""
    return CongruenceSolver(system.matrix, system.moduli).solve(system.target)
