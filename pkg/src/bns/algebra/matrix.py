"""Sparse integer matrices and the Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping


@dataclass(frozen=True)
class SparseIntMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> SparseIntMatrix:
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(len(rows), ncols, ent)

    @classmethod
    def from_columns(cls, columns: list[Mapping[int, int]], rows: int) -> SparseIntMatrix:
        ent = {(i, j): v for j, col in enumerate(columns) for i, v in col.items()}
        return cls(rows, len(columns), ent)

    @classmethod
    def identity(cls, n: int) -> SparseIntMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def __matmul__(self, other: SparseIntMatrix) -> SparseIntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return SparseIntMatrix(self.rows, other.cols, out)

    def transpose(self) -> SparseIntMatrix:
        return SparseIntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def nnz(self) -> int:
        return len(self.entries)


def _smith_dense(A: list[list[int]], track: bool):
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        if track:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row dst += c * row src
        ra, rd = A[src], A[dst]
        for k in range(n):
            if ra[k]:
                rd[k] += c * ra[k]
        if track:
            ua, ud = U[src], U[dst]
            for k in range(m):
                if ua[k]:
                    ud[k] += c * ua[k]

    def add_col(src, dst, c):  # col dst += c * col src
        for r in A:
            if r[src]:
                r[dst] += c * r[src]
        if track:
            for r in V:
                if r[src]:
                    r[dst] += c * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        moved = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        moved = True
            if moved:
                # a smaller remainder is now in row or column t; bring it to the pivot
                best = (abs(p), t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if track:
                U[t] = [-v for v in U[t]]
        t += 1
    return A, U, V


def smith_normal_form(M: SparseIntMatrix, verify: bool = True):
    """Return unimodular ``U``, ``V`` and diagonal ``S`` with ``U M V = S``.

    The diagonal entries are non-negative and each divides the next.
    """
    if M.rows == 0 or M.cols == 0:
        return SparseIntMatrix.identity(M.rows), M, SparseIntMatrix.identity(M.cols)
    A, U, V = _smith_dense(M.to_dense(), track=True)
    Um, Sm, Vm = SparseIntMatrix.from_dense(U), SparseIntMatrix.from_dense(A), SparseIntMatrix.from_dense(V)
    if verify and (Um @ M @ Vm).entries != Sm.entries:
        raise AssertionError("Smith normal form verification failed")
    return Um, Sm, Vm


def diagonal(S: SparseIntMatrix) -> list[int]:
    return [S[i, i] for i in range(min(S.rows, S.cols))]


def elementary_divisors_dense(A: list[list[int]]) -> list[int]:
    """Nonzero elementary divisors of a dense integer matrix, ascending."""
    return elementary_divisors_rows([{j: v for j, v in enumerate(r) if v} for r in A])


def elementary_divisors_rows(rows: list[dict[int, int]]) -> list[int]:
    """Nonzero elementary divisors of a matrix given as sparse rows.

    Unit pivots are eliminated sparsely first (each contributes a divisor 1);
    the leftover block goes through the dense Smith form.  ``rows`` is consumed.
    """
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(rows)):
            r = rows[i]
            piv = None
            for j, v in r.items():
                if (v == 1 or v == -1) and (piv is None or len(cols[j]) < len(cols[piv])):
                    piv = j
            if piv is None:
                continue
            u = r[piv]
            for k in list(cols[piv]):
                if k == i:
                    continue
                rk = rows[k]
                c = rk[piv] * u
                for j, v in r.items():
                    nv = rk.get(j, 0) - c * v
                    if nv:
                        if j not in rk:
                            cols[j].add(k)
                        rk[j] = nv
                    elif j in rk:
                        del rk[j]
                        cols[j].discard(k)
            for j in r:
                cols[j].discard(i)
            rows[i] = {}
            units += 1
            changed = True
    rest = [r for r in rows if r]
    if not rest:
        return [1] * units
    used = sorted(set(j for r in rest for j in r))
    ci = {j: t for t, j in enumerate(used)}
    block = [[0] * len(used) for _ in rest]
    for t, r in enumerate(rest):
        for j, v in r.items():
            block[t][ci[j]] = v
    S, _, _ = _smith_dense(block, track=False)
    divs = [S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i]]
    return [1] * units + sorted(divs)


def elementary_divisors(M: SparseIntMatrix) -> list[int]:
    if M.is_zero():
        return []
    return elementary_divisors_dense(M.to_dense())


def gcdlist(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
