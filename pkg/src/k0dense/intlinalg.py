"""Exact integer linear algebra.

Everything here works on Python ints, so entries never overflow no matter
how large the intermediate coefficients become during Smith reduction.
Matrices are immutable; the reduction routines copy into plain lists of
lists, work in place there, and wrap the result again.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Integral
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "HermiteForm",
    "SmithForm",
    "hnf",
    "snf",
    "lattice_member",
    "DimensionMismatch",
]


class DimensionMismatch(ValueError):
    pass


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, Integral):
        raise TypeError(f"matrix entries must be integers, got {x!r}")
    return int(x)


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major.

    A matrix may have zero rows; it still carries a column count, which is
    how the zero lattice inside ``Z^cols`` is represented.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        data = [[_as_int(x) for x in r] for r in rows]
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise DimensionMismatch(f"ragged row of length {len(r)}, expected {cols}")
        return cls(len(data), cols, tuple(x for r in data for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows(([int(i == j) for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            ([self[i, j] for i in range(self.rows)] for j in range(self.cols)),
            cols=self.rows,
        )

    T = property(transpose)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        a = self.tolist()
        bt = other.transpose().tolist()
        return IntMatrix.from_rows(
            ([sum(x * y for x, y in zip(r, c)) for c in bt] for r in a),
            cols=other.cols,
        )

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
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
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __str__(self) -> str:
        if not self.rows:
            return f"[] (0x{self.cols})"
        width = max(len(str(x)) for x in self.entries)
        return "\n".join(
            "[" + " ".join(str(x).rjust(width) for x in self.row(i)) + "]"
            for i in range(self.rows)
        )


@dataclass(frozen=True)
class HermiteForm:
    H: IntMatrix
    U: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for i in range(self.H.rows) if any(self.H.row(i)))

    def basis(self) -> IntMatrix:
        """The nonzero rows of H: a basis of the row lattice."""
        return IntMatrix(self.rank, self.H.cols, self.H.entries[: self.rank * self.H.cols])


@dataclass(frozen=True)
class SmithForm:
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)


def _hnf_rows(a: list[list[int]], cols: int, u: list[list[int]] | None = None) -> list[list[int]]:
    """Row-reduce ``a`` in place to canonical Hermite form.

    Row operations are mirrored on ``u`` when given.
    """
    m = len(a)
    r = 0
    for c in range(cols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            if p != r:
                a[r], a[p] = a[p], a[r]
                if u is not None:
                    u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    _axpy(a[i], a[r], -q)
                    if u is not None:
                        _axpy(u[i], u[r], -q)
                    if a[i][c]:
                        done = False
            if done:
                break
        if not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        piv = a[r][c]
        for i in range(r):
            q = a[i][c] // piv
            if q:
                _axpy(a[i], a[r], -q)
                if u is not None:
                    _axpy(u[i], u[r], -q)
        r += 1
    return a


def _axpy(y: list[int], x: list[int], k: int) -> None:
    for j, xv in enumerate(x):
        if xv:
            y[j] += k * xv


def hnf(A: IntMatrix) -> HermiteForm:
    """Canonical row Hermite form ``H = U A``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows come last, so two matrices have the same H (after dropping zero
    rows) exactly when their rows span the same lattice.
    """
    a = A.tolist()
    u = IntMatrix.identity(A.rows).tolist()
    _hnf_rows(a, A.cols, u)
    return HermiteForm(IntMatrix.from_rows(a, cols=A.cols), IntMatrix.from_rows(u, cols=A.rows))


def hnf_basis(A: IntMatrix) -> IntMatrix:
    """Nonzero rows of the canonical Hermite form, without tracking U."""
    a = _hnf_rows(A.tolist(), A.cols)
    return IntMatrix.from_rows([r for r in a if any(r)], cols=A.cols)


def snf(A: IntMatrix) -> SmithForm:
    """Smith normal form ``S = U A V`` with unimodular U and V.

    The pivot is always the entry of smallest absolute value in the
    remaining block, which keeps coefficient growth down.
    """
    m, n = A.shape
    a = A.tolist()
    u = IntMatrix.identity(m).tolist()
    v = IntMatrix.identity(n).tolist()

    def swap_cols(x, i, j):
        for r in x:
            r[i], r[j] = r[j], r[i]

    def add_col(x, dst, src, k):
        for r in x:
            r[dst] += k * r[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                swap_cols(a, t, pj)
                swap_cols(v, t, pj)
            piv = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // piv
                    _axpy(a[i], a[t], -q)
                    _axpy(u[i], u[t], -q)
                    clean = clean and not a[i][t]
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // piv
                    add_col(a, j, t, -q)
                    add_col(v, j, t, -q)
                    clean = clean and not a[t][j]
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; the next round lowers the pivot
            _axpy(a[t], a[bad], 1)
            _axpy(u[t], u[bad], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    diag = tuple(a[i][i] for i in range(min(m, n)))
    factors = tuple(d for d in diag if d) + tuple(d for d in diag if not d)
    return SmithForm(
        IntMatrix.from_rows(a, cols=n),
        IntMatrix.from_rows(u, cols=m),
        IntMatrix.from_rows(v, cols=n),
        factors,
    )


def lattice_member(basis: IntMatrix, v: Sequence[int]) -> bool:
    """Whether ``v`` is an integer combination of the rows of ``basis``."""
    if len(v) != basis.cols:
        raise DimensionMismatch(f"vector of length {len(v)} in Z^{basis.cols}")
    return in_echelon_lattice(hnf_basis(basis).tolist(), [_as_int(x) for x in v])


def in_echelon_lattice(h: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership test against rows already in Hermite form."""
    v = list(v)
    for row in h:
        c = next(j for j, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            _axpy(v, row, -q)
    return not any(v)
