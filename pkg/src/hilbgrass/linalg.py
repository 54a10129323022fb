"""Exact dense linear algebra over the rationals.

Matrices are immutable grids of :class:`fractions.Fraction`.  Elimination is
done on sparse integer rows with content (gcd) normalisation after every
update, which keeps coefficient growth in check on the large and very sparse
Macaulay and Plücker matrices built elsewhere in the package.  The reduced
row echelon form is unique, so the pivot heuristic (shortest candidate row)
only affects speed, never output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "RationalMatrix":
        grid = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        return cls(len(grid), cols, grid)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "RationalMatrix":
        if not columns:
            return cls(rows or 0, 0, tuple(() for _ in range(rows or 0)))
        return cls.from_rows(zip(*columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, data: dict[tuple[int, int], Fraction]) -> "RationalMatrix":
        grid = [[ZERO] * cols for _ in range(rows)]
        for (i, j), v in data.items():
            grid[i][j] = Fraction(v)
        return cls(rows, cols, tuple(tuple(r) for r in grid))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = other.columns()
        grid = tuple(
            tuple(sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in ocols)
            for r in self.entries
        )
        return RationalMatrix(self.rows, other.cols, grid)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.entries)

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return RationalMatrix(self.rows, self.cols + other.cols,
                              tuple(a + b for a, b in zip(self.entries, other.entries)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(len(rows), len(cols),
                              tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"


# -- sparse integer kernel ---------------------------------------------------

def _int_row(values: Iterable[tuple[int, Fraction]]) -> dict[int, int]:
    items = [(j, Fraction(v)) for j, v in values if v]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    row = {j: v.numerator * (den // v.denominator) for j, v in items}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _eliminate(target: dict[int, int], pivot: dict[int, int], col: int) -> dict[int, int]:
    a = pivot[col]
    b = target[col]
    g = gcd(a, b)
    a, b = a // g, b // g
    out = {j: a * v for j, v in target.items()}
    for j, v in pivot.items():
        w = out.get(j, 0) - b * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return _primitive(out)


def sparse_rows(M: RationalMatrix) -> list[dict[int, int]]:
    return [_int_row(enumerate(r)) for r in M.entries]


def _echelon(rows: list[dict[int, int]], ncols: int, jordan: bool) -> tuple[list[dict[int, int]], list[int]]:
    """Row-reduce integer rows; returns pivot rows (one per pivot) and pivot columns.

    A column -> row-id index keeps each pivot step proportional to the rows that
    actually touch the column.
    """
    active: dict[int, dict[int, int]] = {i: r for i, r in enumerate(rows) if r}
    where: dict[int, set[int]] = {}
    for i, r in active.items():
        for j in r:
            where.setdefault(j, set()).add(i)
    pivots: list[dict[int, int]] = []
    pivot_cols: list[int] = []
    pivot_where: dict[int, set[int]] = {}

    def reindex(index, rid, old, new):
        for j in old.keys() - new.keys():
            index[j].discard(rid)
        for j in new.keys() - old.keys():
            index.setdefault(j, set()).add(rid)

    for c in range(ncols):
        ids = where.pop(c, None)
        if not ids:
            continue
        best = min(ids, key=lambda i: (len(active[i]), i))
        prow = active.pop(best)
        ids.discard(best)
        for j in prow:
            if j != c:
                where[j].discard(best)
        for rid in sorted(ids):
            old = active[rid]
            new = _eliminate(old, prow, c)
            reindex(where, rid, {j: 0 for j in old if j != c}, new)
            if new:
                active[rid] = new
            else:
                del active[rid]
        if jordan:
            for pid in sorted(pivot_where.pop(c, ())):
                old = pivots[pid]
                new = _eliminate(old, prow, c)
                reindex(pivot_where, pid, {j: 0 for j in old if j != c}, new)
                pivots[pid] = new
            pid = len(pivots)
            for j in prow:
                if j != c:
                    pivot_where.setdefault(j, set()).add(pid)
        pivots.append(prow)
        pivot_cols.append(c)
        if not active:
            break
    return pivots, pivot_cols


def rank(M: RationalMatrix) -> int:
    """Exact rank over Q."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_echelon(sparse_rows(M), M.cols, jordan=False)[1])


def rank_of_rows(rows: Iterable[dict[int, Fraction]], ncols: int) -> int:
    """Rank of a matrix given as sparse rows ``{col: value}``."""
    return len(_echelon([_int_row(r.items()) for r in rows], ncols, jordan=False)[1])


def _rref_sparse(M: RationalMatrix) -> tuple[list[dict[int, Fraction]], list[int]]:
    return rref_of_rows([dict(enumerate(r)) for r in M.entries], M.cols)


def rref(M: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    rows, pcols = _rref_sparse(M)
    grid = [[ZERO] * M.cols for _ in range(M.rows)]
    for i, r in enumerate(rows):
        for j, v in r.items():
            grid[i][j] = v
    return RationalMatrix(M.rows, M.cols, tuple(tuple(r) for r in grid)), pcols


def nullspace_vectors(M: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of {v : Mv = 0} as plain tuples, one per free column."""
    rows, pcols = _rref_sparse(M)
    pset = set(pcols)
    basis = []
    for f in range(M.cols):
        if f in pset:
            continue
        v = [ZERO] * M.cols
        v[f] = ONE
        for r, c in zip(rows, pcols):
            x = r.get(f)
            if x:
                v[c] = -x
        basis.append(tuple(v))
    return basis


def nullspace(M: RationalMatrix) -> list[RationalMatrix]:
    """Basis of the right kernel, each vector returned as a ``cols x 1`` matrix."""
    return [RationalMatrix(M.cols, 1, tuple((x,) for x in v)) for v in nullspace_vectors(M)]


def solve(A: RationalMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``A x = b`` or ``None`` when the system is inconsistent."""
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    aug = A.hstack(RationalMatrix(A.rows, 1, tuple((Fraction(x),) for x in b)))
    rows, pcols = _rref_sparse(aug)
    if pcols and pcols[-1] == A.cols:
        return None
    x = [ZERO] * A.cols
    for r, c in zip(rows, pcols):
        x[c] = r.get(A.cols, ZERO)
    return tuple(x)


def determinant(M: RationalMatrix) -> Fraction:
    """Determinant by Fraction Gaussian elimination (used on small minors)."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in M.entries]
    n = M.rows
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f /= piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def column_space_equal(A: RationalMatrix, B: RationalMatrix) -> bool:
    """True when A and B (same row count) have the same column space."""
    if A.rows != B.rows:
        return False
    r = rank(A)
    return r == rank(B) == rank(A.hstack(B))


def row_space_equal(A: RationalMatrix, B: RationalMatrix) -> bool:
    if A.cols != B.cols:
        return False
    r = rank(A)
    return r == rank(B) == rank(A.vstack(B))


def nullspace_of_rows(rows: Sequence[dict[int, Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Kernel basis of a sparse-row matrix; each vector is returned sparse."""
    pivots, pcols = _echelon([_int_row(r.items()) for r in rows], ncols, jordan=True)
    normalized = []
    for p, c in zip(pivots, pcols):
        lead = p[c]
        normalized.append((c, {j: Fraction(v, lead) for j, v in p.items() if j != c}))
    pset = set(pcols)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = {f: ONE}
        for c, r in normalized:
            x = r.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def rref_of_rows(rows: Sequence[dict[int, Fraction]], ncols: int) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Sparse RREF: nonzero rows (pivot entry 1) ordered by pivot column."""
    pivots, pcols = _echelon([_int_row(r.items()) for r in rows], ncols, jordan=True)
    order = sorted(range(len(pcols)), key=pcols.__getitem__)
    out = []
    for i in order:
        p, c = pivots[i], pcols[i]
        out.append({j: Fraction(v, p[c]) for j, v in p.items()})
    return out, sorted(pcols)
