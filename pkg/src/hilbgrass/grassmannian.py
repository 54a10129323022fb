"""Plücker geometry of G(k, n) and the two maximal families of m-planes in it.

Plücker coordinates are indexed by 1-based sorted k-subsets in lexicographic
order.  A linear m-plane in P^N is carried around as an ``(N+1) x (m+1)``
matrix whose columns span the corresponding linear subspace of Q^{N+1}.

The two families:

* SUB: k-planes V with W1 ⊂ V ⊂ W2, dim W1 = k-1, dim W2 = k+m.
* QUOT: k-planes V with W1 ⊂ V ⊂ W2, dim W1 = k-m, dim W2 = k+1.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from .combinatorics import BoxContext, SchubertClass, Partition
from .linalg import (
    RationalMatrix,
    column_space_equal,
    determinant,
    nullspace_vectors,
    rank,
)
from .polynomials import GradedIdeal, Poly, is_squarefree


class GeometryError(ValueError):
    pass


class RankDeficientError(GeometryError):
    pass


class NotOnGrassmannianError(GeometryError):
    pass


class UnclassifiablePlaneError(GeometryError):
    pass


class FamilyError(GeometryError):
    pass


class Family(str, enum.Enum):
    SUB = "SUB"
    QUOT = "QUOT"

    def __str__(self):
        return self.value


@lru_cache(maxsize=None)
def _subsets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(1, n + 1), k))


@dataclass(frozen=True)
class GrassmannianContext:
    k: int
    n: int

    def __post_init__(self):
        if not (1 < self.k < self.n - 1):
            raise ValueError(f"need 1 < k < n-1, got k={self.k}, n={self.n}")

    @property
    def index(self) -> tuple[tuple[int, ...], ...]:
        return _subsets(self.n, self.k)

    @property
    def N(self) -> int:
        return len(self.index) - 1

    def position(self, J: Sequence[int]) -> int:
        return _positions(self.n, self.k)[tuple(J)]

    @property
    def box(self) -> BoxContext:
        return BoxContext(self.k, self.n)

    def variable_names(self) -> list[str]:
        return ["p" + "".join(map(str, J)) if self.n < 10 else "p" + "_".join(map(str, J))
                for J in self.index]


@lru_cache(maxsize=None)
def _positions(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {J: i for i, J in enumerate(_subsets(n, k))}


@dataclass(frozen=True)
class FlagBasis:
    """Complete flag F_i = span of the first i rows of an invertible matrix."""

    vectors: RationalMatrix

    def __post_init__(self):
        if self.vectors.rows != self.vectors.cols or rank(self.vectors) != self.vectors.rows:
            raise GeometryError("flag basis must be an invertible square matrix")

    @property
    def n(self) -> int:
        return self.vectors.rows

    @classmethod
    def standard(cls, n: int) -> "FlagBasis":
        return cls(RationalMatrix.identity(n))

    @classmethod
    def random(cls, n: int, rng: random.Random, spread: int = 4) -> "FlagBasis":
        while True:
            M = RationalMatrix.from_rows([[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)])
            if rank(M) == n:
                return cls(M)

    def subspace(self, i: int) -> RationalMatrix:
        """Rows spanning F_i."""
        return self.vectors.submatrix(range(i), range(self.n))

    def vector(self, i: int) -> tuple[Fraction, ...]:
        """The 1-based basis vector v_i."""
        return self.vectors.row(i - 1)


@dataclass(frozen=True)
class PluckerPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if not any(self.coords):
            raise GeometryError("projective point with all coordinates zero")

    def normalized(self) -> "PluckerPoint":
        lead = next(c for c in self.coords if c)
        return PluckerPoint(tuple(c / lead for c in self.coords))

    def same_point(self, other: "PluckerPoint") -> bool:
        return self.normalized().coords == other.normalized().coords


@dataclass(frozen=True)
class PlaneFamilySpec:
    family: Family
    m: int
    flag: FlagBasis
    context: GrassmannianContext

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        k, n, m = self.context.k, self.context.n, self.m
        if m < 2:
            raise FamilyError(f"plane dimension must be at least 2, got {m}")
        if self.flag.n != n:
            raise FamilyError(f"flag lives in dimension {self.flag.n}, expected {n}")
        if self.family is Family.SUB and k + m > n:
            raise FamilyError(f"SUB family needs m <= n-k = {n - k}, got m={m}")
        if self.family is Family.QUOT and m > k:
            raise FamilyError(f"QUOT family needs m <= k = {k}, got m={m}")

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "k": self.context.k,
            "n": self.context.n,
            "m": self.m,
            "flag": [[str(x) for x in r] for r in self.flag.vectors.entries],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PlaneFamilySpec":
        ctx = GrassmannianContext(int(data["k"]), int(data["n"]))
        if data.get("flag") is None:
            flag = FlagBasis.standard(ctx.n)
        else:
            flag = FlagBasis(RationalMatrix.from_rows([[Fraction(x) for x in r] for r in data["flag"]]))
        return cls(Family(data["family"]), int(data["m"]), flag, ctx)


def family_class(family: Family, m: int, ctx: GrassmannianContext) -> SchubertClass:
    """Schubert class of the m-planes in a family."""
    k, w = ctx.k, ctx.n - ctx.k
    if family is Family.SUB:
        parts = [w] * (k - 1) + [w - m]
    else:
        parts = [w] * (k - m) + [w - 1] * m
    return SchubertClass.of(parts, ctx.box)


# -- embedding and relations --------------------------------------------------

def _check_rank(M: RationalMatrix, k: int, n: int):
    if M.rows != k or M.cols != n:
        raise GeometryError(f"expected a {k}x{n} matrix, got {M.rows}x{M.cols}")
    if rank(M) != k:
        raise RankDeficientError("rows are linearly dependent")


def plucker_embed(M: RationalMatrix, ctx: GrassmannianContext) -> PluckerPoint:
    """Maximal minors of a full-rank k x n matrix."""
    _check_rank(M, ctx.k, ctx.n)
    rows = range(ctx.k)
    return PluckerPoint(tuple(determinant(M.submatrix(rows, [j - 1 for j in J])) for J in ctx.index))


def _sort_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation (0 if an index repeats) and the sorted tuple."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


@lru_cache(maxsize=None)
def _relations(k: int, n: int) -> tuple[Poly, ...]:
    ctx = GrassmannianContext(k, n)
    nv = ctx.N + 1
    seen: dict[tuple, Poly] = {}
    for A in combinations(range(1, n + 1), k - 1):
        for B in combinations(range(1, n + 1), k + 1):
            terms: dict[tuple[int, ...], Fraction] = {}
            for t, b in enumerate(B):
                s1, left = _sort_sign(A + (b,))
                if not s1:
                    continue
                s2, right = _sort_sign(B[:t] + B[t + 1:])
                i, j = ctx.position(left), ctx.position(right)
                mono = [0] * nv
                mono[i] += 1
                mono[j] += 1
                mono = tuple(mono)
                terms[mono] = terms.get(mono, 0) + (-1) ** t * s1 * s2
            q = Poly(nv, terms, 2)
            if q.is_zero():
                continue
            lead = next(iter(q.terms.values()))
            q = q.scale(1 / Fraction(lead))
            seen.setdefault(tuple(q.terms.items()), q)
    return tuple(seen.values())


def plucker_relations(ctx: GrassmannianContext) -> list[Poly]:
    """Quadratic Plücker relations from the (A, B) shuffle family, deduplicated.

    For a (k-1)-subset A and a (k+1)-subset B the relation is
    sum_t (-1)^t p_{A+b_t} p_{B-b_t}; each is scaled to leading coefficient 1.
    """
    return list(_relations(ctx.k, ctx.n))


def on_grassmannian(p: PluckerPoint | Sequence, ctx: GrassmannianContext) -> bool:
    coords = p.coords if isinstance(p, PluckerPoint) else tuple(Fraction(x) for x in p)
    if len(coords) != ctx.N + 1:
        raise GeometryError(f"expected {ctx.N + 1} coordinates, got {len(coords)}")
    return all(q(coords) == 0 for q in _relations(ctx.k, ctx.n))


def _annihilator_matrix(coords: Sequence[Fraction], ctx: GrassmannianContext) -> RationalMatrix:
    """Matrix of v -> v ∧ ω, rows indexed by (k+1)-subsets."""
    k, n = ctx.k, ctx.n
    rows = []
    for K in combinations(range(1, n + 1), k + 1):
        row = [Fraction(0)] * n
        for pos, j in enumerate(K):
            rest = K[:pos] + K[pos + 1:]
            c = coords[ctx.position(rest)]
            if c:
                row[j - 1] = c if pos % 2 == 0 else -c
        rows.append(row)
    return RationalMatrix.from_rows(rows, n)


def plane_from_plucker(p: PluckerPoint | Sequence, ctx: GrassmannianContext) -> RationalMatrix:
    """k x n basis of {v : v ∧ ω = 0}; rejects non-decomposable ω."""
    coords = p.coords if isinstance(p, PluckerPoint) else PluckerPoint(tuple(p)).coords
    if len(coords) != ctx.N + 1:
        raise GeometryError(f"expected {ctx.N + 1} coordinates, got {len(coords)}")
    basis = nullspace_vectors(_annihilator_matrix(coords, ctx))
    if len(basis) != ctx.k:
        raise NotOnGrassmannianError(
            f"annihilator has dimension {len(basis)}, not {ctx.k}: point is not decomposable")
    return RationalMatrix.from_rows(basis, ctx.n)


# -- the two families ---------------------------------------------------------

def parametrize_plane(spec: PlaneFamilySpec) -> RationalMatrix:
    """Linear map P^m -> P^N whose image is the family's m-plane for this flag."""
    ctx, m, flag = spec.context, spec.m, spec.flag
    k = ctx.k
    columns = []
    if spec.family is Family.SUB:
        fixed = [flag.vector(i) for i in range(1, k)]
        for j in range(m + 1):
            M = RationalMatrix.from_rows(fixed + [flag.vector(k + j)])
            columns.append(plucker_embed(M, ctx).coords)
    else:
        fixed = [flag.vector(i) for i in range(1, k - m + 1)]
        quotient = [flag.vector(i) for i in range(k - m + 1, k + 2)]
        for j in range(m + 1):
            M = RationalMatrix.from_rows(fixed + quotient[:j] + quotient[j + 1:])
            columns.append(plucker_embed(M, ctx).coords)
    return RationalMatrix.from_columns(columns)


def plane_point(plane: RationalMatrix, params: Sequence) -> PluckerPoint:
    return PluckerPoint(plane.apply([Fraction(x) for x in params]))


def plane_in_grassmannian(plane: RationalMatrix, ctx: GrassmannianContext) -> bool:
    """Every Plücker relation pulls back to the zero quadratic form on the plane."""
    if plane.rows != ctx.N + 1:
        raise GeometryError(f"plane has {plane.rows} rows, expected {ctx.N + 1}")
    r = plane.cols
    for q in _relations(ctx.k, ctx.n):
        form = [[Fraction(0)] * r for _ in range(r)]
        for mono, c in q.terms.items():
            idx = [i for i, e in enumerate(mono) for _ in range(e)]
            a, b = plane.row(idx[0]), plane.row(idx[1])
            for s in range(r):
                if a[s]:
                    for t in range(r):
                        if b[t]:
                            form[s][t] += c * a[s] * b[t]
        if any(form[s][t] + form[t][s] for s in range(r) for t in range(s, r)):
            return False
    return True


def schubert_membership(V: RationalMatrix, a: Partition, flag: FlagBasis) -> bool:
    """dim(V ∩ F_{n-k+i-a_i}) >= i for all i."""
    k, n = V.rows, V.cols
    _check_rank(V, k, n)
    if len(a) != k:
        raise GeometryError(f"partition has {len(a)} parts, expected {k}")
    for i in range(1, k + 1):
        j = n - k + i - a[i - 1]
        F = flag.subspace(j)
        meet = k + j - rank(V.vstack(F)) if j else 0
        if meet < i:
            return False
    return True


def intersection_dimension(spaces: Sequence[RationalMatrix], n: int) -> int:
    """dim of the intersection of row spaces, via their annihilators."""
    ann = []
    for S in spaces:
        ann.extend(nullspace_vectors(S))
    if not ann:
        return n
    return n - rank(RationalMatrix.from_rows(ann, n))


def sum_dimension(spaces: Sequence[RationalMatrix], n: int) -> int:
    rows = [r for S in spaces for r in S.entries]
    return rank(RationalMatrix.from_rows(rows, n)) if rows else 0


@dataclass(frozen=True)
class PlaneClassification:
    family: Family
    plane_class: SchubertClass
    meet_dimension: int
    span_dimension: int
    samples: int


def classify_plane(plane: RationalMatrix, ctx: GrassmannianContext, seed: int = 0) -> PlaneClassification:
    """Decide whether a linear m-plane inside G(k, n) is a SUB or a QUOT plane.

    Samples the coordinate parameter points and the all-ones point, turns each
    into a k-plane, and reads the family off the dimensions of the common
    intersection W and the sum U of those k-planes.
    """
    m = plane.cols - 1
    if m < 2:
        raise UnclassifiablePlaneError(f"need a plane of dimension at least 2, got {m}")
    if rank(plane) != plane.cols:
        raise UnclassifiablePlaneError("plane columns are linearly dependent")
    if not plane_in_grassmannian(plane, ctx):
        raise NotOnGrassmannianError("plane is not contained in the Grassmannian")
    k, n = ctx.k, ctx.n
    params = [[int(i == j) for i in range(m + 1)] for j in range(m + 1)] + [[1] * (m + 1)]
    rng = random.Random(seed)
    cap = 2 * (m + 2)
    spaces = [plane_from_plucker(plane_point(plane, t), ctx) for t in params]
    while True:
        W = intersection_dimension(spaces, n)
        U = sum_dimension(spaces, n)
        if (W, U) == (k - 1, k + m):
            return PlaneClassification(Family.SUB, family_class(Family.SUB, m, ctx), W, U, len(spaces))
        if (W, U) == (k - m, k + 1):
            return PlaneClassification(Family.QUOT, family_class(Family.QUOT, m, ctx), W, U, len(spaces))
        if len(spaces) >= cap:
            raise UnclassifiablePlaneError(f"intersection/sum dimensions ({W}, {U}) match neither family")
        t = [rng.randint(-9, 9) for _ in range(m + 1)]
        if any(t):
            spaces.append(plane_from_plucker(plane_point(plane, t), ctx))


def span_of_hypersurface(plane: RationalMatrix, f: Poly) -> RationalMatrix:
    """Linear span in P^N of the hypersurface {f = 0} inside a plane.

    Computed as the common zero locus of the linear forms on P^N whose pullback
    to the plane lies in (f).  Returns a basis of the span as columns.
    """
    if f.nvars != plane.cols:
        raise GeometryError(f"form has {f.nvars} variables but the plane has {plane.cols} parameters")
    if f.is_zero():
        raise GeometryError("form must be nonzero")
    if f.degree < 2:
        raise GeometryError("hypersurface degree must be at least 2")
    if not is_squarefree(f):
        raise GeometryError("form is not squarefree")
    nparams, ambient = plane.cols, plane.rows
    qb = GradedIdeal(nparams, [f]).quotient_basis(1)
    linear = [qb.reduce(Poly.variable(nparams, j)) for j in range(nparams)]
    # column r: residue of the pullback of the r-th coordinate form
    pullback = [[Fraction(0)] * ambient for _ in range(len(qb))]
    for r in range(ambient):
        row = plane.row(r)
        for j, a in enumerate(row):
            if a:
                for s, v in linear[j].items():
                    pullback[s][r] += a * v
    vanishing = nullspace_vectors(RationalMatrix.from_rows(pullback, ambient))
    if not vanishing:
        return RationalMatrix.identity(ambient)
    span = nullspace_vectors(RationalMatrix.from_rows(vanishing, ambient))
    return RationalMatrix.from_columns(span)


def same_plane(A: RationalMatrix, B: RationalMatrix) -> bool:
    return column_space_equal(A, B)


def plane_to_json(plane: RationalMatrix) -> list[list[str]]:
    return [[str(x) for x in col] for col in plane.columns()]


def plane_from_json(columns: Sequence[Sequence]) -> RationalMatrix:
    return RationalMatrix.from_columns([[Fraction(x) for x in col] for col in columns])
