"""Homogeneous polynomials over Q, Macaulay matrices and the Hom(I, S/I) count.

Monomials are exponent tuples and are ordered graded-lexicographically
(``x0 > x1 > ...``) everywhere.  The tangent-space computation is
degree-truncated: syzygy constraints are imposed only up to a bound ``B``.
For ideals generated by a regular sequence the Koszul syzygies generate all
syzygies, so any ``B`` at least the largest pairwise sum of generator degrees
gives the exact dimension; for other ideals the value is an upper bound.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .linalg import RationalMatrix, nullspace_of_rows, rank_of_rows, rref_of_rows

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials_of_degree(varcount: int, e: int) -> tuple[Monomial, ...]:
    """All monomials of degree ``e`` in ``varcount`` variables, grlex descending."""
    if e < 0:
        return ()
    if varcount == 1:
        return ((e,),)
    out = []
    for a in range(e, -1, -1):
        out.extend((a,) + rest for rest in monomials_of_degree(varcount - 1, e - a))
    return tuple(out)


@lru_cache(maxsize=None)
def _monomial_index(varcount: int, e: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(varcount, e))}


def binomial_comb(top: int, bottom: int) -> int:
    """Combinatorial binomial: zero for a negative top."""
    if top < 0 or bottom < 0 or bottom > top:
        return 0
    return comb(top, bottom)


class Poly:
    """A homogeneous polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms", "degree")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None, degree: int | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(int(x) for x in m)
            if len(m) != nvars or any(x < 0 for x in m):
                raise ValueError(f"bad monomial {m} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
        clean = {m: c for m, c in clean.items() if c}
        degs = {sum(m) for m in clean}
        if len(degs) > 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise ValueError(f"declared degree {degree} but terms have degree {d}")
            degree = d
        self.degree = 0 if degree is None else degree
        self.terms = dict(sorted(clean.items(), reverse=True))

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> "Poly":
        return cls(len(m), {m: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.nvars == other.nvars
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.nvars, out)

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        return Poly(self.nvars, {m: c * v for m, v in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.nvars, out, self.degree + other.degree)

    __rmul__ = scale

    def derivative(self, i: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return Poly(self.nvars, out, max(self.degree - 1, 0))

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for x, a in zip(point, m):
                if a:
                    t *= Fraction(x) ** a
            total += t
        return total

    def extend(self, nvars: int) -> "Poly":
        """The same polynomial viewed in more variables (appended at the end)."""
        pad = (0,) * (nvars - self.nvars)
        return Poly(nvars, {m + pad: c for m, c in self.terms.items()}, self.degree)

    def used_variables(self) -> set[int]:
        return {i for m in self.terms for i, a in enumerate(m) if a}

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        out = []
        for m, c in self.terms.items():
            factors = [names[i] + (f"^{a}" if a > 1 else "") for i, a in enumerate(m) if a]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.nvars}, {self.format()!r})"

    def to_json(self) -> list[dict]:
        return [{"coeff": str(c), "exps": list(m)} for m, c in self.terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], nvars: int | None = None) -> "Poly":
        data = list(data)
        if nvars is None:
            if not data:
                raise ValueError("cannot infer the variable count of an empty polynomial")
            nvars = len(data[0]["exps"])
        return cls(nvars, {tuple(t["exps"]): Fraction(t["coeff"]) for t in data})



def parse_poly(text: str, nvars: int | None = None, prefix: str = "x") -> Poly:
    """Parse ``"3/2*x0^2*x1 - x2^3"`` style text."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial text")
    var_re = re.compile(re.escape(prefix) + r"(\d+)(?:\^(\d+))?$")
    raw = []
    pos = 0
    for match in re.finditer(r"([+-]?)([^+-]+)", src):
        if match.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff = Fraction(sign)
        exps: dict[int, int] = {}
        for factor in match.group(2).split("*"):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            vm = var_re.match(factor)
            if vm:
                i = int(vm.group(1))
                exps[i] = exps.get(i, 0) + int(vm.group(2) or 1)
            else:
                try:
                    coeff *= Fraction(factor)
                except ValueError:
                    raise ValueError(f"unrecognised factor {factor!r} in {text!r}") from None
        raw.append((exps, coeff))
    if pos != len(src):
        raise ValueError(f"cannot parse polynomial {text!r}")
    top = max((i for e, _ in raw for i in e), default=-1) + 1
    nvars = top if nvars is None else nvars
    if top > nvars:
        raise ValueError(f"variable index {top - 1} out of range for {nvars} variables")
    terms: dict[Monomial, Fraction] = {}
    for exps, c in raw:
        m = tuple(exps.get(i, 0) for i in range(nvars))
        terms[m] = terms.get(m, 0) + c
    return Poly(nvars, terms)


def random_form(nvars: int, degree: int, rng: random.Random, spread: int = 5) -> Poly:
    """Dense form with small random integer coefficients (nonzero overall)."""
    while True:
        terms = {m: rng.randint(-spread, spread) for m in monomials_of_degree(nvars, degree)}
        f = Poly(nvars, terms, degree)
        if not f.is_zero():
            return f


def is_squarefree(f: Poly) -> bool:
    """gcd(f, df/dx_0, ..., df/dx_r) is a constant (computed over Q).

    A repeated factor p^2 | f divides every partial.  The gcd with a single
    partial is not enough: f = x0*(x1*x2 + x0^2) shares x0 with df/dx1.
    """
    import sympy

    xs = sympy.symbols(f"x0:{f.nvars}")
    F = sympy.Poly.from_dict({m: sympy.Rational(c.numerator, c.denominator) for m, c in f.terms.items()},
                             *xs, domain="QQ")
    g = F
    for x in xs:
        g = sympy.gcd(g, F.diff(x))
        if g.total_degree() == 0:
            return True
    return False


# -- ideals ------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientBasis:
    """Coordinates on (S/I)_e: standard monomials plus a reduction map."""

    varcount: int
    degree: int
    monomials: tuple[Monomial, ...]
    _reduction: Mapping[Monomial, Mapping[int, Fraction]]

    def __len__(self):
        return len(self.monomials)

    def reduce_monomial(self, m: Monomial) -> Mapping[int, Fraction]:
        return self._reduction[m]

    def reduce(self, f: Poly | Mapping[Monomial, Fraction]) -> dict[int, Fraction]:
        """Coordinates of the residue of a degree-e polynomial."""
        terms = f.terms if isinstance(f, Poly) else f
        out: dict[int, Fraction] = {}
        for m, c in terms.items():
            for j, v in self._reduction[m].items():
                w = out.get(j, 0) + c * v
                if w:
                    out[j] = w
                else:
                    out.pop(j, None)
        return out

    def coordinates(self, f: Poly) -> tuple[Fraction, ...]:
        red = self.reduce(f)
        return tuple(red.get(j, Fraction(0)) for j in range(len(self.monomials)))


class GradedIdeal:
    """Ideal of S = Q[x_0..x_V] generated by nonzero homogeneous polynomials."""

    def __init__(self, varcount: int, generators: Sequence[Poly]):
        if varcount < 1:
            raise ValueError("need at least one variable")
        for g in generators:
            if g.nvars != varcount:
                raise ValueError("generator lives in a different ring")
            if g.is_zero():
                raise ValueError("generators must be nonzero")
        self.varcount = varcount
        self.generators = tuple(generators)
        self._qb_cache: dict[int, QuotientBasis] = {}

    def __repr__(self):
        return f"GradedIdeal({self.varcount}, [{', '.join(map(str, self.generators))}])"

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def column_labels(self, e: int) -> list[tuple[int, Monomial]]:
        """(generator index, multiplier monomial) for every Macaulay column in degree e."""
        return [(i, mu) for i, g in enumerate(self.generators)
                for mu in monomials_of_degree(self.varcount, e - g.degree)]

    def macaulay_columns(self, e: int) -> list[dict[int, Fraction]]:
        """Sparse columns (monomial index -> coefficient) of the degree-e Macaulay matrix."""
        index = _monomial_index(self.varcount, e)
        cols = []
        for i, mu in self.column_labels(e):
            col = {}
            for m, c in self.generators[i].terms.items():
                col[index[tuple(a + b for a, b in zip(m, mu))]] = c
            cols.append(col)
        return cols

    def macaulay_rows(self, e: int) -> list[dict[int, Fraction]]:
        rows: list[dict[int, Fraction]] = [{} for _ in monomials_of_degree(self.varcount, e)]
        for j, col in enumerate(self.macaulay_columns(e)):
            for i, c in col.items():
                rows[i][j] = c
        return rows

    def quotient_basis(self, e: int) -> QuotientBasis:
        if e not in self._qb_cache:
            self._qb_cache[e] = _build_quotient_basis(self, e)
        return self._qb_cache[e]


def macaulay_matrix(I: GradedIdeal, e: int) -> RationalMatrix:
    """Matrix of (h_i) -> sum h_i g_i from the multiplier spaces into S_e.

    Rows follow ``monomials_of_degree(V+1, e)``; columns are grouped by generator,
    multipliers in grlex order.  Generators of degree above ``e`` add no columns.
    """
    if e < 0:
        raise ValueError("degree must be nonnegative")
    nrows = len(monomials_of_degree(I.varcount, e))
    cols = I.macaulay_columns(e)
    data = {(i, j): c for j, col in enumerate(cols) for i, c in col.items()}
    return RationalMatrix.from_sparse(nrows, len(cols), data)


def ideal_dimension(I: GradedIdeal, e: int) -> int:
    """dim I_e, the rank of the degree-e Macaulay matrix."""
    cols = I.macaulay_columns(e)
    if not cols:
        return 0
    return rank_of_rows(cols, len(monomials_of_degree(I.varcount, e)))


def hilbert_function(I: GradedIdeal, e: int) -> int:
    """dim (S/I)_e."""
    if e < 0:
        raise ValueError("degree must be nonnegative")
    return comb(e + I.varcount - 1, e) - ideal_dimension(I, e)


def _build_quotient_basis(I: GradedIdeal, e: int) -> QuotientBasis:
    monos = monomials_of_degree(I.varcount, e)
    cols = I.macaulay_columns(e)
    rows, pivots = rref_of_rows(cols, len(monos)) if cols else ([], [])
    pset = set(pivots)
    standard = [j for j in range(len(monos)) if j not in pset]
    coord = {j: t for t, j in enumerate(standard)}
    reduction: dict[Monomial, dict[int, Fraction]] = {}
    for j in standard:
        reduction[monos[j]] = {coord[j]: Fraction(1)}
    for r, p in zip(rows, pivots):
        reduction[monos[p]] = {coord[j]: -v for j, v in r.items() if j != p}
    return QuotientBasis(I.varcount, e, tuple(monos[j] for j in standard), reduction)


def quotient_basis(I: GradedIdeal, e: int) -> QuotientBasis:
    if e < 0:
        raise ValueError("degree must be nonnegative")
    return I.quotient_basis(e)


def syzygies_in_degree(I: GradedIdeal, e: int) -> list[tuple[Poly, ...]]:
    """Basis of {(h_i) : sum h_i g_i = 0, deg h_i = e - deg g_i}.

    A generator of degree above ``e`` gets the zero polynomial in its slot.
    """
    if e < 0:
        raise ValueError("degree must be nonnegative")
    return [_split_syzygy(I, e, v) for v in _syzygy_vectors(I, e)]


def _syzygy_vectors(I: GradedIdeal, e: int) -> list[dict[int, Fraction]]:
    labels = I.column_labels(e)
    if not labels:
        return []
    return nullspace_of_rows(I.macaulay_rows(e), len(labels))


def _split_syzygy(I: GradedIdeal, e: int, v: Mapping[int, Fraction]) -> tuple[Poly, ...]:
    labels = I.column_labels(e)
    parts: list[dict[Monomial, Fraction]] = [{} for _ in I.generators]
    for j, c in v.items():
        i, mu = labels[j]
        parts[i][mu] = c
    return tuple(Poly(I.varcount, p, max(e - g.degree, 0)) for p, g in zip(parts, I.generators))


def koszul_bound(I: GradedIdeal) -> int:
    """Largest deg g_i + deg g_j over distinct generator pairs (0 with fewer than two)."""
    degs = sorted(I.degrees, reverse=True)
    return degs[0] + degs[1] if len(degs) >= 2 else 0


@dataclass(frozen=True)
class HomData:
    unknowns: int
    constraint_rank: int
    syzygy_counts: tuple[int, ...]
    bound: int

    @property
    def dimension(self) -> int:
        return self.unknowns - self.constraint_rank


def hom_data(I: GradedIdeal, syzygy_bound: int) -> HomData:
    """Assemble the degree-0 Hom(I, S/I) linear system up to ``syzygy_bound``.

    Unknowns are the images phi(g_i) in (S/I)_{deg g_i}; each syzygy (h_i) of
    degree e <= bound imposes sum h_i phi(g_i) = 0 in (S/I)_e.
    """
    need = koszul_bound(I)
    if syzygy_bound < need:
        raise ValueError(f"syzygy bound {syzygy_bound} is below the Koszul bound {need}")
    unknown_index: dict[tuple[int, int], int] = {}
    for i, g in enumerate(I.generators):
        for t in range(len(I.quotient_basis(g.degree))):
            unknown_index[(i, t)] = len(unknown_index)
    constraint_rows: list[dict[int, Fraction]] = []
    counts = []
    for e in range(syzygy_bound + 1):
        vectors = _syzygy_vectors(I, e)
        counts.append(len(vectors))
        if not vectors:
            continue
        target = I.quotient_basis(e)
        for v in vectors:
            h = _split_syzygy(I, e, v)
            # h_i only matters modulo I
            reduced = []
            for i, (hi, g) in enumerate(zip(h, I.generators)):
                if hi.is_zero():
                    continue
                qb = I.quotient_basis(e - g.degree)
                red = qb.reduce(hi)
                if red:
                    reduced.append((i, {qb.monomials[t]: c for t, c in red.items()}))
            if not reduced:
                continue
            by_coord: dict[int, dict[int, Fraction]] = {}
            for i, hbar in reduced:
                src = I.quotient_basis(I.generators[i].degree)
                for t, mu in enumerate(src.monomials):
                    prod: dict[Monomial, Fraction] = {}
                    for m, c in hbar.items():
                        mm = tuple(a + b for a, b in zip(m, mu))
                        prod[mm] = prod.get(mm, 0) + c
                    for s, val in target.reduce(prod).items():
                        row = by_coord.setdefault(s, {})
                        col = unknown_index[(i, t)]
                        row[col] = row.get(col, 0) + val
            constraint_rows.extend(r for r in by_coord.values() if any(r.values()))
    n_unknowns = len(unknown_index)
    r = rank_of_rows(constraint_rows, n_unknowns) if constraint_rows else 0
    return HomData(n_unknowns, r, tuple(counts), syzygy_bound)


def hom_dimension(I: GradedIdeal, syzygy_bound: int) -> int:
    """dim Hom_S(I, S/I)_0 (exact for regular sequences, else an upper bound)."""
    return hom_data(I, syzygy_bound).dimension


@dataclass(frozen=True)
class HypersurfaceIdealSpec:
    """I = (f(x_0..x_m), x_{m+1}, ..., x_N) in Q[x_0..x_N]."""

    N: int
    m: int
    d: int
    f: Poly

    def __post_init__(self):
        if not (2 <= self.m <= self.N):
            raise ValueError(f"need 2 <= m <= N, got m={self.m}, N={self.N}")
        if self.d < 1:
            raise ValueError("degree must be positive")
        if self.f.is_zero():
            raise ValueError("f must be nonzero")
        if self.f.degree != self.d:
            raise ValueError(f"f has degree {self.f.degree}, expected {self.d}")
        if self.f.nvars != self.m + 1:
            raise ValueError(f"f must be a form in the {self.m + 1} variables x0..x{self.m}")

    @classmethod
    def sparse(cls, N: int, m: int, d: int) -> "HypersurfaceIdealSpec":
        """f = x_0^d."""
        return cls(N, m, d, Poly.monomial((d,) + (0,) * m))

    @classmethod
    def generic(cls, N: int, m: int, d: int, seed: int) -> "HypersurfaceIdealSpec":
        return cls(N, m, d, random_form(m + 1, d, random.Random(seed)))

    def ideal(self) -> GradedIdeal:
        V = self.N + 1
        gens = [self.f.extend(V)] + [Poly.variable(V, i) for i in range(self.m + 1, V)]
        return GradedIdeal(V, gens)

    def expected_hilbert_function(self, e: int) -> int:
        """C(e+m, m) - C(e+m-d, m) with the combinatorial convention."""
        return binomial_comb(e + self.m, self.m) - binomial_comb(e + self.m - self.d, self.m)

    def tangent_formula(self) -> int:
        return comb(self.m + self.d, self.m) - 1 + (self.N - self.m) * (self.m + 1)
