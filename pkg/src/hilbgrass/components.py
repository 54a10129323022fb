"""Hilbert polynomials, plane classes and component bookkeeping.

Binomials of a polynomial argument use the polynomial convention
C(x, m) = x(x-1)...(x-m+1)/m!, valid at every integer.  That is why, for
example, P_{3,2}(0) = 0 while the Hilbert function of a plane cubic is 1 in
degree 0: the Hilbert polynomial of a degree-d hypersurface in P^m agrees with
its Hilbert function only from T = max(0, d-m) on, and below that the
function exceeds the polynomial by (-1)^m C(d-T-1, m).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .combinatorics import ClassSum, SchubertClass, pieri
from .grassmannian import Family, GrassmannianContext, family_class


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class HilbertPolynomial:
    """Polynomial in T; ``coefficients[i]`` multiplies T^i."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, T) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * T + c
        return total

    def __sub__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (n - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (n - len(other.coefficients))
        return HilbertPolynomial(tuple(x - y for x, y in zip(a, b)))

    def __str__(self):
        if not self.coefficients:
            return "0"
        pieces = []
        for power in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[power]
            if not c:
                continue
            mag = abs(c)
            mag_text = str(mag) if mag.denominator == 1 else f"({mag})"
            if power == 0:
                body = mag_text
            else:
                var = "T" if power == 1 else f"T^{power}"
                body = var if mag == 1 else f"{mag_text}*{var}"
            pieces.append(("-" if c < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def binomial_poly(shift: int, m: int) -> HilbertPolynomial:
    """C(T + shift, m) as a degree-m polynomial in T."""
    coeffs = [Fraction(1)]
    for i in range(m):
        root = shift - i
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for p, c in enumerate(coeffs):
            nxt[p + 1] += c
            nxt[p] += c * root
        coeffs = nxt
    return HilbertPolynomial(tuple(c / factorial(m) for c in coeffs))


def hilbert_poly(d: int, m: int) -> HilbertPolynomial:
    """P_{d,m}(T) = C(T+m, m) - C(T+m-d, m)."""
    if d < 1:
        raise ParameterError(f"degree must be positive, got d={d}")
    if m < 2:
        raise ParameterError(f"need m >= 2, got m={m}")
    return binomial_poly(m, m) - binomial_poly(m - d, m)


def planar_curve_poly(d: int) -> HilbertPolynomial:
    """P_d(T) = dT + 1 - C(d-1, 2)."""
    if d < 1:
        raise ParameterError(f"degree must be positive, got d={d}")
    return HilbertPolynomial((Fraction(1 - comb(d - 1, 2)), Fraction(d)))


def low_degree_discrepancy(d: int, m: int, T: int) -> int:
    """Hilbert function minus Hilbert polynomial of a degree-d hypersurface in P^m at T >= 0."""
    top = d - T - 1
    return (-1) ** m * comb(top, m) if top >= m else 0


def _check_gr(k: int, n: int):
    if not (1 < k < n - 1):
        raise ParameterError(f"need 1 < k < n-1, got k={k}, n={n}")


def mplane_classes(k: int, n: int, m: int) -> list[tuple[Family, SchubertClass]]:
    """Classes of linear m-planes in G(k, n), SUB first."""
    _check_gr(k, n)
    if m < 2:
        raise ParameterError(f"need m >= 2, got m={m}")
    ctx = GrassmannianContext(k, n)
    out = []
    if m <= n - k:
        out.append((Family.SUB, family_class(Family.SUB, m, ctx)))
    if m <= k:
        out.append((Family.QUOT, family_class(Family.QUOT, m, ctx)))
    return out


def hypersurface_class(plane_class: SchubertClass, d: int) -> ClassSum:
    """d * sigma_1 * [L]; the Pieri product must be a single Schubert class."""
    prod = pieri(1, plane_class.partition, plane_class.context)
    if prod.single_term() is None:
        raise ParameterError(f"{plane_class} is not a maximal plane class: sigma_1 * it is {prod}")
    return d * prod


@dataclass(frozen=True)
class FlagVarietyDescriptor:
    a: int
    b: int
    n: int

    def __post_init__(self):
        if not (0 <= self.a < self.b <= self.n):
            raise ParameterError(f"need 0 <= a < b <= n, got F({self.a},{self.b};{self.n})")

    @property
    def dim(self) -> int:
        return flag_dimension(self.a, self.b, self.n)

    @property
    def bundle_rank(self) -> int:
        return self.b - self.a

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "n": self.n, "dim": self.dim}


def flag_dimension(a: int, b: int, n: int) -> int:
    """dim F(a, b; n) = a(n-a) + (b-a)(n-b)."""
    if not (0 <= a < b <= n):
        raise ParameterError(f"need 0 <= a < b <= n, got ({a}, {b}, {n})")
    return a * (n - a) + (b - a) * (n - b)


def bundle_total_dimension(base: FlagVarietyDescriptor, d: int) -> int:
    """Dimension of P(Sym^d S*) over the base: base + C(m+d, m) - 1, with m + 1 = rank S."""
    m = base.bundle_rank - 1
    if m < 2:
        raise ParameterError(f"bundle rank must be at least 3, got {base.bundle_rank}")
    return base.dim + comb(m + d, m) - 1


def plane_grassmannian(m: int, N: int) -> FlagVarietyDescriptor:
    """The Grassmannian of m-planes in P^N, as F(0, m+1; N+1)."""
    return FlagVarietyDescriptor(0, m + 1, N + 1)


def family_base(family: Family, k: int, n: int, m: int) -> FlagVarietyDescriptor:
    if family is Family.SUB:
        return FlagVarietyDescriptor(k - 1, k + m, n)
    return FlagVarietyDescriptor(k - m, k + 1, n)


@dataclass(frozen=True)
class ComponentEntry:
    family: Family
    plane_class: SchubertClass
    hypersurface_class: ClassSum
    base: FlagVarietyDescriptor
    dimension: int

    def to_json(self) -> dict:
        coeff, part = self.hypersurface_class.single_term()
        return {
            "family": self.family.value,
            "plane_class": str(self.plane_class.partition),
            "hypersurface_class": {"coeff": coeff, "partition": str(part)},
            "flag": self.base.to_json(),
            "dimension": self.dimension,
        }


@dataclass(frozen=True)
class ComponentReport:
    d: int
    k: int
    n: int
    m: int
    components: tuple[ComponentEntry, ...]

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def classes_coincide(self) -> bool:
        """True when several components share one hypersurface class (the m = 2 case)."""
        classes = {c.hypersurface_class for c in self.components}
        return len(self.components) > 1 and len(classes) == 1

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "count": self.count,
            "components": [c.to_json() for c in self.components],
            "classes_coincide": self.classes_coincide,
        }


def component_count(d: int, k: int, n: int, m: int) -> ComponentReport:
    """Connected components of the Hilbert scheme of degree-d hypersurfaces in m-planes of G(k, n)."""
    if d < 3:
        raise ParameterError(f"requires d ≥ 3 (got d={d}): a plane spanned by a conic or a line need not lie in G(k, n)")
    if m < 2:
        raise ParameterError(f"need m >= 2, got m={m}")
    _check_gr(k, n)
    entries = []
    for family, cls in mplane_classes(k, n, m):
        base = family_base(family, k, n, m)
        entries.append(ComponentEntry(family, cls, hypersurface_class(cls, d), base,
                                      bundle_total_dimension(base, d)))
    return ComponentReport(d, k, n, m, tuple(entries))


def expected_count(k: int, n: int, m: int) -> int:
    return int(m <= n - k) + int(m <= k)

