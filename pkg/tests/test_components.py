import json
from fractions import Fraction
from math import comb, factorial

import pytest

from hilbgrass.cli import dump_json
from hilbgrass.combinatorics import BoxContext, Partition, SchubertClass
from hilbgrass.components import (
    FlagVarietyDescriptor,
    ParameterError,
    bundle_total_dimension,
    component_count,
    expected_count,
    family_base,
    flag_dimension,
    hilbert_poly,
    hypersurface_class,
    low_degree_discrepancy,
    mplane_classes,
    plane_grassmannian,
    planar_curve_poly,
)
from hilbgrass.grassmannian import (
    Family,
    FamilyError,
    FlagBasis,
    GrassmannianContext,
    PlaneFamilySpec,
    classify_plane,
    parametrize_plane,
)
from hilbgrass.polynomials import GradedIdeal, HypersurfaceIdealSpec, hilbert_function, hom_dimension, parse_poly

F = Fraction


def grid(nmax=8):
    for n in range(4, nmax + 1):
        for k in range(2, n - 1):
            for m in range(2, n):
                yield k, n, m


def test_hilbert_poly_examples():
    assert hilbert_poly(3, 2).coefficients == (0, 3)
    assert str(hilbert_poly(3, 2)) == "3*T"
    assert str(hilbert_poly(4, 2)) == "4*T - 2"
    P = hilbert_poly(3, 3)
    assert P.coefficients == (1, F(3, 2), F(3, 2))
    assert str(P) == "(3/2)*T^2 + (3/2)*T + 1"


def test_cubic_surface_matches_hilbert_function():
    ideal = GradedIdeal(4, [parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + x0*x1*x2", 4)])
    P = hilbert_poly(3, 3)
    for T in (3, 4, 5):
        assert hilbert_function(ideal, T) == P(T)


@pytest.mark.parametrize("d", range(1, 11))
def test_planar_curve_poly(d):
    assert planar_curve_poly(d) == hilbert_poly(d, 2)
    assert planar_curve_poly(d).coefficients[-1] == d


def test_planar_examples():
    assert str(planar_curve_poly(3)) == "3*T"
    assert str(planar_curve_poly(4)) == "4*T - 2"


@pytest.mark.parametrize("m", range(2, 6))
@pytest.mark.parametrize("d", range(1, 7))
def test_degree_and_leading_coefficient(d, m):
    P = hilbert_poly(d, m)
    assert P.degree == m - 1
    assert P.coefficients[-1] == F(d, factorial(m - 1))


def test_parameter_errors():
    with pytest.raises(ParameterError):
        hilbert_poly(0, 2)
    with pytest.raises(ParameterError):
        hilbert_poly(3, 1)
    with pytest.raises(ParameterError):
        planar_curve_poly(0)


@pytest.mark.parametrize("N,m,d", [(N, m, d) for N in range(2, 7) for m in (2, 3) if m <= N for d in range(1, 5)])
def test_function_vs_polynomial(N, m, d):
    ideal = HypersurfaceIdealSpec.sparse(N, m, d).ideal()
    P = hilbert_poly(d, m)
    for T in range(0, d + 5):
        gap = hilbert_function(ideal, T) - P(T)
        if T >= max(0, d - m):
            assert gap == 0
        else:
            assert gap == (-1) ** m * comb(d - T - 1, m) == low_degree_discrepancy(d, m, T)
            assert gap != 0


def test_low_degree_example():
    # plane cubic: HF(0) = 1 but P(0) = 0
    assert hilbert_poly(3, 2)(0) == 0
    assert low_degree_discrepancy(3, 2, 0) == 1


def _parts(cls):
    return tuple(cls.partition)


def test_mplane_classes_examples():
    both = mplane_classes(3, 8, 3)
    assert [(f, _parts(c)) for f, c in both] == [(Family.SUB, (5, 5, 2)), (Family.QUOT, (4, 4, 4))]
    assert [(f, _parts(c)) for f, c in mplane_classes(2, 7, 3)] == [(Family.SUB, (5, 2))]
    assert mplane_classes(3, 7, 5) == []
    with pytest.raises(ParameterError):
        mplane_classes(1, 5, 2)
    with pytest.raises(ParameterError):
        mplane_classes(2, 5, 1)


def test_hypersurface_class_examples():
    ctx = BoxContext(3, 8)
    assert str(hypersurface_class(SchubertClass.of([5, 5, 2], ctx), 3)) == "3*σ[5,5,3]"
    assert str(hypersurface_class(SchubertClass.of([4, 4, 4], ctx), 3)) == "3*σ[5,4,4]"
    box = BoxContext(2, 4)
    a = hypersurface_class(SchubertClass.of([2, 0], box), 3)
    b = hypersurface_class(SchubertClass.of([1, 1], box), 3)
    assert a == b and a.single_term() == (3, Partition((2, 1)))
    with pytest.raises(ParameterError):
        hypersurface_class(SchubertClass.of([1, 0], box), 3)


def test_class_table_exhaustive():
    for k, n, m in grid():
        w = n - k
        for d in (3, 4, 5):
            for family, cls in mplane_classes(k, n, m):
                coeff, part = hypersurface_class(cls, d).single_term()
                assert coeff == d
                if family is Family.SUB:
                    assert tuple(part) == (w,) * (k - 1) + (w - m + 1,)
                else:
                    assert tuple(part) == (w,) * (k - m + 1) + (w - 1,) * (m - 1)
                if m == 2:
                    assert tuple(part) == (w,) * (k - 1) + (w - 1,)


def test_flag_dimension_examples():
    assert flag_dimension(1, 4, 4) == 3
    assert flag_dimension(0, 3, 4) == 3
    for n in range(2, 8):
        for a in range(n):
            assert flag_dimension(a, n, n) == a * (n - a)
    with pytest.raises(ParameterError):
        flag_dimension(3, 2, 5)
    with pytest.raises(ParameterError):
        FlagVarietyDescriptor(0, 6, 5)


def test_bundle_examples():
    assert bundle_total_dimension(plane_grassmannian(2, 5), 3) == 18
    assert hom_dimension(HypersurfaceIdealSpec.generic(5, 2, 3, seed=3).ideal(), 5) == 18
    sub = family_base(Family.SUB, 2, 4, 2)
    quot = family_base(Family.QUOT, 2, 4, 2)
    assert (sub.a, sub.b, sub.dim) == (1, 4, 3)
    assert (quot.a, quot.b, quot.dim) == (0, 3, 3)
    assert bundle_total_dimension(sub, 3) == bundle_total_dimension(quot, 3) == 12
    with pytest.raises(ParameterError):
        bundle_total_dimension(FlagVarietyDescriptor(1, 3, 5), 3)


@pytest.mark.parametrize("N,m,d", [(N, m, d) for m in (2, 3) for N in range(m, 7) for d in (3, 4)])
def test_tangent_coherence(N, m, d):
    spec = HypersurfaceIdealSpec.generic(N, m, d, seed=N * 10 + m + d)
    base = plane_grassmannian(m, N)
    assert base.dim == (m + 1) * (N - m)
    assert bundle_total_dimension(base, d) == hom_dimension(spec.ideal(), d + 1) == spec.tangent_formula()


def test_component_count_examples():
    r = component_count(3, 3, 8, 3)
    assert r.count == 2 and not r.classes_coincide
    assert component_count(3, 2, 7, 3).count == 1
    assert component_count(3, 3, 7, 5).count == 0
    r = component_count(3, 2, 4, 2)
    assert r.count == 2 and r.classes_coincide
    assert [str(c.plane_class.partition) for c in r.components] == ["[2,0]", "[1,1]"]
    assert {str(c.hypersurface_class) for c in r.components} == {"3*σ[2,1]"}
    assert [c.dimension for c in r.components] == [12, 12]


def test_component_count_errors():
    with pytest.raises(ParameterError, match="d ≥ 3"):
        component_count(2, 2, 4, 2)
    with pytest.raises(ParameterError):
        component_count(3, 2, 4, 1)
    with pytest.raises(ParameterError):
        component_count(3, 1, 4, 2)
    with pytest.raises(ParameterError):
        component_count(3, 3, 4, 2)


def test_trichotomy_and_duality():
    for k, n, m in grid():
        count = component_count(3, k, n, m).count
        assert count == int(m <= n - k) + int(m <= k) == expected_count(k, n, m)
        assert count == component_count(3, n - k, n, m).count


def test_families_match_class_list(rng):
    # a family can be built exactly when its class is listed
    for k, n, m in grid(7):
        ctx = GrassmannianContext(k, n)
        listed = {f for f, _ in mplane_classes(k, n, m)}
        built = set()
        for family in Family:
            try:
                spec = PlaneFamilySpec(family, m, FlagBasis.random(n, rng), ctx)
            except FamilyError:
                continue
            if n <= 6:
                assert classify_plane(parametrize_plane(spec), ctx).family is family
            built.add(family)
        assert built == listed
        assert len(built) == component_count(3, k, n, m).count


def test_report_json_roundtrip():
    for args in [(3, 3, 8, 3), (3, 2, 4, 2), (4, 2, 7, 3), (3, 3, 7, 5)]:
        payload = component_count(*args).to_json()
        text = dump_json(payload)
        assert dump_json(json.loads(text)) == text
        assert list(payload) == ["d", "k", "n", "m", "count", "components", "classes_coincide"]
    comp = component_count(3, 3, 8, 3).to_json()["components"][1]
    assert comp == {
        "family": "QUOT",
        "plane_class": "[4,4,4]",
        "hypersurface_class": {"coeff": 3, "partition": "[5,4,4]"},
        "flag": {"a": 0, "b": 4, "n": 8, "dim": 16},
        "dimension": 16 + comb(6, 3) - 1,
    }
