import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hilbgrass.linalg import rank
from hilbgrass.polynomials import (
    GradedIdeal,
    HypersurfaceIdealSpec,
    Poly,
    binomial_comb,
    hilbert_function,
    hom_data,
    hom_dimension,
    is_squarefree,
    koszul_bound,
    macaulay_matrix,
    monomials_of_degree,
    parse_poly,
    quotient_basis,
    random_form,
    syzygies_in_degree,
)


def x(nvars, i):
    return Poly.variable(nvars, i)


def test_monomials_of_degree():
    assert monomials_of_degree(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert len(monomials_of_degree(3, 2)) == 6
    assert monomials_of_degree(1, 5) == ((5,),)
    assert monomials_of_degree(3, 2)[:3] == ((2, 0, 0), (1, 1, 0), (1, 0, 1))
    for v in range(1, 6):
        for e in range(6):
            assert len(monomials_of_degree(v, e)) == comb(e + v - 1, e)


def test_poly_text_and_json_roundtrip():
    f = parse_poly("3/2*x0^2*x1 - x2^3 + x0*x1*x2", 3)
    assert f.degree == 3
    assert parse_poly(str(f), 3) == f
    assert Poly.from_json(f.to_json()) == f
    assert str(parse_poly("-x1^2", 2)) == "-x1^2"
    with pytest.raises(ValueError):
        parse_poly("x0^2 + x1", 2)
    with pytest.raises(ValueError):
        parse_poly("x0*y1", 2)


def test_poly_arithmetic():
    a, b = x(2, 0), x(2, 1)
    f = (a + b) * (a - b)
    assert f == parse_poly("x0^2 - x1^2", 2)
    assert f.derivative(0) == a.scale(2)
    assert f([3, 1]) == 8
    assert (f - f).is_zero()


def test_macaulay_examples():
    assert macaulay_matrix(GradedIdeal(2, [x(2, 0)]), 1).rows == 2
    assert rank(macaulay_matrix(GradedIdeal(2, [x(2, 0)]), 1)) == 1
    assert rank(macaulay_matrix(GradedIdeal(2, [x(2, 0), x(2, 1)]), 2)) == 3
    spec = HypersurfaceIdealSpec.generic(4, 2, 3, seed=5)
    M = macaulay_matrix(spec.ideal(), 2)
    assert (M.rows, rank(M)) == (15, 15 - 6)
    # generators above the degree add no columns
    assert macaulay_matrix(spec.ideal(), 0).cols == 0


def test_hilbert_function_examples():
    I = HypersurfaceIdealSpec.generic(4, 2, 3, seed=1).ideal()
    assert hilbert_function(I, 2) == 6
    assert hilbert_function(I, 3) == 9
    assert hilbert_function(GradedIdeal(3, []), 2) == 6


def test_quotient_basis_examples():
    I = HypersurfaceIdealSpec.generic(4, 2, 3, seed=2).ideal()
    qb = quotient_basis(I, 1)
    assert qb.monomials == ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0))
    assert len(quotient_basis(I, 3)) == 9
    full = GradedIdeal(2, [x(2, 0), x(2, 1)])
    assert len(quotient_basis(full, 2)) == 0


def test_quotient_reduction_kills_ideal():
    spec = HypersurfaceIdealSpec.generic(3, 2, 3, seed=3)
    I = spec.ideal()
    qb = quotient_basis(I, 4)
    for g in I.generators:
        for mu in monomials_of_degree(4, 4 - g.degree):
            assert qb.reduce(g * Poly.monomial(mu)) == {}
    # standard monomials reduce to themselves
    for t, m in enumerate(qb.monomials):
        assert qb.reduce(Poly.monomial(m)) == {t: 1}


def _check_syzygy(I, syz):
    total = Poly(I.varcount)
    for h, g in zip(syz, I.generators):
        total = total + h * g
    assert total.is_zero()


def test_syzygy_examples():
    I = GradedIdeal(2, [x(2, 0), x(2, 1)])
    (s,) = syzygies_in_degree(I, 2)
    h0, h1 = s
    assert h0.terms and h1.terms
    assert h0 * x(2, 0) + h1 * x(2, 1) == Poly(2)
    c = h0.terms[(0, 1)]
    assert h0 == x(2, 1).scale(c) and h1 == x(2, 0).scale(-c)
    for e in range(5):
        assert syzygies_in_degree(GradedIdeal(2, [x(2, 0)]), e) == []
    spec = HypersurfaceIdealSpec.generic(3, 2, 3, seed=4)
    syz = syzygies_in_degree(spec.ideal(), 4)
    assert len(syz) == 1
    _check_syzygy(spec.ideal(), syz[0])


@pytest.mark.parametrize("N,m,d", [(4, 2, 3), (5, 3, 3), (4, 3, 4)])
def test_syzygies_multiply_to_zero(N, m, d):
    I = HypersurfaceIdealSpec.generic(N, m, d, seed=N + m + d).ideal()
    for e in range(d + 3):
        for syz in syzygies_in_degree(I, e):
            _check_syzygy(I, syz)


def test_hom_examples():
    assert hom_dimension(HypersurfaceIdealSpec.generic(5, 2, 3, seed=9).ideal(), 5) == 18
    assert hom_dimension(HypersurfaceIdealSpec.generic(3, 2, 3, seed=1).ideal(), 5) == 12
    # point on P^1: Hom((x0), S/(x0))_0 = (S/I)_1 = span(x1)
    assert hom_dimension(GradedIdeal(2, [x(2, 0)]), 2) == 1


def test_hom_rejects_low_bound():
    I = HypersurfaceIdealSpec.sparse(4, 2, 3).ideal()
    assert koszul_bound(I) == 4
    with pytest.raises(ValueError):
        hom_dimension(I, 3)


def test_hom_non_regular_ideal_has_constraints():
    # I = (x0^2, x0*x1): the syzygy (x1, -x0) forces phi(x0^2) = 0
    a, b = x(2, 0), x(2, 1)
    data = hom_data(GradedIdeal(2, [a * a, a * b]), 4)
    assert (data.unknowns, data.constraint_rank, data.dimension) == (2, 1, 1)


@pytest.mark.parametrize("N,m,d", [(3, 2, 3), (4, 2, 4), (5, 3, 3), (4, 3, 4)])
@pytest.mark.parametrize("kind", ["sparse", "dense"])
def test_hypersurface_syzygy_constraints_vanish(N, m, d, kind):
    spec = (HypersurfaceIdealSpec.sparse(N, m, d) if kind == "sparse"
            else HypersurfaceIdealSpec.generic(N, m, d, seed=11))
    data = hom_data(spec.ideal(), d + 2)
    assert data.constraint_rank == 0
    assert sum(data.syzygy_counts) > 0
    assert data.dimension == spec.tangent_formula()


@pytest.mark.parametrize("N,m,d", [(N, m, d) for N in range(2, 7) for m in (2, 3) if m <= N for d in range(1, 5)])
def test_hilbert_function_formula(N, m, d, rng):
    for spec in (HypersurfaceIdealSpec.sparse(N, m, d),
                 HypersurfaceIdealSpec(N, m, d, random_form(m + 1, d, rng))):
        I = spec.ideal()
        for e in range(d + 5):
            want = comb(e + m, m) - binomial_comb(e + m - d, m)
            assert hilbert_function(I, e) == want == spec.expected_hilbert_function(e)


def test_hypersurface_spec_validation():
    with pytest.raises(ValueError):
        HypersurfaceIdealSpec.sparse(2, 3, 3)
    with pytest.raises(ValueError):
        HypersurfaceIdealSpec(4, 2, 3, parse_poly("x0^3 + x3^3", 4))
    with pytest.raises(ValueError):
        HypersurfaceIdealSpec(4, 2, 3, parse_poly("x0^2", 3))
    with pytest.raises(ValueError):
        GradedIdeal(2, [Poly(2)])


def test_is_squarefree():
    assert not is_squarefree(parse_poly("x0^2*x1", 3))
    assert is_squarefree(parse_poly("x0^3 + x1^3 + x2^3", 3))
    assert not is_squarefree(parse_poly("x0^2 + 2*x0*x1 + x1^2", 2))
    # a partial may vanish or share a factor with f
    assert is_squarefree(parse_poly("x0^2*x1 + x0*x1^2", 3))
    assert is_squarefree(parse_poly("x0*x1*x2 + x0^3", 3))
    assert not is_squarefree(parse_poly("x0^2*x1 + x0^2*x2", 3))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_dense_plane_form_hilbert_function(nv, d, seed):
    f = random_form(nv, d, random.Random(seed))
    I = GradedIdeal(nv, [f])
    m = nv - 1
    for e in range(d + 3):
        assert hilbert_function(I, e) == comb(e + m, m) - binomial_comb(e + m - d, m)
