import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cycle, load_group, pt
from oracles import period_product, theta_product
from plectic.errors import PointCollision
from plectic.integration import (
    CycleTerm,
    MultiplicativeTensor,
    PlecticCycle,
    fubini_check,
    fundamental_point,
    integrate_riemann,
    integrate_series,
    period,
    phi_eval,
    sample_partitions,
    scalar_agreement,
)
from plectic.groups import conjugate_group
from plectic.measures import invariant_measure_lattice
from plectic.padic import PadicScalar, QuadExtScalar, default_nonsquare
from plectic.projective import PGL2Elem, ProjPoint

P = 5

# leading digits of the classical products at word length 6 (see oracles.py)
THETA_4_9 = {
    1: [1, 3, 2, 3, 3, 2, 1, 1, 1, 0, 2, 2, 3, 3, 1, 0, 0, 1, 1, 3],
    2: [1, 3, 3, 0, 2, 3, 2, 0, 4, 3, 3, 4, 3, 3, 1, 0, 2, 0, 3, 1],
}


def _value(result, idx):
    return result.value(idx).scalars()[0]


def _digits(x, n=20):
    return PadicScalar.from_rational(P, x, n).digits() if isinstance(x, Fraction) else x.with_precision(n).digits()


def test_phi_eval_examples():
    term = CycleTerm(1, ((pt(2), pt(3)),))
    assert phi_eval(term, [pt(0)]) == (Fraction(2, 3),)
    assert phi_eval(term, [ProjPoint.infinity(P)]) == (1,)
    flat = CycleTerm(1, ((pt(2), pt(2)), (pt(7), pt(1))))
    assert phi_eval(flat, [pt(0), pt(0)])[0] == 1


@pytest.mark.parametrize("depth", [1, 2, 5])
def test_tate_integral_is_exact(tate, depth):
    lat = invariant_measure_lattice(tate)
    r = integrate_riemann(cycle((2, 3)), lat, depth=depth, require=0)
    assert _value(r, (1,)) == Fraction(2, 3)


def test_degenerate_cycle_integrates_to_one(rank2):
    lat = invariant_measure_lattice(rank2)
    r = integrate_riemann(cycle((4, 4)), lat)
    assert all(scalar_agreement(P, _value(r, idx), Fraction(1)) >= 40 for idx in lat.basis)


def test_rank2_integral_matches_theta_products(rank2):
    lat = invariant_measure_lattice(rank2)
    r = integrate_riemann(cycle((4, 9)), lat)
    f = rank2.factors[0]
    for i, idx in enumerate(lat.basis, 1):
        got = _value(r, idx)
        assert _digits(got) == THETA_4_9[i]
        assert scalar_agreement(P, got, theta_product(f, 4, 9, i, 5)) >= 20


def test_series_matches_riemann_on_rank2(rank2):
    f = rank2.factors[0]
    lat = invariant_measure_lattice(rank2)
    r = integrate_riemann(cycle((4, 9)), lat)
    for i, idx in enumerate(lat.basis, 1):
        s = integrate_series(f, i, pt(4), pt(9), 7)
        assert scalar_agreement(P, s.value, _value(r, idx)) >= 20
        assert _digits(s.value) == THETA_4_9[i]


def test_series_on_cyclic_factor(tate):
    s = integrate_series(tate.factors[0], 1, pt(2), pt(3), 3, 0)
    assert s.value == Fraction(2, 3)
    assert integrate_series(tate.factors[0], 1, pt(2), pt(2), 3).value == 1


def test_integral_is_invariant(rank2):
    f = rank2.factors[0]
    lat = invariant_measure_lattice(rank2)
    d = cycle((4, 9))
    base = integrate_riemann(d, lat)
    for w in ([1], [-2], [1, 2]):
        from plectic.groups import FreeWord

        moved = integrate_riemann(d.translate([f.evaluate(FreeWord.of(w))]), lat)
        for idx in lat.basis:
            assert scalar_agreement(P, _value(base, idx), _value(moved, idx)) >= 20


def test_point_in_limit_set_is_refused(rank2):
    lat = invariant_measure_lattice(rank2)
    with pytest.raises(PointCollision):
        integrate_riemann(cycle((0, 9)), lat)


def test_tate_period(tate):
    assert period(tate, 0, 1, 1) == 5


def test_rank2_periods_match_classical_products(rank2, rank2_lattice):
    f = rank2.factors[0]
    q = rank2_lattice.factors[0].matrix
    for i in (1, 2):
        for j in (1, 2):
            assert scalar_agreement(P, q[i - 1][j - 1], period_product(f, i, j, 5)) >= 20
    assert rank2_lattice.symmetry_digits(0) >= 20
    assert rank2_lattice.factors[0].valuations == [[4, 0], [0, 4]]


def test_conjugated_group_has_same_periods(rank2, rank2_lattice):
    from plectic.jacobian import period_lattice

    h = PGL2Elem.from_rows([[1, 1], [0, 1]])
    conj = conjugate_group(rank2, [h])
    other = period_lattice(conj).factors[0].matrix
    for a, b in zip(rank2_lattice.factors[0].matrix, other):
        for x, y in zip(a, b):
            assert scalar_agreement(P, x, y) >= 20


def test_fubini_closed_form(cyclic_cyclic):
    d = cycle((2, 3), (7, 1))
    (rep,) = fubini_check(cyclic_cyclic, d)
    assert rep.agree
    assert rep.product_value.scalars() == (Fraction(2, 3), Fraction(7))


def test_fubini_with_degenerate_place(cyclic_cyclic):
    lat = invariant_measure_lattice(cyclic_cyclic)
    r = integrate_riemann(cycle((2, 2), (7, 1)), lat)
    assert r.value((1, 1)).collapse().scalars() == (1, 1)


def test_fubini_cyclic_times_rank2(cyclic_rank2):
    f = cyclic_rank2.factors[1]
    d = PlecticCycle.elementary(P, [(pt(2), pt(3)), (pt(4), pt(9))])
    reports = fubini_check(cyclic_rank2, d)
    assert len(reports) == 2
    assert all(r.agree and r.digits >= 20 for r in reports)


def test_galois_equivariance(tate):
    d = default_nonsquare(P)
    one = PadicScalar.from_rational(P, 1)

    def ext(a, b):
        return ProjPoint(
            P,
            QuadExtScalar(PadicScalar.from_rational(P, a), PadicScalar.from_rational(P, b), d),
            QuadExtScalar(one, PadicScalar.from_rational(P, 0), d),
        )

    lat = invariant_measure_lattice(tate)
    c = PlecticCycle.elementary(P, [(ext(2, 1), ext(3, 2))])
    a = _value(integrate_riemann(c, lat), (1,))
    b = _value(integrate_riemann(c.frobenius(), lat), (1,))
    assert scalar_agreement(P, a.frobenius(), b) >= 20


def test_partitions_cover_each_depth_once(rank2):
    f = rank2.factors[0]
    parts = sample_partitions(f, [pt(4), pt(9)], [2, 3])
    for d, items in parts.items():
        words = [w for w, _ in items]
        assert len(words) == len(set(words))


def test_multiplicative_tensor_collapse():
    a = MultiplicativeTensor.elementary(P, [Fraction(2), Fraction(3)])
    b = MultiplicativeTensor.elementary(P, [Fraction(2), Fraction(5)])
    assert (a * b).collapse().scalars() == (Fraction(2), Fraction(15))


@settings(max_examples=10)
@given(st.integers(0, 5))
def test_bilinearity_in_the_cycle(skip):
    group = load_group("rank2.json")
    f = group.factors[0]
    lat = invariant_measure_lattice(group)
    x = fundamental_point(f, skip=skip)
    y = fundamental_point(f, avoid=[x], skip=skip)
    z = fundamental_point(f, avoid=[x, y], skip=skip)
    dx = PlecticCycle.elementary(P, [(x, y)])
    dy = PlecticCycle.elementary(P, [(y, z)])
    both = integrate_riemann(dx + dy, lat, depth=3, require=0)
    one = integrate_riemann(dx, lat, depth=3, require=0)
    two = integrate_riemann(dy, lat, depth=3, require=0)
    for idx in lat.basis:
        prod = (one.value(idx) * two.value(idx)).collapse().scalars()[0]
        assert scalar_agreement(P, _value(both, idx), prod) >= 50
