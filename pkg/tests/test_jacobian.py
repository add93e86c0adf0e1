import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import cycle, load_group, pt
from plectic.errors import NonPrimitiveCharacter
from plectic.groups import FreeWord
from plectic.integration import PlecticCycle, fundamental_point, scalar_agreement
from plectic.jacobian import (
    JacobianElement,
    TateCurve,
    abel_jacobi,
    commensurability_check,
    kunneth_compose,
    kunneth_decompose,
    lattice_generator_cycle,
    modular_projection,
    period_lattice,
    reduce_slots,
    sub_lattice,
    tate_point_ops,
)

P = 5


@pytest.fixture(scope="module")
def cc_lattice(cyclic_cyclic):
    return period_lattice(cyclic_cyclic)


def test_tate_lattice(tate):
    lat = period_lattice(tate)
    assert lat.factors[0].matrix == [[5]]


def test_product_lattice_is_per_place(cyclic_cyclic, cc_lattice):
    assert [f.matrix for f in cc_lattice.factors] == [[[5]], [[25]]]


def test_tate_abel_jacobi(tate):
    x = abel_jacobi(tate, cycle((2, 3)))
    assert x.slots == [[Fraction(2, 3)]]


def test_degenerate_cycle_is_identity(cyclic_cyclic, cc_lattice):
    assert abel_jacobi(cyclic_cyclic, cycle((2, 2), (7, 1)), cc_lattice).is_identity()


def test_abel_jacobi_is_invariant(rank2, rank2_lattice):
    f = rank2.factors[0]
    d = cycle((4, 9))
    a = abel_jacobi(rank2, d, rank2_lattice)
    b = abel_jacobi(rank2, d.translate([f.evaluate(FreeWord.of([2, -1]))]), rank2_lattice)
    assert a.agreement(b) >= 20


def test_lattice_generators_vanish(rank2, rank2_lattice):
    f = rank2.factors[0]
    base = fundamental_point(f)
    for j in (1, 2):
        d = lattice_generator_cycle(rank2, 0, j, base, [])
        assert abel_jacobi(rank2, d, rank2_lattice).is_identity()


def test_tate_normal_form(tate):
    lat = period_lattice(tate)
    x = reduce_slots(lat, [[Fraction(2 * 5**3)]])
    assert x.slots == [[Fraction(2)]]
    assert reduce_slots(lat, x.slots).slots == x.slots
    assert reduce_slots(lat, [[Fraction(5)]]).is_identity()


@given(st.integers(-10**6, 10**6).filter(bool), st.integers(1, 10**4), st.integers(-6, 6))
def test_reduction_is_idempotent(n, d, k):
    lat = period_lattice(load_group("tate.json"))
    u = Fraction(n, d) * Fraction(5) ** k
    once = reduce_slots(lat, [[u]])
    assert 0 <= _v(once.slots[0][0]) < 1
    assert reduce_slots(lat, once.slots).slots == once.slots


def _v(x):
    from plectic.jacobian import scalar_valuation

    return scalar_valuation(P, x)


def test_rank2_reduction_is_idempotent(rank2_lattice):
    rng = random.Random(5)
    for _ in range(10):
        slot = [Fraction(rng.randint(1, 999), rng.randint(1, 99)) * Fraction(5) ** rng.randint(-9, 9) for _ in range(2)]
        once = reduce_slots(rank2_lattice, [slot])
        assert reduce_slots(rank2_lattice, once.slots).agreement(once) >= 20


def test_kunneth_closed_form(cyclic_cyclic, cc_lattice):
    x = abel_jacobi(cyclic_cyclic, cycle((2, 3), (7, 1)), cc_lattice)
    assert x.slots == [[Fraction(2, 3)], [Fraction(7)]]
    left, right = kunneth_decompose(x, 1)
    assert left.slots == [[Fraction(2, 3)]]
    assert right.slots == [[Fraction(7)]]
    assert kunneth_compose(left, right, cc_lattice).agreement(x) >= 20


def test_kunneth_roundtrip(cc_lattice):
    rng = random.Random(2)
    for _ in range(20):
        slots = [[Fraction(rng.randint(1, 10**4), rng.randint(1, 10**3)) * Fraction(5) ** rng.randint(-3, 3)] for _ in range(2)]
        x = reduce_slots(cc_lattice, slots)
        a, b = kunneth_decompose(x, 1)
        assert kunneth_compose(a, b, cc_lattice).agreement(x) >= 20


def test_kunneth_identity(cc_lattice):
    one = reduce_slots(cc_lattice, [[Fraction(1)], [Fraction(1)]])
    a, b = kunneth_decompose(one, 1)
    assert kunneth_compose(a, b, cc_lattice).is_identity()


def test_kunneth_matches_factor_abel_jacobi(cyclic_rank2):
    lat = period_lattice(cyclic_rank2)
    d = PlecticCycle.elementary(P, [(pt(2), pt(3)), (pt(4), pt(9))])
    x = abel_jacobi(cyclic_rank2, d, lat)
    left, right = kunneth_decompose(x, 1)
    assert left.agreement(abel_jacobi(load_group("tate.json"), cycle((2, 3)), sub_lattice(lat, 0))) >= 20
    rank2 = load_group("rank2.json")
    assert right.agreement(abel_jacobi(rank2, cycle((4, 9)), sub_lattice(lat, 1))) >= 20


def test_tate_point_operations():
    E = TateCurve(P, 5)
    assert tate_point_ops(E, "add", Fraction(2), Fraction(3)) == 6
    assert tate_point_ops(E, "add", Fraction(7, 3), E.identity()) == Fraction(7, 3)
    u = Fraction(11, 2)
    assert tate_point_ops(E, "equal", tate_point_ops(E, "add", u, tate_point_ops(E, "neg", u)), 1)
    assert tate_point_ops(E, "normalize", Fraction(2 * 125)) == 2


def test_commensurability():
    assert commensurability_check(P, 5, 25).exponents == (2, 1)
    assert not commensurability_check(P, 5, 10).commensurable
    assert commensurability_check(P, 5, 5).exponents == (1, 1)


def test_modular_projection_on_tate(tate):
    lat = period_lattice(tate)
    x = abel_jacobi(tate, cycle((2, 3)), lat)
    proj = modular_projection(lat, [1], [5])
    assert proj.apply(x) == (Fraction(2, 3),)
    with pytest.raises(NonPrimitiveCharacter):
        modular_projection(lat, [0], [5])


def test_modular_projection_on_product(cyclic_cyclic, cc_lattice):
    x = abel_jacobi(cyclic_cyclic, cycle((2, 3), (7, 1)), cc_lattice)
    proj = modular_projection(cc_lattice, [1], [5, 25])
    assert proj.apply(x) == (Fraction(2, 3), Fraction(7))
