from fractions import Fraction

from hypothesis import assume, given, strategies as st

from plectic.padic import PadicScalar
from plectic.projective import (
    PGL2Elem,
    ProjPoint,
    classify_element,
    cross_ratio_factor,
    fixed_points,
    moebius_apply,
    orientation_character,
)

P = 5

matrices = st.lists(st.integers(-40, 40), min_size=4, max_size=4).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0).map(
    lambda m: PGL2Elem.from_rows([m[:2], m[2:]])
)
points = st.fractions(min_value=-1000, max_value=1000, max_denominator=500).map(lambda z: ProjPoint.of(P, z))


def pt(z):
    return ProjPoint.of(P, Fraction(z))


def test_scaling_action():
    assert moebius_apply(PGL2Elem.diag(5, 1), pt(1)) == pt(5)


@given(points)
def test_identity_acts_trivially(z):
    assert moebius_apply(PGL2Elem.identity(), z) == z


@given(matrices, matrices, points)
def test_action_law(g, h, z):
    assert moebius_apply(g @ h, z) == moebius_apply(g, moebius_apply(h, z))


def test_classification():
    assert classify_element(PGL2Elem.diag(5, 1), P) == "hyperbolic"
    assert classify_element(PGL2Elem.from_rows([[1, 1], [0, 1]]), P) == "parabolic"
    assert classify_element(PGL2Elem.from_rows([[0, 1], [-1, 0]]), P) == "elliptic"


def test_diagonal_fixed_points():
    # 5^n z -> 0 in Q_5, so 0 attracts
    att, rep, q = fixed_points(PGL2Elem.diag(5, 1), P)
    assert att == pt(0)
    assert rep.is_infinity()
    assert q == 5


def test_inverse_swaps_fixed_points():
    g = PGL2Elem.diag(5, 1)
    att, rep, q = fixed_points(g, P)
    att2, rep2, q2 = fixed_points(g.inverse(), P)
    assert (att2, rep2, q2) == (rep, att, q)


@given(matrices)
def test_conjugation_moves_fixed_points(h):
    g = PGL2Elem.diag(25, 1)
    att, rep, q = fixed_points(g, P)
    att2, rep2, q2 = fixed_points(h @ g @ h.inverse(), P)
    assert att2 == moebius_apply(h, att)
    assert rep2 == moebius_apply(h, rep)
    assert PadicScalar.from_rational(P, q).agreement(PadicScalar.from_rational(P, q2) if isinstance(q2, Fraction) else q2) >= 20


def test_cross_ratio_factor_values():
    assert cross_ratio_factor(pt(0), pt(2), pt(3)) == Fraction(2, 3)
    assert cross_ratio_factor(ProjPoint.infinity(P), pt(2), pt(3)) == 1


@given(points, points)
def test_degenerate_divisor_is_constant(t, x):
    assume(t != x)
    assert cross_ratio_factor(t, x, x) == 1


@given(matrices, points, points, points, points)
def test_cross_ratio_covariance(g, t1, t2, x, y):
    # the quotient f(g t)/f(t) does not depend on t
    assume(len({t1.to_str(), t2.to_str(), x.to_str(), y.to_str()}) == 4)
    gx, gy = moebius_apply(g, x), moebius_apply(g, y)
    assume(not gx.is_infinity() and not gy.is_infinity())
    r1 = cross_ratio_factor(moebius_apply(g, t1), gx, gy) / cross_ratio_factor(t1, x, y)
    r2 = cross_ratio_factor(moebius_apply(g, t2), gx, gy) / cross_ratio_factor(t2, x, y)
    assert r1 == r2


def test_orientation_character_values():
    assert orientation_character(PGL2Elem.diag(5, 1), P) == -1
    assert orientation_character(PGL2Elem.identity(), P) == 1


@given(matrices, matrices)
def test_orientation_character_is_multiplicative(g, h):
    assert orientation_character(g @ h, P) == orientation_character(g, P) * orientation_character(h, P)
