import itertools
import random
from fractions import Fraction

from plectic.groups import PlecticGroup, TrivialFactor
from plectic.measures import (
    check_measure,
    factor_quotient,
    invariant_measure_lattice,
    limit_tree,
    measure_of_ball,
    orientation_and_duality_report,
    quotient_complex,
)
from plectic.projective import ProjPoint
from plectic.tree import act_on_ball, ball, geodesic_between_ends, vertex

P = 5


def test_cyclic_limit_tree_is_an_apartment(tate):
    t = limit_tree(tate.factors[0], 3)
    assert all(v.b == 0 for v in t.vertices)
    assert set(geodesic_between_ends(P, ProjPoint.of(P, 0), ProjPoint.infinity(P), 1)) <= set(t.vertices)


def test_limit_tree_contains_axes(rank2_factor):
    t = set(limit_tree(rank2_factor, 3).vertices)
    for g in rank2_factor.generators:
        from plectic.projective import fixed_points

        att, rep, _ = fixed_points(g, P)
        axis = geodesic_between_ends(P, att, rep, 1)
        assert set(axis) <= t


def test_limit_tree_grows_with_depth(rank2_factor):
    for d in range(1, 4):
        small, big = limit_tree(rank2_factor, d), limit_tree(rank2_factor, d + 1)
        assert set(small.vertices) <= set(big.vertices)
        assert set(small.edges) <= set(big.edges)


def test_quotient_graph_betti_numbers(tate, rank2_factor):
    g = factor_quotient(tate.factors[0], 1)
    assert (len(g.vertices), len(g.edges), g.betti) == (1, 1, 1)
    assert factor_quotient(rank2_factor, 1).betti == 2


def test_product_complex_cells(cyclic_rank2):
    cx = quotient_complex(cyclic_rank2)
    assert cx.betti_numbers == [1, 2]
    assert cx.cell_count() == len(cx.graphs[0].edges) * len(cx.graphs[1].edges)


def test_cyclic_measure_values(tate):
    lat = invariant_measure_lattice(tate)
    assert lat.rank == 1
    assert lat.measure_of_ball([ball(P, 0, 1)]) == (1,)
    assert lat.measure_of_ball([ball(P, 0, 1, True)]) == (-1,)
    assert measure_of_ball(lat.measures[0], [ball(P, 0, 1)]) == 1


def test_lattice_ranks(tate, rank2, cyclic_cyclic, cyclic_rank2):
    assert [invariant_measure_lattice(g).rank for g in (tate, rank2, cyclic_cyclic, cyclic_rank2)] == [1, 2, 1, 2]


def test_whole_line_has_no_mass(cyclic_rank2):
    lat = invariant_measure_lattice(cyclic_rank2)
    assert lat.measure_of_ball([None, ball(P, 0, 1)]) == (0, 0)


def test_measures_are_harmonic(cyclic_rank2, rank2):
    for g in (cyclic_rank2, rank2):
        lat = invariant_measure_lattice(g)
        assert all(check_measure(lat, m) for m in range(lat.rank))


def _children(b):
    step = Fraction(P) ** b.n
    return [ball(P, b.center + k * step, b.n + 1) for k in range(P)]


def test_refinement_is_additive(rank2_factor):
    rng = random.Random(11)
    group = PlecticGroup(P, [rank2_factor])
    lat = invariant_measure_lattice(group)
    words = [w for w in rank2_factor.words(3) if len(w)]
    charged = 0
    for _ in range(20):
        w = rng.choice(words)
        g = rank2_factor.evaluate(type(w)(w.letters[:-1]))
        b = act_on_ball(g, rank2_factor.ball(w.letters[-1]), P)
        if b.complement:
            continue
        total = [0] * lat.rank
        for c in _children(b):
            total = [x + y for x, y in zip(total, lat.measure_of_ball([c]))]
        assert tuple(total) == lat.measure_of_ball([b])
        charged += any(total)
    assert charged


def test_translation_invariance(rank2_factor):
    group = PlecticGroup(P, [rank2_factor])
    lat = invariant_measure_lattice(group)
    for s, w in itertools.product(rank2_factor.letters, rank2_factor.words(2)):
        b = rank2_factor.ball(s)
        moved = act_on_ball(rank2_factor.evaluate(w), b, P)
        assert lat.measure_of_ball([moved]) == lat.measure_of_ball([b])


def test_total_mass_zero(cyclic_rank2):
    lat = invariant_measure_lattice(cyclic_rank2)
    f0, f1 = cyclic_rank2.factors
    for s in f1.letters:
        total = [0] * lat.rank
        for t in f0.letters:
            total = [a + b for a, b in zip(total, lat.measure_of_ball([f0.ball(t), f1.ball(s)]))]
        assert not any(total)


def test_duality_report(cyclic_rank2):
    rep = orientation_and_duality_report(cyclic_rank2)
    assert (rep.dimension, rep.rank) == (2, 2)
    assert rep.orientation[0] == [-1]
    empty = orientation_and_duality_report(PlecticGroup(P, [TrivialFactor(P)]))
    assert (empty.dimension, empty.rank) == (0, 0)


def test_quotient_dot_is_stable(rank2_factor):
    a = factor_quotient(rank2_factor, 1).to_dot()
    b = factor_quotient(rank2_factor, 1).to_dot()
    assert a == b and a.startswith("digraph quotient")
