"""Acceptance criteria C1 to C10.

Each criterion runs under its runtime budget and prints one PASS/FAIL line.
Run directly with ``python tests/test_acceptance.py`` for the summary alone.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import config_path, cycle, load_group, pt  # noqa: E402
from plectic.errors import NonStabilized  # noqa: E402
from plectic.groups import FreeWord, conjugate_group, limit_set_approx  # noqa: E402
from plectic.hecke import functoriality_check, index_check, load_morphism  # noqa: E402
from plectic.integration import (  # noqa: E402
    PlecticCycle,
    fubini_check,
    fundamental_point,
    integrate_riemann,
    integrate_series,
    period,
    scalar_agreement,
)
from plectic.jacobian import (  # noqa: E402
    abel_jacobi,
    commensurability_check,
    kunneth_compose,
    kunneth_decompose,
    period_lattice,
    reduce_slots,
    sub_lattice,
)
from plectic.measures import check_measure, invariant_measure_lattice  # noqa: E402
from plectic.padic import PadicScalar, QuadExtScalar, default_nonsquare, precision_policy  # noqa: E402
from plectic.projective import PGL2Elem, ProjPoint, moebius_apply  # noqa: E402
from plectic.tree import (  # noqa: E402
    DirectedEdge,
    act_on_ball,
    act_on_vertex,
    ball,
    ball_of_edge,
    bfs_distances,
    neighbors,
    point_in_ball,
    reduction_map,
    tree_distance,
    vertex,
)

P = 5
DIGITS = 20


class Failed(Exception):
    pass


def need(cond, message):
    if not cond:
        raise Failed(message)


def _value(result, idx):
    return result.value(idx).scalars()[0]


def _ext(a, b):
    d = default_nonsquare(P)
    one = PadicScalar.from_rational(P, 1)
    return ProjPoint(
        P,
        QuadExtScalar(PadicScalar.from_rational(P, a), PadicScalar.from_rational(P, b), d),
        QuadExtScalar(one, PadicScalar.from_rational(P, 0), d),
    )


def _rand_matrix(rng):
    while True:
        m = [[rng.randint(-30, 30) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            return PGL2Elem.from_rows(m)


def _rand_rational(rng):
    return Fraction(rng.randint(-500, 500) or 1, rng.randint(1, 50)) * Fraction(P) ** rng.randint(-3, 3)


def _rand_unit_far(rng):
    """A point of Q_5 at distance 1 from the limit set of the rank-2 config:
    either congruent to 4 mod 5 or of negative valuation."""
    den = rng.choice([d for d in range(1, 40) if d % P])
    if rng.random() < 0.5:
        num = rng.randint(-300, 300)
        r = Fraction(num, den)
        return r + (4 - r.numerator * pow(r.denominator, -1, P)) % P
    return Fraction(rng.randint(1, 300), den * P ** rng.randint(1, 2))


# criteria


def c1_tate():
    tate = load_group("tate.json")
    q = period(tate, 0, 1, 1)
    need(q == 5, f"period {q}")
    with precision_policy(output=30, working=40):
        x = abel_jacobi(tate, cycle((2, 3)))
        got = x.slots[0][0]
        want = PadicScalar.from_rational(P, Fraction(2, 3), 30).digits()
        have = PadicScalar.from_rational(P, got, 30).digits() if isinstance(got, Fraction) else got.digits()[:30]
    need(have == want, f"AJ digits {have}")
    return "period 5, AJ = 2/3 to 30 digits"


def c2_dual_algorithms():
    rank2 = load_group("rank2.json")
    f = rank2.factors[0]
    lat = invariant_measure_lattice(rank2)
    rng = random.Random(2)
    worst = None
    for _ in range(5):
        x, y = _rand_unit_far(rng), _rand_unit_far(rng)
        while y == x:
            y = _rand_unit_far(rng)
        r = integrate_riemann(cycle((x, y)), lat)
        for i, idx in enumerate(lat.basis, 1):
            for n in range(6, 10):
                try:
                    s = integrate_series(f, i, pt(x), pt(y), n, DIGITS)
                    break
                except NonStabilized:
                    continue
            else:
                raise Failed(f"series unstable for [{x}]-[{y}]")
            got = scalar_agreement(P, s.value, _value(r, idx))
            need(got >= DIGITS, f"[{x}]-[{y}] coordinate {i}: {got} digits")
            worst = got if worst is None else min(worst, got)
    return f"5 cycles x 2 coordinates, >= {worst} digits"


def c3_symmetry():
    out = []
    for name in ("rank2.json", "cyclic_rank2.json", "rank2_index2.json"):
        group = load_group(name)
        lat = period_lattice(group)
        for k, fp in enumerate(lat.factors):
            if fp is None or len(fp.matrix) < 2:
                continue
            got = lat.symmetry_digits(k)
            need(got >= DIGITS, f"{name} place {k}: {got} digits")
            out.append(f"{name.removesuffix('.json')}:{got}")
    return "symmetric to " + ", ".join(out)


def c4_fubini():
    cc = load_group("cyclic_cyclic.json")
    rng = random.Random(4)
    pairs = [((2, 3), (7, 1))]
    while len(pairs) < 4:
        a, b, c, d = (rng.randint(1, 200) for _ in range(4))
        if a != b and c != d and all(z % P for z in (a, b, c, d)):
            pairs.append(((a, b), (c, d)))
    for (x1, y1), (x2, y2) in pairs:
        (rep,) = fubini_check(cc, cycle((x1, y1), (x2, y2)))
        need(rep.agree, f"cyclic x cyclic disagrees on {(x1, y1, x2, y2)}")
        want = (Fraction(x1, y1), Fraction(x2, y2))
        need(rep.product_value.scalars() == want, f"closed form {rep.product_value.scalars()} != {want}")
    cr = load_group("cyclic_rank2.json")
    d = PlecticCycle.elementary(P, [(pt(2), pt(3)), (pt(4), pt(9))])
    reports = fubini_check(cr, d)
    need(len(reports) == 2, f"{len(reports)} coordinates")
    for r in reports:
        need(r.agree and r.digits >= DIGITS, f"cyclic x rank2: {r.digits} digits")
    return f"{len(pairs)} closed forms exact, cyclic x rank2 >= {min(r.digits for r in reports)} digits"


def c5_kunneth():
    cc = load_group("cyclic_cyclic.json")
    lat = period_lattice(cc)
    rng = random.Random(5)
    for _ in range(20):
        slots = [[Fraction(rng.randint(1, 10**4), rng.randint(1, 10**3)) * Fraction(P) ** rng.randint(-3, 3)] for _ in range(2)]
        x = reduce_slots(lat, slots)
        a, b = kunneth_decompose(x, 1)
        need(kunneth_compose(a, b, lat).agreement(x) >= DIGITS, f"round trip fails on {slots}")
    cr = load_group("cyclic_rank2.json")
    clat = period_lattice(cr)
    x = abel_jacobi(cr, PlecticCycle.elementary(P, [(pt(2), pt(3)), (pt(4), pt(9))]), clat)
    left, right = kunneth_decompose(x, 1)
    a = left.agreement(abel_jacobi(load_group("tate.json"), cycle((2, 3)), sub_lattice(clat, 0)))
    b = right.agreement(abel_jacobi(load_group("rank2.json"), cycle((4, 9)), sub_lattice(clat, 1)))
    need(min(a, b) >= DIGITS, f"AJ compatibility {a}, {b} digits")
    return f"20 round trips, AJ compatible to {min(a, b)} digits"


def c6_measures():
    ranks = {}
    for name, want in (("tate.json", 1), ("rank2.json", 2), ("cyclic_cyclic.json", 1), ("cyclic_rank2.json", 2)):
        group = load_group(name)
        lat = invariant_measure_lattice(group)
        ranks[name] = lat.rank
        need(lat.rank == want, f"{name}: rank {lat.rank}, expected {want}")
        need(all(check_measure(lat, m) for m in range(lat.rank)), f"{name}: harmonicity fails")
        factors = group.factors
        # total mass zero and antisymmetry in each variable, on the cover balls
        for k, f in enumerate(factors):
            others = [g.ball(g.letters[0]) for j, g in enumerate(factors) if j != k]
            total = [0] * lat.rank
            for s in f.letters:
                balls = list(others)
                balls.insert(k, f.ball(s))
                value = lat.measure_of_ball(balls)
                total = [a + b for a, b in zip(total, value)]
                b = f.ball(s)
                balls[k] = ball(P, b.center, b.n, not b.complement)
                flipped = lat.measure_of_ball(balls)
                need(tuple(-v for v in value) == tuple(flipped), f"{name}: not antisymmetric at place {k}")
            need(not any(total), f"{name}: mass {total} at place {k}")
    return "ranks " + str(list(ranks.values())) + ", harmonic, antisymmetric, mass zero"


def c7_invariance():
    rng = random.Random(7)
    rank2 = load_group("rank2.json")
    f = rank2.factors[0]
    lat = invariant_measure_lattice(rank2)
    d = cycle((4, 9))
    base = integrate_riemann(d, lat)
    for w in ([1], [-2], [1, 2], [2, -1, -1]):
        moved = integrate_riemann(d.translate([f.evaluate(FreeWord.of(w))]), lat)
        for idx in lat.basis:
            got = scalar_agreement(P, _value(base, idx), _value(moved, idx))
            need(got >= DIGITS, f"integral moves under {w}: {got} digits")
    pts = [fundamental_point(f, skip=s) for s in range(3)]
    for i in (1, 2):
        for j in (1, 2):
            vals = [period(rank2, 0, j, i, x=x) for x in pts]
            for v in vals[1:]:
                need(scalar_agreement(P, vals[0], v) >= DIGITS, f"period ({i},{j}) depends on the base point")
    for _ in range(3):
        h = _rand_matrix(rng)
        conj = conjugate_group(rank2, [h])
        moved = sorted(repr(act_on_ball(h, b, P).to_json()) for b in limit_set_approx(rank2, 0, 2)[1])
        direct = sorted(repr(b.to_json()) for b in limit_set_approx(conj, 0, 2)[1])
        need(moved == direct, f"limit cover not equivariant under {h}")
    tate = load_group("tate.json")
    tlat = invariant_measure_lattice(tate)
    for a, b in (((2, 1), (3, 2)), ((1, 3), (4, 1))):
        c = PlecticCycle.elementary(P, [(_ext(*a), _ext(*b))])
        x = _value(integrate_riemann(c, tlat), (1,))
        y = _value(integrate_riemann(c.frobenius(), tlat), (1,))
        need(scalar_agreement(P, x.frobenius(), y) >= DIGITS, "Galois equivariance fails")
    return "translation, base point, conjugation, Frobenius"


def c8_hecke():
    out = []
    for group_name, morphism_name, cyc in (
        ("tate_index2.json", "morphism_tate_index2.json", (2, 3)),
        ("rank2_index2.json", "morphism_rank2_index2.json", (4, 9)),
    ):
        f = load_morphism(config_path(morphism_name), load_group(group_name))
        ok, m = index_check(f)
        n = len(m)
        need(ok and m == [[f.index * (i == j) for j in range(n)] for i in range(n)], f"{group_name}: push.pull = {m}")
        rep = functoriality_check(f, [cycle(cyc)], [cycle(cyc)])
        need(rep.ok, f"{group_name}: squares fail {rep.to_json()}")
        got = min(rep.push_digits + rep.pull_digits)
        need(got >= DIGITS, f"{group_name}: {got} digits")
        out.append(f"{group_name.removesuffix('.json')}:{got}")
    return "squares commute, " + ", ".join(out)


def c9_tree():
    rng = random.Random(9)
    for _ in range(50):
        g = _rand_matrix(rng)
        z = _ext(_rand_rational(rng), _rand_rational(rng) or 1)
        need(reduction_map(P, moebius_apply(g, z)) == act_on_vertex(g, reduction_map(P, z), P), f"reduction under {g}")
    for _ in range(50):
        v = vertex(P, rng.randint(-2, 3), rng.randint(0, 200))
        balls = [ball_of_edge(P, DirectedEdge(v, w)) for w in neighbors(P, v)]
        z = ProjPoint.of(P, _rand_rational(rng))
        hits = sum(point_in_ball(P, z, b) for b in balls)
        need(hits == 1, f"{z.to_str()} lies in {hits} balls around {v.label()}")
    center = vertex(P, 0)
    dist = bfs_distances(P, center, 6)
    pool = list(dist)
    for _ in range(50):
        w = rng.choice(pool)
        need(tree_distance(P, center, w) == dist[w], f"distance to {w.label()}")
    return f"50 reductions, 50 partitions, BFS ball of {len(pool)} vertices"


def c10_commensurability():
    a = commensurability_check(P, 5, 25)
    b = commensurability_check(P, 5, 10)
    c = commensurability_check(P, 5, 5)
    need(a.commensurable and a.exponents == (2, 1), f"(5,25) -> {a}")
    need(not b.commensurable, f"(5,10) -> {b}")
    need(c.commensurable and c.exponents == (1, 1), f"(5,5) -> {c}")
    return "(2,1), no, (1,1)"


CRITERIA = [
    ("C1", "Tate period and Abel-Jacobi", c1_tate, 1),
    ("C2", "Riemann sums agree with theta products", c2_dual_algorithms, 60),
    ("C3", "period matrices are symmetric", c3_symmetry, 60),
    ("C4", "Fubini", c4_fubini, 120),
    ("C5", "Kunneth", c5_kunneth, 60),
    ("C6", "measure lattice ranks", c6_measures, 30),
    ("C7", "invariance suite", c7_invariance, 120),
    ("C8", "Hecke functoriality", c8_hecke, 60),
    ("C9", "tree and reduction", c9_tree, 10),
    ("C10", "commensurability", c10_commensurability, 1),
]


def run_criterion(label, title, fn, budget):
    start = time.perf_counter()
    try:
        with precision_policy(output=DIGITS):
            detail = fn()
        ok = True
    except Failed as exc:
        detail, ok = str(exc), False
    seconds = time.perf_counter() - start
    if ok and seconds >= budget:
        ok, detail = False, f"{detail}; over budget"
    line = f"{label:<4} {'PASS' if ok else 'FAIL'}  {title} ({seconds:.1f}s < {budget}s): {detail}"
    return ok, line


@pytest.mark.parametrize("label,title,fn,budget", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, title, fn, budget, capsys):
    ok, line = run_criterion(label, title, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
