"""Morphisms ``[x] -> [gx]`` between Mumford varieties and Hecke correspondences.

A morphism is given by one conjugator per place with ``g Gamma g^-1`` of
finite index in ``Gamma'``.  On invariant measures the pullback is
restriction, ``(f^* mu')(B) = mu'(gB)``, and the transfer sums over right
coset representatives, ``(Tr mu)(B) = sum_k mu(g^-1 r_k B)``.  Jacobian
elements are vectors of integrals against the measure basis, so pushforward
acts on them by the transpose of restriction and pullback by the transpose of
the transfer; pulling back then pushing forward is multiplication by the index.

Correspondences are handled combinatorially: a disjoint union of quotients by
finite-index subgroups of one parent factor is a finite set with a right action
of the parent (its components are the orbits), morphisms are equivariant maps,
and fibre products are fibre products of sets.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Sequence

from .errors import BoundExhausted, ConfigError, NotASubgroup, NotFound, PointCollision, RankMismatch
from .groups import (
    FiniteIndexSubgroup,
    FreeWord,
    PlecticGroup,
    SchottkyFactor,
    letter_order,
    schreier_subgroup,
)
from .integration import PlecticCycle, _mul, _pow
from .jacobian import JacobianElement, PeriodLattice, abel_jacobi, period_lattice, reduce_slot, reduce_slots
from .measures import invariant_measure_lattice
from .padic import current_policy
from .projective import PGL2Elem
from .tree import act_on_ball

# morphisms


@dataclass
class PlaceMorphism:
    """Inclusion data at one place: target words for the conjugated source
    generators and right coset representatives of ``g Gamma g^-1``."""

    g: PGL2Elem
    source: object
    target: object
    generator_words: list[FreeWord]
    cosets: list[FreeWord]

    @property
    def index(self) -> int:
        return len(self.cosets)

    def coset_matrices(self) -> list[PGL2Elem]:
        if self.target.rank == 0:
            return [PGL2Elem.identity()]
        return [self.target.evaluate(w) for w in self.cosets]


@dataclass
class MumfordMorphism:
    g: list[PGL2Elem]
    source: PlecticGroup
    target: PlecticGroup
    places: list[PlaceMorphism]
    word_bound: int

    @property
    def index(self) -> int:
        return math.prod(pm.index for pm in self.places)

    def coset_tuples(self) -> list[tuple[PGL2Elem, ...]]:
        return list(itertools.product(*[pm.coset_matrices() for pm in self.places]))

    def to_json(self) -> dict:
        return {
            "g": [x.to_json() for x in self.g],
            "index": self.index,
            "places": [
                {
                    "index": pm.index,
                    "generator_words": [str(w) for w in pm.generator_words],
                    "cosets": [str(w) for w in pm.cosets],
                }
                for pm in self.places
            ],
        }


def _in_conjugate(pm_g: PGL2Elem, source: SchottkyFactor, h: PGL2Elem) -> bool:
    # h in g Gamma g^-1  <=>  g^-1 h g in Gamma
    return source.contains((pm_g.inverse() @ h @ pm_g).integral())


def _place_morphism(g: PGL2Elem, source, target, word_bound: int) -> PlaceMorphism:
    g = g.integral()
    if source.rank == 0:
        if target.rank != 0:
            raise NotASubgroup("a trivial factor has infinite index in a free factor")
        return PlaceMorphism(g, source, target, [], [FreeWord()])
    if target.rank == 0:
        raise NotASubgroup(f"generator {source.generators[0]} does not map into the trivial factor")
    gi = g.inverse()
    words = []
    for i, gamma in enumerate(source.generators, 1):
        h = (g @ gamma @ gi).integral()
        try:
            words.append(target.membership_word(h, word_bound))
        except NotFound:
            err = NotASubgroup(f"g g{i} g^-1 = {h} is not in the target within {word_bound} letters")
            err.witness = h
            raise err from None
    return PlaceMorphism(g, source, target, words, _right_cosets(g, source, target, word_bound))


def _right_cosets(g: PGL2Elem, source: SchottkyFactor, target: SchottkyFactor, word_bound: int) -> list[FreeWord]:
    """Breadth-first coset enumeration: ``r s`` opens a new coset unless
    ``r s r'^-1`` lies in ``g Gamma g^-1`` for a known representative ``r'``."""
    reps = [FreeWord()]
    mats = [PGL2Elem.identity()]
    head = 0
    while head < len(reps):
        r = reps[head]
        head += 1
        for s in target.letters:
            w = r * FreeWord((s,))
            m = target.evaluate(w)
            if any(_in_conjugate(g, source, m @ x.inverse()) for x in mats):
                continue
            if len(w) > word_bound:
                raise BoundExhausted(f"coset enumeration needs representatives longer than {word_bound} letters")
            reps.append(w)
            mats.append(m)
    return reps


def validate_morphism(
    g: Sequence[PGL2Elem], source: PlecticGroup, target: PlecticGroup, word_bound: int = 8
) -> MumfordMorphism:
    if source.places != target.places or len(g) != source.places:
        raise ConfigError("source, target and conjugators must have the same number of places")
    if source.prime != target.prime:
        raise ConfigError("source and target use different primes")
    if word_bound < 1:
        raise ValueError("word_bound must be positive")
    places = [_place_morphism(x, s, t, word_bound) for x, s, t in zip(g, source.factors, target.factors)]
    return MumfordMorphism([pm.g for pm in places], source, target, places, word_bound)


def identity_morphism(group: PlecticGroup, word_bound: int = 8) -> MumfordMorphism:
    return validate_morphism([PGL2Elem.identity()] * group.places, group, group, word_bound)


def inclusion_morphism(parent: PlecticGroup, place: int, coset_action, word_bound: int = 8) -> MumfordMorphism:
    """The inclusion of the Schreier subgroup at ``place`` into ``parent``."""
    sub = schreier_subgroup(parent.factors[place], coset_action)
    factors = list(parent.factors)
    factors[place] = sub.factor
    source = PlecticGroup(parent.prime, factors, parent.precision)
    return identity_like(source, parent, word_bound)


def identity_like(source: PlecticGroup, target: PlecticGroup, word_bound: int = 8) -> MumfordMorphism:
    return validate_morphism([PGL2Elem.identity()] * source.places, source, target, word_bound)


def load_morphism(path: str | Path, source: PlecticGroup) -> MumfordMorphism:
    """Morphism JSON: ``{"g": [matrix per place], "target": path or inline
    group config, "word_bound": n}``; a relative target path is resolved
    against the morphism file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
        g = [PGL2Elem.from_rows(m) for m in data["g"]]
        target = data["target"]
        bound = int(data.get("word_bound", 8))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad morphism file {path}: {exc}") from exc
    if isinstance(target, str):
        target_group = PlecticGroup.load(path.parent / target)
    else:
        target_group = PlecticGroup.from_config(target)
    return validate_morphism(g, source, target_group, bound)


# cycles


_ESCAPE = 60


def _check_points(group: PlecticGroup, cycle: PlecticCycle) -> None:
    for k, f in enumerate(group.factors):
        if f.rank == 0:
            continue
        for t in cycle.terms:
            for z in t.points[k]:
                if len(f.address(z, _ESCAPE)) >= _ESCAPE:
                    raise PointCollision(f"{z.to_str()} lies in the limit set at place {k}")


def pushforward_cycles(f: MumfordMorphism, cycle: PlecticCycle) -> PlecticCycle:
    out = cycle.translate(f.g)
    _check_points(f.target, out)
    return out


def pullback_cycles(f: MumfordMorphism, cycle: PlecticCycle) -> PlecticCycle:
    """Sum of ``g^-1 r_k D'`` over the right coset representatives ``r_k``."""
    ginv = [x.inverse() for x in f.g]
    terms = []
    for reps in f.coset_tuples():
        terms += cycle.translate([(a @ r).integral() for a, r in zip(ginv, reps)]).terms
    out = PlecticCycle(cycle.prime, terms)
    _check_points(f.source, out)
    return out


# measures and Jacobians


def _plus_balls(group: PlecticGroup, idx: Sequence[int]):
    return [f.ball(i) for f, i in zip(group.factors, idx)]


def restriction_matrix(f: MumfordMorphism) -> list[list[int]]:
    """``R[a][b] = mu'_b(g B_a)``: coordinates of the restricted target
    measures in the source basis (rows: source basis, columns: target)."""
    src, tgt = invariant_measure_lattice(f.source), invariant_measure_lattice(f.target)
    p = f.source.prime
    rows = []
    for a in src.basis:
        balls = [act_on_ball(g, b, p) for g, b in zip(f.g, _plus_balls(f.source, a))]
        rows.append(list(tgt.measure_of_ball(balls)))
    return rows


def transfer_matrix(f: MumfordMorphism) -> list[list[int]]:
    """``T[c][a] = sum_k mu_a(g^-1 r_k B'_c)`` (rows: target basis)."""
    src, tgt = invariant_measure_lattice(f.source), invariant_measure_lattice(f.target)
    p = f.source.prime
    ginv = [x.inverse() for x in f.g]
    cosets = f.coset_tuples()
    rows = []
    for c in tgt.basis:
        total = [0] * src.rank
        for reps in cosets:
            balls = [act_on_ball((a @ r).integral(), b, p) for a, r, b in zip(ginv, reps, _plus_balls(f.target, c))]
            total = [x + y for x, y in zip(total, src.measure_of_ball(balls))]
        rows.append(total)
    return rows


def _transpose(m: list[list[int]], ncols: int) -> list[list[int]]:
    return [[row[j] for row in m] for j in range(ncols)]


def _matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


@dataclass
class HeckeMap:
    """An integer matrix on the measure bases (rows: target coordinates) with
    its per-place factors, acting on Jacobian slot vectors."""

    kind: str
    matrix: list[list[int]]
    place_matrices: list[list[list[int]]]
    source: PlecticGroup
    target: PlecticGroup

    def apply_slots(self, slots: Sequence[Sequence]) -> list[list]:
        p = self.source.prime
        out = []
        for m, slot in zip(self.place_matrices, slots):
            new = []
            for row in m:
                x = 1
                for e, a in zip(row, slot):
                    if e:
                        x = _mul(p, x, _pow(p, a, e))
                new.append(x)
            out.append(new)
        return out

    def apply(self, x: JacobianElement, lattice: PeriodLattice) -> JacobianElement:
        if lattice.group is not self.target and lattice.group.ranks != self.target.ranks:
            raise RankMismatch("lattice does not belong to the target group")
        return reduce_slots(lattice, self.apply_slots(x.slots))

    def to_json(self) -> dict:
        return {"kind": self.kind, "matrix": self.matrix, "place_matrices": self.place_matrices}


def _single_place(f: MumfordMorphism, k: int) -> MumfordMorphism:
    pm = f.places[k]
    src = PlecticGroup(f.source.prime, [pm.source], f.source.precision)
    tgt = PlecticGroup(f.target.prime, [pm.target], f.target.precision)
    return MumfordMorphism([pm.g], src, tgt, [pm], f.word_bound)


def _check_ranks(f: MumfordMorphism, r: list[list[int]]) -> None:
    src, tgt = invariant_measure_lattice(f.source), invariant_measure_lattice(f.target)
    if len(r) != src.rank or any(len(row) != tgt.rank for row in r):
        raise RankMismatch(f"restriction matrix shape does not match ranks {src.rank}, {tgt.rank}")


def pushforward_jacobian(f: MumfordMorphism) -> HeckeMap:
    """Transpose of measure restriction."""
    r = restriction_matrix(f)
    _check_ranks(f, r)
    ntgt = invariant_measure_lattice(f.target).rank
    places = []
    for k in range(len(f.places)):
        single = _single_place(f, k)
        rk = restriction_matrix(single) if f.places[k].source.rank else []
        places.append(_transpose(rk, f.places[k].target.rank) if rk else [])
    return HeckeMap("pushforward", _transpose(r, ntgt) if r else [], places, f.source, f.target)


def pullback_jacobian(f: MumfordMorphism) -> HeckeMap:
    """Transpose of the measure transfer."""
    t = transfer_matrix(f)
    nsrc = invariant_measure_lattice(f.source).rank
    places = []
    for k in range(len(f.places)):
        single = _single_place(f, k)
        tk = transfer_matrix(single) if f.places[k].target.rank else []
        places.append(_transpose(tk, f.places[k].source.rank) if tk else [])
    return HeckeMap("pullback", _transpose(t, nsrc) if t else [], places, f.target, f.source)


def index_check(f: MumfordMorphism) -> tuple[bool, list[list[int]]]:
    """Pull back then push forward on the target measure basis; returns whether
    it is the index times the identity, and the matrix."""
    push, pull = pushforward_jacobian(f), pullback_jacobian(f)
    n = len(push.matrix)
    if n == 0:
        return True, []
    m = _matmul(push.matrix, pull.matrix)
    want = [[f.index * (i == j) for j in range(n)] for i in range(n)]
    return m == want, m


def lattice_inclusion_check(f: MumfordMorphism, source: PeriodLattice, target: PeriodLattice, digits: int | None = None) -> bool:
    """Every source period vector pushes forward to a target lattice vector."""
    digits = current_policy().output if digits is None else digits
    push = pushforward_jacobian(f)
    p = f.source.prime
    for k, (fp, tp) in enumerate(zip(source.factors, target.factors)):
        if fp is None:
            continue
        m = push.place_matrices[k]
        for j in range(fp.rank):
            col = [fp.matrix[i][j] for i in range(fp.rank)]
            pushed = HeckeMap("pushforward", [], [m], f.source, f.target).apply_slots([col])[0]
            reduced = reduce_slot(tp, pushed, p)
            if not JacobianElement(target, [reduced]).is_identity(digits):
                return False
    return True


@dataclass
class FunctorialityReport:
    index: int
    index_ok: bool
    index_matrix: list[list[int]]
    push_digits: list[int]
    pull_digits: list[int]
    digits: int

    @property
    def ok(self) -> bool:
        return self.index_ok and all(d >= self.digits for d in self.push_digits + self.pull_digits)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "index_ok": self.index_ok,
            "pull_then_push": self.index_matrix,
            "pushforward_square_digits": self.push_digits,
            "pullback_square_digits": self.pull_digits,
            "required_digits": self.digits,
            "ok": self.ok,
        }


def functoriality_check(
    f: MumfordMorphism,
    source_cycles: Sequence[PlecticCycle],
    target_cycles: Sequence[PlecticCycle],
    source_lattice: PeriodLattice | None = None,
    target_lattice: PeriodLattice | None = None,
    digits: int | None = None,
    depth: int | None = None,
) -> FunctorialityReport:
    """Compare Abel-Jacobi images along both sides of the two squares."""
    digits = current_policy().output if digits is None else digits
    src_l = source_lattice or period_lattice(f.source, depth)
    tgt_l = target_lattice or period_lattice(f.target, depth)
    push, pull = pushforward_jacobian(f), pullback_jacobian(f)
    ok, m = index_check(f)
    push_digits = []
    for d in source_cycles:
        direct = abel_jacobi(f.target, pushforward_cycles(f, d), tgt_l, depth)
        mapped = push.apply(abel_jacobi(f.source, d, src_l, depth), tgt_l)
        push_digits.append(direct.transfer_agreement(mapped))
    pull_digits = []
    for d in target_cycles:
        direct = abel_jacobi(f.source, pullback_cycles(f, d), src_l, depth)
        mapped = pull.apply(abel_jacobi(f.target, d, tgt_l, depth), src_l)
        pull_digits.append(direct.transfer_agreement(mapped))
    return FunctorialityReport(f.index, ok, m, push_digits, pull_digits, digits)


# correspondences


@dataclass(frozen=True)
class PSet:
    """A finite set with a right action of the free group of ``parent``; one
    permutation (as a dict) per positive letter."""

    parent: SchottkyFactor
    points: tuple
    action: tuple  # tuple of dicts, one per generator

    def act(self, x: Hashable, s: int) -> Hashable:
        if s > 0:
            return self.action[s - 1][x]
        return self._inverse[-s - 1][x]

    @property
    def _inverse(self) -> tuple:
        return tuple({v: k for k, v in perm.items()} for perm in self.action)

    def act_word(self, x: Hashable, w: FreeWord) -> Hashable:
        for s in w.letters:
            x = self.act(x, s)
        return x

    def orbits(self) -> list[list]:
        seen, out = set(), []
        for x in self.points:
            if x in seen:
                continue
            orbit, queue = [x], [x]
            seen.add(x)
            while queue:
                y = queue.pop(0)
                for s in letter_order(self.parent.rank):
                    z = self.act(y, s)
                    if z not in seen:
                        seen.add(z)
                        orbit.append(z)
                        queue.append(z)
            out.append(orbit)
        return out

    def stabilizer(self, x: Hashable) -> FiniteIndexSubgroup:
        orbit = next(o for o in self.orbits() if x in o)
        label = {x: 0}
        for y in orbit:
            label.setdefault(y, len(label))
        action = [[0] * len(orbit) for _ in self.action]
        for y in orbit:
            for i, perm in enumerate(self.action):
                action[i][label[y]] = label[perm[y]]
        return schreier_subgroup(self.parent, action)


def point_pset(parent: SchottkyFactor) -> PSet:
    return PSet(parent, (0,), tuple({0: 0} for _ in range(parent.rank)))


def pset_of(sub: FiniteIndexSubgroup) -> PSet:
    return PSet(sub.parent, tuple(range(sub.index)), tuple({k: v for k, v in enumerate(perm)} for perm in sub.action))


def _product(a: PSet, b: PSet, points: Sequence[tuple]) -> PSet:
    pts = tuple(points)
    action = tuple({(x, y): (pa[x], pb[y]) for x, y in pts} for pa, pb in zip(a.action, b.action))
    return PSet(a.parent, pts, action)


def _equivariant(src: PSet, tgt: PSet, m: dict) -> bool:
    return all(m[src.action[i][x]] == tgt.action[i][m[x]] for x in src.points for i in range(len(src.action)))


@dataclass
class Component:
    representative: Hashable
    word: FreeWord
    subgroup: FiniteIndexSubgroup

    @property
    def index(self) -> int:
        return self.subgroup.index


@dataclass
class HeckeCorrespondence:
    """``(middle, p, q)`` from ``source`` to ``target`` with ``p`` onto."""

    source: PSet
    target: PSet
    middle: PSet
    p: dict
    q: dict
    components: list[Component] = field(default_factory=list)

    def __post_init__(self):
        if self.source.parent is not self.target.parent or self.middle.parent is not self.source.parent:
            raise ConfigError("all sets of a correspondence must share the parent factor")
        if not (_equivariant(self.middle, self.source, self.p) and _equivariant(self.middle, self.target, self.q)):
            raise ConfigError("p and q must be equivariant")
        if set(self.p.values()) != set(self.source.points):
            raise ConfigError("p is not surjective")

    def to_json(self) -> dict:
        return {
            "components": [
                {"representative": str(c.representative), "word": str(c.word), "index": c.index,
                 "generators": [str(w) for w in c.subgroup.schreier_words]}
                for c in self.components
            ]
        }


def _label_components(c: HeckeCorrespondence, word_bound: int) -> HeckeCorrespondence:
    """One component per orbit of the middle set, labelled by its first point."""
    c.components = [Component(o[0], FreeWord(), c.middle.stabilizer(o[0])) for o in c.middle.orbits()]
    return c


def identity_correspondence(s: PSet) -> HeckeCorrespondence:
    ident = {x: x for x in s.points}
    return _label_components(HeckeCorrespondence(s, s, s, dict(ident), dict(ident)), 1)


def morphism_correspondence(src: PSet, tgt: PSet, m: dict) -> HeckeCorrespondence:
    """``(src, id, m)``; for a subgroup inclusion ``m`` sends cosets to cosets."""
    ident = {x: x for x in src.points}
    return _label_components(HeckeCorrespondence(src, tgt, src, ident, dict(m)), 1)


def transpose_correspondence(c: HeckeCorrespondence) -> HeckeCorrespondence:
    return _label_components(HeckeCorrespondence(c.target, c.source, c.middle, c.q, c.p), 1)


def coset_map(sub: FiniteIndexSubgroup, larger: FiniteIndexSubgroup) -> dict:
    """``Hw -> H'w`` for ``H`` inside ``H'`` (both Schreier subgroups of one parent)."""
    out = {}
    for k, w in enumerate(sub.transversal):
        out[k] = larger.coset(w)
    for i, perm in enumerate(sub.action, 1):
        for k, j in enumerate(perm):
            if larger.act(out[k], i) != out[j]:
                raise NotASubgroup("the first subgroup is not contained in the second")
    return out


def double_coset_correspondence(
    sub1: FiniteIndexSubgroup, sub2: FiniteIndexSubgroup, g: FreeWord, word_bound: int = 8
) -> HeckeCorrespondence:
    """``X_{G1 cap g^-1 G2 g}`` with ``[x] -> [x]`` and ``[x] -> [gx]``: the orbit
    of ``(G1, G2 g)`` in the product of the coset spaces."""
    s1, s2 = pset_of(sub1), pset_of(sub2)
    start = (0, s2.act_word(0, g))
    pts, queue, seen = [start], [start], {start}
    while queue:
        x, y = queue.pop(0)
        for s in letter_order(sub1.parent.rank):
            z = (s1.act(x, s), s2.act(y, s))
            if z not in seen:
                seen.add(z)
                pts.append(z)
                queue.append(z)
    middle = _product(s1, s2, pts)
    c = HeckeCorrespondence(s1, s2, middle, {z: z[0] for z in pts}, {z: z[1] for z in pts})
    return _label_components(c, word_bound)


def compose_correspondences(c2: HeckeCorrespondence, c1: HeckeCorrespondence, word_bound: int = 8) -> HeckeCorrespondence:
    """``c2 o c1``: the fibre product of the middles over the shared set.

    For each orbit of the first middle with first point ``a0``, and ``c0`` the
    first point of the second middle over ``q1(a0)``, every component through
    ``a0`` contains ``(a0, c0 w)`` for a word ``w`` fixing ``q1(a0)``; these
    words are the double coset labels, searched up to ``word_bound`` letters.
    """
    if c1.target.points != c2.source.points or c1.target.action != c2.source.action:
        raise ConfigError("correspondences do not compose: target and source differ")
    pts = [(a, c) for a in c1.middle.points for c in c2.middle.points if c1.q[a] == c2.p[c]]
    middle = _product(c1.middle, c2.middle, pts)
    p = {(a, c): c1.p[a] for a, c in pts}
    q = {(a, c): c2.q[c] for a, c in pts}
    out = HeckeCorrespondence(c1.source, c2.target, middle, p, q)
    orbit_of = {}
    orbits = middle.orbits()
    for n, o in enumerate(orbits):
        for x in o:
            orbit_of[x] = n
    labels: dict[int, tuple] = {}
    words = c1.source.parent.words(word_bound)
    for o1 in c1.middle.orbits():
        a0 = o1[0]
        c0 = next(c for c in c2.middle.points if c2.p[c] == c1.q[a0])
        for w in words:
            c = c2.middle.act_word(c0, w)
            if c2.p[c] == c1.q[a0]:
                labels.setdefault(orbit_of[(a0, c)], ((a0, c), w))
    if len(labels) != len(orbits):
        raise BoundExhausted(f"words of length <= {word_bound} label {len(labels)} of {len(orbits)} components")
    out.components = [Component(rep, w, middle.stabilizer(rep)) for _, (rep, w) in sorted(labels.items())]
    return out


def _orbit_map(a: HeckeCorrespondence, b: HeckeCorrespondence, x, y) -> dict | None:
    """The equivariant map from the orbit of ``x`` sending ``x`` to ``y``, if it
    is well defined and commutes with both projections."""
    m, queue = {x: y}, [x]
    letters = letter_order(a.middle.parent.rank)
    while queue:
        u = queue.pop()
        if a.p[u] != b.p[m[u]] or a.q[u] != b.q[m[u]]:
            return None
        for s in letters:
            v, w = a.middle.act(u, s), b.middle.act(m[u], s)
            if v in m:
                if m[v] != w:
                    return None
            else:
                m[v] = w
                queue.append(v)
    return m if len(set(m.values())) == len(m) else None


def equivalent(a: HeckeCorrespondence, b: HeckeCorrespondence) -> bool:
    """Whether the middle sets are isomorphic over ``source x target``.

    Orbits are matched greedily: two orbits isomorphic to a third are
    isomorphic to each other, so the choice never matters."""
    if a.source.points != b.source.points or a.target.points != b.target.points:
        return False
    free = [set(o) for o in b.middle.orbits()]
    for o in a.middle.orbits():
        x = o[0]
        for k, cand in enumerate(free):
            if len(cand) == len(o) and any(_orbit_map(a, b, x, y) for y in cand):
                del free[k]
                break
        else:
            return False
    return not free


def brute_force_double_cosets(sub1: FiniteIndexSubgroup, sub2: FiniteIndexSubgroup, word_len: int) -> int:
    """``|G2 \\ G / G1|`` from words: ``G2 w`` and ``G2 w'`` lie in one double
    coset when ``w' = w h`` for some ``h`` in ``G1``, tested on the cosets of
    words up to ``word_len`` letters against Schreier words of ``G1``."""
    parent = sub1.parent
    seen = {sub2.coset(w) for w in parent.words(word_len)}
    if len(seen) != sub2.index:
        raise BoundExhausted(f"words of length {word_len} do not reach every coset")
    gens = sub1.schreier_words + [w.inverse() for w in sub1.schreier_words]
    classes = 0
    left = set(seen)
    while left:
        k = min(left)
        stack = [k]
        left.discard(k)
        while stack:
            c = stack.pop()
            for h in gens:
                d = sub2.coset(h, start=c)
                if d in left:
                    left.discard(d)
                    stack.append(d)
        classes += 1
    return classes
