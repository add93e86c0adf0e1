"""Plectic groups, constructed as products of certified Schottky factors.

A factor of rank g is free on generators ``gamma_1..gamma_g``.  Letters are
signed 1-based integers: ``+i`` is ``gamma_i`` and ``-i`` its inverse.  Its
ping-pong certificate assigns to every letter ``s`` a directed tree edge
``e_s = (u_s -> v_s)``; the boundary ball beyond ``e_s`` is ``B_s`` and
``gamma_s`` carries the edge ``e_{-s}`` reversed onto ``e_s``.  The convex
hull of the sources ``u_s`` is a fundamental domain for the action on the
tree of limit points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import (
    CertificationError,
    ConfigError,
    NotFound,
    NotTransitive,
    PlecticError,
    UnsupportedGroupShape,
)
from .padic import current_policy
from .projective import (
    HYPERBOLIC,
    PGL2Elem,
    ProjPoint,
    classify_element,
    fixed_points,
    moebius_apply,
)
from .tree import (
    BoundaryBall,
    DirectedEdge,
    TreeVertex,
    act_on_ball,
    act_on_edge,
    act_on_vertex,
    ball_contains,
    ball_of_edge,
    balls_disjoint,
    edge_of_ball,
    is_in_vertex_stabilizer,
    point_in_ball,
    tree_distance,
    vertex_path,
)

EMPTY = "empty"
TWO_POINTS = "two-points"
PERFECT = "perfect"


# free words


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for s in letters:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


@dataclass(frozen=True, order=True)
class FreeWord:
    letters: tuple[int, ...] = ()

    @classmethod
    def of(cls, letters: Iterable[int]) -> FreeWord:
        return cls(_reduce(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord.of(self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(tuple(-s for s in reversed(self.letters)))

    def first(self) -> int | None:
        return self.letters[0] if self.letters else None

    def last(self) -> int | None:
        return self.letters[-1] if self.letters else None

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"g{s}" if s > 0 else f"g{-s}^-1" for s in self.letters)


def letter_order(rank: int) -> list[int]:
    out = []
    for i in range(1, rank + 1):
        out += [i, -i]
    return out


def word_count(rank: int, max_len: int) -> int:
    if rank == 0:
        return 1
    return 1 + sum(2 * rank * (2 * rank - 1) ** (k - 1) for k in range(1, max_len + 1))


# certificates


@dataclass(frozen=True)
class Certificate:
    """One directed edge per letter; see the module docstring."""

    edges: dict[int, DirectedEdge]

    def ball(self, p: int, s: int) -> BoundaryBall:
        return ball_of_edge(p, self.edges[s])

    def balls(self, p: int) -> list[tuple[BoundaryBall, BoundaryBall]]:
        g = len(self.edges) // 2
        return [(self.ball(p, i), self.ball(p, -i)) for i in range(1, g + 1)]

    def transported(self, h: PGL2Elem, p: int) -> Certificate:
        return Certificate({s: act_on_edge(h, e, p) for s, e in self.edges.items()})


def good_position_check(
    prime: int,
    generators: Sequence[PGL2Elem],
    balls: Sequence[tuple[BoundaryBall, BoundaryBall]],
) -> Certificate:
    """Verify a ping-pong system and return it with each plus-ball tightened to
    the exact image ``gamma_i(P^1 - B_i^-)``.  Raises ``CertificationError``
    whose ``witness`` names the violated condition."""
    p = prime
    if len(balls) != len(generators):
        raise _fail("one (plus, minus) ball pair is needed per generator")
    for i, g in enumerate(generators, 1):
        if classify_element(g, p) != HYPERBOLIC:
            raise _fail(f"generator {i} is not hyperbolic")
    named = []
    for i, (plus, minus) in enumerate(balls, 1):
        named += [(f"B{i}+", plus), (f"B{i}-", minus)]
    for x in range(len(named)):
        for y in range(x + 1, len(named)):
            if not balls_disjoint(p, named[x][1], named[y][1]):
                raise _fail(f"{named[x][0]} meets {named[y][0]}")
    edges: dict[int, DirectedEdge] = {}
    for i, (g, (plus, minus)) in enumerate(zip(generators, balls), 1):
        image = act_on_ball(g, minus.opposite(), p)
        if not ball_contains(p, plus, image):
            raise _fail(f"g{i}(P1 - B{i}-) = {image} is not inside B{i}+ = {plus}")
        edges[i] = edge_of_ball(p, image)
        edges[-i] = edge_of_ball(p, minus)
    _check_core(p, edges)
    return Certificate(edges)


def _fail(witness: str) -> CertificationError:
    err = CertificationError(witness)
    err.witness = witness
    return err


def _in_half_tree(p: int, x: TreeVertex, e: DirectedEdge) -> bool:
    return tree_distance(p, x, e.target) < tree_distance(p, x, e.source)


def _check_core(p: int, edges: dict[int, DirectedEdge]) -> None:
    for s, es in edges.items():
        for t, et in edges.items():
            if s != t and _in_half_tree(p, es.source, et):
                raise _fail(f"edge of letter {s} lies beyond the edge of letter {t}: empty fundamental domain")


def cyclic_certificate(prime: int, g: PGL2Elem) -> Certificate:
    """Certificate on the axis: ``e_-`` leaves the axis vertex closest to the
    standard vertex towards the repelling end; ``e_+`` is its image."""
    from .tree import geodesic_between_ends

    att, rep, _ = fixed_points(g, prime)
    _, x0, x1 = geodesic_between_ends(prime, att, rep, 1)
    minus = DirectedEdge(x0, x1)
    plus = act_on_edge(g, minus.reversed(), prime)
    return good_position_check(prime, [g], [(ball_of_edge(prime, plus), ball_of_edge(prime, minus))])


# factors


class TrivialFactor:
    kind = "trivial"
    rank = 0

    def __init__(self, prime: int):
        self.prime = prime

    def limit_set_type(self) -> str:
        return EMPTY

    def to_config(self) -> dict:
        return {"kind": "trivial"}

    def conjugate(self, h: PGL2Elem) -> TrivialFactor:
        return self


class SchottkyFactor:
    kind = "schottky"

    def __init__(self, prime: int, generators: Sequence[PGL2Elem], certificate: Certificate):
        self.prime = prime
        self.generators = [g.integral() for g in generators]
        self.rank = len(self.generators)
        if self.rank == 0:
            raise ConfigError("a Schottky factor needs at least one generator")
        self.certificate = good_position_check(prime, self.generators, certificate.balls(prime))
        if self.certificate.edges != certificate.edges:
            raise CertificationError("certificate is not tight: plus-balls must equal the exact images")
        self._mat = {}
        for i, g in enumerate(self.generators, 1):
            self._mat[i] = g
            self._mat[-i] = g.inverse().integral()

    @classmethod
    def from_balls(cls, prime: int, generators: Sequence[PGL2Elem], balls) -> SchottkyFactor:
        gens = [g.integral() for g in generators]
        return cls(prime, gens, good_position_check(prime, gens, balls))

    # letters and words

    @property
    def letters(self) -> list[int]:
        return letter_order(self.rank)

    def matrix(self, s: int) -> PGL2Elem:
        return self._mat[s]

    def evaluate(self, word: FreeWord) -> PGL2Elem:
        out = PGL2Elem.identity()
        for s in word.letters:
            out = out @ self._mat[s]
        return out.integral()

    def words(self, max_len: int) -> list[FreeWord]:
        """Reduced words ordered by length, then lexicographically in letter order."""
        out = [FreeWord()]
        level = [FreeWord()]
        for _ in range(max_len):
            nxt = []
            for w in level:
                for s in self.letters:
                    if w.letters and w.letters[-1] == -s:
                        continue
                    nxt.append(FreeWord(w.letters + (s,)))
            out += nxt
            level = nxt
        return out

    def words_of_length(self, n: int) -> list[FreeWord]:
        """Words of length exactly n, built by prepending letters."""
        level = [FreeWord()]
        for _ in range(n):
            level = [FreeWord((s,) + u.letters) for s in self.letters for u in level if not u.letters or u.letters[0] != -s]
        return level

    # certificate geometry

    def edge(self, s: int) -> DirectedEdge:
        return self.certificate.edges[s]

    def ball(self, s: int) -> BoundaryBall:
        return self.certificate.ball(self.prime, s)

    @cached_property
    def core_vertices(self) -> list[TreeVertex]:
        sources = [self.edge(s).source for s in self.letters]
        hull = set()
        for u in sources:
            hull.update(vertex_path(self.prime, sources[0], u))
        return sorted(hull)

    @cached_property
    def core_edges(self) -> list[DirectedEdge]:
        """Edges of the fundamental tree, oriented from the smaller vertex."""
        vs = set(self.core_vertices)
        out = set()
        for v in vs:
            for w in vs:
                if v < w and tree_distance(self.prime, v, w) == 1:
                    out.add(DirectedEdge(v, w))
        return sorted(out)

    @property
    def base_vertex(self) -> TreeVertex:
        return self.core_vertices[0]

    @cached_property
    def attracting_points(self) -> dict[int, ProjPoint]:
        return {s: fixed_points(self._mat[s], self.prime)[0] for s in self.letters}

    def limit_set_type(self) -> str:
        return TWO_POINTS if self.rank == 1 else PERFECT

    # descent

    def descend(self, x: TreeVertex, max_len: int | None = None) -> tuple[FreeWord, TreeVertex]:
        """Write ``x = w . x0`` with ``x0`` outside every half-tree beyond ``e_s``."""
        p = self.prime
        letters: list[int] = []
        while True:
            for s in self.letters:
                if _in_half_tree(p, x, self.edge(s)):
                    x = act_on_vertex(self._mat[-s], x, p)
                    letters.append(s)
                    break
            else:
                return FreeWord(tuple(letters)), x
            if max_len is not None and len(letters) > max_len:
                raise NotFound(f"descent exceeded {max_len} letters")

    def membership_word(self, g: PGL2Elem, max_len: int | None = None) -> FreeWord:
        base = self.base_vertex
        word, x0 = self.descend(act_on_vertex(g, base, self.prime), max_len)
        if x0 != base or (max_len is not None and len(word) > max_len):
            raise NotFound(f"{g} is not in the group")
        if self.evaluate(word) != g:
            raise NotFound(f"{g} is not in the group")
        return word

    def contains(self, g: PGL2Elem) -> bool:
        try:
            self.membership_word(g)
        except NotFound:
            return False
        return True

    def address(self, z: ProjPoint, limit: int) -> FreeWord:
        """Longest word w with z in the ball of w (the balls of w' s being
        w' B_s), computed by pulling z back one letter at a time."""
        letters: list[int] = []
        while len(letters) < limit:
            for s in self.letters:
                if point_in_ball(self.prime, z, self._balls[s]):
                    letters.append(s)
                    z = moebius_apply(self._mat[-s], z)
                    break
            else:
                break
        return FreeWord(tuple(letters))

    def classify_edge(self, e: DirectedEdge):
        """Return ``(w, key)`` with ``e = w . e0`` for a representative ``e0``.

        ``key`` is ``("tree", edge, sign)`` for an edge of the fundamental tree
        (sign +1 when ``e0`` has the stored orientation) or ``("loop", i, sign)``
        for the loop edge of generator i.  Returns ``None`` when ``e`` is not an
        edge of the tree of limit points.
        """
        p = self.prime
        word, x0 = self.descend(e.source)
        if x0 not in self._core_set:
            return None
        y = act_on_vertex(self.evaluate(word.inverse()), e.target, p)
        if DirectedEdge(x0, y) in self._core_edge_set:
            return word, ("tree", DirectedEdge(x0, y), 1)
        if DirectedEdge(y, x0) in self._core_edge_set:
            return word, ("tree", DirectedEdge(y, x0), -1)
        for s in self.letters:
            es = self.edge(s)
            if es.source == x0 and es.target == y:
                if s > 0:
                    return word, ("loop", s, 1)
                return word * FreeWord((s,)), ("loop", -s, -1)
        return None

    @cached_property
    def _balls(self) -> dict[int, BoundaryBall]:
        return {s: self.ball(s) for s in self.letters}

    @cached_property
    def _core_set(self) -> frozenset:
        return frozenset(self.core_vertices)

    @cached_property
    def _core_edge_set(self) -> frozenset:
        return frozenset(self.core_edges)

    # balls

    def word_edges(self, n: int) -> list[tuple[FreeWord, DirectedEdge]]:
        """Edges ``w' . e_s`` for the words ``w = w' s`` of length n (n >= 1);
        their balls partition the limit set."""
        p = self.prime
        level = [(FreeWord((s,)), self.edge(s)) for s in self.letters]
        for _ in range(n - 1):
            level = [
                (FreeWord((s,) + w.letters), act_on_edge(self._mat[s], e, p))
                for s in self.letters
                for w, e in level
                if w.letters[0] != -s
            ]
        return level

    def word_balls(self, n: int) -> list[tuple[FreeWord, BoundaryBall]]:
        return [(w, ball_of_edge(self.prime, e)) for w, e in self.word_edges(n)]

    # transformations

    def conjugate(self, h: PGL2Elem) -> SchottkyFactor:
        hi = h.inverse()
        gens = [(h @ g @ hi).integral() for g in self.generators]
        return type(self)(self.prime, gens, self.certificate.transported(h, self.prime))

    def to_config(self) -> dict:
        return {
            "kind": "schottky",
            "generators": [g.to_json() for g in self.generators],
            "balls": [{"plus": plus.to_json(), "minus": minus.to_json()} for plus, minus in self.certificate.balls(self.prime)],
        }


class CyclicFactor(SchottkyFactor):
    kind = "cyclic"

    @classmethod
    def from_generator(cls, prime: int, g: PGL2Elem) -> CyclicFactor:
        g = g.integral()
        if classify_element(g, prime) != HYPERBOLIC:
            raise _fail(f"generator {g} is not hyperbolic")
        return cls(prime, [g], cyclic_certificate(prime, g))

    @cached_property
    def fixed_point_data(self):
        return fixed_points(self.generators[0], self.prime)

    def to_config(self) -> dict:
        return {"kind": "cyclic", "generator": self.generators[0].to_json()}


def classify_limit_set(factor) -> str:
    return factor.limit_set_type()


def enumerate_words(factor: SchottkyFactor, max_len: int) -> list[tuple[FreeWord, PGL2Elem]]:
    return [(w, factor.evaluate(w)) for w in factor.words(max_len)]


def membership_word(factor: SchottkyFactor, g: PGL2Elem, max_len: int | None = None) -> FreeWord:
    return factor.membership_word(g, max_len)


# plectic groups


class PlecticGroup:
    """A product of factors, one per place; every place uses the same prime."""

    def __init__(self, prime: int, factors: Sequence, precision: int | None = None):
        self.prime = prime
        self.factors = list(factors)
        self.precision = precision if precision is not None else current_policy().working
        for f in self.factors:
            if f.prime != prime:
                raise ConfigError("all factors must use the group prime")

    @property
    def places(self) -> int:
        return len(self.factors)

    @property
    def support(self) -> list[int]:
        return [i for i, f in enumerate(self.factors) if f.rank > 0]

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(f.rank for f in self.factors)

    @classmethod
    def from_generator_tuples(cls, prime: int, tuples: Sequence[Sequence[PGL2Elem]], precision: int | None = None) -> PlecticGroup:
        """Product-only constructor: every generator must be non-trivial at
        exactly one place; diagonal embeddings are refused."""
        if not tuples:
            raise UnsupportedGroupShape("no generators")
        r = len(tuples[0])
        per_place: list[list[PGL2Elem]] = [[] for _ in range(r)]
        for t in tuples:
            if len(t) != r:
                raise UnsupportedGroupShape("generator tuples of different lengths")
            moving = [i for i, g in enumerate(t) if not g.is_identity()]
            if len(moving) != 1:
                raise UnsupportedGroupShape(
                    f"generator is non-trivial at places {moving}; only products of factors can be constructed"
                )
            per_place[moving[0]].append(t[moving[0]])
        factors = []
        for gens in per_place:
            if not gens:
                factors.append(TrivialFactor(prime))
            elif len(gens) == 1:
                factors.append(CyclicFactor.from_generator(prime, gens[0]))
            else:
                raise UnsupportedGroupShape("Schottky factors need explicit ping-pong balls")
        return cls(prime, factors, precision)

    @classmethod
    def from_config(cls, cfg: dict) -> PlecticGroup:
        try:
            p = int(cfg["prime"])
            precision = int(cfg.get("precision", current_policy().working))
            factors = [factor_from_config(p, f) for f in cfg["factors"]]
        except PlecticError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad group config: {exc}") from exc
        return cls(p, factors, precision)

    @classmethod
    def load(cls, path: str | Path) -> PlecticGroup:
        try:
            cfg = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
        return cls.from_config(cfg)

    def to_config(self) -> dict:
        return {"prime": self.prime, "precision": self.precision, "factors": [f.to_config() for f in self.factors]}

    def __repr__(self) -> str:
        return f"PlecticGroup(p={self.prime}, ranks={self.ranks})"


def factor_from_config(p: int, data: dict):
    kind = data.get("kind")
    if kind == "trivial":
        return TrivialFactor(p)
    if kind == "cyclic":
        return CyclicFactor.from_generator(p, PGL2Elem.from_rows(data["generator"]))
    if kind == "schottky":
        gens = [PGL2Elem.from_rows(g) for g in data["generators"]]
        balls = [
            (BoundaryBall.from_json(p, b["plus"]), BoundaryBall.from_json(p, b["minus"]))
            for b in data["balls"]
        ]
        return SchottkyFactor.from_balls(p, gens, balls)
    if kind == "subgroup":
        parent = factor_from_config(p, data["parent"])
        return schreier_subgroup(parent, data["coset_action"]).factor
    raise ConfigError(f"unknown factor kind {kind!r}")


def limit_set_approx(group: PlecticGroup, place: int, depth: int) -> tuple[list[ProjPoint], list[BoundaryBall]]:
    """Fixed points of reduced words up to ``depth`` and the depth-``depth`` ball cover."""
    f = group.factors[place]
    if f.rank == 0:
        raise ValueError("trivial factor has empty limit set")
    depth = max(depth, 1)
    cover = [b for _, b in f.word_balls(depth)]
    if f.rank == 1:
        att, rep, _ = fixed_points(f.generators[0], f.prime)
        return [att, rep], cover
    points: list[ProjPoint] = []
    for w in f.words(depth)[1:]:
        for z in fixed_points(f.evaluate(w), f.prime)[:2]:
            if not any(z == q for q in points):
                points.append(z)
    return points, cover


def conjugate_group(group: PlecticGroup, h: Sequence[PGL2Elem]) -> PlecticGroup:
    if len(h) != group.places:
        raise ValueError("one conjugator per place")
    return PlecticGroup(group.prime, [f.conjugate(x) for f, x in zip(group.factors, h)], group.precision)


def partial_intersection(group: PlecticGroup, places: Iterable[int], stabilized: dict[int, TreeVertex]) -> PlecticGroup:
    """Subgroup of elements lying in the given vertex stabilizers away from
    ``places``, projected to ``places``.  Free factors act without fixed
    vertices, so the complementary components meet the stabilizers trivially."""
    if not isinstance(group, PlecticGroup):
        raise UnsupportedGroupShape("partial intersections need a product group")
    keep = sorted(set(places))
    rest = [i for i in range(group.places) if i not in keep]
    if sorted(stabilized) != rest:
        raise ValueError("a stabilized vertex is needed at every place outside the subset")
    for i in rest:
        f = group.factors[i]
        for g in getattr(f, "generators", []):
            if is_in_vertex_stabilizer(g, stabilized[i], group.prime):
                raise UnsupportedGroupShape("factor element fixes a vertex; factor is not free")
    return PlecticGroup(group.prime, [group.factors[i] for i in keep], group.precision)


# finite-index subgroups


@dataclass
class FiniteIndexSubgroup:
    """Stabilizer of coset 0 under a transitive right action of a factor's free group."""

    parent: SchottkyFactor
    action: tuple[tuple[int, ...], ...]
    transversal: list[FreeWord]
    tree_pairs: frozenset
    generator_pairs: list[tuple[int, int]]
    schreier_words: list[FreeWord]
    factor: SchottkyFactor = field(repr=False)

    @property
    def index(self) -> int:
        return len(self.transversal)

    @property
    def rank(self) -> int:
        return len(self.schreier_words)

    def act(self, k: int, s: int) -> int:
        if s > 0:
            return self.action[s - 1][k]
        return self._inverse_action[-s - 1][k]

    @cached_property
    def _inverse_action(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for perm in self.action:
            inv = [0] * len(perm)
            for k, j in enumerate(perm):
                inv[j] = k
            out.append(tuple(inv))
        return tuple(out)

    def coset(self, word: FreeWord, start: int = 0) -> int:
        k = start
        for s in word.letters:
            k = self.act(k, s)
        return k

    def contains(self, word: FreeWord) -> bool:
        return self.coset(word) == 0

    def rewrite(self, word: FreeWord) -> FreeWord:
        """Express a parent word lying in the subgroup in Schreier generators."""
        if not self.contains(word):
            raise NotFound(f"{word} is not in the subgroup")
        pos = {pair: j for j, pair in enumerate(self.generator_pairs, 1)}
        out, k = [], 0
        for s in word.letters:
            if s > 0:
                pair = (k, s)
                if pair in pos:
                    out.append(pos[pair])
            else:
                prev = self.act(k, s)
                pair = (prev, -s)
                if pair in pos:
                    out.append(-pos[pair])
            k = self.act(k, s)
        return FreeWord.of(out)

    def to_parent_word(self, word: FreeWord) -> FreeWord:
        out = FreeWord()
        for s in word.letters:
            w = self.schreier_words[abs(s) - 1]
            out = out * (w if s > 0 else w.inverse())
        return out


def schreier_subgroup(factor: SchottkyFactor, coset_action: Sequence[Sequence[int]]) -> FiniteIndexSubgroup:
    action = tuple(tuple(int(x) for x in perm) for perm in coset_action)
    if len(action) != factor.rank:
        raise ValueError("one permutation per generator is required")
    n = len(action[0]) if action else 1
    for perm in action:
        if sorted(perm) != list(range(n)):
            raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
    inverse = []
    for perm in action:
        inv = [0] * n
        for k, j in enumerate(perm):
            inv[j] = k
        inverse.append(inv)
    transversal: dict[int, FreeWord] = {0: FreeWord()}
    tree_pairs = set()
    queue = [0]
    while queue:
        k = queue.pop(0)
        for i in range(1, factor.rank + 1):
            fwd = action[i - 1][k]
            if fwd not in transversal:
                transversal[fwd] = transversal[k] * FreeWord((i,))
                tree_pairs.add((k, i))
                queue.append(fwd)
            back = inverse[i - 1][k]
            if back not in transversal:
                transversal[back] = transversal[k] * FreeWord((-i,))
                tree_pairs.add((back, i))
                queue.append(back)
    if len(transversal) != n:
        raise NotTransitive(f"coset action reaches {len(transversal)} of {n} cosets")
    pairs = [(k, i) for k in range(n) for i in range(1, factor.rank + 1) if (k, i) not in tree_pairs]
    words = [transversal[k] * FreeWord((i,)) * transversal[action[i - 1][k]].inverse() for k, i in pairs]
    p = factor.prime
    if n == 1:
        sub_factor = factor
    else:
        edges = {}
        for j, (k, i) in enumerate(pairs, 1):
            edges[j] = act_on_edge(factor.evaluate(transversal[k]), factor.edge(i), p)
            edges[-j] = act_on_edge(factor.evaluate(transversal[action[i - 1][k]]), factor.edge(-i), p)
        gens = [factor.evaluate(w) for w in words]
        cls = CyclicFactor if len(gens) == 1 else SchottkyFactor
        sub_factor = cls(p, gens, Certificate(edges))
    return FiniteIndexSubgroup(
        parent=factor,
        action=action,
        transversal=[transversal[k] for k in range(n)],
        tree_pairs=frozenset(tree_pairs),
        generator_pairs=pairs,
        schreier_words=words,
        factor=sub_factor,
    )


def subgroup_at_place(group: PlecticGroup, place: int, coset_action) -> tuple[PlecticGroup, FiniteIndexSubgroup]:
    sub = schreier_subgroup(group.factors[place], coset_action)
    factors = list(group.factors)
    factors[place] = sub.factor
    return PlecticGroup(group.prime, factors, group.precision), sub
