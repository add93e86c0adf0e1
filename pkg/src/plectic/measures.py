"""Trees of limit points, quotient graphs and the lattice of invariant measures.

An invariant measure on a factor is a harmonic cocycle on the finite quotient
graph: antisymmetric in the edge orientation, with vanishing sums over the
edges leaving each vertex.  The quotient graph of a certified factor has the
fundamental tree as spanning tree and one loop edge per generator; the basis
measure ``i`` is the cycle through loop ``i`` (the loop dual).  For several
places the measures are cocycles on products of edges, harmonic in each
coordinate separately.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BallTooDeep, DepthInsufficient, RankMismatch
from .groups import PlecticGroup, SchottkyFactor
from .linalg import nullspace, solve_square
from .projective import orientation_character
from .tree import (
    BoundaryBall,
    DirectedEdge,
    TreeVertex,
    act_on_edge,
    act_on_vertex,
    ball_of_edge,
    edge_of_ball,
    to_dot,
)


@dataclass
class LimitTree:
    factor: SchottkyFactor
    depth: int
    vertices: list[TreeVertex]
    edges: list[DirectedEdge]

    def ball(self, e: DirectedEdge) -> BoundaryBall:
        return ball_of_edge(self.factor.prime, e)

    def to_dot(self) -> str:
        return to_dot(self.factor.prime, self.vertices, self.edges, name="limit_tree")


def limit_tree(factor: SchottkyFactor, depth: int) -> LimitTree:
    """Translates of the fundamental tree and the certificate edges by all
    reduced words of length at most ``depth``."""
    p = factor.prime
    base_edges = list(factor.core_edges) + [factor.edge(s) for s in factor.letters]
    verts, edges = set(), set()
    for w in factor.words(depth):
        g = factor.evaluate(w)
        for v in factor.core_vertices:
            verts.add(act_on_vertex(g, v, p))
        for e in base_edges:
            ge = act_on_edge(g, e, p)
            edges.add(ge if ge.source < ge.target else ge.reversed())
    for e in edges:
        verts.update((e.source, e.target))
    return LimitTree(factor, depth, sorted(verts), sorted(edges))


# quotient graphs


@dataclass
class QuotientGraph:
    """Vertices are fundamental-tree vertices; edges are keyed ``("tree", e)``
    or ``("loop", i)`` with endpoints ``(source, target)``."""

    vertices: list[TreeVertex]
    edges: list[tuple]
    ends: dict[tuple, tuple[TreeVertex, TreeVertex]]
    tree_keys: list[tuple]
    loop_keys: list[tuple]

    @property
    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def incidence_rows(self) -> list[list[int]]:
        index = {v: k for k, v in enumerate(self.vertices)}
        rows = [[0] * len(self.edges) for _ in self.vertices]
        for j, key in enumerate(self.edges):
            s, t = self.ends[key]
            rows[index[s]][j] += 1
            rows[index[t]][j] -= 1
        return rows

    def loop_dual(self, i: int) -> dict[tuple, int]:
        """Cycle through loop i closed up along the spanning tree."""
        s, t = self.ends[("loop", i)]
        values = {key: 0 for key in self.edges}
        values[("loop", i)] = 1
        path = _tree_path(self, t, s)
        for a, b in zip(path, path[1:]):
            if ("tree", DirectedEdge(a, b)) in values:
                values[("tree", DirectedEdge(a, b))] += 1
            else:
                values[("tree", DirectedEdge(b, a))] -= 1
        return values

    def to_dot(self, name: str = "quotient") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v.label()}";')
        for key in self.edges:
            s, t = self.ends[key]
            label = "" if key[0] == "tree" else f' [label="g{key[1]}"]'
            lines.append(f'  "{s.label()}" -> "{t.label()}"{label};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _tree_path(graph: QuotientGraph, a: TreeVertex, b: TreeVertex) -> list[TreeVertex]:
    adj: dict[TreeVertex, list[TreeVertex]] = {v: [] for v in graph.vertices}
    for key in graph.tree_keys:
        s, t = graph.ends[key]
        adj[s].append(t)
        adj[t].append(s)
    prev = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                stack.append(y)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def factor_quotient(factor: SchottkyFactor, depth: int) -> QuotientGraph:
    """Quotient of the depth-truncated limit tree, found by matching every
    vertex and edge with its representative in the fundamental domain."""
    tree = limit_tree(factor, depth)
    found_vertices = set()
    for v in tree.vertices:
        _, x0 = factor.descend(v)
        found_vertices.add(x0)
    found_edges = {}
    for e in tree.edges:
        cls = factor.classify_edge(e)
        if cls is None:
            raise DepthInsufficient(f"edge {e} does not match the fundamental domain")
        _, key = cls
        if key[0] == "tree":
            found_edges[("tree", key[1])] = (key[1].source, key[1].target)
        else:
            i = key[1]
            found_edges[("loop", i)] = (factor.edge(i).source, factor.edge(-i).source)
    expected_edges = {("tree", e) for e in factor.core_edges} | {("loop", i) for i in range(1, factor.rank + 1)}
    if set(found_edges) != expected_edges or found_vertices != set(factor.core_vertices):
        raise DepthInsufficient(f"fundamental domain is not closed at depth {depth}")
    tree_keys = [("tree", e) for e in factor.core_edges]
    loop_keys = [("loop", i) for i in range(1, factor.rank + 1)]
    return QuotientGraph(
        vertices=list(factor.core_vertices),
        edges=tree_keys + loop_keys,
        ends=found_edges,
        tree_keys=tree_keys,
        loop_keys=loop_keys,
    )


@dataclass
class QuotientComplex:
    group: PlecticGroup
    graphs: list[QuotientGraph | None]

    @property
    def betti_numbers(self) -> list[int]:
        return [g.betti if g is not None else 0 for g in self.graphs]

    def cell_count(self) -> int:
        """Number of top-dimensional cells (products of edges over the support)."""
        return math.prod(len(g.edges) for g in self.graphs if g is not None)

    def to_dot(self) -> str:
        parts = []
        for k, g in enumerate(self.graphs):
            if g is not None:
                parts.append(g.to_dot(name=f"place{k}"))
        return "".join(parts)


def quotient_complex(group: PlecticGroup, depth: int = 1) -> QuotientComplex:
    graphs = []
    for f in group.factors:
        graphs.append(factor_quotient(f, depth) if f.rank > 0 else None)
    return QuotientComplex(group, graphs)


# measures


@dataclass
class PlecticMeasure:
    """Integer values on products of positively oriented quotient edges."""

    lattice: HLattice
    index: tuple[int, ...]
    values: dict[tuple, int]

    def value(self, keys: Sequence[tuple], signs: Sequence[int]) -> int:
        return self.values.get(tuple(keys), 0) * math.prod(signs)

    def of_ball(self, balls: Sequence[BoundaryBall | None]) -> int:
        return self.lattice.measure_of_ball(balls)[self.lattice.basis.index(self.index)]


@dataclass
class HLattice:
    group: PlecticGroup
    complex: QuotientComplex
    basis: list[tuple[int, ...]]
    measures: list[PlecticMeasure] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def edge_key(self, place: int, e: DirectedEdge):
        """Quotient edge key and orientation sign of a tree edge, or ``None``."""
        f = self.group.factors[place]
        cls = f.classify_edge(e)
        if cls is None:
            return None
        word, key = cls
        if key[0] == "tree":
            return ("tree", key[1]), key[2], len(word)
        return ("loop", key[1]), key[2], len(word)

    def measure_of_ball(self, balls: Sequence[BoundaryBall | None], max_depth: int | None = None) -> tuple[int, ...]:
        """Values of all basis measures on a product of balls; ``None`` is the
        whole line at that place."""
        if self.rank == 0:
            return ()
        keys, signs = [], []
        for place, bl in enumerate(balls):
            if bl is None:
                return (0,) * self.rank
            found = self.edge_key(place, edge_of_ball(self.group.prime, bl))
            if found is None:
                return (0,) * self.rank
            key, sign, length = found
            if max_depth is not None and length > max_depth:
                raise BallTooDeep(f"ball at place {place} lies {length} letters deep")
            keys.append(key)
            signs.append(sign)
        return tuple(m.value(keys, signs) for m in self.measures)

    def word_value(self, m: int, letters: Sequence[int]) -> int:
        """Value of basis measure ``m`` on the product of word balls ending
        in the given letters (one per place)."""
        keys = tuple(("loop", abs(s)) for s in letters)
        sign = math.prod(1 if s > 0 else -1 for s in letters)
        return self.measures[m].values.get(keys, 0) * sign

    def to_json(self) -> list[dict]:
        out = []
        for m in self.measures:
            recs = [
                {"edges": [_key_str(k) for k in keys], "value": v}
                for keys, v in sorted(m.values.items(), key=lambda kv: [_key_str(k) for k in kv[0]])
                if v
            ]
            out.append({"index": list(m.index), "values": recs})
        return out


def _key_str(key: tuple) -> str:
    if key[0] == "loop":
        return f"loop:g{key[1]}"
    e = key[1]
    return f"tree:{e.source.label()}->{e.target.label()}"


def invariant_measure_lattice(group: PlecticGroup, depth: int = 1) -> HLattice:
    """Solve the harmonicity system on the product complex and return the
    basis of loop duals (one per tuple of loops over the places)."""
    cx = quotient_complex(group, depth)
    if any(g is None for g in cx.graphs):
        # a place without limit points carries no Steinberg module
        return HLattice(group, cx, [], [])
    graphs = cx.graphs
    cells = list(itertools.product(*[g.edges for g in graphs]))
    col = {c: j for j, c in enumerate(cells)}
    rows = []
    for k, g in enumerate(graphs):
        inc = g.incidence_rows()
        others = [gr.edges for j, gr in enumerate(graphs) if j != k]
        for vrow in inc:
            for rest in itertools.product(*others):
                row = [0] * len(cells)
                for e, coeff in zip(g.edges, vrow):
                    if coeff:
                        cell = rest[:k] + (e,) + rest[k:]
                        row[col[cell]] += coeff
                if any(row):
                    rows.append(row)
    kernel = nullspace(rows, len(cells))
    expected = math.prod(g.betti for g in graphs)
    if len(kernel) != expected:
        raise RankMismatch(f"solved rank {len(kernel)} differs from the product formula {expected}")
    basis = list(itertools.product(*[range(1, g.betti + 1) for g in graphs]))
    loop_cells = [tuple(("loop", i) for i in idx) for idx in basis]
    # change of basis so that the measures are dual to the loop tuples
    coords = [[vec[col[c]] for vec in kernel] for c in loop_cells]
    try:
        inv = solve_square(coords, [[int(i == j) for j in range(expected)] for i in range(expected)])
    except ZeroDivisionError as exc:
        raise RankMismatch("loop tuples do not detect the solved measures") from exc
    measures = []
    duals = [[g.loop_dual(i) for i in range(1, g.betti + 1)] for g in graphs]
    for m, idx in enumerate(basis):
        values = {}
        for c in cells:
            x = sum(kernel[j][col[c]] * inv[j][m] for j in range(expected))
            if x.denominator != 1:
                raise RankMismatch("solved lattice is not spanned by loop duals")
            if x:
                values[c] = int(x)
        tensor = {
            c: math.prod(duals[k][idx[k] - 1][c[k]] for k in range(len(graphs)))
            for c in cells
        }
        if any(values.get(c, 0) != v for c, v in tensor.items()):
            raise RankMismatch(f"solved measure {idx} is not the product of loop duals")
        measures.append(PlecticMeasure(None, idx, values))
    lattice = HLattice(group, cx, basis, measures)
    for m in measures:
        m.lattice = lattice
    return lattice


def check_measure(lattice: HLattice, m: int) -> bool:
    """Exact antisymmetry-compatible harmonicity of basis measure ``m``."""
    graphs = lattice.complex.graphs
    values = lattice.measures[m].values
    for k, g in enumerate(graphs):
        others = [gr.edges for j, gr in enumerate(graphs) if j != k]
        for vrow in g.incidence_rows():
            for rest in itertools.product(*others):
                total = 0
                for e, coeff in zip(g.edges, vrow):
                    if coeff:
                        total += coeff * values.get(rest[:k] + (e,) + rest[k:], 0)
                if total:
                    return False
    return True


@dataclass
class DualityReport:
    dimension: int
    rank: int
    orientation: list[list[int]]
    notes: list[str]

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "rank": self.rank, "orientation": self.orientation, "notes": self.notes}


def orientation_and_duality_report(group: PlecticGroup, depth: int = 1) -> DualityReport:
    lattice = invariant_measure_lattice(group, depth)
    chars = [
        [orientation_character(g, group.prime) for g in getattr(f, "generators", [])]
        for f in group.factors
    ]
    notes = ["duality statements are reported for consistency only"]
    if len(group.support) != group.places:
        notes.append("some place has no limit points, so the Steinberg module vanishes")
    return DualityReport(len(group.support), lattice.rank, chars, notes)


def measure_of_ball(mu: HLattice | PlecticMeasure, balls: Sequence[BoundaryBall | None]):
    """Integer tuple over the basis for a lattice, a single integer for one measure."""
    if isinstance(mu, PlecticMeasure):
        return mu.of_ball(balls)
    return mu.measure_of_ball(balls)
