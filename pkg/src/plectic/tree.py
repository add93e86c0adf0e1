"""The Bruhat-Tits tree of PGL2 over Q_p.

A vertex ``(a, b)`` is the closed disc ``{x : v(x - b) >= a}``; the centre
``b`` is kept as its truncated p-adic expansion below ``p**a``, so it is a
rational with p-power denominator and ``0 <= b < p**a``.  Directed edges cut
the boundary ``P^1(Q_p)`` into two balls, one of which may contain infinity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import NotAnEdge, RamifiedMidpoint, RationalPoint
from .padic import INF, PadicScalar, QuadExtScalar, precision_policy, vp
from .projective import PGL2Elem, ProjPoint


def reduce_mod_pa(p: int, x: Fraction, a: int) -> Fraction:
    """Truncated p-adic expansion of ``x`` below ``p**a``."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    v = vp(p, x)
    if v >= a:
        return Fraction(0)
    unit = x / Fraction(p) ** v
    mod = p ** (a - v)
    r = unit.numerator * pow(unit.denominator, -1, mod) % mod
    return Fraction(p) ** v * r


def _reduce_scalar(p: int, x, a: int) -> Fraction:
    if isinstance(x, PadicScalar):
        if x.is_zero() or x.valuation >= a:
            return Fraction(0)
        if x.abs_precision < a:
            raise ValueError("not enough digits to locate the disc")
        return Fraction(p) ** x.valuation * (x.unit % p ** (a - x.valuation))
    return reduce_mod_pa(p, x, a)


@dataclass(frozen=True, order=True)
class TreeVertex:
    a: int
    b: Fraction

    def label(self) -> str:
        return f"{self.a}:{self.b}"


STANDARD = TreeVertex(0, Fraction(0))


def vertex(p: int, a: int, b=0) -> TreeVertex:
    return TreeVertex(a, reduce_mod_pa(p, Fraction(b), a))


@dataclass(frozen=True, order=True)
class DirectedEdge:
    source: TreeVertex
    target: TreeVertex

    def reversed(self) -> DirectedEdge:
        return DirectedEdge(self.target, self.source)


@dataclass(frozen=True)
class BoundaryBall:
    """``{x : v(x - center) >= n}`` or its complement (which contains infinity)."""

    center: Fraction
    n: int
    complement: bool = False

    def opposite(self) -> BoundaryBall:
        return BoundaryBall(self.center, self.n, not self.complement)

    def to_json(self) -> dict:
        return {"center": str(self.center), "radius": self.n, "complement": self.complement}

    @classmethod
    def from_json(cls, p: int, data: dict) -> BoundaryBall:
        n = int(data["radius"])
        return cls(reduce_mod_pa(p, Fraction(data["center"]), n), n, bool(data.get("complement", False)))


def ball(p: int, center, n: int, complement: bool = False) -> BoundaryBall:
    return BoundaryBall(reduce_mod_pa(p, Fraction(center), n), n, complement)


def neighbors(p: int, v: TreeVertex) -> list[TreeVertex]:
    """The p+1 neighbours: children by digit 0..p-1, then the parent."""
    step = Fraction(p) ** v.a
    out = [TreeVertex(v.a + 1, v.b + k * step) for k in range(p)]
    out.append(TreeVertex(v.a - 1, reduce_mod_pa(p, v.b, v.a - 1)))
    return out


def parent(p: int, v: TreeVertex) -> TreeVertex:
    return TreeVertex(v.a - 1, reduce_mod_pa(p, v.b, v.a - 1))


def tree_distance(p: int, u: TreeVertex, w: TreeVertex) -> int:
    m = min(u.a, w.a, vp(p, u.b - w.b))
    return u.a + w.a - 2 * m


def is_edge(p: int, e: DirectedEdge) -> bool:
    return tree_distance(p, e.source, e.target) == 1


def vertex_path(p: int, u: TreeVertex, w: TreeVertex) -> list[TreeVertex]:
    """Vertices of the geodesic from u to w, both included."""
    m = min(u.a, w.a, vp(p, u.b - w.b))
    up, x = [], u
    while x.a > m:
        up.append(x)
        x = parent(p, x)
    down, y = [], w
    while y.a > m:
        down.append(y)
        y = parent(p, y)
    return up + [x] + down[::-1]


def vertices_within(p: int, center: TreeVertex, radius: int) -> list[TreeVertex]:
    """Breadth-first enumeration of the closed ball of given radius."""
    seen = {center: 0}
    order = [center]
    queue = deque([center])
    while queue:
        v = queue.popleft()
        if seen[v] == radius:
            continue
        for w in neighbors(p, v):
            if w not in seen:
                seen[w] = seen[v] + 1
                order.append(w)
                queue.append(w)
    return order


def bfs_distances(p: int, center: TreeVertex, radius: int) -> dict[TreeVertex, int]:
    seen = {center: 0}
    queue = deque([center])
    while queue:
        v = queue.popleft()
        if seen[v] == radius:
            continue
        for w in neighbors(p, v):
            if w not in seen:
                seen[w] = seen[v] + 1
                queue.append(w)
    return seen


# group action


def act_on_vertex(g: PGL2Elem, v: TreeVertex, p: int) -> TreeVertex:
    """Image of the lattice class spanned by ``(p^a, 0)`` and ``(b, 1)``."""
    pa = Fraction(p) ** v.a
    c1 = (g.a * pa, g.c * pa)
    c2 = (g.a * v.b + g.b, g.c * v.b + g.d)
    if vp(p, c1[1]) < vp(p, c2[1]):
        c1, c2 = c2, c1
    # now c2 is the pivot: its second entry has the least valuation
    t = c1[1] / c2[1]
    x = c1[0] - t * c2[0]
    z = c2[1]
    a = vp(p, x / z)
    return TreeVertex(a, reduce_mod_pa(p, c2[0] / z, a))


def act_on_edge(g: PGL2Elem, e: DirectedEdge, p: int) -> DirectedEdge:
    return DirectedEdge(act_on_vertex(g, e.source, p), act_on_vertex(g, e.target, p))


def is_in_vertex_stabilizer(g: PGL2Elem, v: TreeVertex, p: int) -> bool:
    return act_on_vertex(g, v, p) == v


# balls and edges


def ball_of_edge(p: int, e: DirectedEdge) -> BoundaryBall:
    """Ends of the tree reached by leaving ``e.source`` through ``e.target``."""
    s, t = e.source, e.target
    if t.a == s.a + 1 and reduce_mod_pa(p, t.b, s.a) == s.b:
        return BoundaryBall(t.b, t.a)
    if s.a == t.a + 1 and reduce_mod_pa(p, s.b, t.a) == t.b:
        return BoundaryBall(s.b, s.a, complement=True)
    raise NotAnEdge(f"{s.label()} and {t.label()} are not adjacent")


def edge_of_ball(p: int, bl: BoundaryBall) -> DirectedEdge:
    inner = TreeVertex(bl.n, bl.center)
    outer = parent(p, inner)
    if bl.complement:
        return DirectedEdge(inner, outer)
    return DirectedEdge(outer, inner)


def act_on_ball(g: PGL2Elem, bl: BoundaryBall, p: int) -> BoundaryBall:
    return ball_of_edge(p, act_on_edge(g, edge_of_ball(p, bl), p))


def ball_contains(p: int, outer: BoundaryBall, inner: BoundaryBall) -> bool:
    if not outer.complement and not inner.complement:
        return inner.n >= outer.n and vp(p, inner.center - outer.center) >= outer.n
    if outer.complement and not inner.complement:
        return balls_disjoint(p, outer.opposite(), inner)
    if not outer.complement and inner.complement:
        return False
    return ball_contains(p, inner.opposite(), outer.opposite())


def balls_disjoint(p: int, x: BoundaryBall, y: BoundaryBall) -> bool:
    if not x.complement and not y.complement:
        return vp(p, x.center - y.center) < min(x.n, y.n)
    if x.complement and y.complement:
        return False
    if x.complement:
        x, y = y, x
    return ball_contains(p, y.opposite(), x)


def point_in_ball(p: int, z: ProjPoint, bl: BoundaryBall) -> bool:
    if z.is_infinity():
        return bl.complement
    x = z.affine()
    if isinstance(x, QuadExtScalar):
        return False
    return (diff_valuation(p, x, bl.center) >= bl.n) != bl.complement


def diff_valuation(p: int, x, y):
    """Valuation of ``x - y`` for exact or p-adic arguments (``inf`` if they agree)."""
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return vp(p, x - y)
    if isinstance(x, Fraction):
        x, y = y, x
    with precision_policy(cancellation_floor=0):
        d = x - y
    return INF if d.is_zero() else d.valuation


# reduction and ends


def reduction_map(p: int, z) -> TreeVertex:
    """Vertex onto which a point of the quadratic extension retracts."""
    if isinstance(z, ProjPoint):
        if z.is_infinity():
            raise RationalPoint("infinity is an end of the tree")
        z = z.affine()
    if not isinstance(z, QuadExtScalar) or z.b.is_zero():
        raise RationalPoint("point of P^1(Q_p) is an end, not an interior point")
    if z.ramified:
        raise RamifiedMidpoint("ramified points reduce to midpoints of edges")
    k = z.b.valuation
    return TreeVertex(k, _reduce_scalar(p, z.a, k))


def _geodesic_vertex(p: int, x: ProjPoint, y: ProjPoint, m, t: int) -> TreeVertex:
    # parametrisation with the x end at t -> +infinity
    if y.is_infinity():
        return TreeVertex(t, _reduce_scalar(p, x.affine(), t))
    if x.is_infinity():
        return TreeVertex(-t, _reduce_scalar(p, y.affine(), -t))
    if t >= 0:
        return TreeVertex(m + t, _reduce_scalar(p, x.affine(), m + t))
    return TreeVertex(m - t, _reduce_scalar(p, y.affine(), m - t))


def geodesic_between_ends(p: int, x: ProjPoint, y: ProjPoint, radius: int) -> list[TreeVertex]:
    """``2*radius + 1`` consecutive vertices of the x-y geodesic, listed from
    the x end and centred on the vertex closest to the standard vertex."""
    if x == y:
        raise ValueError("ends must be distinct")
    m = 0
    if not x.is_infinity() and not y.is_infinity():
        xa, ya = x.affine(), y.affine()
        m = diff_valuation(p, xa, ya)
    d0 = tree_distance(p, _geodesic_vertex(p, x, y, m, 0), STANDARD)
    best = min(range(-d0, d0 + 1), key=lambda t: (tree_distance(p, _geodesic_vertex(p, x, y, m, t), STANDARD), t))
    return [_geodesic_vertex(p, x, y, m, t) for t in range(best + radius, best - radius - 1, -1)]


def ray_to(p: int, z: ProjPoint, start: int, stop: int) -> Iterator[TreeVertex]:
    """Vertices ``(k, z mod p^k)`` for ``start <= k < stop`` on the ray to z."""
    for k in range(start, stop):
        if z.is_infinity():
            yield TreeVertex(-k, Fraction(0))
        else:
            yield TreeVertex(k, _reduce_scalar(p, z.affine(), k))


# output


def to_dot(p: int, vertices: Iterable[TreeVertex], edges: Iterable[DirectedEdge] = (), name: str = "tree") -> str:
    """Undirected DOT graph; edges default to tree adjacency among the vertices."""
    vs = sorted(set(vertices))
    if not edges:
        vset = set(vs)
        es = sorted({tuple(sorted((v, w))) for v in vs for w in neighbors(p, v) if w in vset})
    else:
        es = sorted({tuple(sorted((e.source, e.target))) for e in edges})
    lines = [f"graph {name} {{"]
    for v in vs:
        lines.append(f'  "{v.label()}";')
    for u, w in es:
        lines.append(f'  "{u.label()}" -- "{w.label()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
