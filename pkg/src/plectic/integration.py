"""Multiplicative integration of degree-zero cycles against invariant measures.

Two algorithms are provided.  ``integrate_riemann`` takes finite products of
cross-ratio values over the partition of the limit set into word balls, one
sample point per ball.  ``integrate_series`` is the classical orbit product
over group words, used as an independent check on single-place factors.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CancellationError, ConfigError, NonElementary, NonStabilized, PointCollision, PoleError
from .groups import FreeWord, PlecticGroup, SchottkyFactor, letter_order
from .measures import HLattice, PlecticMeasure, invariant_measure_lattice
from .padic import (
    PadicScalar,
    QuadExtScalar,
    current_policy,
    default_nonsquare,
    precision_policy,
    to_fraction,
)
from .projective import PGL2Elem, ProjPoint, _lin, cross_ratio_factor, fixed_points, moebius_apply
from .tree import act_on_edge, ball_of_edge, point_in_ball

# scalars


def as_padic(p: int, x):
    """Exact rationals become p-adic scalars at working precision."""
    if isinstance(x, (int, Fraction)):
        return PadicScalar.from_rational(p, x)
    return x


def scalar_agreement(p: int, x, y) -> int:
    """Relative digits on which two nonzero scalars agree (working precision
    for equal exact rationals)."""
    if isinstance(x, Fraction) and isinstance(y, Fraction) and x == y:
        return current_policy().working
    x, y = as_padic(p, x), as_padic(p, y)
    if isinstance(y, QuadExtScalar) and not isinstance(x, QuadExtScalar):
        x, y = y, x
    return x.agreement(y)


def scalar_is_one(p: int, x) -> bool:
    if isinstance(x, Fraction):
        return x == 1
    return x == 1 and scalar_agreement(p, x, Fraction(1)) >= _precision_of(x)


def _precision_of(x) -> int:
    if isinstance(x, PadicScalar):
        return x.precision
    if isinstance(x, QuadExtScalar):
        return min(x.a.abs_precision, x.b.abs_precision) - x.valuation
    return current_policy().working


def scalar_frobenius(x):
    return x.frobenius() if isinstance(x, QuadExtScalar) else x


def scalar_to_json(p: int, x) -> dict:
    if isinstance(x, QuadExtScalar):
        return x.to_json()
    return as_padic(p, x).with_precision(current_policy().output).to_json()


# cycles


def parse_point(p: int, data) -> ProjPoint:
    """``"inf"``, a rational string or integer, or ``{"a":..., "b":..., "d":...}``
    for ``a + b*w`` in the unramified quadratic extension."""
    if isinstance(data, dict):
        d = int(data.get("d", default_nonsquare(p)))
        z = QuadExtScalar(PadicScalar.from_rational(p, to_fraction(data["a"])), PadicScalar.from_rational(p, to_fraction(data["b"])), d)
        return ProjPoint(p, z, Fraction(1))
    return ProjPoint.of(p, data)


def _point_json(z: ProjPoint):
    if z.is_infinity():
        return "inf"
    x = z.affine()
    if isinstance(x, QuadExtScalar):
        return {"a": x.a.to_json(), "b": x.b.to_json(), "d": x.d}
    return str(x)


@dataclass(frozen=True)
class CycleTerm:
    coeff: int
    points: tuple[tuple[ProjPoint, ProjPoint], ...]


@dataclass
class PlecticCycle:
    """Integer combination of terms ``([x_1]-[y_1]) (x) ... (x) ([x_r]-[y_r])``."""

    prime: int
    terms: list[CycleTerm] = field(default_factory=list)

    @classmethod
    def elementary(cls, prime: int, pairs: Sequence[tuple], coeff: int = 1) -> PlecticCycle:
        pts = tuple(
            (x if isinstance(x, ProjPoint) else ProjPoint.of(prime, x), y if isinstance(y, ProjPoint) else ProjPoint.of(prime, y))
            for x, y in pairs
        )
        return cls(prime, [CycleTerm(coeff, pts)])

    @property
    def places(self) -> int:
        return len(self.terms[0].points) if self.terms else 0

    def __add__(self, other: PlecticCycle) -> PlecticCycle:
        return PlecticCycle(self.prime, self.terms + other.terms)

    def __neg__(self) -> PlecticCycle:
        return PlecticCycle(self.prime, [CycleTerm(-t.coeff, t.points) for t in self.terms])

    def translate(self, gs: Sequence[PGL2Elem]) -> PlecticCycle:
        return PlecticCycle(
            self.prime,
            [CycleTerm(t.coeff, tuple((moebius_apply(g, x), moebius_apply(g, y)) for g, (x, y) in zip(gs, t.points))) for t in self.terms],
        )

    def frobenius(self) -> PlecticCycle:
        def frob(z: ProjPoint) -> ProjPoint:
            x = z.affine()
            if isinstance(x, QuadExtScalar):
                return ProjPoint(self.prime, x.frobenius(), Fraction(1))
            return z

        return PlecticCycle(self.prime, [CycleTerm(t.coeff, tuple((frob(x), frob(y)) for x, y in t.points)) for t in self.terms])

    def degree(self) -> tuple[int, ...]:
        # every term contributes [x] - [y] at each place
        return (0,) * self.places

    def to_json(self) -> list[dict]:
        return [
            {"coeff": t.coeff, "places": [{"x": _point_json(x), "y": _point_json(y)} for x, y in t.points]}
            for t in self.terms
        ]

    @classmethod
    def from_json(cls, p: int, data: list[dict]) -> PlecticCycle:
        try:
            terms = [
                CycleTerm(int(rec.get("coeff", 1)), tuple((parse_point(p, pl["x"]), parse_point(p, pl["y"])) for pl in rec["places"]))
                for rec in data
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad cycle: {exc}") from exc
        if len({len(t.points) for t in terms}) > 1:
            raise ConfigError("cycle terms have different numbers of places")
        return cls(p, terms)

    @classmethod
    def load(cls, p: int, path: str | Path) -> PlecticCycle:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
        return cls.from_json(p, data)

    def validate(self, group: PlecticGroup, depth: int = 1) -> None:
        """Every point must avoid the depth-``depth`` ball cover."""
        if self.places != group.places:
            raise ConfigError(f"cycle has {self.places} places, group has {group.places}")
        depth = max(depth, 1)
        for k, f in enumerate(group.factors):
            if f.rank == 0:
                continue
            for t in self.terms:
                for z in t.points[k]:
                    if len(f.address(z, depth)) >= depth:
                        raise PointCollision(f"{z.to_str()} lies in the limit cover at place {k}")


def phi_eval(term: CycleTerm, t: Sequence[ProjPoint]) -> tuple:
    """Cross-ratio transform of one term at a point of the limit set."""
    return tuple(cross_ratio_factor(tp, x, y) for tp, (x, y) in zip(t, term.points))


# multiplicative tensors


@dataclass
class MultiplicativeTensor:
    """Formal product of elementary tensors ``(c_1 (x) ... (x) c_r)^e``."""

    prime: int
    terms: list[tuple[int, tuple]] = field(default_factory=list)

    @classmethod
    def elementary(cls, prime: int, scalars: Sequence) -> MultiplicativeTensor:
        return cls(prime, [(1, tuple(scalars))])

    @classmethod
    def identity(cls, prime: int, places: int) -> MultiplicativeTensor:
        return cls(prime, [(1, (Fraction(1),) * places)])

    @property
    def places(self) -> int:
        return len(self.terms[0][1]) if self.terms else 0

    def __mul__(self, other: MultiplicativeTensor) -> MultiplicativeTensor:
        return MultiplicativeTensor(self.prime, self.terms + other.terms)

    def __pow__(self, k: int) -> MultiplicativeTensor:
        return MultiplicativeTensor(self.prime, [(e * k, c) for e, c in self.terms])

    def inverse(self) -> MultiplicativeTensor:
        return self ** -1

    def frobenius(self) -> MultiplicativeTensor:
        return MultiplicativeTensor(self.prime, [(e, tuple(scalar_frobenius(x) for x in c)) for e, c in self.terms])

    def collapse(self) -> MultiplicativeTensor:
        """Single elementary representative, or ``NonElementary``.

        Terms with a unit entry are dropped; terms that agree at every place
        but one are merged by multiplying the differing entries.
        """
        p = self.prime
        r = self.places
        live = [(e, c) for e, c in self.terms if e and not any(scalar_is_one(p, x) for x in c)]
        if not live:
            return MultiplicativeTensor.identity(p, r)
        if r == 1:
            out = Fraction(1)
            for e, (c,) in live:
                out = _mul(p, out, _pow(p, c, e))
            return MultiplicativeTensor(p, [(1, (out,))])
        for slot in reversed(range(r)):
            merged = _merge(p, [[*c[:slot], _pow(p, c[slot], e), *c[slot + 1 :]] for e, c in live])
            if merged is not None:
                return MultiplicativeTensor(p, [(1, tuple(merged))])
        raise NonElementary("sum of tensors with different entries at several places")

    def scalars(self) -> tuple:
        c = self.collapse()
        return c.terms[0][1]

    def agreement(self, other: MultiplicativeTensor) -> int:
        """Digits of agreement of two elementary tensors, place by place
        (allowing the inversion of an even number of entries)."""
        a, b = self.scalars(), other.scalars()
        p = self.prime
        if len(a) != len(b):
            raise ValueError("tensors with different numbers of places")
        direct = [scalar_agreement(p, x, y) if not (_is_one(p, x) and _is_one(p, y)) else current_policy().working for x, y in zip(a, b)]
        best = min(direct) if direct else current_policy().working
        if len(a) >= 2:
            for flips in itertools.combinations(range(len(a)), 2):
                cand = [
                    scalar_agreement(p, x, _inv(p, y)) if k in flips else direct[k]
                    for k, (x, y) in enumerate(zip(a, b))
                ]
                best = max(best, min(cand))
        return best

    def is_identity(self, digits: int | None = None) -> bool:
        digits = digits if digits is not None else current_policy().output
        try:
            c = self.collapse()
        except NonElementary:
            return False
        return any(scalar_agreement(self.prime, x, Fraction(1)) >= digits or _is_one(self.prime, x) for x in c.terms[0][1])

    def to_json(self) -> list[dict]:
        return [{"exponent": e, "scalars": [scalar_to_json(self.prime, x) for x in c]} for e, c in self.terms]


def _merge(p: int, rows: list[list]) -> list | None:
    # rows agreeing at every place but one multiply there
    acc = list(rows[0])
    diff = None
    for c in rows[1:]:
        places = [k for k in range(len(acc)) if not _same(p, acc[k], c[k])]
        if len(places) > 1 or (diff is not None and places and places[0] != diff):
            return None
        if places:
            diff = places[0]
        k = diff if diff is not None else len(acc) - 1
        acc[k] = _mul(p, acc[k], c[k])
    return acc


def _is_one(p: int, x) -> bool:
    return isinstance(x, Fraction) and x == 1


def _same(p: int, x, y) -> bool:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    return scalar_agreement(p, x, y) >= min(_precision_of(as_padic(p, x)), _precision_of(as_padic(p, y)))


def _mul(p: int, x, y):
    x = Fraction(x) if isinstance(x, int) else x
    y = Fraction(y) if isinstance(y, int) else y
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x * y
    if isinstance(x, Fraction):
        x, y = y, x
    if isinstance(x, PadicScalar) and isinstance(y, QuadExtScalar):
        return y * x
    return x * y


def _inv(p: int, x):
    if isinstance(x, (int, Fraction)):
        return 1 / Fraction(x)
    return x.inverse()


def _pow(p: int, x, e: int):
    if isinstance(x, int):
        x = Fraction(x)
    if e == 1:
        return x
    return x**e


# integration


@dataclass
class IntegralResult:
    values: dict[tuple[int, ...], MultiplicativeTensor]
    depth: int
    digits: list[int]

    def value(self, index: Sequence[int] | None = None) -> MultiplicativeTensor:
        if index is None:
            if len(self.values) != 1:
                raise ValueError("result has several coordinates; pass an index")
            return next(iter(self.values.values()))
        return self.values[tuple(index)]

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "stabilized_digits": self.digits,
            "values": [{"index": list(k), "tensor": v.collapse().to_json()} for k, v in self.values.items()],
        }


def sample_partitions(factor: SchottkyFactor, points: Sequence[ProjPoint], depths: Sequence[int]) -> dict[int, list]:
    """Partitions of the limit set into word balls, as pairs ``(w, t_w)``; the
    ball of ``w = w's`` is ``w' B_s`` and ``t_w = w'(a_s)`` with ``a_s`` the
    attracting point of s.  Sample points are kept as ``Sample`` records.

    A ball is refined until it lies ``d`` letters below the deepest word ball
    containing one of ``points``; with points in the fundamental domain this
    is the uniform partition by words of length ``d``.  Each partition is
    sorted by the letter order of the words.
    """
    top = max(depths)
    cap = top + 60
    addresses = []
    for z in points:
        addr = factor.address(z, cap)
        if len(addr) >= cap:
            raise PointCollision(f"{z.to_str()} lies too close to the limit set")
        addresses.append(addr.letters)
    prefixes = {a[:k] for a in addresses for k in range(len(a) + 1)}
    att = factor.attracting_points
    mats = {s: factor.matrix(s).key() for s in factor.letters}
    found: dict[int, list] = {d: [] for d in depths}
    # nodes: (letters of w, integer matrix of the prefix w', length of the
    # longest prefix of w whose ball holds a point)
    stack = [((s,), (1, 0, 0, 1), int((s,) in prefixes)) for s in factor.letters]
    while stack:
        w, g, anchor = stack.pop()
        rel = len(w) - anchor
        if rel in found:
            found[rel].append((FreeWord(w), Sample(g, att[w[-1]])))
        if rel >= top:
            continue
        gw = _mul_int(g, mats[w[-1]])
        for s in factor.letters:
            if w[-1] == -s:
                continue
            child = w + (s,)
            stack.append((child, gw, len(child) if child in prefixes else anchor))
    rank = {s: k for k, s in enumerate(letter_order(factor.rank))}
    return {d: sorted(lv, key=lambda r: [rank[s] for s in r[0].letters]) for d, lv in found.items()}


def _mul_int(g: tuple, h: tuple) -> tuple:
    a, b, c, d = g
    e, f, x, y = h
    return (a * e + b * x, a * f + b * y, c * e + d * x, c * f + d * y)


@dataclass(frozen=True)
class Sample:
    """The point ``g(anchor)`` for an integer matrix ``g = (a, b, c, d)``."""

    g: tuple
    anchor: ProjPoint

    def point(self) -> ProjPoint:
        return moebius_apply(PGL2Elem(*self.g), self.anchor)

    def phi(self, x: ProjPoint, y: ProjPoint, forms=None):
        """``(t - x)/(t - y)`` at the sample point t, composed into a single
        integral Moebius map evaluated at the anchor; ``forms`` caches
        ``_phi_forms(x, y)``."""
        if not (x.is_exact() and y.is_exact()):
            return cross_ratio_factor(self.point(), x, y)
        (nu, cn), (de, cd) = forms or _phi_forms(x, y)
        a, b, c, d = self.g
        n0, n1 = nu[0] * a + nu[1] * c, nu[0] * b + nu[1] * d
        d0, d1 = de[0] * a + de[1] * c, de[0] * b + de[1] * d
        z = self.anchor
        if z.is_exact():
            den = math.lcm(z.x0.denominator, z.x1.denominator)
            z0, z1 = int(z.x0 * den), int(z.x1 * den)
            top, bottom = n0 * z0 + n1 * z1, d0 * z0 + d1 * z1
            if top == 0 or bottom == 0:
                raise PoleError("sample point coincides with a cycle point")
            return Fraction(cn * top, cd * bottom)
        try:
            with precision_policy(cancellation_floor=1):
                top = _lin(Fraction(n0), z.x0, Fraction(n1), z.x1)
                bottom = _lin(Fraction(d0), z.x0, Fraction(d1), z.x1)
                return top / bottom * Fraction(cn, cd)
        except (CancellationError, ZeroDivisionError) as exc:
            raise PoleError("sample point coincides with a cycle point to working precision") from exc


def _phi_forms(x: ProjPoint, y: ProjPoint):
    # (t - x)/(t - y) in homogeneous t = [t0 : t1] as a ratio of integer
    # linear forms with integer scalings: ((form, scale), (form, scale))
    def form(z: ProjPoint):
        if z.is_infinity():
            return None
        q = Fraction(z.affine())
        return (q.denominator, -q.numerator), q.denominator

    fx, fy = form(x), form(y)
    if fx is None and fy is None:
        raise PoleError("both cycle points are infinite")
    if fx is None:
        return ((0, 1), fy[1]), (fy[0], 1)
    if fy is None:
        return (fx[0], 1), ((0, 1), fx[1])
    return (fx[0], fy[1]), (fy[0], fx[1])


def _factor_exponents(table: dict[tuple, int], shape: Sequence[int]) -> list[list[int]] | None:
    """Write an integer tensor as an outer product of integer vectors, with the
    first nonzero entry of every vector but the last positive and primitive."""
    nz = next((k for k, v in table.items() if v), None)
    if nz is None:
        return [[0] * n for n in shape]
    r = len(shape)
    vecs = []
    for k in range(r):
        vec = [table.get(nz[:k] + (j,) + nz[k + 1 :], 0) for j in range(shape[k])]
        vecs.append(vec)
    for k in range(r - 1):
        g = math.gcd(*vecs[k])
        lead = next(x for x in vecs[k] if x)
        g = g if lead > 0 else -g
        vecs[k] = [x // g for x in vecs[k]]
    # the last vector absorbs the remaining scalar
    scale = math.prod(vecs[k][nz[k]] for k in range(r - 1))
    if any(x % scale for x in vecs[-1]):
        return None
    vecs[-1] = [x // scale for x in vecs[-1]]
    for idx in itertools.product(*[range(n) for n in shape]):
        if table.get(idx, 0) != math.prod(vecs[k][idx[k]] for k in range(r)):
            return None
    return vecs


def _accumulate(p: int, acc, x):
    """Product that stays exact until the rational outgrows working precision."""
    out = _mul(p, acc, x)
    if isinstance(out, Fraction):
        size = out.numerator.bit_length() + out.denominator.bit_length()
        if size > 4 * current_policy().working * p.bit_length():
            return as_padic(p, out)
    return out


def _place_product(p: int, term: CycleTerm, place: int, level, exponents: Sequence[int]):
    x, y = term.points[place]
    forms = _phi_forms(x, y) if x.is_exact() and y.is_exact() else None
    out = Fraction(1)
    for (w, t), e in zip(level, exponents):
        if e:
            out = _accumulate(p, out, _pow(p, t.phi(x, y, forms), e))
    return out


def _resolve_measures(measure) -> tuple[HLattice, list[int]]:
    if isinstance(measure, HLattice):
        return measure, list(range(measure.rank))
    if isinstance(measure, PlecticMeasure):
        return measure.lattice, [measure.lattice.basis.index(measure.index)]
    raise TypeError("expected an HLattice or a PlecticMeasure")


def _riemann_level(lattice: HLattice, m: int, cycle: PlecticCycle, parts: list, n: int) -> MultiplicativeTensor:
    group = lattice.group
    p = group.prime
    lv = [parts[k][n] for k in range(group.places)]
    # exponent table: measure of every product of word balls
    meas = lattice.measures[m]
    per_place = []
    for k, f in enumerate(group.factors):
        entries = []
        for w, t in lv[k]:
            s = w.letters[-1]
            entries.append((("loop", abs(s)), 1 if s > 0 else -1))
        per_place.append(entries)
    table = {}
    for idx in itertools.product(*[range(len(v)) for v in per_place]):
        ks = [per_place[k][j][0] for k, j in enumerate(idx)]
        sg = [per_place[k][j][1] for k, j in enumerate(idx)]
        v = meas.value(ks, sg)
        if v:
            table[idx] = v
    vecs = _factor_exponents(table, [len(v) for v in per_place])
    if vecs is None:
        raise NonElementary("the measure restricted to word balls is not a product")
    out = MultiplicativeTensor(p)
    for term in cycle.terms:
        scal = tuple(_place_product(p, term, k, lv[k], vecs[k]) for k in range(group.places))
        out = out * MultiplicativeTensor(p, [(term.coeff, scal)])
    return out.collapse()


def integrate_riemann(
    cycle: PlecticCycle,
    measure: HLattice | PlecticMeasure,
    depth: int | None = None,
    require: int | None = None,
    max_depth: int = 12,
) -> IntegralResult:
    """Riemann products over word balls ``depth`` letters below the cycle
    points (see ``sample_partitions``).  Digits are counted as agreement with
    the products at ``depth - 1``; fewer than ``require`` (default: the output
    precision) raises ``NonStabilized``.  Without ``depth`` the smallest depth
    up to ``max_depth`` reaching ``require`` digits is used."""
    lattice, coords = _resolve_measures(measure)
    need = current_policy().output if require is None else require
    if depth is not None:
        if depth < 1:
            raise ValueError("depth must be positive")
        cycle.validate(lattice.group, depth)
        values, digits = _integrate_at(cycle, lattice, coords, depth)
        if min(digits) < need:
            raise NonStabilized(f"only {min(digits)} digits stable at depth {depth}, {need} required")
        return IntegralResult(values, depth, digits)
    digits = [0]
    cache: dict = {}
    for d in range(2, max_depth + 1):
        try:
            cycle.validate(lattice.group, d)
        except PointCollision:
            if d == max_depth:
                raise
            continue
        values, digits = _integrate_at(cycle, lattice, coords, d, cache)
        if min(digits) >= need:
            return IntegralResult(values, d, digits)
    raise NonStabilized(f"only {min(digits)} digits stable at depth {max_depth}, {need} required")


def _integrate_at(cycle: PlecticCycle, lattice: HLattice, coords: list[int], depth: int, cache: dict | None = None):
    group = lattice.group
    if lattice.rank == 0:
        return {}, [current_policy().working] * group.places
    # cache: Riemann products by (coordinate, depth), reused by the next depth
    cache = {} if cache is None else cache
    depths = [d for d in (depth - 1, depth) if d >= 1 and any((m, d) not in cache for m in coords)]
    parts = [
        sample_partitions(f, [z for t in cycle.terms for z in t.points[k]], depths)
        for k, f in enumerate(group.factors)
    ] if depths else []
    values, digits = {}, [current_policy().working] * group.places
    for m in coords:
        for d in depths:
            cache[(m, d)] = _riemann_level(lattice, m, cycle, parts, d)
        cur = cache[(m, depth)]
        if depth > 1:
            prev = cache[(m, depth - 1)]
            for k, (a, b) in enumerate(zip(cur.scalars(), prev.scalars())):
                digits[k] = min(digits[k], _stable_digits(group.prime, a, b))
        else:
            digits = [0] * group.places
        values[lattice.basis[m]] = cur
    return values, digits


def _stable_digits(p: int, a, b) -> int:
    if _is_one(p, a) and _is_one(p, b):
        return current_policy().working
    try:
        return scalar_agreement(p, a, b)
    except (PoleError, ArithmeticError):
        return 0


# series


def fundamental_point(factor: SchottkyFactor, avoid: Iterable[ProjPoint] = (), skip: int = 0) -> ProjPoint:
    """Deterministic rational point outside every ball of the certificate."""
    p = factor.prime
    balls = [factor.ball(s) for s in factor.letters]
    avoid = list(avoid)
    found = 0
    for k in itertools.count(1):
        for z in (ProjPoint.of(p, k), ProjPoint.of(p, Fraction(1, p**k) + k), ProjPoint.of(p, Fraction(k, p + 1))):
            if any(point_in_ball(p, z, b) for b in balls) or any(z == a for a in avoid):
                continue
            if found == skip:
                return z
            found += 1
        if k > 10_000:
            raise ValueError("no point found in the fundamental domain")


def _orbit_words(factor: SchottkyFactor, n: int) -> list[tuple[FreeWord, PGL2Elem]]:
    out = [(FreeWord(), PGL2Elem.identity())]
    level = out[:]
    for _ in range(n):
        level = [
            (FreeWord(w.letters + (s,)), g @ factor.matrix(s))
            for w, g in level
            for s in factor.letters
            if not w.letters or w.letters[-1] != -s
        ]
        out += level
    return out


@dataclass
class SeriesResult:
    value: object
    word_len: int
    digits: int


def integrate_series(
    factor: SchottkyFactor,
    coordinate: int,
    x: ProjPoint,
    y: ProjPoint,
    word_len: int,
    require: int | None = None,
) -> SeriesResult:
    """Classical theta product ``prod_h (x, y; h a_i, h b_i)`` over the cosets
    ``h <g_i>`` with ``|h| <= word_len``, where ``a_i, b_i`` are the fixed
    points of generator i (1-based ``coordinate``).  Digits compare word
    lengths n and n-1."""
    p = factor.prime
    i = coordinate
    if not 1 <= i <= factor.rank:
        raise ValueError(f"coordinate {i} out of range")
    need = current_policy().output if require is None else require
    if x == y:
        return SeriesResult(Fraction(1), word_len, current_policy().working)
    a, b, _ = fixed_points(factor.matrix(i), p)
    partial = []
    acc = Fraction(1)
    n_prev = 0
    for w, g in _orbit_words(factor, word_len):
        if len(w) != n_prev:
            partial.append(acc)
            n_prev = len(w)
        if w.letters and abs(w.letters[-1]) == i:
            continue
        num = cross_ratio_factor(moebius_apply(g, a), x, y)
        den = cross_ratio_factor(moebius_apply(g, b), x, y)
        acc = _accumulate(p, acc, num)
        acc = _accumulate(p, acc, _inv(p, den))
    partial.append(acc)
    digits = _stable_digits(p, partial[-1], partial[-2]) if len(partial) > 1 else 0
    if digits < need:
        raise NonStabilized(f"series stable to {digits} digits at word length {word_len}")
    return SeriesResult(partial[-1], word_len, digits)


# periods and fubini


def single_place_group(group: PlecticGroup, place: int) -> PlecticGroup:
    return PlecticGroup(group.prime, [group.factors[place]], group.precision)


def period(
    group: PlecticGroup,
    place: int,
    j: int,
    i: int,
    x: ProjPoint | None = None,
    depth: int | None = None,
    require: int | None = None,
):
    """Integral of ``[g_j x] - [x]`` against basis measure i of the factor at
    ``place``; generators and coordinates are 1-based."""
    f = group.factors[place]
    if f.rank == 0:
        raise ValueError("trivial factor has no periods")
    x = x if x is not None else fundamental_point(f)
    g = f.matrix(j)
    single = single_place_group(group, place)
    lattice = invariant_measure_lattice(single)
    cycle = PlecticCycle.elementary(group.prime, [(moebius_apply(g, x), x)])
    res = integrate_riemann(cycle, lattice.measures[i - 1], depth, require=require)
    return res.value().scalars()[0]


def period_column(
    group: PlecticGroup,
    place: int,
    j: int,
    x: ProjPoint | None = None,
    depth: int | None = None,
    require: int | None = None,
) -> list:
    """``period(group, place, j, i)`` for every coordinate i at once."""
    f = group.factors[place]
    if f.rank == 0:
        raise ValueError("trivial factor has no periods")
    x = x if x is not None else fundamental_point(f)
    lattice = invariant_measure_lattice(single_place_group(group, place))
    cycle = PlecticCycle.elementary(group.prime, [(moebius_apply(f.matrix(j), x), x)])
    res = integrate_riemann(cycle, lattice, depth, require=require)
    return [res.value(b).scalars()[0] for b in lattice.basis]


@dataclass
class FubiniReport:
    agree: bool
    digits: int
    index: tuple[int, ...]
    product_value: MultiplicativeTensor
    factor_values: list[MultiplicativeTensor]

    def to_json(self) -> dict:
        return {
            "agree": self.agree,
            "digits": self.digits,
            "index": list(self.index),
            "product": self.product_value.collapse().to_json(),
            "factors": [v.collapse().to_json() for v in self.factor_values],
        }


def fubini_check(group: PlecticGroup, cycle: PlecticCycle, depth: int | None = None, digits: int | None = None) -> list[FubiniReport]:
    """Compare the integral over all places with the tensor of the integrals
    over each place separately, for every basis index."""
    if len(cycle.terms) != 1:
        raise NonElementary("Fubini comparison needs an elementary cycle")
    need = current_policy().output if digits is None else digits
    lattice = invariant_measure_lattice(group)
    require = need if depth is None else 0
    whole = integrate_riemann(cycle, lattice, depth, require=require)
    term = cycle.terms[0]
    singles = []
    for k in range(group.places):
        sub = single_place_group(group, k)
        lat = invariant_measure_lattice(sub)
        cyc = PlecticCycle(group.prime, [CycleTerm(1, (term.points[k],))])
        singles.append((lat, integrate_riemann(cyc, lat, depth, require=require)))
    out = []
    for idx, val in whole.values.items():
        scal = []
        for k, (lat, res) in enumerate(singles):
            scal.append(res.values[(idx[k],)].scalars()[0])
        scal[-1] = _pow(group.prime, scal[-1], term.coeff) if term.coeff != 1 else scal[-1]
        expect = MultiplicativeTensor.elementary(group.prime, scal)
        agreement = val.agreement(expect)
        out.append(FubiniReport(agreement >= need, agreement, idx, val, [MultiplicativeTensor.elementary(group.prime, [s]) for s in scal]))
    return out

