"""Period lattices, plectic Jacobians, Abel-Jacobi maps and Tate curves.

An element of the Jacobian of a product group is stored through one vector of
scalars per place (indexed by that factor's measure basis); the component at
basis index ``(m_1, ..., m_r)`` is the elementary tensor of the ``m_k``-th
entries.  Each slot vector is reduced modulo its factor's period lattice:
first the valuations, using a Hermite form of the period valuation matrix,
then the unit parts follow.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NonElementary, NonPrimitiveCharacter, PrecisionInsufficient
from .groups import PlecticGroup
from .integration import (
    PlecticCycle,
    _inv,
    _mul,
    _pow,
    _same,
    as_padic,
    integrate_riemann,
    period,
    period_column,
    scalar_agreement,
    scalar_frobenius,
    scalar_to_json,
    single_place_group,
)
from .linalg import hermite_lower
from .measures import invariant_measure_lattice
from .padic import INF, PadicScalar, QuadExtScalar, current_policy, vp


def scalar_valuation(p: int, x) -> int:
    if isinstance(x, Fraction):
        return vp(p, x)
    v = x.valuation
    if v == INF or isinstance(v, Fraction) and v.denominator != 1:
        raise NonElementary("valuation is not an integer")
    return int(v)


# period lattices


@dataclass
class FactorPeriods:
    """Periods ``q[i][j]``: basis measure i integrated over generator j."""

    place: int
    matrix: list[list]
    valuations: list[list[int]]
    hermite: list[list[int]]
    transform: list[list[int]]

    @property
    def rank(self) -> int:
        return len(self.matrix)


@dataclass
class PeriodLattice:
    group: PlecticGroup
    factors: list[FactorPeriods | None]

    def symmetry_digits(self, place: int) -> int:
        f = self.factors[place]
        best = current_policy().working
        for i in range(f.rank):
            for j in range(i + 1, f.rank):
                best = min(best, scalar_agreement(self.group.prime, f.matrix[i][j], f.matrix[j][i]))
        return best

    def to_json(self) -> list:
        p = self.group.prime
        return [
            None if f is None else {"place": f.place, "periods": [[scalar_to_json(p, q) for q in row] for row in f.matrix]}
            for f in self.factors
        ]


def factor_periods(group: PlecticGroup, place: int, depth: int | None = None, x=None) -> FactorPeriods:
    f = group.factors[place]
    p = group.prime
    g = f.rank
    cols = [period_column(group, place, j, x=x, depth=depth) for j in range(1, g + 1)]
    mat = [[cols[j][i] for j in range(g)] for i in range(g)]
    vals = [[scalar_valuation(p, q) for q in row] for row in mat]
    h, u = hermite_lower(vals)
    return FactorPeriods(place, mat, vals, h, u)


def period_lattice(group: PlecticGroup, depth: int | None = None, x=None) -> PeriodLattice:
    """Factor period matrices; the lattice of the product is the sum over places
    of the factor lattice tensored with everything at the other places."""
    return PeriodLattice(
        group,
        [factor_periods(group, k, depth, x) if f.rank > 0 else None for k, f in enumerate(group.factors)],
    )


# Jacobian elements


@dataclass
class JacobianElement:
    lattice: PeriodLattice
    slots: list[list]
    reduced: bool = False

    @property
    def prime(self) -> int:
        return self.lattice.group.prime

    def components(self) -> dict[tuple[int, ...], tuple]:
        return {idx: tuple(self.slots[k][i - 1] for k, i in enumerate(idx)) for idx in _basis(self.lattice.group)}

    def __mul__(self, other: JacobianElement) -> JacobianElement:
        if self.lattice.group.places != 1:
            raise NonElementary("sum of two product elements is not elementary")
        p = self.prime
        slot = [_mul(p, a, b) for a, b in zip(self.slots[0], other.slots[0])]
        return reduce_slots(self.lattice, [slot])

    def inverse(self) -> JacobianElement:
        if self.lattice.group.places != 1:
            # inverting one place suffices for an elementary tensor
            slots = [list(s) for s in self.slots]
            slots[-1] = [_inv(self.prime, a) for a in slots[-1]]
            return reduce_slots(self.lattice, slots)
        return reduce_slots(self.lattice, [[_inv(self.prime, a) for a in self.slots[0]]])

    def frobenius(self) -> JacobianElement:
        return JacobianElement(self.lattice, [[scalar_frobenius(a) for a in s] for s in self.slots], self.reduced)

    def is_identity(self, digits: int | None = None) -> bool:
        digits = current_policy().output if digits is None else digits
        p = self.prime
        return any(all(_is_unit_one(p, a, digits) for a in slot) for slot in self.slots)

    def agreement(self, other: JacobianElement) -> int:
        """Digits on which two reduced elements agree, allowing the elementary
        ambiguity of inverting the slots at an even number of places."""
        p = self.prime
        r = len(self.slots)
        if self.is_identity() and other.is_identity():
            return current_policy().working
        best = 0
        for flips in _even_subsets(r):
            digits = current_policy().working
            for k in range(r):
                theirs = other.slots[k]
                if k in flips:
                    theirs = reduce_slot(self.lattice.factors[k], [_inv(p, a) for a in theirs], p)
                for a, b in zip(self.slots[k], theirs):
                    digits = min(digits, _slot_agreement(p, a, b))
            best = max(best, digits)
        return best

    def transfer_agreement(self, other: JacobianElement, bound: int = 4) -> int:
        """Agreement allowing integer exponents to move between places:
        ``a_k^s_k = b_k^t_k`` at every place with ``prod s_k = prod t_k``
        identifies the two tensors up to torsion."""
        best = self.agreement(other)
        r = len(self.slots)
        if r < 2 or best >= current_policy().working:
            return best
        p = self.prime
        steps = [(s, t) for s in range(1, bound + 1) for t in range(-bound, bound + 1) if t]
        table = []
        for k in range(r):
            fp = self.lattice.factors[k]
            row = {}
            for s, t in steps:
                mine = reduce_slot(fp, [_pow(p, a, s) for a in self.slots[k]], p)
                theirs = reduce_slot(fp, [_pow(p, b, t) for b in other.slots[k]], p)
                row[s, t] = min((_slot_agreement(p, a, b) for a, b in zip(mine, theirs)), default=current_policy().working)
            table.append(row)
        for combo in itertools.product(steps, repeat=r):
            if math.prod(s for s, _ in combo) != math.prod(t for _, t in combo):
                continue
            best = max(best, min(table[k][c] for k, c in enumerate(combo)))
        return best

    def to_json(self) -> dict:
        p = self.prime
        return {"slots": [[scalar_to_json(p, a) for a in s] for s in self.slots]}


def _slot_agreement(p: int, a, b) -> int:
    if isinstance(a, Fraction) and isinstance(b, Fraction) and a == b:
        return current_policy().working
    try:
        return scalar_agreement(p, a, b)
    except ArithmeticError:
        return 0


def _even_subsets(r: int):
    for size in range(0, r + 1, 2):
        yield from (set(c) for c in itertools.combinations(range(r), size))


def _is_unit_one(p: int, a, digits: int) -> bool:
    if isinstance(a, Fraction):
        return a == 1
    return scalar_agreement(p, a, Fraction(1)) >= digits


def _basis(group: PlecticGroup) -> list[tuple[int, ...]]:
    if any(f.rank == 0 for f in group.factors):
        return []
    return list(itertools.product(*[range(1, f.rank + 1) for f in group.factors]))


def reduce_slot(fp: FactorPeriods, slot: Sequence, p: int) -> list:
    """Reduce one slot vector: valuations into the Hermite box, then the units
    follow from the same lattice element."""
    vals = [scalar_valuation(p, a) for a in slot]
    h, u = fp.hermite, fp.transform
    g = len(vals)
    m = [0] * g
    w = list(vals)
    for i in range(g):
        m[i] = w[i] // h[i][i]
        for r in range(i, g):
            w[r] -= h[r][i] * m[i]
    n = [sum(u[j][i] * m[i] for i in range(g)) for j in range(g)]
    out = []
    for i, a in enumerate(slot):
        x = a
        for j in range(g):
            if n[j]:
                x = _mul(p, x, _pow(p, fp.matrix[i][j], -n[j]))
        out.append(x)
    return out


def reduce_slots(lattice: PeriodLattice, slots: Sequence[Sequence]) -> JacobianElement:
    p = lattice.group.prime
    out = [reduce_slot(fp, s, p) for fp, s in zip(lattice.factors, slots)]
    return JacobianElement(lattice, out, reduced=True)


def slots_from_components(group: PlecticGroup, values: dict) -> list[list]:
    """Recover per-place slot vectors from elementary components, checking that
    the entry at place k depends on the k-th basis index only."""
    p = group.prime
    slots = []
    for k, f in enumerate(group.factors):
        slot = []
        for i in range(1, f.rank + 1):
            entries = [c[k] for idx, c in values.items() if idx[k] == i]
            first = entries[0]
            for e in entries[1:]:
                if not _same(p, first, e):
                    raise NonElementary(f"entry at place {k} is not determined by the basis index")
            slot.append(first)
        slots.append(slot)
    return slots


def reduce_mod_lattice(values, lattice: PeriodLattice) -> JacobianElement:
    """Reduce a tensor valued in the measure basis; ``values`` maps basis index
    to a ``MultiplicativeTensor`` (or its tuple of scalars)."""
    comps = {}
    for idx, v in values.items():
        comps[tuple(idx)] = v.scalars() if hasattr(v, "scalars") else tuple(v)
    slots = slots_from_components(lattice.group, comps)
    return reduce_slots(lattice, slots)


def abel_jacobi(group: PlecticGroup, cycle: PlecticCycle, lattice: PeriodLattice | None = None, depth: int | None = None) -> JacobianElement:
    lattice = lattice if lattice is not None else period_lattice(group, depth)
    meas = invariant_measure_lattice(group)
    res = integrate_riemann(cycle, meas, depth)
    return reduce_mod_lattice(res.values, lattice)


def lattice_generator_cycle(group: PlecticGroup, place: int, j: int, base, others: Sequence[tuple]) -> PlecticCycle:
    """``[g_j x] - [x]`` at ``place`` tensored with given pairs elsewhere."""
    from .projective import moebius_apply

    f = group.factors[place]
    pairs = list(others)
    pairs.insert(place, (moebius_apply(f.matrix(j), base), base))
    return PlecticCycle.elementary(group.prime, pairs)


# Kunneth


def kunneth_compose(j1: JacobianElement, j2: JacobianElement, lattice: PeriodLattice | None = None) -> JacobianElement:
    g1, g2 = j1.lattice.group, j2.lattice.group
    if lattice is None:
        group = PlecticGroup(g1.prime, g1.factors + g2.factors, g1.precision)
        lattice = PeriodLattice(group, j1.lattice.factors + j2.lattice.factors)
    return reduce_slots(lattice, j1.slots + j2.slots)


def kunneth_decompose(x: JacobianElement, split: int) -> tuple[JacobianElement, JacobianElement]:
    """Split after the first ``split`` places."""
    lat, group = x.lattice, x.lattice.group
    if not 0 < split < group.places:
        raise ValueError("split must leave places on both sides")
    left = PeriodLattice(PlecticGroup(group.prime, group.factors[:split], group.precision), lat.factors[:split])
    right = PeriodLattice(PlecticGroup(group.prime, group.factors[split:], group.precision), lat.factors[split:])
    return reduce_slots(left, x.slots[:split]), reduce_slots(right, x.slots[split:])


def sub_lattice(lattice: PeriodLattice, place: int) -> PeriodLattice:
    group = lattice.group
    fp = lattice.factors[place]
    moved = FactorPeriods(0, fp.matrix, fp.valuations, fp.hermite, fp.transform)
    return PeriodLattice(single_place_group(group, place), [moved])


# Tate curves


@dataclass
class TateCurve:
    """The multiplicative group modulo ``q^Z`` with ``v(q) >= 1``."""

    prime: int
    q: object

    def __post_init__(self):
        if isinstance(self.q, int):
            self.q = Fraction(self.q)
        if scalar_valuation(self.prime, self.q) < 1:
            raise ValueError("the Tate period needs positive valuation")

    @property
    def vq(self) -> int:
        return scalar_valuation(self.prime, self.q)

    def normalize(self, u):
        """Representative with ``0 <= v(u) < v(q)``."""
        if isinstance(u, int):
            u = Fraction(u)
        k = scalar_valuation(self.prime, u) // self.vq
        return _mul(self.prime, u, _pow(self.prime, self.q, -k)) if k else u

    def identity(self):
        return Fraction(1)

    def add(self, u, w):
        return self.normalize(_mul(self.prime, u, w))

    def neg(self, u):
        return self.normalize(_inv(self.prime, u))

    def equal(self, u, w, digits: int | None = None) -> bool:
        digits = current_policy().output if digits is None else digits
        a, b = self.normalize(u), self.normalize(w)
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a == b
        return scalar_agreement(self.prime, a, b) >= digits


@dataclass
class Commensurability:
    commensurable: bool
    exponents: tuple[int, int] | None
    certified: bool
    digits: int | None = None

    def to_json(self) -> dict:
        return {
            "commensurable": self.commensurable,
            "exponents": list(self.exponents) if self.exponents else None,
            "certified": self.certified,
            "digits": self.digits,
        }


def commensurability_check(p: int, q, qt, strict: bool = False) -> Commensurability:
    """Smallest positive ``(a, b)`` with ``q^a = qt^b``.  The valuations fix the
    ratio; the unit ``q^a / qt^b`` must then be a root of unity.  For p-adic
    inputs agreement to full precision is reported uncertified (or raises
    ``PrecisionInsufficient`` when ``strict``)."""
    q = Fraction(q) if isinstance(q, int) else q
    qt = Fraction(qt) if isinstance(qt, int) else qt
    v, vt = scalar_valuation(p, q), scalar_valuation(p, qt)
    if v < 1 or vt < 1:
        raise ValueError("periods need positive valuation")
    g = math.gcd(v, vt)
    a, b = vt // g, v // g
    u = _mul(p, _pow(p, q, a), _pow(p, qt, -b))
    if isinstance(u, Fraction):
        if u == 1:
            return Commensurability(True, (a, b), True)
        if u == -1:
            return Commensurability(True, (2 * a, 2 * b), True)
        return Commensurability(False, None, True)
    order = 2 if p == 2 else p - 1
    u = as_padic(p, u)
    prec = u.precision
    for k in range(1, order + 1):
        if order % k:
            continue
        d = scalar_agreement(p, _pow(p, u, k), Fraction(1))
        if d >= prec:
            if strict:
                raise PrecisionInsufficient(f"q^{k * a} and qt^{k * b} agree to {d} digits but equality is not certified")
            return Commensurability(True, (k * a, k * b), False, d)
    return Commensurability(False, None, True)


# modular projection


def _factor_character(lam: dict[tuple[int, ...], int], shape: Sequence[int]) -> list[list[int]]:
    from .integration import _factor_exponents

    table = {tuple(i - 1 for i in idx): v for idx, v in lam.items() if v}
    vecs = _factor_exponents(table, shape)
    if vecs is None:
        raise NonElementary("the character is not a tensor of characters of the factors")
    return vecs


@dataclass
class ModularProjection:
    lattice: PeriodLattice
    character: tuple[int, ...]
    curves: list[TateCurve]
    slot_characters: list[list[int]] = field(default_factory=list)

    def contract(self, x: JacobianElement) -> tuple:
        p = self.lattice.group.prime
        out = []
        for slot, lam in zip(x.slots, self.slot_characters):
            acc = Fraction(1)
            for a, e in zip(slot, lam):
                if e:
                    acc = _mul(p, acc, _pow(p, a, e))
            out.append(acc)
        return tuple(out)

    def apply(self, x: JacobianElement) -> tuple:
        return tuple(E.normalize(c) for E, c in zip(self.curves, self.contract(x)))


def modular_projection(lattice: PeriodLattice, character: Sequence[int], periods: Sequence) -> ModularProjection:
    """Contract with an integer character of the measure basis, then reduce
    each place modulo its Tate period."""
    group = lattice.group
    basis = _basis(group)
    lam = tuple(int(x) for x in character)
    if len(lam) != len(basis):
        raise ValueError(f"character needs {len(basis)} entries")
    if math.gcd(*lam) != 1:
        raise NonPrimitiveCharacter(f"character {lam} is not primitive")
    if len(periods) != group.places:
        raise ValueError("one Tate period per place")
    curves = [TateCurve(group.prime, q) for q in periods]
    vecs = _factor_character(dict(zip(basis, lam)), [f.rank for f in group.factors])
    return ModularProjection(lattice, lam, curves, vecs)


def tate_point_ops(curve: TateCurve, op: str, u, w=None):
    """``op`` is one of ``add``, ``neg``, ``normalize``, ``equal``."""
    if op == "add":
        return curve.add(u, w)
    if op == "neg":
        return curve.neg(u)
    if op == "normalize":
        return curve.normalize(u)
    if op == "equal":
        return curve.equal(u, w)
    raise ValueError(f"unknown Tate curve operation {op!r}")
