"""Points of the projective line and the Moebius action of PGL2.

Group elements carry exact rational entries; points may be exact rationals,
p-adic scalars or elements of the unramified quadratic extension.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import CancellationError, NotHyperbolic, PoleError, SingularMatrix
from .padic import (
    INF,
    PadicScalar,
    QuadExtScalar,
    precision_policy,
    to_fraction,
    vp,
)

Coord = Union[Fraction, PadicScalar, QuadExtScalar]

HYPERBOLIC = "hyperbolic"
PARABOLIC = "parabolic"
ELLIPTIC = "elliptic"


def valuation(p: int, x) -> float | int | Fraction:
    if isinstance(x, (PadicScalar, QuadExtScalar)):
        return x.valuation
    return vp(p, x)


def is_zero(x) -> bool:
    if isinstance(x, (PadicScalar, QuadExtScalar)):
        return x.is_zero()
    return x == 0


def _exact(x) -> bool:
    return isinstance(x, (int, Fraction))


class ProjPoint:
    """A point ``[x0 : x1]`` normalised so the coordinate of least valuation is 1."""

    __slots__ = ("prime", "x0", "x1")

    def __init__(self, prime: int, x0, x1, *, normalized: bool = False):
        self.prime = prime
        if normalized:
            self.x0, self.x1 = x0, x1
            return
        if _exact(x0):
            x0 = Fraction(x0)
        if _exact(x1):
            x1 = Fraction(x1)
        if is_zero(x1):
            if is_zero(x0):
                raise ValueError("[0:0] is not a point")
            self.x0, self.x1 = Fraction(1), Fraction(0)
        elif is_zero(x0):
            self.x0, self.x1 = Fraction(0), Fraction(1)
        elif valuation(prime, x1) <= valuation(prime, x0):
            self.x0, self.x1 = x0 / x1, Fraction(1)
        else:
            self.x0, self.x1 = Fraction(1), x1 / x0

    @classmethod
    def infinity(cls, prime: int) -> ProjPoint:
        return cls(prime, Fraction(1), Fraction(0), normalized=True)

    @classmethod
    def of(cls, prime: int, z) -> ProjPoint:
        if isinstance(z, str):
            if z.strip().lower() in ("inf", "infinity", "oo"):
                return cls.infinity(prime)
            z = to_fraction(z)
        if isinstance(z, int):
            z = Fraction(z)
        return cls(prime, z, Fraction(1))

    def is_infinity(self) -> bool:
        return is_zero(self.x1)

    def is_exact(self) -> bool:
        return _exact(self.x0) and _exact(self.x1)

    def affine(self):
        """The finite coordinate ``x0/x1``; ``None`` at infinity."""
        if self.is_infinity():
            return None
        if self.x1 == 1 and _exact(self.x1):
            return self.x0
        return self.x0 / self.x1

    def lifted(self) -> ProjPoint:
        """Same point with rational coordinates converted to p-adic scalars."""
        if not self.is_exact():
            return self
        return ProjPoint(
            self.prime,
            PadicScalar.from_rational(self.prime, self.x0),
            PadicScalar.from_rational(self.prime, self.x1),
            normalized=True,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.is_infinity() or other.is_infinity():
            return self.is_infinity() and other.is_infinity()
        if (self.x1 == 1) != (other.x1 == 1):
            return False
        return _coord_eq(self.x0, other.x0) and _coord_eq(self.x1, other.x1)

    def __hash__(self):
        if not self.is_exact():
            raise TypeError("approximate points are not hashable")
        return hash((self.x0, self.x1))

    def to_str(self) -> str:
        if self.is_infinity():
            return "inf"
        z = self.affine()
        return str(z) if _exact(z) else repr(z)

    def __repr__(self) -> str:
        return f"ProjPoint({self.to_str()})"


def _coord_eq(a, b) -> bool:
    if _exact(a) and _exact(b):
        return a == b
    if _exact(a):
        a, b = b, a
    return a == b


class PGL2Elem:
    """An invertible 2x2 matrix with rational entries, up to scalars."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (to_fraction(x) for x in (a, b, c, d))
        if self.det() == 0:
            raise SingularMatrix(f"singular matrix {self.rows()}")

    @classmethod
    def from_rows(cls, rows) -> PGL2Elem:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> PGL2Elem:
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, x, y) -> PGL2Elem:
        return cls(x, 0, 0, y)

    def rows(self) -> list[list[Fraction]]:
        return [[self.a, self.b], [self.c, self.d]]

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Fraction:
        return self.a + self.d

    def __matmul__(self, other: PGL2Elem) -> PGL2Elem:
        return PGL2Elem(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> PGL2Elem:
        return PGL2Elem(self.d, -self.b, -self.c, self.a)

    def key(self) -> tuple[int, int, int, int]:
        """Primitive integer representative with positive leading entry."""
        entries = (self.a, self.b, self.c, self.d)
        den = math.lcm(*(x.denominator for x in entries))
        ints = [int(x * den) for x in entries]
        g = math.gcd(*ints)
        ints = [x // g for x in ints]
        lead = next(x for x in ints if x)
        if lead < 0:
            ints = [-x for x in ints]
        return tuple(ints)

    def integral(self) -> PGL2Elem:
        return PGL2Elem(*self.key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PGL2Elem):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows()]

    def __repr__(self) -> str:
        return f"PGL2Elem({self.to_json()})"


def moebius_apply(g: PGL2Elem, z: ProjPoint) -> ProjPoint:
    x0, x1 = z.x0, z.x1
    if z.is_exact():
        return ProjPoint(z.prime, g.a * x0 + g.b * x1, g.c * x0 + g.d * x1)
    return ProjPoint(z.prime, _lin(g.a, x0, g.b, x1), _lin(g.c, x0, g.d, x1))


def _lin(a: Fraction, x, b: Fraction, y):
    # a*x + b*y with exact coefficients; skips zero coefficients so that
    # exact zeros never cost precision
    if a == 0:
        return b * y
    if b == 0:
        return a * x
    return a * x + b * y


def classify_element(g: PGL2Elem, p: int) -> str:
    tr, det = g.trace(), g.det()
    if tr * tr == 4 * det:
        return PARABOLIC
    if tr != 0 and vp(p, tr * tr / det) < 0:
        return HYPERBOLIC
    return ELLIPTIC


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def eigenvalues(g: PGL2Elem, p: int):
    """Eigenvalues ``(big, small)`` ordered by increasing valuation."""
    if classify_element(g, p) != HYPERBOLIC:
        raise NotHyperbolic(f"{g} is not hyperbolic")
    tr, det = g.trace(), g.det()
    disc = tr * tr - 4 * det
    root = _rational_sqrt(disc)
    if root is not None:
        l1, l2 = (tr + root) / 2, (tr - root) / 2
        if vp(p, l1) > vp(p, l2):
            l1, l2 = l2, l1
        return l1, l2
    s = PadicScalar.from_rational(p, disc).sqrt()
    trp = PadicScalar.from_rational(p, tr)
    # choose the sign that doubles the trace rather than cancelling it
    big = trp + s if (trp + s).valuation <= (trp - s).valuation else trp - s
    big = big / 2
    small = PadicScalar.from_rational(p, det) / big
    return big, small


def _eigenvector(g: PGL2Elem, lam, p: int) -> ProjPoint:
    cands = [(g.b, lam - g.a), (lam - g.d, g.c)]
    best, best_v = None, INF
    for x0, x1 in cands:
        v = min(valuation(p, x0), valuation(p, x1))
        if v < best_v:
            best, best_v = (x0, x1), v
    return ProjPoint(p, *best)


def fixed_points(g: PGL2Elem, p: int) -> tuple[ProjPoint, ProjPoint, Coord]:
    """``(attracting, repelling, multiplier)`` with ``v(multiplier) > 0``.

    The attracting point is the limit of ``g**n z`` for generic ``z``; in the
    coordinate ``(z - att)/(z - rep)`` the element acts as multiplication by
    the multiplier.
    """
    big, small = eigenvalues(g, p)
    att = _eigenvector(g, big, p)
    rep = _eigenvector(g, small, p)
    return att, rep, small / big


def cross_ratio_factor(t: ProjPoint, x: ProjPoint, y: ProjPoint):
    """``(t - x)/(t - y)`` with the usual conventions at infinity."""
    if t.is_infinity():
        if x.is_infinity() or y.is_infinity():
            raise PoleError("t coincides with x or y")
        return Fraction(1) if t.is_exact() else PadicScalar.from_rational(t.prime, 1)
    tz = t.affine()
    num = Fraction(1) if x.is_infinity() else _difference(tz, x.affine())
    den = Fraction(1) if y.is_infinity() else _difference(tz, y.affine())
    return num / den


def _difference(a, b):
    if _exact(a) and _exact(b):
        if a == b:
            raise PoleError("t coincides with x or y")
        return a - b
    try:
        with precision_policy(cancellation_floor=1):
            return a - b if not _exact(a) else -(b - a)
    except CancellationError as exc:
        raise PoleError("t coincides with x or y to working precision") from exc


def orientation_character(g: PGL2Elem, p: int) -> int:
    return -1 if vp(p, g.det()) % 2 else 1


def compose_all(elems: Iterable[PGL2Elem]) -> PGL2Elem:
    out = PGL2Elem.identity()
    for e in elems:
        out = out @ e
    return out
