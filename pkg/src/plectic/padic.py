"""Fixed-precision p-adic scalars and the unramified quadratic extension.

A nonzero ``PadicScalar`` stores ``p**valuation * unit`` where ``unit`` is an
integer prime to ``p`` known modulo ``p**precision`` (relative precision).
A zero stores only the absolute precision to which it is known to vanish.
Exact rational data is kept as ``fractions.Fraction`` elsewhere and lifted
here only when an evaluation needs it.
"""

from __future__ import annotations

import contextlib
import contextvars
import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Union

from .errors import (
    CancellationError,
    DivisionByZero,
    NotASquare,
    PrimeMismatch,
    RamifiedUnsupported,
)

INF = math.inf
Rational = Union[int, Fraction]


@dataclass(frozen=True)
class PrecisionPolicy:
    working: int = 64
    output: int = 20
    cancellation_floor: int = 1


_POLICY: contextvars.ContextVar[PrecisionPolicy] = contextvars.ContextVar(
    "plectic_precision", default=PrecisionPolicy()
)


def current_policy() -> PrecisionPolicy:
    return _POLICY.get()


@contextlib.contextmanager
def precision_policy(**changes) -> Iterator[PrecisionPolicy]:
    """Temporarily override fields of the active precision policy."""
    policy = replace(_POLICY.get(), **changes)
    token = _POLICY.set(policy)
    try:
        yield policy
    finally:
        _POLICY.reset(token)


def vp(p: int, x: Rational) -> float | int:
    """Exact p-adic valuation of a rational number (``inf`` for zero)."""
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(p, x.numerator) - _vp_int(p, x.denominator)


def _vp_int(p: int, n: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _split(p: int, n: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def to_fraction(s) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"not a rational: {s!r}")


class PadicScalar:
    __slots__ = ("prime", "valuation", "unit", "precision")

    def __init__(self, prime: int, valuation, unit: int, precision: int):
        self.prime = prime
        self.valuation = valuation
        self.unit = unit
        self.precision = precision

    # construction

    @classmethod
    def zero(cls, prime: int, abs_precision: int) -> PadicScalar:
        return cls(prime, INF, 0, abs_precision)

    @classmethod
    def from_rational(cls, prime: int, x: Rational, precision: int | None = None) -> PadicScalar:
        if precision is None:
            precision = current_policy().working
        x = Fraction(x)
        if x == 0:
            return cls.zero(prime, precision)
        vn, n = _split(prime, x.numerator)
        vd, d = _split(prime, x.denominator)
        mod = prime**precision
        unit = n * pow(d, -1, mod) % mod
        return cls(prime, vn - vd, unit, precision)

    @classmethod
    def from_digits(cls, prime: int, valuation: int, digits: list[int]) -> PadicScalar:
        unit = sum(d * prime**i for i, d in enumerate(digits))
        if not digits or digits[0] % prime == 0:
            raise ValueError("leading digit must be a unit")
        return cls(prime, valuation, unit, len(digits))

    # basic properties

    def is_zero(self) -> bool:
        return self.valuation == INF

    @property
    def abs_precision(self) -> int:
        if self.is_zero():
            return self.precision
        return self.valuation + self.precision

    def digits(self) -> list[int]:
        if self.is_zero():
            return []
        out, u = [], self.unit
        for _ in range(self.precision):
            u, r = divmod(u, self.prime)
            out.append(r)
        return out

    def leading_digit(self) -> int:
        return self.unit % self.prime

    def truncate(self, abs_precision: int) -> PadicScalar:
        if self.is_zero():
            return PadicScalar.zero(self.prime, min(self.precision, abs_precision))
        if abs_precision <= self.valuation:
            return PadicScalar.zero(self.prime, abs_precision)
        rel = min(self.precision, abs_precision - self.valuation)
        return PadicScalar(self.prime, self.valuation, self.unit % self.prime**rel, rel)

    def with_precision(self, rel: int) -> PadicScalar:
        if self.is_zero() or rel >= self.precision:
            return self
        return PadicScalar(self.prime, self.valuation, self.unit % self.prime**rel, rel)

    # coercion

    def _coerce(self, other) -> PadicScalar:
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise PrimeMismatch(f"{self.prime} != {other.prime}")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicScalar.from_rational(self.prime, other)
        return NotImplemented

    def _residue(self, m: int, n: int) -> int:
        # self * p**-m mod p**(n-m), assuming m <= valuation
        if self.is_zero() or self.valuation >= n:
            return 0
        return self.unit * self.prime ** (self.valuation - m) % self.prime ** (n - m)

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.prime
        n = min(self.abs_precision, other.abs_precision)
        if self.is_zero():
            return other.truncate(n)
        if other.is_zero():
            return self.truncate(n)
        v = min(self.valuation, other.valuation)
        if n <= v:
            return PadicScalar.zero(p, n)
        total = (self._residue(v, n) + other._residue(v, n)) % p ** (n - v)
        floor = current_policy().cancellation_floor
        if total == 0:
            if floor > 0:
                raise CancellationError("sum vanishes to working precision")
            return PadicScalar.zero(p, n)
        k, unit = _split(p, total)
        rel = n - v - k
        if rel < floor:
            raise CancellationError(f"only {rel} digits survive the subtraction")
        return PadicScalar(p, v + k, unit, rel)

    __radd__ = __add__

    def __neg__(self) -> PadicScalar:
        if self.is_zero():
            return self
        return PadicScalar(self.prime, self.valuation, -self.unit % self.prime**self.precision, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.prime
        if self.is_zero() or other.is_zero():
            if self.is_zero() and other.is_zero():
                return PadicScalar.zero(p, self.precision + other.precision)
            z, x = (self, other) if self.is_zero() else (other, self)
            return PadicScalar.zero(p, z.precision + x.valuation)
        rel = min(self.precision, other.precision)
        return PadicScalar(p, self.valuation + other.valuation, self.unit * other.unit % p**rel, rel)

    __rmul__ = __mul__

    def inverse(self) -> PadicScalar:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        mod = self.prime**self.precision
        return PadicScalar(self.prime, -self.valuation, pow(self.unit, -1, mod), self.precision)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> PadicScalar:
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return PadicScalar.from_rational(self.prime, 1, self.precision if not self.is_zero() else None)
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_zero():
            return PadicScalar.zero(self.prime, self.precision * k)
        mod = self.prime**self.precision
        return PadicScalar(self.prime, self.valuation * k, pow(self.unit, k, mod), self.precision)

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExtScalar):
            return other == self
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.abs_precision, other.abs_precision)
        m = min(self.valuation, other.valuation, n)
        if m == INF:
            return True
        return self._residue(m, n) == other._residue(m, n)

    __hash__ = None

    def agreement(self, other) -> int:
        """Number of leading relative digits on which two scalars agree."""
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return 0
        if self.valuation != other.valuation:
            return 0
        with precision_policy(cancellation_floor=0):
            d = self - other
        cap = min(self.precision, other.precision)
        if d.is_zero():
            return cap
        return min(cap, d.valuation - self.valuation)

    # square roots

    def sqrt(self) -> PadicScalar:
        if self.is_zero():
            return PadicScalar.zero(self.prime, self.precision // 2)
        if self.valuation % 2:
            raise NotASquare("odd valuation")
        p, n, u = self.prime, self.precision, self.unit
        if p == 2:
            if n < 3:
                raise NotASquare("too few digits to decide a 2-adic square")
            if u % 8 != 1:
                raise NotASquare("unit not 1 mod 8")
            r = 1
            for k in range(3, n):
                if (r * r - u) % 2 ** (k + 1):
                    r += 2 ** (k - 1)
            rel = n - 1
            return PadicScalar(2, self.valuation // 2, r % 2**rel, rel)
        r = _sqrt_mod_p(u % p, p)
        k = 1
        while k < n:
            k = min(2 * k, n)
            mod = p**k
            r = (r - (r * r - u) * pow(2 * r, -1, mod)) % mod
        return PadicScalar(p, self.valuation // 2, r, n)

    def is_square(self) -> bool:
        try:
            self.sqrt()
        except NotASquare:
            return False
        return True

    # io

    def to_json(self) -> dict:
        if self.is_zero():
            return {"valuation": "inf", "digits": [], "precision": self.precision}
        return {"valuation": self.valuation, "digits": self.digits(), "precision": self.precision}

    @classmethod
    def from_json(cls, prime: int, data: dict) -> PadicScalar:
        if data["valuation"] == "inf":
            return cls.zero(prime, data["precision"])
        if len(data["digits"]) != data["precision"]:
            raise ValueError("digit count differs from precision")
        return cls.from_digits(prime, data["valuation"], data["digits"])

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O({self.prime}^{self.precision})"
        return f"PadicScalar({self.prime}, v={self.valuation}, digits={self.digits()})"


def _sqrt_mod_p(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise NotASquare("not a unit")
    if pow(a, (p - 1) // 2, p) != 1:
        raise NotASquare(f"{a} is not a square mod {p}")
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 2 ** (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def default_nonsquare(p: int) -> int:
    """Smallest positive d giving the unramified quadratic extension."""
    if p == 2:
        return 5
    d = 2
    while pow(d, (p - 1) // 2, p) != p - 1:
        d += 1
    return d


def lift(p: int, x) -> PadicScalar | QuadExtScalar:
    if isinstance(x, (PadicScalar, QuadExtScalar)):
        return x
    return PadicScalar.from_rational(p, x)


class QuadExtScalar:
    """``a + b*w`` with ``w*w = d``; unramified when ``d`` is a non-square unit."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if not isinstance(a, PadicScalar):
            a = PadicScalar.from_rational(b.prime, a)
        if not isinstance(b, PadicScalar):
            b = PadicScalar.from_rational(a.prime, b)
        if a.prime != b.prime:
            raise PrimeMismatch(f"{a.prime} != {b.prime}")
        self.a = a
        self.b = b
        self.d = d

    @property
    def prime(self) -> int:
        return self.a.prime

    @property
    def ramified(self) -> bool:
        return vp(self.prime, self.d) % 2 == 1

    def _coerce(self, other) -> QuadExtScalar:
        if isinstance(other, QuadExtScalar):
            if other.prime != self.prime:
                raise PrimeMismatch(f"{self.prime} != {other.prime}")
            if other.d != self.d:
                raise ValueError("different quadratic extensions")
            return other
        if isinstance(other, (int, Fraction, PadicScalar)):
            a = lift(self.prime, other)
            if a.prime != self.prime:
                raise PrimeMismatch(f"{self.prime} != {a.prime}")
            return QuadExtScalar(a, PadicScalar.zero(self.prime, _big_precision(self)), self.d)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    @property
    def valuation(self):
        if self.ramified:
            vd = vp(self.prime, self.d)
            return min(Fraction(self.a.valuation) if not self.a.is_zero() else INF,
                       Fraction(self.b.valuation) + Fraction(vd, 2) if not self.b.is_zero() else INF)
        return min(self.a.valuation, self.b.valuation)

    def is_rational(self) -> bool:
        return self.b.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = QuadExtScalar(_lenient_add(self.a, other.a), _lenient_add(self.b, other.b), self.d)
        floor = current_policy().cancellation_floor
        if floor > 0 and not self.ramified:
            v = out.valuation
            rel = min(out.a.abs_precision, out.b.abs_precision) - v
            if v == INF or rel < floor:
                raise CancellationError("sum vanishes to working precision")
        return out

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return QuadExtScalar(self.a * other, self.b * other, self.d)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a = _lenient_add(self.a * other.a, self.b * other.b * self.d)
        b = _lenient_add(self.a * other.b, self.b * other.a)
        return QuadExtScalar(a, b, self.d)

    __rmul__ = __mul__

    def norm(self) -> PadicScalar:
        # a^2 - d b^2 never cancels in the unramified case
        return _lenient_add(self.a * self.a, -(self.b * self.b * self.d))

    def inverse(self) -> QuadExtScalar:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.norm()
        if n.is_zero():
            raise DivisionByZero("norm vanishes to working precision")
        ni = n.inverse()
        return QuadExtScalar(self.a * ni, -(self.b * ni), self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return self * lift(self.prime, other).inverse()
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadExtScalar(PadicScalar.from_rational(self.prime, 1), PadicScalar.zero(self.prime, _big_precision(self)), self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def frobenius(self) -> QuadExtScalar:
        if self.ramified:
            raise RamifiedUnsupported("Frobenius is defined on the unramified extension only")
        return QuadExtScalar(self.a, -self.b, self.d)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    __hash__ = None

    def agreement(self, other) -> int:
        other = self._coerce(other)
        if self.ramified:
            raise RamifiedUnsupported("digit agreement on a ramified extension")
        v = self.valuation
        if v == INF or other.valuation != v:
            return 0
        with precision_policy(cancellation_floor=0):
            da, db = self.a - other.a, self.b - other.b
        cap = min(x for x in (_rel_cap(self.a, v), _rel_cap(self.b, v), _rel_cap(other.a, v), _rel_cap(other.b, v)))
        dv = min(da.valuation if not da.is_zero() else INF, db.valuation if not db.is_zero() else INF)
        return int(min(cap, dv - v))

    def to_json(self) -> dict:
        if self.ramified:
            raise RamifiedUnsupported("serialization of ramified elements")
        return {"a": self.a.to_json(), "b": self.b.to_json(), "d": self.d}

    def __repr__(self) -> str:
        return f"QuadExtScalar({self.a!r} + {self.b!r}*w, d={self.d})"


def _rel_cap(x: PadicScalar, v) -> int:
    return x.abs_precision - v


def _big_precision(x: QuadExtScalar) -> int:
    return max(x.a.abs_precision, x.b.abs_precision) + current_policy().working


def _lenient_add(x: PadicScalar, y: PadicScalar) -> PadicScalar:
    # coordinates of an extension element may vanish without the element vanishing
    with precision_policy(cancellation_floor=0):
        return x + y


# named operations


def padic_add(x: PadicScalar, y: PadicScalar) -> PadicScalar:
    return x + y


def padic_mul(x: PadicScalar, y: PadicScalar) -> PadicScalar:
    return x * y


def padic_inv(x: PadicScalar) -> PadicScalar:
    return x.inverse()


def ext_frobenius(z: QuadExtScalar) -> QuadExtScalar:
    return z.frobenius()


def serialize_padic(x: PadicScalar) -> str:
    """Canonical JSON record: sorted keys, no whitespace."""
    return json.dumps(x.to_json(), sort_keys=True, separators=(",", ":"))


def deserialize_padic(prime: int, record: str) -> PadicScalar:
    return PadicScalar.from_json(prime, json.loads(record))
