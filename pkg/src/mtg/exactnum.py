"""Exact numbers of the form q0 + q1*sqrt(p1) + ... + qm*sqrt(pm).

The coefficients are rationals and the p_i are distinct primes.  Because
{1, sqrt(p1), ..., sqrt(pm)} is linearly independent over Q, a value is zero
exactly when every coefficient is zero, so equality is structural and sign
determination always terminates: we evaluate a guaranteed enclosure with
fixed-point integers and double the precision until it excludes zero.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Mapping, Union

Rationalish = Union[int, Fraction]

START_BITS = 32
MAX_BITS = 4096


class NotPrimeError(ValueError):
    pass


class PrecisionLimitError(ArithmeticError):
    """Interval refinement hit MAX_BITS without deciding."""


class CoincidenceError(ValueError):
    """A value coincides exactly with an anchor where a positive gap was required."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def nth_prime(i: int) -> int:
    """1-based: nth_prime(1) == 2."""
    if i < 1:
        raise ValueError("prime index starts at 1")
    count, n = 0, 1
    while count < i:
        n += 1
        if is_prime(n):
            count += 1
    return n


def next_prime_at_least(n: int) -> int:
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


@lru_cache(maxsize=None)
def _sqrt_floor_scaled(p: int, bits: int) -> int:
    # floor(sqrt(p) * 2**bits)
    return isqrt(p << (2 * bits))


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class ExactReal:
    """Immutable q0 + sum q_p sqrt(p).

    ``unit`` is the rational part; ``roots`` maps each prime to its
    (nonzero) coefficient.  Only addition, negation and rational scaling are
    supported, which is all the constructions need.
    """

    __slots__ = ("unit", "roots", "_hash", "_enc")

    def __init__(self, unit: Rationalish = 0, roots: Mapping[int, Rationalish] | None = None):
        self.unit = Fraction(unit)
        cleaned = {}
        for p, c in (roots or {}).items():
            p = int(p)
            if not is_prime(p):
                raise NotPrimeError(f"{p} is not prime")
            c = Fraction(c)
            if c:
                cleaned[p] = c
        self.roots = tuple(sorted(cleaned.items()))
        self._hash = None
        self._enc = None

    @classmethod
    def _raw(cls, unit: Fraction, roots: tuple) -> "ExactReal":
        obj = cls.__new__(cls)
        obj.unit = unit
        obj.roots = roots
        obj._hash = None
        obj._enc = None
        return obj

    @classmethod
    def sqrt(cls, p: int, coeff: Rationalish = 1) -> "ExactReal":
        return cls(0, {p: coeff})

    @classmethod
    def coerce(cls, x) -> "ExactReal":
        if isinstance(x, ExactReal):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._raw(Fraction(x), ())
        raise TypeError(f"cannot convert {type(x).__name__} to ExactReal")

    @property
    def basis_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.roots)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return (self.unit,) + tuple(c for _, c in self.roots)

    def is_rational(self) -> bool:
        return not self.roots

    def is_zero(self) -> bool:
        return not self.unit and not self.roots

    # arithmetic

    def __add__(self, other):
        try:
            other = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        merged = dict(self.roots)
        for p, c in other.roots:
            s = merged.get(p, 0) + c
            if s:
                merged[p] = s
            else:
                merged.pop(p, None)
        return ExactReal._raw(self.unit + other.unit, tuple(sorted(merged.items())))

    __radd__ = __add__

    def __neg__(self):
        return ExactReal._raw(-self.unit, tuple((p, -c) for p, c in self.roots))

    def __sub__(self, other):
        try:
            other = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if isinstance(k, ExactReal):
            if k.is_rational():
                k = k.unit
            elif self.is_rational():
                return k * self.unit
            else:
                raise TypeError("products of irrational ExactReals are not supported")
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        k = Fraction(k)
        if not k:
            return ExactReal._raw(Fraction(0), ())
        return ExactReal._raw(self.unit * k, tuple((p, c * k) for p, c in self.roots))

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, ExactReal) and k.is_rational():
            k = k.unit
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(k))

    def __abs__(self):
        return -self if sign(self) < 0 else self

    # comparisons

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.roots and self.unit == other
        if not isinstance(other, ExactReal):
            return NotImplemented
        return self.unit == other.unit and self.roots == other.roots

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.unit, self.roots))
        return self._hash

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self):
        lo, hi = enclosure(self, 64)
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"ExactReal({self})"

    def __str__(self):
        parts = []
        if self.unit or not self.roots:
            parts.append(str(self.unit))
        for p, c in self.roots:
            if c == 1:
                term = f"sqrt({p})"
            elif c == -1:
                term = f"-sqrt({p})"
            else:
                term = f"{c}*sqrt({p})"
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    # serialization

    def to_json(self) -> dict:
        return {
            "unit": _frac_str(self.unit),
            "roots": {str(p): _frac_str(c) for p, c in self.roots},
        }

    @classmethod
    def from_json(cls, obj) -> "ExactReal":
        if isinstance(obj, (int, str)):
            return cls(_parse_frac(obj))
        return cls(_parse_frac(obj.get("unit", "0")),
                   {int(p): _parse_frac(c) for p, c in obj.get("roots", {}).items()})


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    s = str(s).strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"decimal literal {s!r} not allowed; use p/q")
    return Fraction(s)


def make(coeff_map: Mapping[int, Rationalish] | None = None, unit: Rationalish = 0) -> ExactReal:
    return ExactReal(unit, coeff_map)


def _scaled_bounds(x: ExactReal, bits: int) -> tuple[int, int]:
    # integers lo, hi with lo <= x * 2**bits <= hi
    scale = 1 << bits
    n, d = x.unit.numerator, x.unit.denominator
    lo = (n * scale) // d
    hi = _ceil_div(n * scale, d)
    for p, c in x.roots:
        s_lo = _sqrt_floor_scaled(p, bits)
        s_hi = s_lo + 1
        n, d = c.numerator, c.denominator
        if n > 0:
            lo += (n * s_lo) // d
            hi += _ceil_div(n * s_hi, d)
        else:
            lo += (n * s_hi) // d
            hi += _ceil_div(n * s_lo, d)
    return lo, hi


_CACHE_BITS = 64


def _cached_bounds(x: ExactReal) -> tuple[int, int]:
    if x._enc is None:
        x._enc = _scaled_bounds(x, _CACHE_BITS)
    return x._enc


def enclosure(x: ExactReal, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= x <= hi with denominators 2**bits (exact for rationals)."""
    if x.is_rational():
        return x.unit, x.unit
    lo, hi = _scaled_bounds(x, bits)
    return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)


def sign(x: ExactReal) -> int:
    x = ExactReal.coerce(x)
    if x.is_rational():
        return (x.unit > 0) - (x.unit < 0)
    bits = START_BITS
    while bits <= MAX_BITS:
        lo, hi = enclosure(x, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    raise PrecisionLimitError(f"sign of {x} undecided at {MAX_BITS} bits")


def compare(x, y) -> int:
    """-1, 0 or +1 as x <, ==, > y."""
    x, y = ExactReal.coerce(x), ExactReal.coerce(y)
    if x == y:
        return 0
    # cheap test on cached 64-bit enclosures before forming x - y
    xlo, xhi = _cached_bounds(x)
    ylo, yhi = _cached_bounds(y)
    if xhi < ylo:
        return -1
    if xlo > yhi:
        return 1
    return sign(x - y)


def approximate(x: ExactReal, decimal_digits: int) -> tuple[Fraction, Fraction]:
    if decimal_digits < 1:
        raise ValueError("decimal_digits must be positive")
    x = ExactReal.coerce(x)
    if x.is_rational():
        return x.unit, x.unit
    tol = Fraction(1, 10 ** decimal_digits)
    bits = START_BITS
    while True:
        lo, hi = enclosure(x, bits)
        if hi - lo <= tol:
            return lo, hi
        bits *= 2
        if bits > 1 << 20:
            raise PrecisionLimitError("approximation did not converge")


def positive_lower_bound(x: ExactReal) -> Fraction:
    """A rational 0 < L <= x for a positive x."""
    x = ExactReal.coerce(x)
    if sign(x) <= 0:
        raise ValueError(f"{x} is not positive")
    if x.is_rational():
        return x.unit
    bits = START_BITS
    while True:
        lo, _ = enclosure(x, bits)
        if lo > 0:
            return lo
        bits *= 2


def min_positive_gap(values: Iterable[ExactReal], anchors: Iterable[ExactReal]) -> Fraction:
    """Rational L > 0 with L <= |a - v| for every anchor a and value v.

    Raises CoincidenceError when some value equals an anchor exactly.
    """
    anchors = [ExactReal.coerce(a) for a in anchors]
    best = None
    seen = set()
    for v in values:
        v = ExactReal.coerce(v)
        if v in seen:
            continue
        seen.add(v)
        for a in anchors:
            d = a - v
            if d.is_zero():
                raise CoincidenceError(f"value {v} coincides with anchor {a}")
            lb = positive_lower_bound(abs(d))
            if best is None or lb < best:
                best = lb
    if best is None:
        raise ValueError("min_positive_gap needs at least one (anchor, value) pair")
    return best
