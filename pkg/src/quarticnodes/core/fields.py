"""Exact scalar backends: the rationals and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` values (always in
lowest terms with a positive denominator).  Prime-field scalars are
:class:`Fp` instances holding a residue in ``[0, p)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational


class FieldMismatchError(TypeError):
    """Raised when scalars from different backends meet in one operation."""


class RationalField:
    """The field Q, backed by :class:`fractions.Fraction`."""

    characteristic = 0
    name = "QQ"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fp):
            raise FieldMismatchError(f"cannot coerce {value!r} into QQ")
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, (Integral, Rational)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into QQ")

    def contains(self, value) -> bool:
        return isinstance(value, (Fraction, int)) and not isinstance(value, bool)

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __reduce__(self):
        return (_rational_field, ())


def _rational_field() -> RationalField:
    return QQ


QQ = RationalField()


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


class PrimeField:
    """The prime field F_p.  Instances are interned per modulus."""

    __slots__ = ("p",)

    def __new__(cls, p: int):
        return _prime_field(int(p))

    @classmethod
    def _create(cls, p: int) -> "PrimeField":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        obj = object.__new__(cls)
        obj.p = p
        return obj

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    @property
    def zero(self) -> "Fp":
        return Fp(0, self.p)

    @property
    def one(self) -> "Fp":
        return Fp(1, self.p)

    def __call__(self, value) -> "Fp":
        p = self.p
        if isinstance(value, Fp):
            if value.p != p:
                raise FieldMismatchError(f"residue mod {value.p} is not in GF({p})")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Integral):
            return Fp(int(value), p)
        if isinstance(value, Rational):
            den = int(value.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            return Fp(int(value.numerator) * pow(den, -1, p), p)
        raise TypeError(f"cannot coerce {type(value).__name__} into GF({p})")

    def contains(self, value) -> bool:
        return isinstance(value, Fp) and value.p == self.p

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return (PrimeField, (self.p,))


@lru_cache(maxsize=None)
def _prime_field(p: int) -> PrimeField:
    return PrimeField._create(p)


def GF(p: int) -> PrimeField:
    return PrimeField(p)


class Fp:
    """An element of F_p.  Immutable; arithmetic with ints is allowed."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def _other(self, other) -> int | None:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, Integral):
            return int(other)
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"cannot mix GF({self.p}) with a rational")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(o, self.p) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, Integral):
            return (int(other) - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def field_of(value):
    """Backend of a single scalar (ints count as rational)."""
    if isinstance(value, Fp):
        return PrimeField(value.p)
    if isinstance(value, (Integral, Rational)):
        return QQ
    raise TypeError(f"not a scalar: {value!r}")


def is_zero(value) -> bool:
    return not value


def scalar_str(value) -> str:
    """Text form used by the point and polynomial grammars (``a`` or ``a/b``)."""
    if isinstance(value, Fp):
        return str(value.value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
