"""Exact ground fields: the rationals (backed by gmpy2.mpq) and F_p for odd p."""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq


class ModP:
    """Element of Z/pZ.  Immutable."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        # symmetric representative reads better in relation files
        v = self.v if self.v <= self.p // 2 else self.v - self.p
        return str(v)


class Field:
    """A ground field tag plus scalar coercion.

    ``Field()`` is Q; ``Field(p)`` is F_p.  Characteristic 2 is accepted here
    and rejected later by the operations that need signs.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if p < 2 or not gmpy2.is_prime(p):
                raise ValueError(f"{p} is not a prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, x):
        """Coerce an int, Fraction, mpq, ModP or numeric string to a field element."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, ModP):
                raise TypeError("cannot embed F_p element in Q")
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise ValueError("mixed characteristics")
            return x
        if isinstance(x, (Fraction, type(mpq(0)))):
            num, den = int(x.numerator), int(x.denominator)
            return ModP(num, self.p) / den
        return ModP(int(x), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def header(self) -> str:
        return "field Q" if self.p is None else f"field F {self.p}"

    def require_signs(self) -> None:
        if self.p == 2:
            raise ValueError(
                "characteristic 2: the sign automorphism is the identity, "
                "twist-dependent constructions are undefined")

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(Q)" if self.p is None else f"Field(F_{self.p})"


QQ = Field()


def format_scalar(c) -> str:
    """Exact text form: integers plainly, rationals as p/q."""
    if isinstance(c, ModP):
        return str(c)
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"
