"""Exact ground fields: the rationals (backed by gmpy2.mpq) and prime fields."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq


class FieldMismatch(ValueError):
    pass


class Field:
    name: str
    zero: object
    one: object

    def __call__(self, value):
        raise NotImplementedError

    def parse(self, text: str):
        """Read a coefficient written as ``n`` or ``n/d``."""
        num, _, den = text.partition("/")
        value = self(int(num))
        if den:
            d = self(int(den))
            if not d:
                raise ZeroDivisionError(f"zero denominator in {text!r}")
            value = value / d
        return value

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, value):
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        if isinstance(value, Fp):
            raise FieldMismatch("cannot coerce a prime-field residue into Q")
        return mpq(value)

    def contains(self, value) -> bool:
        return type(value) is type(self.zero)

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class Fp:
    """Residue modulo a prime, stored in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, Fp):
            if o.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({o.p})")
            return o.v
        if isinstance(o, int):
            return o
        return None

    def __add__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else Fp(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else Fp(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else Fp(w - self.v, self.p)

    def __mul__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else Fp(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Fp(w, self.p) / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, n: int):
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, Fp):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or p >= 2**31 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"GF(p) needs a prime p < 2^31, got {p}")
        self.p = p
        self.name = f"GF({p})"
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, value):
        if isinstance(value, Fp):
            if value.p != self.p:
                raise FieldMismatch(f"{value!r} is not in {self.name}")
            return value
        if isinstance(value, (Fraction, type(mpq(0)))):
            return Fp(int(value.numerator), self.p) / Fp(int(value.denominator), self.p)
        return Fp(int(value), self.p)

    def contains(self, value) -> bool:
        return isinstance(value, Fp) and value.p == self.p

    def to_json(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(spec) -> Field:
    if spec in ("Q", "QQ"):
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return GF(int(spec["Fp"]))
    raise ValueError(f"unknown field spec {spec!r}; expected \"Q\" or {{\"Fp\": p}}")
