"""Exact coefficient fields: the rationals, prime fields and Q(sqrt(p*u)).

Field elements are plain Python values so polynomial code can store them
directly in dicts:

* rationals: :class:`fractions.Fraction` (always reduced, positive denominator)
* prime field: ``int`` in ``range(p)``
* quadratic extension: ``(alpha, beta)`` tuple of Fractions meaning
  ``alpha + beta*s`` with ``s**2 == p*u``
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, ClassVar

__all__ = [
    "FieldError",
    "Field",
    "Rationals",
    "PrimeField",
    "QuadraticField",
    "QQ",
    "is_prime",
    "field_arith",
    "field_from_descriptor",
]


class FieldError(ValueError):
    """Invalid field descriptor or illegal field operation."""


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


class Field:
    """Base class; subclasses are frozen dataclasses so equality is structural."""

    kind: ClassVar[str] = ""
    characteristic: ClassVar[int] = 0

    zero: Any
    one: Any

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        raise NotImplementedError

    def from_rational(self, q: Fraction):
        raise NotImplementedError

    def element(self, value):
        """Coerce an int, Fraction or native element into canonical form."""
        if isinstance(value, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_rational(value)
        return self._coerce_native(value)

    def _coerce_native(self, value):
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def format(self, a) -> str:
        """Text form of an element, valid inside the polynomial grammar."""
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(Field):
    kind: ClassVar[str] = "rationals"
    characteristic: ClassVar[int] = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in the rationals")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def from_rational(self, q):
        return Fraction(q)

    def format(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def descriptor(self) -> dict:
        return {"kind": self.kind}

    def __str__(self) -> str:
        return "QQ"


QQ = Rationals()


@dataclass(frozen=True)
class PrimeField(Field):
    p: int
    kind: ClassVar[str] = "prime-field"

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p == 2:
            raise FieldError(f"p must be an odd prime (got {self.p!r})")

    @property
    def characteristic(self):  # type: ignore[override]
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def from_rational(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise FieldError(f"{q} has a denominator divisible by {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def format(self, a) -> str:
        return str(a)

    def descriptor(self) -> dict:
        return {"kind": self.kind, "p": self.p}

    def __str__(self) -> str:
        return f"GF({self.p})"


@dataclass(frozen=True)
class QuadraticField(Field):
    """Q(s) with s**2 = p*u; ``s`` plays the role of the uniformizer."""

    p: int
    u: int
    kind: ClassVar[str] = "quadratic-extension"
    characteristic: ClassVar[int] = 0

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p == 2:
            raise FieldError(f"p must be an odd prime (got {self.p!r})")
        if not isinstance(self.u, int) or not 1 <= self.u < self.p:
            raise FieldError(f"u must satisfy 1 <= u < p (got {self.u!r})")
        d = self.p * self.u
        if math.isqrt(d) ** 2 == d:
            raise FieldError(f"p*u = {d} is a perfect square")

    @property
    def d(self) -> int:
        return self.p * self.u

    @property
    def zero(self):
        return (Fraction(0), Fraction(0))

    @property
    def one(self):
        return (Fraction(1), Fraction(0))

    @property
    def generator(self):
        return (Fraction(0), Fraction(1))

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def mul(self, a, b):
        return (a[0] * b[0] + self.d * a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def neg(self, a):
        return (-a[0], -a[1])

    def inv(self, a):
        norm = a[0] * a[0] - self.d * a[1] * a[1]
        if norm == 0:
            raise ZeroDivisionError("division by zero in the quadratic extension")
        return (a[0] / norm, -a[1] / norm)

    def is_zero(self, a) -> bool:
        return a[0] == 0 and a[1] == 0

    def from_int(self, n):
        return (Fraction(n), Fraction(0))

    def from_rational(self, q):
        return (Fraction(q), Fraction(0))

    def _coerce_native(self, value):
        if isinstance(value, tuple) and len(value) == 2:
            return (Fraction(value[0]), Fraction(value[1]))
        return super()._coerce_native(value)

    def format(self, a) -> str:
        # the generator prints as "pi": it is the uniformizer in this field
        alpha, beta = a
        parts = []
        if alpha:
            parts.append(QQ.format(alpha))
        if beta:
            mag = QQ.format(abs(beta))
            sym = "pi" if abs(beta) == 1 else f"{mag}*pi"
            if parts:
                parts.append(("- " if beta < 0 else "+ ") + sym)
            else:
                parts.append(("-" if beta < 0 else "") + sym)
        if not parts:
            return "0"
        return " ".join(parts)

    def descriptor(self) -> dict:
        return {"kind": self.kind, "p": self.p, "u": self.u}

    def __str__(self) -> str:
        return f"QQ(sqrt({self.d}))"


def field_from_descriptor(desc: dict) -> Field:
    kind = desc.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "prime-field":
        return PrimeField(desc["p"])
    if kind == "quadratic-extension":
        return QuadraticField(desc["p"], desc["u"])
    raise FieldError(f"unknown field kind {kind!r}")


_OPS = {"add": 2, "sub": 2, "mul": 2, "div": 2, "neg": 1, "inv": 1}


def field_arith(op: str, a, b=None, *, field: Field):
    """Apply one of add/sub/mul/div/neg/inv to canonical elements of ``field``."""
    if op not in _OPS:
        raise FieldError(f"unknown field operation {op!r}")
    a = field.element(a)
    if _OPS[op] == 1:
        return getattr(field, op)(a)
    if b is None:
        raise FieldError(f"{op} needs two operands")
    return getattr(field, op)(a, field.element(b))
