"""Exact scalar arithmetic over prime fields F_p and the rationals Q.

Scalars are immutable and carry their field.  Prime-field values are stored
as canonical residues in ``[0, p)``; rationals as :class:`fractions.Fraction`
(lowest terms, positive denominator).  Plain Python ints are coerced into the
field of the other operand, so ``-d`` or ``2 * d`` work as expected.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

__all__ = [
    "FieldError",
    "FieldMismatchError",
    "ScalarParseError",
    "Field",
    "Scalar",
    "is_prime",
    "scalar_parse",
    "scalar_arith",
]


class FieldError(ValueError):
    """Base class for field-level errors."""


class FieldMismatchError(FieldError):
    pass


class ScalarParseError(FieldError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class Field:
    """A prime field (``kind == "Fp"``) or the rationals (``kind == "Q"``)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Fp":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise FieldError(f"F_p needs a prime p, got {self.p!r}")
        elif self.kind == "Q":
            if self.p is not None:
                raise FieldError("the rationals take no modulus")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls("Fp", p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls("Q")

    @property
    def is_finite(self) -> bool:
        return self.kind == "Fp"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    @property
    def zero(self) -> "Scalar":
        return Scalar._raw(self, 0 if self.kind == "Fp" else Fraction(0))

    @property
    def one(self) -> "Scalar":
        return Scalar._raw(self, 1 if self.kind == "Fp" else Fraction(1))

    def __call__(self, value: Union[int, Fraction, "Scalar", str]) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} is not in {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            value = int(value)
        if self.kind == "Fp":
            if isinstance(value, Fraction):
                return self._fp_fraction(value.numerator, value.denominator)
            if not isinstance(value, int):
                raise FieldError(f"cannot coerce {value!r} into {self}")
            return Scalar._raw(self, value % self.p)
        if isinstance(value, (int, Fraction)):
            return Scalar._raw(self, Fraction(value))
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def _fp_fraction(self, num: int, den: int) -> "Scalar":
        if den % self.p == 0:
            raise ScalarParseError(f"denominator {den} is not invertible mod {self.p}")
        return Scalar._raw(self, num * pow(den, -1, self.p) % self.p)

    def parse(self, text: str) -> "Scalar":
        """Parse ``"n"`` or ``"n/m"`` into a canonical scalar."""
        match = _SCALAR_RE.match(text) if isinstance(text, str) else None
        if match is None:
            raise ScalarParseError(f"malformed scalar {text!r}")
        num = int(match.group(1))
        if match.group(2) is None:
            return self(num)
        den = int(match.group(2))
        if den == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        if self.kind == "Fp":
            return self._fp_fraction(num, den)
        return Scalar._raw(self, Fraction(num, den))

    def elements(self) -> Iterator["Scalar"]:
        if self.kind != "Fp":
            raise FieldError("the rationals cannot be enumerated")
        for v in range(self.p):
            yield Scalar._raw(self, v)

    def __str__(self) -> str:
        return f"F_{self.p}" if self.kind == "Fp" else "Q"


class Scalar:
    """An exact field element.  Equality is structural."""

    __slots__ = ("field", "value")

    field: Field
    value: Union[int, Fraction]

    def __init__(self, field: Field, value):
        canonical = field(value)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", canonical.value)

    @classmethod
    def _raw(cls, field: Field, value) -> "Scalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "value", value)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def _make(self, value) -> "Scalar":
        if self.field.kind == "Fp":
            return Scalar._raw(self.field, value % self.field.p)
        return Scalar._raw(self.field, value)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._make(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._make(self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._make(other.value - self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._make(self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __neg__(self):
        return self._make(-self.value)

    def __pos__(self):
        return self

    def inv(self) -> "Scalar":
        if not self.value:
            raise ZeroDivisionError(f"zero has no inverse in {self.field}")
        if self.field.kind == "Fp":
            return Scalar._raw(self.field, pow(self.value, -1, self.field.p))
        return Scalar._raw(self.field, 1 / self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.field(other).value
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        if self.field.kind == "Fp":
            return str(self.value)
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def __repr__(self) -> str:
        return f"Scalar({self}, {self.field})"


def scalar_parse(text: str, field: Field) -> Scalar:
    return field.parse(text)


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div, neg, inv}; unary ops ignore ``b``."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if b is None:
        raise FieldError(f"{op} needs two operands")
    if not isinstance(b, Scalar) or a.field != b.field:
        raise FieldMismatchError(f"operands of {op} live in different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise FieldError(f"unknown operation {op!r}")
