"""Exact numbers of the form a + b*sqrt(d) with rational a, b.

A single field context ``d`` (square-free, default 2) is active per run.
``d = 0`` selects pure-rational mode, where the irrational part is always 0.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Scalar",
    "FieldMismatchError",
    "ScalarParseError",
    "get_field",
    "set_field",
    "field",
    "parse_scalar",
    "to_scalar",
    "sqrt_d",
]


class FieldMismatchError(ValueError):
    """Raised when elements of different quadratic fields are combined."""


class ScalarParseError(ValueError):
    pass


def _is_square_free(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


_FIELD_D = 2


def get_field() -> int:
    return _FIELD_D


def set_field(d: int) -> None:
    """Set the run-wide discriminant. ``d`` must be 0 or a square-free integer >= 2."""
    global _FIELD_D
    d = int(d)
    if d != 0 and not _is_square_free(d):
        raise ValueError(f"field discriminant must be 0 or square-free >= 2, got {d}")
    _FIELD_D = d


class field:
    """Context manager that temporarily switches the field discriminant."""

    def __init__(self, d: int):
        self.d = d
        self._saved = None

    def __enter__(self):
        self._saved = get_field()
        set_field(self.d)
        return self

    def __exit__(self, *exc):
        set_field(self._saved)
        return False


class Scalar:
    """Immutable element a + b*sqrt(d) of Q(sqrt(d))."""

    __slots__ = ("a", "b", "d", "_hash")

    def __init__(self, a=0, b=0, d: int | None = None):
        if d is None:
            d = _FIELD_D
        a = a if type(a) is Fraction else Fraction(a)
        b = b if type(b) is Fraction else Fraction(b)
        if d == 0 and b:
            raise FieldMismatchError("irrational part given in rational mode (d = 0)")
        self.a = a
        self.b = b
        self.d = d
        self._hash = None

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "Scalar":
        s = object.__new__(cls)
        s.a = a
        s.b = b
        s.d = d
        s._hash = None
        return s

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> "Scalar":
        if type(other) is Scalar:
            if other.d != self.d:
                raise FieldMismatchError(f"cannot combine Q(sqrt({self.d})) with Q(sqrt({other.d}))")
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return Scalar._raw(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar._raw(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar._raw(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar._raw(o.a - self.a, o.b - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.b and not o.b:
            return Scalar._raw(self.a * o.a, Fraction(0), self.d)
        a = self.a * o.a + self.b * o.b * self.d
        b = self.a * o.b + self.b * o.a
        return Scalar._raw(a, b, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.b:
            if not self.a:
                raise ZeroDivisionError("division by zero Scalar")
            return Scalar._raw(1 / self.a, Fraction(0), self.d)
        # multiply by the conjugate; the norm is nonzero since sqrt(d) is irrational
        norm = self.a * self.a - self.b * self.b * self.d
        return Scalar._raw(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.b:
            if not o.a:
                raise ZeroDivisionError("division by zero Scalar")
            return Scalar._raw(self.a / o.a, self.b / o.a, self.d)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (self ** (-k)).inverse()
        result = Scalar._raw(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.a, -self.b, self.d)

    # -- order and predicates ------------------------------------------------
    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d), computed without floating point."""
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins, compare a^2 with b^2*d
        if a * a > b * b * self.d:
            return sa
        return sb

    def is_rational(self) -> bool:
        return not self.b

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if type(other) is Scalar:
            if self.a != other.a or self.b != other.b:
                return False
            return not self.b or self.d == other.d
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.a, self.b)) if self.b else hash(self.a)
        return self._hash

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare Scalar with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    # -- text form ----------------------------------------------------------
    def __str__(self):
        if not self.b:
            return _frac_str(self.a)
        b_abs = abs(self.b)
        root = f"sqrt({self.d})" if b_abs == 1 else f"{_frac_str(b_abs)}*sqrt({self.d})"
        if not self.a:
            return root if self.b > 0 else f"-{root}"
        op = "+" if self.b > 0 else "-"
        return f"{_frac_str(self.a)} {op} {root}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def key(self) -> tuple:
        """Hashable, totally ordered-by-structure representation used in canonical keys."""
        return (self.a.numerator, self.a.denominator, self.b.numerator, self.b.denominator)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def sqrt_d(d: int | None = None) -> Scalar:
    """The generator sqrt(d) of the active field."""
    d = _FIELD_D if d is None else d
    if d == 0:
        raise FieldMismatchError("no irrational generator in rational mode")
    return Scalar(0, 1, d)


_RATIONAL = r"\d+(?:/\d+)?"
_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>%s)\s*(?:\*\s*(?P<root1>sqrt\(\s*\d+\s*\)))?
          |
          (?P<root2>sqrt\(\s*\d+\s*\))
        )\s*""" % _RATIONAL,
    re.VERBOSE,
)


def parse_scalar(text: str, d: int | None = None) -> Scalar:
    """Parse the exact text form, e.g. ``"3/2"``, ``"10 - 2*sqrt(2)"``, ``"-sqrt(2)"``.

    Decimal literals are rejected so no value is ever silently rounded.
    """
    d = _FIELD_D if d is None else d
    if not isinstance(text, str):
        if isinstance(text, int):
            return Scalar(text, 0, d)
        raise ScalarParseError(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    if not s:
        raise ScalarParseError("empty scalar")
    if "." in s or "e" in s.replace("sqrt", ""):
        raise ScalarParseError(f"decimal literals are not accepted: {text!r}")
    pos = 0
    a = Fraction(0)
    b = Fraction(0)
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ScalarParseError(f"cannot parse scalar {text!r} at offset {pos}")
        if not first and m.group("sign") is None:
            raise ScalarParseError(f"missing operator in {text!r} at offset {pos}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        root = m.group("root1") or m.group("root2")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if root:
            rd = int(root[5:-1].strip())
            if rd != d:
                raise FieldMismatchError(f"{text!r} uses sqrt({rd}) but the active field is sqrt({d})")
            b += sign * coef
        else:
            a += sign * coef
        pos = m.end()
    return Scalar(a, b, d)


def to_scalar(value, d: int | None = None) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value, d)
    if isinstance(value, (int, Fraction)):
        return Scalar(value, 0, d)
    raise TypeError(f"cannot convert {type(value).__name__} to Scalar (floats are not exact)")
