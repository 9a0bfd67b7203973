"""Exact arithmetic in Q and in the cyclotomic fields Q(zeta_r).

An element of Q(zeta_r) is stored as an integer coefficient vector with one
positive common denominator, reduced modulo the r-th cyclotomic polynomial.
Reduction modulo a monic integer polynomial never introduces denominators,
so multiplication stays in integers until the final gcd normalisation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "FieldMismatch",
    "FieldSpec",
    "Scalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "rational_field",
    "cyclotomic_field",
    "parse_scalar",
]


class FieldMismatch(ValueError):
    """Raised when scalars from different cyclotomic fields are combined."""


def _poly_trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num: Sequence, den: Sequence) -> tuple[list, list]:
    """Long division of coefficient lists (lowest degree first).

    ``den`` must have an invertible leading coefficient; with a monic
    integer divisor the quotient of an integer polynomial is integral.
    """
    num = list(num)
    den = _poly_trim(list(den))
    lead = den[-1]
    if len(num) < len(den):
        return [0], _poly_trim(num)
    quot = [0] * (len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c == 0:
            continue
        if lead != 1:
            c = Fraction(c) / lead
        quot[shift] = c
        for j, d in enumerate(den):
            num[shift + j] -= c * d
    rem = _poly_trim(num[: len(den) - 1] or [0])
    return _poly_trim(quot), rem


@lru_cache(maxsize=None)
def _cyclotomic(r: int) -> tuple[int, ...]:
    num = [-1] + [0] * (r - 1) + [1]
    for d in range(1, r):
        if r % d == 0:
            q, rem = _poly_divmod(num, _cyclotomic(d))
            assert rem == [0]
            num = q
    return tuple(int(c) for c in num)


def cyclotomic_polynomial(r: int) -> list[int]:
    """Return the coefficients of Phi_r, lowest degree first.

    Phi_r is obtained from x^r - 1 by exact division by Phi_d for every
    proper divisor d of r.

    >>> cyclotomic_polynomial(6)
    [1, -1, 1]
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"cyclotomic polynomial needs r >= 1, got {r!r}")
    return list(_cyclotomic(r))


def euler_phi(r: int) -> int:
    return len(_cyclotomic(r)) - 1


@dataclass(frozen=True)
class FieldSpec:
    """The field Q(zeta_r). Conductor 1 (and 2) give the rationals."""

    conductor: int
    minimal_poly: tuple[int, ...] = field(init=False, repr=False, compare=False)
    degree: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.conductor, int) or self.conductor < 1:
            raise ValueError(f"conductor must be a positive integer, got {self.conductor!r}")
        object.__setattr__(self, "minimal_poly", _cyclotomic(self.conductor))
        object.__setattr__(self, "degree", len(self.minimal_poly) - 1)

    def __str__(self) -> str:
        return "Q" if self.conductor == 1 else f"Q(zeta_{self.conductor})"

    def zero(self) -> "Scalar":
        return Scalar._raw(self, (0,) * self.degree, 1)

    def one(self) -> "Scalar":
        return self(1)

    def zeta(self) -> "Scalar":
        """A primitive ``conductor``-th root of unity."""
        return self.zeta_power(1)

    def zeta_power(self, k: int) -> "Scalar":
        return self.from_poly([0] * (k % self.conductor) + [1])

    def from_poly(self, coeffs: Iterable[Union[int, Fraction]]) -> "Scalar":
        """Element sum coeffs[j] * zeta^j, reduced modulo Phi_r."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in fr] or [0]
        return Scalar._from_ints(self, ints, den)

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar over {value.field} used in {self}")
            return value
        if isinstance(value, str):
            return parse_scalar(value, self)
        return self.from_poly([value])


def rational_field() -> FieldSpec:
    return FieldSpec(1)


def cyclotomic_field(r: int) -> FieldSpec:
    return FieldSpec(r)


class Scalar:
    """Immutable element of a cyclotomic field."""

    __slots__ = ("field", "_num", "_den", "_hash")

    field: FieldSpec
    _num: tuple[int, ...]
    _den: int

    @classmethod
    def _raw(cls, fs: FieldSpec, num: tuple[int, ...], den: int) -> "Scalar":
        self = object.__new__(cls)
        self.field = fs
        self._num = num
        self._den = den
        self._hash = None
        return self

    @classmethod
    def _from_ints(cls, fs: FieldSpec, ints: list[int], den: int) -> "Scalar":
        phi = fs.minimal_poly
        deg = fs.degree
        if len(ints) > deg:
            ints = list(ints)
            # Phi is monic: subtract c * x^shift * Phi from the top down
            for top in range(len(ints) - 1, deg - 1, -1):
                c = ints[top]
                if c:
                    shift = top - deg
                    for j in range(deg + 1):
                        ints[shift + j] -= c * phi[j]
            ints = ints[:deg]
        elif len(ints) < deg:
            ints = list(ints) + [0] * (deg - len(ints))
        if den < 0:
            den = -den
            ints = [-c for c in ints]
        g = den
        for c in ints:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(ints):
            return cls._raw(fs, tuple(ints), 1)
        if g != 1:
            ints = [c // g for c in ints]
            den //= g
        return cls._raw(fs, tuple(ints), den)

    # representation ------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return any(self._num)

    def is_one(self) -> bool:
        return self._den == 1 and self._num[0] == 1 and not any(self._num[1:])

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self.field.conductor, self._num, self._den))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(Fraction(c, self._den) for c in self._num)

    def __repr__(self) -> str:
        return f"Scalar({self.format()!r}, r={self.field.conductor})"

    def __str__(self) -> str:
        return self.format(spaces=True)

    def format(self, spaces: bool = False) -> str:
        """Textual form, e.g. ``1/2-z+3*z^2``; ``spaces`` pads the signs."""
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sep = " {} " if spaces else "{}"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += sep.format(sign) + body
        return out

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            return Scalar._from_ints(self.field, [a + b for a, b in zip(self._num, other._num)], d1)
        return Scalar._from_ints(
            self.field, [a * d2 + b * d1 for a, b in zip(self._num, other._num)], d1 * d2
        )

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(self.field, tuple(-c for c in self._num), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.degree == 1:
            return Scalar._from_ints(self.field, [self._num[0] * other._num[0]], self._den * other._den)
        return Scalar._from_ints(self.field, _poly_mul(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_r."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in " + str(self.field))
        return _inverse(self)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


@lru_cache(maxsize=4096)
def _inverse(a: Scalar) -> Scalar:
    fs = a.field
    if fs.degree == 1:
        return Scalar._from_ints(fs, [a._den], a._num[0])
    # extended gcd on (a, Phi) over Q; track s with s*a = r0 (mod Phi)
    r0 = _poly_trim([Fraction(c) for c in a._num])
    r1 = [Fraction(c) for c in fs.minimal_poly]
    s0, s1 = [Fraction(1)], [Fraction(0)]
    while r1 != [0]:
        q, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        qs = _poly_mul(q, s1)
        width = max(len(s0), len(qs))
        s_new = [
            (s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(width)
        ]
        s0, s1 = s1, _poly_trim(s_new)
    # r0 is a nonzero constant since Phi is irreducible
    assert len(r0) == 1 and r0[0] != 0
    inv_num = [c / r0[0] for c in s0]
    return fs.from_poly(inv_num) * a._den


_TERM = re.compile(
    r"""\s*([+-])?\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<z1>z(?:\^(?P<e1>\d+))?))?
          | (?P<z2>z(?:\^(?P<e2>\d+))?)
        )\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str, fs: FieldSpec) -> Scalar:
    """Parse ``p/q`` and ``c*z^k`` terms joined by ``+``/``-`` into ``fs``.

    ``z`` denotes zeta_r for the field's conductor r.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    pos = 0
    poly: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r} at offset {pos}")
        sign = m.group(1)
        if sign is None and not first:
            raise ValueError(f"missing operator in scalar {text!r} at offset {pos}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("coef") and "/" in m.group("coef") and coef.denominator == 0:
            raise ValueError(f"zero denominator in {text!r}")
        if m.group("z1") or m.group("z2"):
            exp = m.group("e1") or m.group("e2")
            k = int(exp) if exp is not None else 1
        else:
            k = 0
        if sign == "-":
            coef = -coef
        poly[k] = poly.get(k, Fraction(0)) + coef
        pos = m.end()
        first = False
    if poly and max(poly) > 0 and fs.conductor == 1:
        raise ValueError(f"scalar {text!r} uses z but the field is Q")
    top = max(poly) if poly else 0
    return fs.from_poly([poly.get(k, 0) for k in range(top + 1)])
