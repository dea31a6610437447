"""Exact arithmetic in Q(theta), the coefficient field of the whole package.

Elements are stored as a pair of univariate polynomials over Q (backed by
``flint.fmpq_poly``) with a monic denominator and no common factor, so two
equal values are always structurally equal.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import flint

__all__ = [
    "RationalFunction",
    "THETA",
    "ONE",
    "ZERO",
    "PoleError",
    "generalized_binomial",
    "rf_eval",
    "parse_rational",
    "minus_theta_pow",
]

_P = flint.fmpq_poly


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, Rational):
        return flint.fmpq(int(c.numerator), int(c.denominator))
    if isinstance(c, str):
        f = parse_rational(c)
        return flint.fmpq(f.numerator, f.denominator)
    raise TypeError(f"cannot convert {c!r} to a rational number")


def _to_poly(v) -> flint.fmpq_poly:
    if isinstance(v, flint.fmpq_poly):
        return v
    if isinstance(v, (list, tuple)):
        return _P([_to_fmpq(c) for c in v])
    return _P([_to_fmpq(v)])


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    return Fraction(text.strip())


def _frac(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class RationalFunction:
    """An element of Q(theta) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, *, _canonical: bool = False):
        if isinstance(num, RationalFunction):
            if den is None:
                self.num, self.den, self._hash = num.num, num.den, None
                return
            num = num / RationalFunction(den)
            self.num, self.den, self._hash = num.num, num.den, None
            return
        n = _to_poly(num)
        d = _P([1]) if den is None else _to_poly(den)
        if not _canonical:
            if d == 0:
                raise ZeroDivisionError("zero denominator")
            if n == 0:
                d = _P([1])
            elif d.degree() > 0:
                g = n.gcd(d)
                if g.degree() > 0:
                    n = n / g
                    d = d / g
            lc = d[d.degree()]
            if lc != 1:
                n = n / lc
                d = d / lc
        self.num = n
        self.den = d
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, n, d) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num = n
        obj.den = d
        obj._hash = None
        return obj

    @staticmethod
    def coerce(v) -> "RationalFunction":
        if isinstance(v, RationalFunction):
            return v
        return RationalFunction(v)

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num == 0

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def is_constant(self) -> bool:
        return self.den.degree() == 0 and self.num.degree() <= 0

    def __bool__(self) -> bool:
        return self.num != 0

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return _frac(self.num[0])

    def looks_negative(self) -> bool:
        """True when the leading numerator coefficient is negative (used for printing)."""
        if self.num == 0:
            return False
        return self.num[self.num.degree()] < 0

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction(other)
            except TypeError:
                return NotImplemented
        if self.den.degree() == 0 and other.den.degree() == 0:
            return RationalFunction._raw(self.num + other.num, self.den)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RationalFunction(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction(other)
            except TypeError:
                return NotImplemented
        if self.den.degree() == 0 and other.den.degree() == 0:
            n = self.num * other.num
            return RationalFunction._raw(n, self.den if n != 0 else _P([1]))
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction(other)
            except TypeError:
                return NotImplemented
        if other.num == 0:
            raise ZeroDivisionError("zero denominator")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        return RationalFunction._raw(self.num ** k, self.den ** k)

    def inverse(self) -> "RationalFunction":
        return ONE / self

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(str(c) for c in self.num.coeffs()),
                               tuple(str(c) for c in self.den.coeffs())))
        return self._hash

    # evaluation / serialization ---------------------------------------------

    def evaluate(self, t) -> Fraction:
        tt = _to_fmpq(t)
        d = self.den(tt)
        if d == 0:
            raise PoleError(f"evaluation at pole: {self} at theta={_frac(tt)}")
        return _frac(self.num(tt) / d)

    def numerator_coeffs(self) -> list[Fraction]:
        return [_frac(c) for c in self.num.coeffs()]

    def denominator_coeffs(self) -> list[Fraction]:
        return [_frac(c) for c in self.den.coeffs()]

    def to_json(self) -> dict:
        return {
            "num": [_fmt_frac(c) for c in self.numerator_coeffs()],
            "den": [_fmt_frac(c) for c in self.denominator_coeffs()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        num = [parse_rational(s) for s in data["num"]]
        den = [parse_rational(s) for s in data["den"]]
        return cls(num or [0], den)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return format_rf(self)


def _fmt_frac(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _poly_str(coeffs: list[Fraction], var: str = "θ") -> str:
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}{mono}" if a.denominator == 1 else f"({a}){mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts) if parts else "0"


def _is_monomial(coeffs: list[Fraction]) -> bool:
    return sum(1 for c in coeffs if c != 0) <= 1


def format_rf(r: RationalFunction) -> str:
    num = r.numerator_coeffs()
    den = r.denominator_coeffs()
    ns = _poly_str(num)
    if len(den) == 1:
        return ns
    ds = _poly_str(den)
    if not _is_monomial(num):
        ns = f"({ns})"
    if not _is_monomial(den) or (den[-1] != 1 and len(den) > 1):
        ds = f"({ds})"
    return f"{ns}/{ds}"


ZERO = RationalFunction(0)
ONE = RationalFunction(1)
THETA = RationalFunction([0, 1])


def rf_eval(a: RationalFunction, t) -> Fraction:
    return a.evaluate(t)


def minus_theta_pow(k: int) -> RationalFunction:
    """(-theta)**k for any integer k; cached because it sits in every operator."""
    try:
        return _MT_CACHE[k]
    except KeyError:
        v = (-THETA) ** k
        _MT_CACHE[k] = v
        return v


_MT_CACHE: dict[int, RationalFunction] = {}


def generalized_binomial(c, k: int) -> RationalFunction:
    """c(c-1)...(c-k+1)/k! for c in Q(theta)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    key = (c if isinstance(c, RationalFunction) else RationalFunction(c), k)
    try:
        return _BINOM_CACHE[key]
    except KeyError:
        pass
    cc = key[0]
    out = ONE
    for i in range(k):
        out = out * (cc - i) / (i + 1)
    _BINOM_CACHE[key] = out
    return out


_BINOM_CACHE: dict = {}
