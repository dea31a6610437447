"""Coefficient data of a deformed CMS operator and the named presets."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalarfield import RationalFunction, ZERO

__all__ = ["OperatorSpec", "PRESETS", "preset", "parse_spec"]


def _rf(v) -> RationalFunction:
    return RationalFunction.coerce(v)


@dataclass(frozen=True)
class OperatorSpec:
    """L = a0*D^0 + a1*D^1 + a2*D^2 + b0*E^0 + b1*E^1."""

    a0: RationalFunction = field(default=ZERO)
    a1: RationalFunction = field(default=ZERO)
    a2: RationalFunction = field(default=ZERO)
    b0: RationalFunction = field(default=ZERO)
    b1: RationalFunction = field(default=ZERO)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for k in ("a0", "a1", "a2", "b0", "b1"):
            object.__setattr__(self, k, _rf(getattr(self, k)))

    @property
    def alphas(self) -> tuple[RationalFunction, RationalFunction, RationalFunction]:
        return (self.a0, self.a1, self.a2)

    @property
    def betas(self) -> tuple[RationalFunction, RationalFunction]:
        return (self.b0, self.b1)

    @property
    def alpha_support(self) -> tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.alphas) if c)

    @property
    def beta_support(self) -> tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.betas) if c)

    def is_zero(self) -> bool:
        return not (self.alpha_support or self.beta_support)

    def is_self_adjoint_type(self) -> bool:
        return not (self.a0 or self.a1 or self.b0)

    def label(self) -> str:
        if self.name:
            return self.name
        parts = [f"{k}={getattr(self, k)}" for k in ("a0", "a1", "a2", "b0", "b1") if getattr(self, k)]
        return ",".join(parts) or "zero"


def trig() -> OperatorSpec:
    return OperatorSpec(a2=1, name="trig")


def hermite() -> OperatorSpec:
    return OperatorSpec(a0=1, b1=-2, name="hermite")


def laguerre(a=Fraction(1, 2)) -> OperatorSpec:
    a = Fraction(a)
    return OperatorSpec(a1=1, b0=a + 1, b1=-1, name=f"laguerre(a={a})")


def jacobi(a=Fraction(1, 2), b=Fraction(1, 3)) -> OperatorSpec:
    a, b = Fraction(a), Fraction(b)
    return OperatorSpec(a0=1, a2=-1, b0=b - a, b1=-(a + b + 2), name=f"jacobi(a={a},b={b})")


def bessel(a=Fraction(1, 2), b=Fraction(1, 3)) -> OperatorSpec:
    a, b = Fraction(a), Fraction(b)
    return OperatorSpec(a2=1, b0=b, b1=a, name=f"bessel(a={a},b={b})")


PRESETS = {
    "trig": trig,
    "hermite": hermite,
    "laguerre": laguerre,
    "jacobi": jacobi,
    "bessel": bessel,
}


def preset(name: str, a=None, b=None) -> OperatorSpec:
    fn = PRESETS[name]
    kwargs = {}
    if a is not None and name in ("laguerre", "jacobi", "bessel"):
        kwargs["a"] = Fraction(a)
    if b is not None and name in ("jacobi", "bessel"):
        kwargs["b"] = Fraction(b)
    return fn(**kwargs)


def parse_spec(text: str, a=None, b=None) -> OperatorSpec:
    """Preset name or a comma list such as ``"a2=1,b1=-2"``."""
    text = text.strip()
    if text in PRESETS:
        return preset(text, a, b)
    coeffs = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, _, val = item.partition("=")
        key = key.strip()
        if key not in ("a0", "a1", "a2", "b0", "b1"):
            raise ValueError(f"unknown operator coefficient {key!r}")
        coeffs[key] = Fraction(val.strip())
    return OperatorSpec(**coeffs)
