"""Sparse multivariate polynomials over Q(theta).

Variables come in up to four blocks: x_1..x_n, xt_1..xt_nt and, for joint
kernel computations, y_1..y_m, yt_1..yt_mt.  The "t" blocks carry parity 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .scalarfield import ONE, THETA, ZERO, RationalFunction, format_rf

__all__ = ["VarSpace", "MultiPoly", "is_deformed_symmetric", "HyperplaneDivisionError"]


class HyperplaneDivisionError(ArithmeticError):
    """Raised when a polynomial is not divisible by x_i - x_j."""


@dataclass(frozen=True)
class VarSpace:
    n: int
    nt: int = 0
    m: int = 0
    mt: int = 0

    def __post_init__(self):
        if min(self.n, self.nt, self.m, self.mt) < 0:
            raise ValueError("variable counts must be nonnegative")

    @property
    def size(self) -> int:
        return self.n + self.nt + self.m + self.mt

    @property
    def x_block(self) -> range:
        return range(0, self.n)

    @property
    def xt_block(self) -> range:
        return range(self.n, self.n + self.nt)

    @property
    def y_block(self) -> range:
        s = self.n + self.nt
        return range(s, s + self.m)

    @property
    def yt_block(self) -> range:
        s = self.n + self.nt + self.m
        return range(s, s + self.mt)

    @property
    def first_family(self) -> range:
        """Indices of the x and xt variables, in that order."""
        return range(0, self.n + self.nt)

    @property
    def second_family(self) -> range:
        """Indices of the y and yt variables, in that order."""
        return range(self.n + self.nt, self.size)

    def parity(self, i: int) -> int:
        if i in self.xt_block or i in self.yt_block:
            return 1
        if 0 <= i < self.size:
            return 0
        raise IndexError(f"variable index {i} out of range for {self}")

    def blocks(self) -> list[range]:
        return [self.x_block, self.xt_block, self.y_block, self.yt_block]

    @property
    def names(self) -> tuple[str, ...]:
        out = [f"x{i + 1}" for i in range(self.n)]
        out += [f"xt{i + 1}" for i in range(self.nt)]
        out += [f"y{i + 1}" for i in range(self.m)]
        out += [f"yt{i + 1}" for i in range(self.mt)]
        return tuple(out)

    def first(self) -> "VarSpace":
        return VarSpace(self.n, self.nt)

    def second(self) -> "VarSpace":
        return VarSpace(self.m, self.mt)

    def joint(self, other: "VarSpace") -> "VarSpace":
        """x-family from self, y-family from the first family of other."""
        return VarSpace(self.n, self.nt, other.n, other.nt)

    def to_json(self) -> dict:
        return {"n": self.n, "nt": self.nt, "m": self.m, "mt": self.mt}


def _rf(c) -> RationalFunction:
    return c if isinstance(c, RationalFunction) else RationalFunction(c)


def _grlex_key(e: tuple[int, ...]):
    return (sum(e), e)


class MultiPoly:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Mapping[tuple[int, ...], object] | None = None, *, _trusted=False):
        self.space = space
        if _trusted:
            self.terms = terms
            return
        out: dict[tuple[int, ...], RationalFunction] = {}
        if terms:
            size = space.size
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != size:
                    raise ValueError(f"exponent {e} has wrong length for {space}")
                if any(v < 0 for v in e):
                    raise ValueError(f"negative exponent {e}")
                c = _rf(c)
                if c:
                    out[e] = out[e] + c if e in out else c
                    if not out[e]:
                        del out[e]
        self.terms = out

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, space: VarSpace) -> "MultiPoly":
        return cls(space, {}, _trusted=True)

    @classmethod
    def constant(cls, space: VarSpace, c=1) -> "MultiPoly":
        c = _rf(c)
        if not c:
            return cls.zero(space)
        return cls(space, {(0,) * space.size: c}, _trusted=True)

    @classmethod
    def one(cls, space: VarSpace) -> "MultiPoly":
        return cls.constant(space, ONE)

    @classmethod
    def monomial(cls, space: VarSpace, exp: Sequence[int], c=1) -> "MultiPoly":
        return cls(space, {tuple(exp): c})

    @classmethod
    def var(cls, space: VarSpace, i: int, power: int = 1) -> "MultiPoly":
        e = [0] * space.size
        e[i] = power
        return cls(space, {tuple(e): ONE}, _trusted=True)

    # basic queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exp: Sequence[int]) -> RationalFunction:
        return self.terms.get(tuple(exp), ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> int:
        idx = tuple(indices)
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[tuple[int, ...], RationalFunction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self, key: Callable | None = None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=key or (lambda x: x))
        return e, self.terms[e]

    # arithmetic ---------------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.space != other.space:
            raise ValueError(f"variable space mismatch: {self.space} vs {other.space}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.space, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(self.space, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.space, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = _rf(c)
        if not c:
            return MultiPoly.zero(self.space)
        if c == ONE:
            return self
        return MultiPoly(self.space, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        return self.mul_truncated(other)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def mul_truncated(self, other: "MultiPoly", indices: Sequence[int] | None = None,
                      bound: int | None = None) -> "MultiPoly":
        """Product, dropping terms whose degree in ``indices`` exceeds ``bound``."""
        self._check(other)
        out: dict = {}
        idx = tuple(indices) if indices is not None else None
        b_terms = list(other.terms.items())
        if idx is not None:
            b_terms = [(e, c, sum(e[i] for i in idx)) for e, c in b_terms]
        for e1, c1 in self.terms.items():
            if idx is not None:
                d1 = sum(e1[i] for i in idx)
                if d1 > bound:
                    continue
                for e2, c2, d2 in b_terms:
                    if d1 + d2 > bound:
                        continue
                    e = tuple(x + y for x, y in zip(e1, e2))
                    v = out.get(e)
                    out[e] = c1 * c2 if v is None else v + c1 * c2
            else:
                for e2, c2 in b_terms:
                    e = tuple(x + y for x, y in zip(e1, e2))
                    v = out.get(e)
                    out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(self.space, {e: c for e, c in out.items() if c}, _trusted=True)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.one(self.space)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.space == other.space and self.terms == other.terms
        try:
            return self == MultiPoly.constant(self.space, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    # calculus and substitutions -------------------------------------------------

    def partial_derivative(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.space.size:
            raise IndexError(f"variable index {i} out of range")
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return MultiPoly(self.space, out, _trusted=True)

    def mul_var(self, i: int, power: int = 1) -> "MultiPoly":
        """Multiply by x_i**power; negative powers must divide exactly."""
        out = {}
        for e, c in self.terms.items():
            k = e[i] + power
            if k < 0:
                raise ArithmeticError(f"x_{i} power {power} does not divide")
            out[e[:i] + (k,) + e[i + 1:]] = c
        return MultiPoly(self.space, out, _trusted=True)

    def substitute_equal(self, i: int, j: int) -> "MultiPoly":
        """Replace variable i by variable j."""
        if i == j:
            return self
        out: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[j] += ne[i]
            ne[i] = 0
            ne = tuple(ne)
            v = out.get(ne)
            out[ne] = c if v is None else v + c
        return MultiPoly(self.space, {e: c for e, c in out.items() if c}, _trusted=True)

    def exact_divide_linear(self, i: int, j: int) -> "MultiPoly":
        """Quotient by (x_i - x_j); raises if there is a remainder."""
        if i == j:
            raise ValueError("cannot divide by x_i - x_i")
        # group by the other exponents and by a + b where a, b are the i, j exponents
        groups: dict = {}
        for e, c in self.terms.items():
            key = (e[:i] + (0,) + e[i + 1:j] + (0,) + e[j + 1:], e[i] + e[j]) if i < j else \
                  (e[:j] + (0,) + e[j + 1:i] + (0,) + e[i + 1:], e[i] + e[j])
            groups.setdefault(key, {})[e[i]] = c
        out = {}
        for (rest, d), coeffs in groups.items():
            acc = ZERO
            for a in range(d, 0, -1):
                c = coeffs.get(a)
                if c is not None:
                    acc = acc + c
                if acc:
                    ne = list(rest)
                    ne[i] = a - 1
                    ne[j] = d - a
                    out[tuple(ne)] = acc
            c0 = coeffs.get(0)
            if c0 is not None:
                acc = acc + c0
            if acc:
                raise HyperplaneDivisionError(
                    f"hyperplane division failed: not divisible by ({self.space.names[i]} - {self.space.names[j]})")
        return MultiPoly(self.space, out, _trusted=True)

    def swap(self, i: int, j: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i], ne[j] = ne[j], ne[i]
            out[tuple(ne)] = c
        return MultiPoly(self.space, out, _trusted=True)

    def is_symmetric_in(self, indices: Sequence[int]) -> bool:
        idx = list(indices)
        for a, b in zip(idx, idx[1:]):
            for e, c in self.terms.items():
                if e[a] == e[b]:
                    continue
                ne = list(e)
                ne[a], ne[b] = ne[b], ne[a]
                if self.terms.get(tuple(ne)) != c:
                    return False
        return True

    def homogeneous_component(self, d: int) -> "MultiPoly":
        return MultiPoly(self.space, {e: c for e, c in self.terms.items() if sum(e) == d}, _trusted=True)

    def component_in(self, indices: Sequence[int], d: int) -> "MultiPoly":
        """Terms of degree exactly d in the given variables."""
        idx = tuple(indices)
        return MultiPoly(self.space, {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) == d},
                         _trusted=True)

    def truncate_in(self, indices: Sequence[int], bound: int) -> "MultiPoly":
        idx = tuple(indices)
        return MultiPoly(self.space, {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) <= bound},
                         _trusted=True)

    def scale_block(self, indices: Sequence[int], c) -> "MultiPoly":
        """Substitute x_i -> c*x_i for each i in indices."""
        c = _rf(c)
        idx = tuple(indices)
        out = {}
        for e, v in self.terms.items():
            k = sum(e[i] for i in idx)
            w = v * c ** k if k else v
            if w:
                out[e] = w
        return MultiPoly(self.space, out, _trusted=True)

    def embed(self, space: VarSpace, index_map: Sequence[int]) -> "MultiPoly":
        """Move variable i of self to variable index_map[i] of ``space``."""
        size = space.size
        out = {}
        for e, c in self.terms.items():
            ne = [0] * size
            for i, k in enumerate(e):
                if k:
                    ne[index_map[i]] += k
            out[tuple(ne)] = c
        return MultiPoly(space, out, _trusted=True)

    def restrict(self, space: VarSpace, indices: Sequence[int]) -> "MultiPoly":
        """Inverse of embed: keep only the listed variables (others must be absent)."""
        idx = tuple(indices)
        keep = set(idx)
        out = {}
        for e, c in self.terms.items():
            if any(k and i not in keep for i, k in enumerate(e)):
                raise ValueError("polynomial involves variables outside the restriction")
            out[tuple(e[i] for i in idx)] = c
        return MultiPoly(space, out, _trusted=True)

    def coefficients_in(self, indices: Sequence[int], rest_space: VarSpace, rest: Sequence[int]) -> dict:
        """Split into {exponent in ``indices``: polynomial in the ``rest`` variables}."""
        idx, rst = tuple(indices), tuple(rest)
        out: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            out.setdefault(key, {})[tuple(e[i] for i in rst)] = c
        return {k: MultiPoly(rest_space, v, _trusted=True) for k, v in out.items()}

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.space, {e: fn(c) for e, c in self.terms.items()})

    def evaluate_theta(self, t) -> "MultiPoly":
        """Evaluate every coefficient at theta = t (exact rational)."""
        return MultiPoly(self.space, {e: RationalFunction(c.evaluate(t)) for e, c in self.terms.items()})

    def evaluate(self, point: Sequence, theta=None) -> RationalFunction:
        """Value at a point of rational numbers (or RationalFunctions)."""
        total = ZERO
        pt = [_rf(v) for v in point]
        for e, c in self.terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term = term * v ** k
            total = total + term
        if theta is not None:
            return RationalFunction(total.evaluate(theta))
        return total

    # serialization ------------------------------------------------------------

    def to_json(self) -> list:
        return [{"exp": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, space: VarSpace, data: list) -> "MultiPoly":
        return cls(space, {tuple(t["exp"]): RationalFunction.from_json(t["coeff"]) for t in data})

    def __repr__(self):
        return f"MultiPoly({self.space}, {self})"

    def __str__(self):
        return format_poly(self)


def _monomial_str(e: tuple[int, ...], names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "·".join(parts)


def _coeff_str(c: RationalFunction) -> str:
    s = format_rf(c)
    if c.is_constant():
        f = c.to_fraction()
        if f.denominator == 1:
            return s
    return f"({s})"


def format_poly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    names = p.space.names
    out = []
    for e, c in p.sorted_terms():
        neg = c.looks_negative()
        a = -c if neg else c
        mono = _monomial_str(e, names)
        if not mono:
            body = format_rf(a) if a.is_constant() else f"({format_rf(a)})"
        elif a == ONE:
            body = mono
        else:
            body = f"{_coeff_str(a)}·{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def is_deformed_symmetric(p: MultiPoly, theta: RationalFunction = THETA) -> bool:
    """Symmetric in x and in xt, and (d/dx_i + theta d/dxt_I) p = 0 on x_i = xt_I."""
    sp = p.space
    if not (p.is_symmetric_in(sp.x_block) and p.is_symmetric_in(sp.xt_block)):
        return False
    for i in sp.x_block:
        for I in sp.xt_block:
            q = p.partial_derivative(i) + p.partial_derivative(I).scale(theta)
            if q.substitute_equal(I, i):
                return False
    return True
