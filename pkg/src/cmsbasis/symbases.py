"""Classical symmetric polynomials, deformed power sums and basis changes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .multipoly import MultiPoly, VarSpace
from .partitions import IntVector, Partition, partitions_of
from .scalarfield import ONE, THETA, ZERO, RationalFunction, generalized_binomial

__all__ = [
    "BasisExpansion",
    "monomial_sym",
    "power_sum",
    "power_sum_product",
    "elementary",
    "complete_h",
    "modified_g",
    "g_theta",
    "deformed_power_sum",
    "to_monomial_basis",
    "from_monomial_basis",
    "from_power_sums",
    "to_power_sums",
    "h_quotient",
]

BASIS_TAGS = ("monomial", "powerSum", "elementary", "complete", "modifiedComplete", "superJack", "fBasis")


def _label_str(label) -> str:
    if isinstance(label, IntVector):
        return str(label)
    if isinstance(label, Partition):
        return str(label)
    return str(label)


@dataclass
class BasisExpansion:
    """Finite linear combination of labelled basis elements."""

    basis: str
    coeffs: dict = field(default_factory=dict)
    context: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in BASIS_TAGS:
            raise ValueError(f"unknown basis tag {self.basis!r}")
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    def __getitem__(self, label):
        return self.coeffs.get(label, ZERO)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs.items())

    def __eq__(self, other):
        if not isinstance(other, BasisExpansion):
            return NotImplemented
        return self.basis == other.basis and self.coeffs == other.coeffs

    def labels(self) -> list:
        return list(self.coeffs)

    def to_json(self) -> dict:
        terms = sorted(self.coeffs.items(), key=lambda kv: _label_sort_key(kv[0]), reverse=True)
        return {
            "basis": self.basis,
            "terms": [{"label": _label_str(k), "coeff": v.to_json()} for k, v in terms],
        }

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = sorted(self.coeffs.items(), key=lambda kv: _label_sort_key(kv[0]), reverse=True)
        return " + ".join(f"({v})·[{_label_str(k)}]" for k, v in terms)


def _label_sort_key(label):
    if isinstance(label, IntVector):
        return (sum(label.entries), label.entries)
    return (sum(label), tuple(label))


def _space_and_indices(space, indices):
    if isinstance(space, int):
        space = VarSpace(space)
    if indices is None:
        indices = range(space.size)
    return space, tuple(indices)


def monomial_sym(lam: Sequence[int], space, indices=None) -> MultiPoly:
    """m_lambda in the chosen variables: sum over distinct rearrangements."""
    space, idx = _space_and_indices(space, indices)
    lam = Partition(lam)
    if len(lam) > len(idx):
        raise ValueError(f"partition {tuple(lam)} longer than the number of variables ({len(idx)})")
    padded = tuple(lam) + (0,) * (len(idx) - len(lam))
    terms = {}
    for perm in set(itertools.permutations(padded)):
        e = [0] * space.size
        for i, k in zip(idx, perm):
            e[i] = k
        terms[tuple(e)] = ONE
    return MultiPoly(space, terms, _trusted=True)


def power_sum(r: int, space, indices=None) -> MultiPoly:
    space, idx = _space_and_indices(space, indices)
    if r == 0:
        return MultiPoly.constant(space, len(idx))
    out = MultiPoly.zero(space)
    for i in idx:
        out = out + MultiPoly.var(space, i, r)
    return out


@lru_cache(maxsize=None)
def _power_sum_product(mu: Partition, space: VarSpace, idx: tuple) -> MultiPoly:
    if not mu:
        return MultiPoly.one(space)
    return _power_sum_product(Partition(mu[1:]), space, idx) * power_sum(mu[0], space, idx)


def power_sum_product(mu: Sequence[int], space, indices=None) -> MultiPoly:
    space, idx = _space_and_indices(space, indices)
    return _power_sum_product(Partition(mu), space, idx)


def _series_coefficient(r: int, space: VarSpace, idx: tuple, per_var) -> MultiPoly:
    """t^r coefficient of prod_i F(x_i t) where per_var(k) is the t^k coefficient of F."""
    terms = {}
    for comp in _compositions(r, len(idx)):
        c = ONE
        for k in comp:
            c = c * per_var(k)
            if not c:
                break
        if not c:
            continue
        e = [0] * space.size
        for i, k in zip(idx, comp):
            e[i] = k
        terms[tuple(e)] = c
    return MultiPoly(space, terms)


def _compositions(r: int, parts: int):
    if parts == 0:
        if r == 0:
            yield ()
        return
    if parts == 1:
        yield (r,)
        return
    for k in range(r, -1, -1):
        for rest in _compositions(r - k, parts - 1):
            yield (k,) + rest


def elementary(r: int, space, indices=None) -> MultiPoly:
    space, idx = _space_and_indices(space, indices)
    if r < 0:
        return MultiPoly.zero(space)
    return _series_coefficient(r, space, idx, lambda k: ONE if k <= 1 else ZERO)


def complete_h(r: int, space, indices=None) -> MultiPoly:
    space, idx = _space_and_indices(space, indices)
    if r < 0:
        return MultiPoly.zero(space)
    return _series_coefficient(r, space, idx, lambda k: ONE)


def modified_g(r: int, exponent, space, indices=None) -> MultiPoly:
    """t^r coefficient of prod_i (1 - x_i t)^exponent."""
    space, idx = _space_and_indices(space, indices)
    if r < 0:
        return MultiPoly.zero(space)
    c = RationalFunction.coerce(exponent)
    return _series_coefficient(r, space, idx, lambda k: generalized_binomial(c, k) * (-1) ** k)


def g_theta(r: int, space, indices=None, theta=THETA) -> MultiPoly:
    """g_r(x; theta), the t^r coefficient of prod (1 - x_i t)^(-theta)."""
    return modified_g(r, -RationalFunction.coerce(theta), space, indices)


def deformed_power_sum(r: int, space: VarSpace, theta=THETA) -> MultiPoly:
    """sum x_i^r - theta^-1 sum xt_I^r over the first family of ``space``."""
    if r < 1:
        raise ValueError("deformed power sums need r >= 1")
    theta = RationalFunction.coerce(theta)
    return power_sum(r, space, space.x_block) - power_sum(r, space, space.xt_block).scale(ONE / theta)


@lru_cache(maxsize=None)
def deformed_power_sum_product(mu: Partition, space: VarSpace) -> MultiPoly:
    if not mu:
        return MultiPoly.one(space)
    return deformed_power_sum_product(Partition(mu[1:]), space) * deformed_power_sum(mu[0], space)


def to_monomial_basis(p: MultiPoly, indices=None) -> BasisExpansion:
    """Coefficients of a symmetric polynomial in the m_lambda basis."""
    sp = p.space
    idx = tuple(indices) if indices is not None else tuple(range(sp.size))
    if set(idx) != set(range(sp.size)) and any(e[i] for e in p.terms for i in range(sp.size) if i not in idx):
        raise ValueError("polynomial involves variables outside the symmetric block")
    if not p.is_symmetric_in(idx):
        raise ValueError("polynomial is not symmetric")
    coeffs = {}
    for e, c in p.terms.items():
        vals = [e[i] for i in idx]
        if all(vals[k] >= vals[k + 1] for k in range(len(vals) - 1)):
            coeffs[Partition(vals)] = c
    return BasisExpansion("monomial", coeffs, {"n": len(idx)})


def from_monomial_basis(expr: BasisExpansion, space, indices=None) -> MultiPoly:
    space, idx = _space_and_indices(space, indices)
    out = MultiPoly.zero(space)
    for lam, c in expr.coeffs.items():
        out = out + monomial_sym(lam, space, idx).scale(c)
    return out


def from_power_sums(expr: BasisExpansion, space, indices=None) -> MultiPoly:
    if expr.basis != "powerSum":
        raise ValueError("expected a power-sum expansion")
    space, idx = _space_and_indices(space, indices)
    out = MultiPoly.zero(space)
    for mu, c in expr.coeffs.items():
        out = out + power_sum_product(mu, space, idx).scale(c)
    return out


@lru_cache(maxsize=None)
def _power_sum_monomial_rows(k: int) -> dict:
    """p_mu in the monomial basis of k variables, for every mu of weight k."""
    sp = VarSpace(k)
    return {mu: to_monomial_basis(power_sum_product(mu, sp)).coeffs for mu in partitions_of(k)}


def to_power_sums(p: MultiPoly) -> BasisExpansion:
    """Power-sum coordinates of a symmetric polynomial.

    Exact when the number of variables is at least the degree; the monomial to
    power-sum matrix is triangular for dominance, so lowest labels go first.
    """
    mono = to_monomial_basis(p).coeffs
    by_deg: dict[int, dict] = {}
    for lam, c in mono.items():
        by_deg.setdefault(sum(lam), {})[lam] = c
    out = {}
    nvars = p.space.size
    for k, coeffs in by_deg.items():
        if k > nvars:
            raise ValueError("need at least as many variables as the degree")
        rows = _power_sum_monomial_rows(k)
        rem = dict(coeffs)
        # increasing lexicographic order is a linear extension of dominance
        for mu in reversed(partitions_of(k)):
            c = rem.get(mu)
            if not c:
                continue
            row = rows[mu]
            f = c / row[mu]
            out[mu] = f
            for lam, v in row.items():
                if len(lam) > nvars:
                    continue
                nv = rem.get(lam, ZERO) - f * v
                if nv:
                    rem[lam] = nv
                else:
                    rem.pop(lam, None)
        if rem:
            raise ArithmeticError("power-sum conversion left a residual")
    return BasisExpansion("powerSum", out, {"n": nvars})


def h_quotient(k: int) -> dict:
    """Check (x^k(z-y) + y^k(x-z) + z^k(y-x)) = -h_{k-2}(x,y,z)(y-x)(x-z)(z-y)."""
    sp = VarSpace(3)
    x, y, z = (MultiPoly.var(sp, i) for i in range(3))
    lhs = (x ** k) * (z - y) + (y ** k) * (x - z) + (z ** k) * (y - x)
    rhs = -complete_h(k - 2, sp) * (y - x) * (x - z) * (z - y)
    return {"k": k, "pass": lhs == rhs, "lhs": lhs, "rhs": rhs}
