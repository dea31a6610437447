"""Jack polynomials, super Jack polynomials and super Schur polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .multipoly import MultiPoly, VarSpace, is_deformed_symmetric
from .partitions import Partition, b_lambda, conjugate, dominance_leq, in_hook, partitions_of
from .scalarfield import ONE, THETA, ZERO, RationalFunction
from .symbases import (
    BasisExpansion,
    complete_h,
    deformed_power_sum_product,
    elementary,
    monomial_sym,
    to_monomial_basis,
    to_power_sums,
)

__all__ = [
    "JackPolynomial",
    "SuperJackPolynomial",
    "laplace_beltrami_apply",
    "jack_polynomial",
    "jack_in_power_sums",
    "super_jack",
    "super_schur",
    "super_schur_elementary",
    "expand_in_super_jack",
    "leading_exponent",
    "NotInSpanError",
]


class NotInSpanError(ArithmeticError):
    pass


@dataclass(frozen=True)
class JackPolynomial:
    lam: Partition
    n: int
    value: MultiPoly
    monomial_expansion: BasisExpansion


@dataclass(frozen=True)
class SuperJackPolynomial:
    lam: Partition
    space: VarSpace
    value: MultiPoly


def laplace_beltrami_apply(p: MultiPoly) -> MultiPoly:
    """(1/2theta) sum x_i^2 d_i^2 p + sum_{i<j} x_i x_j (d_i - d_j) p / (x_i - x_j)."""
    sp = p.space
    n = sp.size
    out = MultiPoly.zero(sp)
    first = [p.partial_derivative(i) for i in range(n)]
    half_inv = ONE / (2 * THETA)
    for i in range(n):
        out = out + first[i].partial_derivative(i).mul_var(i, 2).scale(half_inv)
    for i in range(n):
        for j in range(i + 1, n):
            num = (first[i] - first[j]).mul_var(i).mul_var(j)
            out = out + num.exact_divide_linear(i, j)
    return out


@lru_cache(maxsize=None)
def _lb_matrix_row(mu: Partition, n: int) -> dict:
    return to_monomial_basis(laplace_beltrami_apply(monomial_sym(mu, n))).coeffs


@lru_cache(maxsize=None)
def _jack_coeffs(lam: Partition, n: int) -> dict:
    k = sum(lam)
    # labels below lambda in dominance, listed from the top down
    below = [mu for mu in partitions_of(k, max_len=n) if mu != lam and dominance_leq(mu, lam)]
    eps = _lb_matrix_row(lam, n).get(lam, ZERO)
    u = {lam: ONE}
    for nu in below:
        rhs = ZERO
        for mu, c in u.items():
            rhs = rhs + c * _lb_matrix_row(mu, n).get(nu, ZERO)
        denom = eps - _lb_matrix_row(nu, n).get(nu, ZERO)
        if not denom:
            raise ArithmeticError(f"degenerate Laplace-Beltrami spectrum at {tuple(nu)}")
        val = rhs / denom
        if val:
            u[nu] = val
    return u


def jack_polynomial(lam: Sequence[int], n: int) -> JackPolynomial:
    lam = Partition(lam)
    if len(lam) > n:
        raise ValueError(f"partition {tuple(lam)} needs at least {len(lam)} variables, got {n}")
    coeffs = _jack_coeffs(lam, n)
    value = MultiPoly.zero(VarSpace(n))
    for mu, c in coeffs.items():
        value = value + monomial_sym(mu, n).scale(c)
    return JackPolynomial(lam, n, value, BasisExpansion("monomial", dict(coeffs), {"n": n}))


@lru_cache(maxsize=None)
def _jack_power_sums(lam: Partition) -> BasisExpansion:
    n = max(sum(lam), 1)
    return to_power_sums(jack_polynomial(lam, n).value)


def jack_in_power_sums(lam: Sequence[int]) -> BasisExpansion:
    return _jack_power_sums(Partition(lam))


@lru_cache(maxsize=None)
def _super_jack(lam: Partition, space: VarSpace) -> MultiPoly:
    out = MultiPoly.zero(space)
    for mu, c in jack_in_power_sums(lam).coeffs.items():
        out = out + deformed_power_sum_product(mu, space).scale(c)
    return out


def super_jack(lam: Sequence[int], space: VarSpace) -> SuperJackPolynomial:
    """Image of P_lambda under p_r -> p_{r,theta}; zero exactly off the fat hook."""
    if space.m or space.mt:
        raise ValueError("super Jack polynomials live on a single (n, nt) family")
    lam = Partition(lam)
    return SuperJackPolynomial(lam, space, _super_jack(lam, space))


def leading_exponent(lam: Sequence[int], space: VarSpace) -> tuple[int, ...]:
    """(first n parts, conjugate of the rest) padded to the space."""
    lam = Partition(lam)
    head = [lam.part(i) for i in range(1, space.n + 1)]
    tail = conjugate(lam.tail(space.n))
    return tuple(head + [tail.part(i) for i in range(1, space.nt + 1)])


def _partition_from_leading(e: tuple[int, ...], space: VarSpace) -> Partition | None:
    head = e[:space.n]
    tail = e[space.n:]
    if any(head[i] < head[i + 1] for i in range(len(head) - 1)):
        return None
    if any(tail[i] < tail[i + 1] for i in range(len(tail) - 1)):
        return None
    rest = conjugate(Partition(tail))
    if rest and head and rest[0] > head[-1]:
        return None
    if rest and not head and space.n > 0:
        return None
    lam = Partition(tuple(head) + tuple(rest))
    if leading_exponent(lam, space) != tuple(e):
        return None
    return lam


def expand_in_super_jack(p: MultiPoly) -> BasisExpansion:
    """Coordinates of a deformed-symmetric polynomial in the super Jack basis."""
    space = p.space
    if not is_deformed_symmetric(p):
        raise NotInSpanError("not in span: polynomial is not deformed-symmetric")
    rem = p
    coeffs = {}
    while rem:
        e, c = rem.leading_term()
        lam = _partition_from_leading(e, space)
        if lam is None or not in_hook(lam, (space.n, space.nt)):
            raise NotInSpanError(f"not in span: leading exponent {e} is not a super Jack leading term")
        sp = super_jack(lam, space).value
        lc = sp.coefficient(e)
        if not lc:
            raise NotInSpanError(f"not in span: super Jack {tuple(lam)} lacks its leading term")
        f = c / lc
        coeffs[lam] = f
        rem = rem - sp.scale(f)
    return BasisExpansion("superJack", coeffs, {"n": space.n, "nt": space.nt})


def _schur_generators(space: VarSpace, k: int) -> list[MultiPoly]:
    """s_0..s_k from prod (1 - x_i y)^-1 prod (1 + xt_I y)."""
    out = []
    for r in range(k + 1):
        s = MultiPoly.zero(space)
        for a in range(r + 1):
            s = s + complete_h(r - a, space, space.x_block) * elementary(a, space, space.xt_block)
        out.append(s)
    return out


def _det(mat: list[list[MultiPoly]], space: VarSpace) -> MultiPoly:
    n = len(mat)
    if n == 0:
        return MultiPoly.one(space)
    if n == 1:
        return mat[0][0]
    out = MultiPoly.zero(space)
    for j in range(n):
        if not mat[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor, space)
        out = out + term if j % 2 == 0 else out - term
    return out


@lru_cache(maxsize=None)
def _super_schur(lam: Partition, space: VarSpace) -> MultiPoly:
    L = len(lam)
    if L == 0:
        return MultiPoly.one(space)
    gens = _schur_generators(space, lam[0] + L)
    zero = MultiPoly.zero(space)

    def s(k):
        return gens[k] if 0 <= k < len(gens) else zero

    mat = [[s(lam[i] - i + j) for j in range(L)] for i in range(L)]
    return _det(mat, space)


def super_schur(lam: Sequence[int], space: VarSpace) -> MultiPoly:
    """Jacobi-Trudi determinant det(s_{lambda_i - i + j})."""
    return _super_schur(Partition(lam), space)


def super_schur_elementary(lam: Sequence[int], space: VarSpace) -> MultiPoly:
    """The dual Jacobi-Trudi form det(e-type generators) on the conjugate; used as a cross-check."""
    lam = Partition(lam)
    conj = conjugate(lam)
    L = len(conj)
    if L == 0:
        return MultiPoly.one(space)
    k = conj[0] + L
    gens = []
    for r in range(k + 1):
        g = MultiPoly.zero(space)
        for a in range(r + 1):
            g = g + elementary(r - a, space, space.x_block) * complete_h(a, space, space.xt_block)
        gens.append(g)
    zero = MultiPoly.zero(space)

    def e(r):
        return gens[r] if 0 <= r < len(gens) else zero

    return _det([[e(conj[i] - i + j) for j in range(L)] for i in range(L)], space)
