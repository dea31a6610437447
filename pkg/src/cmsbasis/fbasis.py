"""The polynomials f_a: transition-matrix construction, closed forms and a series oracle."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .cmsops import truncated_kernel
from .jacksuite import super_jack
from .multipoly import MultiPoly, VarSpace
from .partitions import (
    IntVector,
    Partition,
    b_lambda,
    conjugate,
    hook_partitions,
    in_hook,
    phi_map,
    prec_leq,
    suffix_sums,
)
from .scalarfield import ONE, THETA, ZERO, RationalFunction, generalized_binomial, minus_theta_pow
from .symbases import BasisExpansion, elementary, g_theta, modified_g

__all__ = [
    "FPolynomial",
    "TransitionMatrix",
    "is_prec_nonneg",
    "cross_coefficient",
    "transition_entry",
    "f_polynomial",
    "f_value",
    "transition_matrix",
    "f_basis_for_degree",
    "f_closed_form_m1",
    "f_closed_form_m2",
    "m2_binomial_exponent",
    "direct_series_oracle",
    "diagonal_entry",
]


def _pair(h) -> tuple[int, int]:
    h = tuple(h)
    if len(h) != 2:
        raise ValueError(f"expected a shape (n, nt), got {h}")
    return int(h[0]), int(h[1])


def _parities(mbar) -> tuple[int, ...]:
    m, mt = mbar
    return (0,) * m + (1,) * mt


def is_prec_nonneg(a: Sequence[int]) -> bool:
    """a >= 0 in the suffix-sum order."""
    return all(s >= 0 for s in suffix_sums(a))


@lru_cache(maxsize=None)
def _cross_coefficient(d: tuple[int, ...], qs: tuple[int, ...]) -> RationalFunction:
    N = len(d)
    if sum(d) != 0:
        return ZERO
    cs = {(j, l): -minus_theta_pow(1 - qs[j] - qs[l]) for j in range(N) for l in range(j + 1, N)}
    total = ZERO

    def rec(j, inflow, acc):
        nonlocal total
        out = inflow[j] - d[j]
        if out < 0:
            return
        if j == N - 1:
            if out == 0:
                total = total + acc
            return
        targets = range(j + 1, N)
        for comp in _compositions(out, len(targets)):
            w = acc
            for l, v in zip(targets, comp):
                if v:
                    w = w * generalized_binomial(cs[(j, l)], v) * (-1) ** v
                    if not w:
                        break
            if not w:
                continue
            nin = list(inflow)
            for l, v in zip(targets, comp):
                nin[l] += v
            rec(j + 1, nin, w)

    if N == 0:
        return ONE
    rec(0, [0] * N, ONE)
    return total


def _compositions(r: int, parts: int):
    if parts == 0:
        if r == 0:
            yield ()
        return
    if parts == 1:
        yield (r,)
        return
    for k in range(r + 1):
        for rest in _compositions(r - k, parts - 1):
            yield (k,) + rest


def cross_coefficient(d: Sequence[int], mbar) -> RationalFunction:
    """Coefficient of y^d in prod_{j<l} (1 - y_l/y_j)^(-(-theta)^(1-q(j)-q(l)))."""
    return _cross_coefficient(tuple(d), _parities(_pair(mbar)))


@lru_cache(maxsize=None)
def _transition_entry(a: tuple[int, ...], mu: Partition, mbar: tuple[int, int]) -> RationalFunction:
    sp = super_jack(mu, VarSpace(*mbar)).value
    qs = _parities(mbar)
    s = ZERO
    for b, c in sp.terms.items():
        g = _cross_coefficient(tuple(x - y for x, y in zip(a, b)), qs)
        if g:
            s = s + c * g
    return s * b_lambda(mu) if s else ZERO


def transition_entry(a: Sequence[int], mu: Sequence[int], nbar, mbar) -> RationalFunction:
    """M_{a mu}: the coefficient of SP_mu(x) in f_a."""
    nbar, mbar = _pair(nbar), _pair(mbar)
    mu = Partition(mu)
    a = tuple(a)
    if len(a) != sum(mbar):
        raise ValueError(f"vector {a} does not match the shape {mbar}")
    if sum(a) != sum(mu):
        raise ValueError(f"weight mismatch: |a| = {sum(a)} but |mu| = {sum(mu)}")
    if not (in_hook(mu, nbar) and in_hook(mu, mbar)):
        return ZERO
    return _transition_entry(a, mu, mbar)


def diagonal_entry(lam: Sequence[int], mbar) -> RationalFunction:
    """(-1)^{|tail|} b_lambda(theta) b_{tail'}(1/theta), tail = parts after the m-th."""
    lam = Partition(lam)
    m, _ = _pair(mbar)
    tail = lam.tail(m)
    sign = -1 if sum(tail) % 2 else 1
    return b_lambda(lam) * b_lambda(conjugate(tail), ONE / THETA) * sign


@dataclass(frozen=True)
class FPolynomial:
    a: IntVector
    mbar: tuple[int, int]
    nbar: tuple[int, int]
    value: MultiPoly
    super_jack_expansion: BasisExpansion

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero()


@lru_cache(maxsize=None)
def _f_data(a: tuple[int, ...], nbar: tuple[int, int], mbar: tuple[int, int]):
    space = VarSpace(*nbar)
    if not is_prec_nonneg(a):
        return MultiPoly.zero(space), {}
    k = sum(a)
    coeffs = {}
    value = MultiPoly.zero(space)
    for mu in hook_partitions(k, nbar, mbar):
        c = _transition_entry(a, mu, mbar)
        if c:
            coeffs[mu] = c
            value = value + super_jack(mu, space).value.scale(c)
    return value, coeffs


def f_polynomial(a: Sequence[int], nbar, mbar) -> FPolynomial:
    """f_a as sum_mu M_{a mu} SP_mu(x, xt); zero unless a >= 0."""
    nbar, mbar = _pair(nbar), _pair(mbar)
    a = tuple(a)
    if len(a) != sum(mbar):
        raise ValueError(f"vector {a} does not match the shape {mbar}")
    value, coeffs = _f_data(a, nbar, mbar)
    exp = BasisExpansion("superJack", dict(coeffs), {"n": nbar[0], "nt": nbar[1]})
    return FPolynomial(IntVector(a, mbar[0]), mbar, nbar, value, exp)


def f_value(a: Sequence[int], nbar, mbar) -> MultiPoly:
    return _f_data(tuple(a), _pair(nbar), _pair(mbar))[0]


@dataclass(frozen=True)
class TransitionMatrix:
    rows: tuple[tuple[int, ...], ...]
    cols: tuple[Partition, ...]
    entries: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.entries.get(key, ZERO)

    def triangular_violations(self) -> list:
        """Nonzero entries with phi(mu) not below the row label."""
        return [(a, mu) for (a, mu), v in self.entries.items() if v and not prec_leq(self._phi[mu], a)]


def transition_matrix(rows: Sequence[Sequence[int]], k: int, nbar, mbar) -> TransitionMatrix:
    nbar, mbar = _pair(nbar), _pair(mbar)
    cols = hook_partitions(k, nbar, mbar)
    entries = {}
    for a in rows:
        a = tuple(a)
        for mu in cols:
            v = _transition_entry(a, mu, mbar) if is_prec_nonneg(a) else ZERO
            if v:
                entries[(a, mu)] = v
    tm = TransitionMatrix(tuple(tuple(r) for r in rows), cols, entries)
    object.__setattr__(tm, "_phi", {mu: phi_map(mu, mbar) for mu in cols})
    return tm


def f_basis_for_degree(k: int, nbar, mbar) -> list[FPolynomial]:
    """f_{phi(lambda)} over the common hook; raises if the square matrix is singular."""
    nbar, mbar = _pair(nbar), _pair(mbar)
    lams = hook_partitions(k, nbar, mbar)
    out = []
    for lam in lams:
        a = phi_map(lam, mbar)
        f = f_polynomial(a, nbar, mbar)
        # K is triangular in the suffix order; the diagonal must survive
        if not f.super_jack_expansion[lam]:
            raise ArithmeticError(f"zero diagonal entry at {tuple(lam)}")
        for mu in f.super_jack_expansion.coeffs:
            if not prec_leq(phi_map(mu, mbar), a):
                raise ArithmeticError(f"transition matrix not triangular at ({a}, {tuple(mu)})")
        out.append(f)
    return out


# ---------------------------------------------------------------------------
# closed forms for one and two y-variables


def _one_factor(r_max: int, kind: str, space: VarSpace) -> list[MultiPoly]:
    """Coefficients of y^0..y^r_max for a single y (kind 'even') or yt (kind 'odd') variable."""
    out = []
    for a in range(r_max + 1):
        s = MultiPoly.zero(space)
        for r in range(a + 1):
            if kind == "even":
                s = s + elementary(r, space, space.xt_block).scale((-1) ** r) * g_theta(a - r, space, space.x_block)
            else:
                s = s + elementary(r, space, space.x_block).scale((-1) ** r) * \
                    g_theta(a - r, space, space.xt_block, ONE / THETA)
        out.append(s)
    return out


def f_closed_form_m1(a: int, which, nbar) -> MultiPoly:
    """sum_r (-1)^r e_r g_{a-r} with the roles of the two families set by ``which``."""
    which = _pair(which)
    if which not in ((1, 0), (0, 1)):
        raise ValueError("which must be (1,0) or (0,1)")
    if a < 0:
        raise ValueError("a must be nonnegative")
    space = VarSpace(*_pair(nbar))
    return _one_factor(a, "even" if which == (1, 0) else "odd", space)[a]


def m2_binomial_exponent(mbar) -> RationalFunction:
    """-(-theta)^((m - mt)/2) for |mbar| = 2."""
    m, mt = _pair(mbar)
    return -minus_theta_pow((m - mt) // 2)


def f_closed_form_m2(a: Sequence[int], which, nbar, *, alternating: bool = True) -> MultiPoly:
    """sum_t c_t p_{(a1+t, a2-t)} for |mbar| = 2.

    With ``alternating`` the weights are binom(c, t)(-1)^t, which is what the
    generating function produces; without it they are the bare binom(c, t).
    """
    which = _pair(which)
    if which not in ((2, 0), (1, 1), (0, 2)):
        raise ValueError("which must be (2,0), (1,1) or (0,2)")
    a1, a2 = a
    if a1 < 0 or a2 < 0:
        raise ValueError("entries must be nonnegative")
    space = VarSpace(*_pair(nbar))
    kinds = {(2, 0): ("even", "even"), (1, 1): ("even", "odd"), (0, 2): ("odd", "odd")}[which]
    top = a1 + a2
    first = _one_factor(top, kinds[0], space)
    second = _one_factor(top, kinds[1], space)
    c = m2_binomial_exponent(which)
    out = MultiPoly.zero(space)
    for t in range(a2 + 1):
        w = generalized_binomial(c, t)
        if alternating and t % 2:
            w = -w
        out = out + (first[a1 + t] * second[a2 - t]).scale(w)
    return out


# ---------------------------------------------------------------------------
# independent series route


def direct_series_oracle(a: Sequence[int], nbar, mbar, B: int) -> MultiPoly:
    """y^a coefficient of the generating function, cross factors cut at order B.

    The kernel is expanded directly as a product of binomial series; no super
    Jack polynomial enters.
    """
    nbar, mbar = _pair(nbar), _pair(mbar)
    a = tuple(a)
    space = VarSpace(*nbar)
    if not is_prec_nonneg(a):
        return MultiPoly.zero(space)
    k = sum(a)
    ker = truncated_kernel(nbar, mbar, k).value
    xs = list(ker.space.first_family)
    ys = list(ker.space.second_family)
    blocks = ker.component_in(ys, k).coefficients_in(ys, space, xs)
    qs = _parities(mbar)
    N = len(a)
    pairs = [(j, l) for j in range(N) for l in range(j + 1, N)]
    out = MultiPoly.zero(space)
    for nus in itertools.product(range(B + 1), repeat=len(pairs)):
        b = list(a)
        w = ONE
        for (j, l), v in zip(pairs, nus):
            if v:
                b[j] += v
                b[l] -= v
                w = w * generalized_binomial(-minus_theta_pow(1 - qs[j] - qs[l]), v) * (-1) ** v
        if not w or any(x < 0 for x in b):
            continue
        blk = blocks.get(tuple(b))
        if blk is not None:
            out = out + blk.scale(w)
    return out
