"""Deformed CMS operators, their duals, the kernel function and the identities linking them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .jacksuite import expand_in_super_jack, jack_polynomial, super_jack
from .multipoly import MultiPoly, VarSpace
from .opspec import OperatorSpec
from .partitions import HookShape, Partition, b_lambda, hook_partitions, partitions_of
from .scalarfield import ONE, THETA, ZERO, RationalFunction, generalized_binomial, minus_theta_pow
from .symbases import power_sum

__all__ = [
    "apply_E",
    "apply_D",
    "apply_L",
    "apply_dual_E",
    "apply_dual_D",
    "apply_dual_L",
    "dual_constant",
    "dual_potential",
    "TruncatedKernel",
    "truncated_kernel",
    "verify_identity",
    "scalar_product",
    "verify_adjointness",
    "verify_stanley",
    "verify_super_kernel",
    "verify_commutator",
]


def _family(p: MultiPoly, indices) -> tuple[int, ...]:
    return tuple(indices) if indices is not None else tuple(p.space.first_family)


def apply_E(l: int, p: MultiPoly, indices=None) -> MultiPoly:
    """sum_i x_i^l d_i p over the chosen variables (default: the first family)."""
    if l not in (0, 1):
        raise ValueError("E^l is defined for l = 0, 1")
    out = MultiPoly.zero(p.space)
    for i in _family(p, indices):
        d = p.partial_derivative(i)
        out = out + (d.mul_var(i) if l else d)
    return out


def apply_D(k: int, p: MultiPoly, indices=None) -> MultiPoly:
    """The deformed second-order operator D^k on the chosen family of variables."""
    if k not in (0, 1, 2):
        raise ValueError("D^k is defined for k = 0, 1, 2")
    sp = p.space
    idx = _family(p, indices)
    par = {i: sp.parity(i) for i in idx}
    first = {i: p.partial_derivative(i) for i in idx}
    out = MultiPoly.zero(sp)
    for i in idx:
        second = first[i].partial_derivative(i)
        if k:
            second = second.mul_var(i, k)
        out = out + second.scale(minus_theta_pow(par[i]))
        if k:
            c = k * (ONE - minus_theta_pow(1 - par[i]))
            if c:
                term = first[i].mul_var(i, k - 1) if k > 1 else first[i]
                out = out + term.scale(c)
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            left = first[i].mul_var(i, k) if k else first[i]
            right = first[j].mul_var(j, k) if k else first[j]
            num = left.scale(minus_theta_pow(1 - par[j])) - right.scale(minus_theta_pow(1 - par[i]))
            if num:
                out = out + num.exact_divide_linear(i, j).scale(-2)
    return out


def apply_L(spec: OperatorSpec, p: MultiPoly, indices=None) -> MultiPoly:
    out = MultiPoly.zero(p.space)
    for k, a in enumerate(spec.alphas):
        if a:
            out = out + apply_D(k, p, indices).scale(a)
    for l, b in enumerate(spec.betas):
        if b:
            out = out + apply_E(l, p, indices).scale(b)
    return out


# ---------------------------------------------------------------------------
# dual operators; they act on a y-family whose shape is read from the indices


def _shape_of(sp: VarSpace, idx: Sequence[int]) -> tuple[int, int]:
    m = sum(1 for j in idx if sp.parity(j) == 0)
    return m, len(idx) - m


def _theta_count(nbar) -> RationalFunction:
    n, nt = nbar
    return THETA * n - nt


def _deformed_ps_in(r: int, sp: VarSpace, idx: Sequence[int]) -> MultiPoly:
    even = [j for j in idx if sp.parity(j) == 0]
    odd = [j for j in idx if sp.parity(j) == 1]
    return power_sum(r, sp, even) - power_sum(r, sp, odd).scale(ONE / THETA)


def apply_dual_E(l: int, q: MultiPoly, nbar, indices=None) -> MultiPoly:
    """sum y_j^{2-l} d_j q + (1-l) n_theta p_{1,theta}(y) q."""
    if l not in (0, 1):
        raise ValueError("the dual E^l is defined for l = 0, 1")
    sp = q.space
    idx = _family(q, indices)
    out = MultiPoly.zero(sp)
    for j in idx:
        out = out + q.partial_derivative(j).mul_var(j, 2 - l)
    if l == 0:
        out = out + (_deformed_ps_in(1, sp, idx) * q).scale(_theta_count(nbar))
    return out


def dual_constant(j_parity: int, k: int, nbar, mbar) -> RationalFunction:
    """C_{j,k} = 2(n_theta - m_theta) + (2-k)((-t)^q - (-t)^{1-q}) + k(1 - (-t)^{1-q})."""
    q = j_parity
    return (2 * (_theta_count(nbar) - _theta_count(mbar))
            + (2 - k) * (minus_theta_pow(q) - minus_theta_pow(1 - q))
            + k * (ONE - minus_theta_pow(1 - q)))


def dual_potential(k: int, nbar, sp: VarSpace, idx: Sequence[int]) -> MultiPoly:
    """P_k(y) = (1 - [k=2]) n_t(n_t+1) p_{2-k,t} + [k=0] theta n_t (p_{1,t}^2 - p_{2,t})."""
    nt_ = _theta_count(nbar)
    out = MultiPoly.zero(sp)
    if k == 2:
        return out
    if k == 1:
        out = out + _deformed_ps_in(1, sp, idx).scale(nt_ * (nt_ + 1))
        return out
    p1 = _deformed_ps_in(1, sp, idx)
    p2 = _deformed_ps_in(2, sp, idx)
    out = out + p2.scale(nt_ * (nt_ + 1))
    out = out + (p1 * p1 - p2).scale(THETA * nt_)
    return out


def apply_dual_D(k: int, q: MultiPoly, nbar, indices=None) -> MultiPoly:
    """Dual of D^k on the y-family of shape mbar, for an x-family of shape nbar."""
    if k not in (0, 1, 2):
        raise ValueError("the dual D^k is defined for k = 0, 1, 2")
    sp = q.space
    idx = _family(q, indices)
    mbar = _shape_of(sp, idx)
    par = {j: sp.parity(j) for j in idx}
    first = {j: q.partial_derivative(j) for j in idx}
    out = MultiPoly.zero(sp)
    for j in idx:
        out = out + first[j].partial_derivative(j).mul_var(j, 4 - k).scale(minus_theta_pow(par[j]))
        c = dual_constant(par[j], k, nbar, mbar)
        if c:
            out = out + first[j].mul_var(j, 3 - k).scale(c)
    for a, j in enumerate(idx):
        for l in idx[a + 1:]:
            num = (first[j].mul_var(j, 4 - k).scale(minus_theta_pow(1 - par[l]))
                   - first[l].mul_var(l, 4 - k).scale(minus_theta_pow(1 - par[j])))
            if num:
                out = out + num.exact_divide_linear(j, l).scale(-2)
    pot = dual_potential(k, nbar, sp, idx)
    if pot:
        out = out + pot * q
    return out


def apply_dual_L(spec: OperatorSpec, q: MultiPoly, nbar, indices=None) -> MultiPoly:
    out = MultiPoly.zero(q.space)
    for k, a in enumerate(spec.alphas):
        if a:
            out = out + apply_dual_D(k, q, nbar, indices).scale(a)
    for l, b in enumerate(spec.betas):
        if b:
            out = out + apply_dual_E(l, q, nbar, indices).scale(b)
    return out


# ---------------------------------------------------------------------------
# kernel function


@dataclass(frozen=True)
class TruncatedKernel:
    nbar: tuple[int, int]
    mbar: tuple[int, int]
    degree: int
    value: MultiPoly

    @property
    def space(self) -> VarSpace:
        return self.value.space


@lru_cache(maxsize=None)
def _kernel(n: int, nt: int, m: int, mt: int, D: int) -> MultiPoly:
    sp = VarSpace(n, nt, m, mt)
    ys = tuple(sp.second_family)
    out = MultiPoly.one(sp)
    for i in sp.first_family:
        for j in ys:
            c = minus_theta_pow(1 - sp.parity(i) - sp.parity(j))
            terms = {}
            for v in range(D + 1):
                coef = generalized_binomial(c, v) * (-1) ** v
                if coef:
                    e = [0] * sp.size
                    e[i] = v
                    e[j] = v
                    terms[tuple(e)] = coef
            out = out.mul_truncated(MultiPoly(sp, terms, _trusted=True), ys, D)
    return out


def truncated_kernel(nbar, mbar, D: int) -> TruncatedKernel:
    """prod (1 - x_i y_j)^((-theta)^(1-p(i)-q(j))) through total y-degree D."""
    n, nt = nbar
    m, mt = mbar
    return TruncatedKernel((n, nt), (m, mt), D, _kernel(n, nt, m, mt, D))


def _compare(lhs: MultiPoly, rhs: MultiPoly, ys, D: int) -> dict:
    lhs = lhs.truncate_in(ys, D)
    rhs = rhs.truncate_in(ys, D)
    keys = set(lhs.terms) | set(rhs.terms)
    failures = [list(e) for e in sorted(keys) if lhs.coefficient(e) != rhs.coefficient(e)]
    return {"pass": not failures, "checked": len(keys), "failures": failures[:20]}


def verify_identity(kind: str, nbar, mbar, D: int = 5, *, k: int | None = None,
                    spec: OperatorSpec | None = None) -> dict:
    """Apply an operator in x and its dual in y to the truncated kernel and compare.

    Every dual operator raises y-degree, so all coefficients of y-degree <= D
    are exact on both sides.
    """
    ker = truncated_kernel(nbar, mbar, D)
    P = ker.value
    xs = tuple(P.space.first_family)
    ys = tuple(P.space.second_family)
    nb = tuple(nbar)
    if kind == "EId":
        lhs = apply_E(k, P, xs)
        rhs = apply_dual_E(k, P, nb, ys)
    elif kind == "DId":
        lhs = apply_D(k, P, xs)
        rhs = apply_dual_D(k, P, nb, ys)
    elif kind == "LId":
        if spec is None:
            raise ValueError("LId needs an operator spec")
        lhs = apply_L(spec, P, xs)
        rhs = apply_dual_L(spec, P, nb, ys)
    else:
        raise ValueError(f"unknown identity kind {kind!r}")
    report = _compare(lhs, rhs, ys, D)
    report.update({"kind": kind, "nbar": list(nbar), "mbar": list(mbar), "degree": D})
    if k is not None:
        report["index"] = k
    return report


# ---------------------------------------------------------------------------
# scalar product and adjointness


def scalar_product(f: MultiPoly, g: MultiPoly) -> RationalFunction:
    """<f, g> with <SP_lambda, SP_mu> = delta / b_lambda."""
    if f.space != g.space:
        raise ValueError("scalar product needs a common variable space")
    cf = expand_in_super_jack(f).coeffs
    cg = expand_in_super_jack(g).coeffs
    out = ZERO
    for lam, c in cf.items():
        d = cg.get(lam)
        if d:
            out = out + c * d / b_lambda(lam)
    return out


def verify_adjointness(spec: OperatorSpec, nbar, d: int) -> dict:
    """<L SP_lambda, SP_mu> = <SP_lambda, Lbar SP_mu> over all basis pairs up to degree d."""
    sp = VarSpace(*nbar)
    labels = [lam for k in range(d + 1) for lam in hook_partitions(k, tuple(nbar))]
    fwd = {lam: expand_in_super_jack(apply_L(spec, super_jack(lam, sp).value)).coeffs for lam in labels}
    bwd = {mu: expand_in_super_jack(apply_dual_L(spec, super_jack(mu, sp).value, tuple(nbar))).coeffs
           for mu in labels}
    self_adj = spec.is_self_adjoint_type()
    failures = []
    checked = 0
    for lam in labels:
        for mu in labels:
            left = fwd[lam].get(mu, ZERO) / b_lambda(mu)
            right = bwd[mu].get(lam, ZERO) / b_lambda(lam)
            checked += 1
            if left != right:
                failures.append({"lambda": str(lam), "mu": str(mu), "kind": "dual"})
            if self_adj:
                sym = fwd[mu].get(lam, ZERO) / b_lambda(lam)
                checked += 1
                if left != sym:
                    failures.append({"lambda": str(lam), "mu": str(mu), "kind": "self"})
    return {"pass": not failures, "checked": checked, "failures": failures[:20],
            "self_adjoint_checked": self_adj}


def verify_stanley(n: int, m: int, D: int) -> dict:
    """Kernel with no odd variables against sum b_lambda P_lambda(x) P_lambda(y)."""
    ker = truncated_kernel((n, 0), (m, 0), D).value
    sp = ker.space
    xs = list(sp.first_family)
    ys = list(sp.second_family)
    total = MultiPoly.zero(sp)
    for k in range(D + 1):
        for lam in partitions_of(k, max_len=min(n, m)):
            px = jack_polynomial(lam, n).value.embed(sp, xs)
            py = jack_polynomial(lam, m).value.embed(sp, ys)
            total = total + (px * py).scale(b_lambda(lam))
    return _compare(ker, total, ys, D)


def verify_super_kernel(nbar, mbar, D: int) -> dict:
    """Kernel against sum b_lambda SP_lambda(x) SP_lambda(y)."""
    ker = truncated_kernel(nbar, mbar, D).value
    sp = ker.space
    xs = list(sp.first_family)
    ys = list(sp.second_family)
    total = MultiPoly.zero(sp)
    for k in range(D + 1):
        for lam in hook_partitions(k, tuple(nbar), tuple(mbar)):
            px = super_jack(lam, VarSpace(*nbar)).value.embed(sp, xs)
            py = super_jack(lam, VarSpace(*mbar)).value.embed(sp, ys)
            total = total + (px * py).scale(b_lambda(lam))
    return _compare(ker, total, ys, D)


def verify_commutator(k: int, nbar, d: int) -> dict:
    """D^k = [E^0, D^{k+1}] / (k+1) on the super Jack basis up to degree d."""
    sp = VarSpace(*nbar)
    failures = []
    checked = 0
    for deg in range(d + 1):
        for lam in hook_partitions(deg, tuple(nbar)):
            p = super_jack(lam, sp).value
            lhs = apply_D(k, p)
            rhs = (apply_E(0, apply_D(k + 1, p)) - apply_D(k + 1, apply_E(0, p))).scale(RationalFunction(1) / (k + 1))
            checked += 1
            if lhs != rhs:
                failures.append(str(lam))
    return {"pass": not failures, "checked": checked, "failures": failures}
