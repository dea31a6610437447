"""Eigenfunctions of deformed CMS operators as finite combinations of the f_a."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .fbasis import f_value, is_prec_nonneg
from .jacksuite import expand_in_super_jack, super_jack
from .multipoly import MultiPoly, VarSpace
from .opspec import OperatorSpec
from .partitions import (
    IntVector,
    Partition,
    b_lambda,
    conjugate,
    enumerate_cone_window,
    hook_partitions,
    in_hook,
    phi_map,
    prec_leq,
    shift_vector,
    suffix_sums,
)
from .scalarfield import ONE, THETA, ZERO, RationalFunction, minus_theta_pow
from .symbases import BasisExpansion

__all__ = [
    "Eigenfunction",
    "DegenerateLadderError",
    "eigenvalue_of_vector",
    "eigenvalue_of_partition",
    "action_on_f",
    "action_of_operator",
    "is_admissible",
    "ladder_offsets",
    "leading_coefficient",
    "solve_eigenfunction",
    "super_jack_series",
    "check_m_independence",
    "eigenbasis",
    "D2_SPEC",
]

D2_SPEC = OperatorSpec(a2=1, name="trig")


class DegenerateLadderError(ArithmeticError):
    pass


def _pair(h) -> tuple[int, int]:
    h = tuple(h)
    return int(h[0]), int(h[1])


def _parities(mbar) -> tuple[int, ...]:
    m, mt = mbar
    return (0,) * m + (1,) * mt


@dataclass(frozen=True)
class Eigenfunction:
    lam: Partition
    nbar: tuple[int, int]
    mbar: tuple[int, int]
    spec: OperatorSpec
    coefficients: dict
    eigenvalue: RationalFunction
    value: MultiPoly

    def f_indices(self) -> list[tuple[int, ...]]:
        """Labels phi(lambda) - a of the f-polynomials that actually occur."""
        phi = phi_map(self.lam, self.mbar)
        return [tuple(p - x for p, x in zip(phi, a)) for a in self.coefficients]

    def to_json(self) -> dict:
        m = self.mbar[0]
        return {
            "lambda": str(self.lam),
            "nbar": list(self.nbar),
            "mbar": list(self.mbar),
            "spec": self.spec.label(),
            "eigenvalue": self.eigenvalue.to_json(),
            "coefficients": [{"a": str(IntVector(a, m)), "u": u.to_json()}
                             for a, u in sorted(self.coefficients.items())],
            "polynomial": self.value.to_json(),
        }


# ---------------------------------------------------------------------------
# eigenvalues


def eigenvalue_of_vector(a: Sequence[int], spec: OperatorSpec, nbar, mbar) -> RationalFunction:
    """alpha_2 sum (-theta)^q a_j (a_j - 1 + 2 s_j) + (2 alpha_2 + beta_1)|a|."""
    nbar, mbar = _pair(nbar), _pair(mbar)
    s = shift_vector(nbar, mbar)
    qs = _parities(mbar)
    quad = ZERO
    if spec.a2:
        for aj, sj, q in zip(a, s, qs):
            if aj:
                quad = quad + minus_theta_pow(q) * aj * (sj * 2 + (aj - 1))
    return spec.a2 * quad + (spec.a2 * 2 + spec.b1) * sum(a)


def eigenvalue_of_partition(lam: Sequence[int], spec: OperatorSpec, nbar) -> RationalFunction:
    """alpha_2 sum lambda_j (lambda_j + 1 + 2 theta (n - j + 1) - 2 nt) + beta_1 |lambda|."""
    n, nt = _pair(nbar)
    lam = Partition(lam)
    quad = ZERO
    for j, lj in enumerate(lam, start=1):
        quad = quad + (THETA * (2 * (n - j + 1)) + (lj + 1 - 2 * nt)) * lj
    return spec.a2 * quad + spec.b1 * sum(lam)


# ---------------------------------------------------------------------------
# action of the basic operators on f_a


def _add(out: dict, b: tuple[int, ...], c: RationalFunction):
    if not c or not is_prec_nonneg(b):
        return
    v = out.get(b, ZERO) + c
    if v:
        out[b] = v
    else:
        out.pop(b, None)


@lru_cache(maxsize=None)
def _action(which: str, a: tuple[int, ...], nbar: tuple[int, int], mbar: tuple[int, int]) -> dict:
    N = len(a)
    qs = _parities(mbar)
    s = shift_vector(nbar, mbar)
    plus = [s[j] + a[j] for j in range(N)]
    out: dict = {}
    if which == "E1":
        _add(out, a, RationalFunction(sum(a)))
        return out
    if which == "E0":
        for j in range(N):
            b = list(a)
            b[j] -= 1
            _add(out, tuple(b), plus[j] - 1)
        return out
    S = suffix_sums(a)
    if which == "D2":
        diag = RationalFunction(2 * sum(a))
        for j in range(N):
            if a[j]:
                diag = diag + minus_theta_pow(qs[j]) * a[j] * (s[j] * 2 + (a[j] - 1))
        _add(out, a, diag)
        for j in range(N):
            for l in range(j + 1, N):
                w = (THETA - 1) * minus_theta_pow(1 - qs[j] - qs[l]) * 2
                for nu in range(1, S[l] + 1):
                    b = list(a)
                    b[j] += nu
                    b[l] -= nu
                    _add(out, tuple(b), w * nu)
        return out
    if which in ("D0", "D1"):
        k = int(which[1])
        for j in range(N):
            c = minus_theta_pow(qs[j]) * (plus[j] - 2 * (k == 0) + (minus_theta_pow(-qs[j]) - 1) * k) * (plus[j] - 1)
            b = list(a)
            b[j] -= 2 - k
            _add(out, tuple(b), c)
        for j in range(N):
            for l in range(j + 1, N):
                w = (THETA - 1) * minus_theta_pow(1 - qs[j] - qs[l])
                for nu in range(0, S[l] + 1):
                    b = list(a)
                    b[l] -= 2 - k + nu
                    b[j] += nu
                    _add(out, tuple(b), w * (2 * nu + 2 - k))
        return out
    raise ValueError(f"unknown operator {which!r}")


def action_on_f(which: str, a: Sequence[int], nbar, mbar) -> BasisExpansion:
    """Image of f_a under E0, E1, D0, D1 or D2 as a combination of f_b (b >= 0 only)."""
    mbar = _pair(mbar)
    coeffs = _action(which, tuple(a), _pair(nbar), mbar)
    return BasisExpansion("fBasis", {IntVector(b, mbar[0]): c for b, c in coeffs.items()},
                          {"nbar": list(_pair(nbar)), "mbar": list(mbar)})


def _action_L(spec: OperatorSpec, a: tuple[int, ...], nbar, mbar) -> dict:
    out: dict = {}
    parts = [("D0", spec.a0), ("D1", spec.a1), ("D2", spec.a2), ("E0", spec.b0), ("E1", spec.b1)]
    for which, coef in parts:
        if not coef:
            continue
        for b, c in _action(which, a, nbar, mbar).items():
            _add(out, b, coef * c)
    return out


def action_of_operator(spec: OperatorSpec, a: Sequence[int], nbar, mbar) -> dict:
    return dict(_action_L(spec, tuple(a), _pair(nbar), _pair(mbar)))


# ---------------------------------------------------------------------------
# the eigenfunction recursion


def leading_coefficient(lam: Sequence[int], mbar) -> RationalFunction:
    """(-1)^{|tail|} / b_{tail'}(1/theta) with tail the parts after the m-th."""
    lam = Partition(lam)
    m, _ = _pair(mbar)
    tail = lam.tail(m)
    sign = -1 if sum(tail) % 2 else 1
    return sign / b_lambda(conjugate(tail), ONE / THETA)


def _ladder(lam: Partition, spec: OperatorSpec, nbar, mbar):
    phi = phi_map(lam, mbar)
    window = enumerate_cone_window(lam, mbar, spec)
    top = eigenvalue_of_vector(phi, spec, nbar, mbar)
    return phi, window, top


@lru_cache(maxsize=None)
def _reachable(lam: Partition, spec: OperatorSpec, nbar: tuple[int, int], mbar: tuple[int, int]) -> tuple:
    """Offsets reachable from 0 through nonzero off-diagonal couplings of L."""
    phi = phi_map(lam, mbar)
    seen = {(0,) * len(phi)}
    stack = list(seen)
    while stack:
        a = stack.pop()
        b = tuple(p - x for p, x in zip(phi, a))
        for b2 in _action_L(spec, b, nbar, mbar):
            if b2 == b:
                continue
            a2 = tuple(p - x for p, x in zip(phi, b2))
            if a2 not in seen:
                seen.add(a2)
                stack.append(a2)
    return tuple(sorted(seen))


def ladder_offsets(lam: Sequence[int], spec: OperatorSpec, nbar, mbar) -> list[tuple[int, ...]]:
    """The offsets a whose coefficient u(a) can be nonzero; always inside the cone window."""
    return list(_reachable(Partition(lam), spec, _pair(nbar), _pair(mbar)))


def is_admissible(lam: Sequence[int], spec: OperatorSpec, nbar, mbar, strict: bool = False) -> bool:
    """No offset 0 < a <= phi(lambda) on the ladder reproduces the top eigenvalue.

    By default the offsets are those the operator actually reaches from 0;
    ``strict`` runs over the whole cone window instead.
    """
    nbar, mbar = _pair(nbar), _pair(mbar)
    lam = Partition(lam)
    phi, window, top = _ladder(lam, spec, nbar, mbar)
    offsets = window if strict else _reachable(lam, spec, nbar, mbar)
    for a in offsets:
        if any(a):
            b = tuple(p - x for p, x in zip(phi, a))
            if eigenvalue_of_vector(b, spec, nbar, mbar) == top:
                return False
    return True


def _profile(a: Sequence[int]) -> int:
    return sum(suffix_sums(a))


@lru_cache(maxsize=None)
def _solve(lam: Partition, spec: OperatorSpec, nbar: tuple[int, int], mbar: tuple[int, int]):
    if not (in_hook(lam, nbar) and in_hook(lam, mbar)):
        raise ValueError(f"{tuple(lam)} must lie in both hooks {nbar} and {mbar}")
    phi, window, top = _ladder(lam, spec, nbar, mbar)
    if not is_admissible(lam, spec, nbar, mbar):
        raise DegenerateLadderError(
            f"degenerate eigenvalue ladder: {tuple(lam)} is not {mbar}-admissible for {spec.label()}")
    in_window = set(window)
    pending: dict = {}
    u: dict = {}
    # every coupling strictly raises the suffix-sum profile of the offset
    for a in sorted(window, key=lambda v: (_profile(v), v)):
        b = tuple(p - x for p, x in zip(phi, a))
        if not any(a):
            val = leading_coefficient(lam, mbar)
        else:
            rhs = pending.pop(a, ZERO)
            if not rhs:
                continue
            val = rhs / (top - eigenvalue_of_vector(b, spec, nbar, mbar))
        u[a] = val
        for b2, c in _action_L(spec, b, nbar, mbar).items():
            if b2 == b:
                continue
            a2 = tuple(p - x for p, x in zip(phi, b2))
            if a2 not in in_window:
                raise AssertionError(f"coupling left the cone window: {a} -> {a2}")
            pending[a2] = pending.get(a2, ZERO) + val * c
    value = MultiPoly.zero(VarSpace(*nbar))
    for a, c in u.items():
        b = tuple(p - x for p, x in zip(phi, a))
        value = value + f_value(b, nbar, mbar).scale(c)
    return u, top, value


def solve_eigenfunction(lam: Sequence[int], spec: OperatorSpec, nbar, mbar) -> Eigenfunction:
    """P = sum_a u(a) f_{phi(lambda) - a} with the u(a) fixed by the action of L on f."""
    nbar, mbar = _pair(nbar), _pair(mbar)
    lam = Partition(lam)
    u, top, value = _solve(lam, spec, nbar, mbar)
    return Eigenfunction(lam, nbar, mbar, spec, dict(u), top, value)


def _series_terms(lam: Partition, nbar, mbar) -> dict:
    """Coefficients of f_{phi - sum nu_r E_{j_r l_r}} in the explicit nested series (before u(0))."""
    phi = phi_map(lam, mbar)
    qs = _parities(mbar)
    N = len(phi)
    top = eigenvalue_of_vector(phi, D2_SPEC, nbar, mbar)
    pairs = [(j, l) for j in range(N) for l in range(j + 1, N)]
    out: dict = {phi: ONE}

    # extend from the innermost factor outwards: a step (j, l, nu) applied to an
    # accumulated shift d contributes a factor over E(phi) - E(phi - (nu E_jl + d))
    def rec(shift: tuple[int, ...], weight: RationalFunction):
        for j, l in pairs:
            base = (THETA - 1) * 2 * minus_theta_pow(1 - qs[j] - qs[l])
            for nu in range(1, sum(phi) + 1):
                d = list(shift)
                d[l] += nu
                d[j] -= nu
                target = tuple(p - x for p, x in zip(phi, d))
                if not is_prec_nonneg(target):
                    continue
                gap = top - eigenvalue_of_vector(target, D2_SPEC, nbar, mbar)
                if not gap:
                    raise DegenerateLadderError(f"degenerate eigenvalue ladder at {target}")
                w = weight * base * nu / gap
                out[target] = out.get(target, ZERO) + w
                rec(tuple(d), w)

    rec((0,) * N, ONE)
    return out


def super_jack_series(lam: Sequence[int], nbar, mbar) -> Eigenfunction:
    """u(0) times the explicit nested series for b_lambda SP_lambda."""
    nbar, mbar = _pair(nbar), _pair(mbar)
    lam = Partition(lam)
    if not is_admissible(lam, D2_SPEC, nbar, mbar):
        raise DegenerateLadderError(f"degenerate eigenvalue ladder: {tuple(lam)} is not {mbar}-admissible")
    phi = phi_map(lam, mbar)
    u0 = leading_coefficient(lam, mbar)
    terms = _series_terms(lam, nbar, mbar)
    value = MultiPoly.zero(VarSpace(*nbar))
    coeffs = {}
    for b, c in terms.items():
        if not c:
            continue
        a = tuple(p - x for p, x in zip(phi, b))
        coeffs[a] = c * u0
        value = value + f_value(b, nbar, mbar).scale(c * u0)
    top = eigenvalue_of_vector(phi, D2_SPEC, nbar, mbar)
    return Eigenfunction(lam, nbar, mbar, D2_SPEC, coeffs, top, value)


def check_m_independence(lam: Sequence[int], spec: OperatorSpec, nbar, mbar1, mbar2) -> dict:
    p1 = solve_eigenfunction(lam, spec, nbar, mbar1)
    p2 = solve_eigenfunction(lam, spec, nbar, mbar2)
    return {
        "pass": p1.value == p2.value,
        "lambda": str(Partition(lam)),
        "mbar1": list(_pair(mbar1)),
        "mbar2": list(_pair(mbar2)),
        "terms1": len(p1.coefficients),
        "terms2": len(p2.coefficients),
    }


def eigenbasis(spec: OperatorSpec, nbar, mbar, d: int) -> list[Eigenfunction]:
    """All eigenfunctions up to degree d; raises on the first non-admissible label."""
    nbar, mbar = _pair(nbar), _pair(mbar)
    out = []
    for k in range(d + 1):
        for lam in hook_partitions(k, nbar, mbar):
            if not is_admissible(lam, spec, nbar, mbar):
                raise DegenerateLadderError(
                    f"degenerate eigenvalue ladder: {tuple(lam)} is not {mbar}-admissible for {spec.label()}")
            out.append(solve_eigenfunction(lam, spec, nbar, mbar))
    return out


def eigen_transition_matrix(funcs: Sequence[Eigenfunction], mbar) -> dict:
    """N[lambda][mu]: super Jack coordinates of each eigenfunction."""
    return {ef.lam: expand_in_super_jack(ef.value).coeffs for ef in funcs}
