"""Partitions, integer vectors and the orders, maps and cones built on them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .scalarfield import ONE, THETA, RationalFunction, minus_theta_pow

__all__ = [
    "Partition",
    "IntVector",
    "HookShape",
    "partitions_of",
    "hook_partitions",
    "conjugate",
    "dominance_leq",
    "prefix_leq",
    "prec_leq",
    "suffix_sums",
    "in_hook",
    "phi_map",
    "b_lambda",
    "shift_vector",
    "cone_membership",
    "enumerate_cone_window",
    "parse_partition",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; trailing zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part lookup, zero past the end."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def head(self, n: int) -> "Partition":
        """The first n parts."""
        return Partition(self[:n])

    def tail(self, n: int) -> "Partition":
        """The parts after the n-th."""
        return Partition(self[n:])

    def __repr__(self):
        return f"Partition({tuple(self)})"

    def __str__(self):
        return ",".join(map(str, self))


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()")
    if not text:
        return Partition()
    return Partition(sorted((int(t) for t in text.split(",") if t.strip()), reverse=True))


@dataclass(frozen=True)
class HookShape:
    n: int
    nt: int

    def __post_init__(self):
        if self.n < 0 or self.nt < 0:
            raise ValueError("hook shape entries must be nonnegative")

    @property
    def size(self) -> int:
        return self.n + self.nt

    def __iter__(self):
        return iter((self.n, self.nt))


def _shape(h) -> HookShape:
    return h if isinstance(h, HookShape) else HookShape(*h)


@dataclass(frozen=True)
class IntVector:
    """Integer vector whose first ``m`` entries are bosonic, the rest fermionic."""

    entries: tuple[int, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if not 0 <= self.m <= len(self.entries):
            raise ValueError("split point out of range")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def total(self) -> int:
        return sum(self.entries)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + f"|{self.m})"

    @classmethod
    def parse(cls, text: str) -> "IntVector":
        body = text.strip().strip("()")
        vals, _, m = body.partition("|")
        entries = tuple(int(t) for t in vals.split(",") if t.strip())
        return cls(entries, int(m) if m.strip() else len(entries))


@lru_cache(maxsize=None)
def partitions_of(k: int, max_len: int | None = None, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of k, in decreasing lexicographic order."""
    if max_part is None:
        max_part = k
    out: list[Partition] = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(Partition(acc))
            return
        if max_len is not None and len(acc) >= max_len:
            return
        for p in range(min(rem, cap), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(k, max_part, [])
    return tuple(out)


def conjugate(lam: Sequence[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """mu <= lam in dominance order; both must have the same weight."""
    if sum(mu) != sum(lam):
        raise ValueError(f"dominance order needs equal weights: |{tuple(mu)}| != |{tuple(lam)}|")
    return prefix_leq(mu, lam)


def prefix_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Prefix-sum order on integer vectors, zero padded to a common length."""
    n = max(len(a), len(b))
    sa = sb = 0
    for i in range(n):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa > sb:
            return False
    return True


def suffix_sums(a: Sequence[int]) -> tuple[int, ...]:
    out = []
    s = 0
    for v in reversed(a):
        s += v
        out.append(s)
    return tuple(reversed(out))


def prec_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """a precedes-or-equals b: every suffix sum of a is <= that of b."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")
    return all(x <= y for x, y in zip(suffix_sums(a), suffix_sums(b)))


def in_hook(lam: Sequence[int], h) -> bool:
    h = _shape(h)
    lam = Partition(lam)
    return lam.part(h.n + 1) <= h.nt


def hook_partitions(k: int, *shapes) -> tuple[Partition, ...]:
    """Partitions of k lying in every given fat hook."""
    return tuple(p for p in partitions_of(k) if all(in_hook(p, s) for s in shapes))


def phi_map(lam: Sequence[int], mbar) -> tuple[int, ...]:
    """(first m parts, conjugate of the remaining parts) padded to length m + mt."""
    mb = _shape(mbar)
    lam = Partition(lam)
    if not in_hook(lam, mb):
        raise ValueError(f"{tuple(lam)} is not in the fat ({mb.n},{mb.nt})-hook")
    head = [lam.part(i) for i in range(1, mb.n + 1)]
    tail = conjugate(lam.tail(mb.n))
    tail_padded = [tail.part(i) for i in range(1, mb.nt + 1)]
    return tuple(head + tail_padded)


@lru_cache(maxsize=None)
def _b_lambda(lam: Partition, t: RationalFunction) -> RationalFunction:
    conj = conjugate(lam)
    out = ONE
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            arm = row - j
            leg = conj[j - 1] - i
            out = out * (arm + t * leg + t) / (arm + t * leg + 1)
    return out


def b_lambda(lam: Sequence[int], t: RationalFunction = THETA) -> RationalFunction:
    """Hook product prod (a + t*l + t)/(a + t*l + 1) over the diagram of lam."""
    return _b_lambda(Partition(lam), RationalFunction.coerce(t))


@lru_cache(maxsize=None)
def _shift_vector(n: int, nt: int, m: int, mt: int) -> tuple[RationalFunction, ...]:
    out = []
    for j in range(1, m + mt + 1):
        q = 0 if j <= m else 1
        s = (minus_theta_pow(1 - q) * (minus_theta_pow(-q) * (j - 1) - n)
             - minus_theta_pow(-q) * (m + nt) + m)
        out.append(s)
    return tuple(out)


def shift_vector(nbar, mbar) -> tuple[RationalFunction, ...]:
    nb, mb = _shape(nbar), _shape(mbar)
    return _shift_vector(nb.n, nb.nt, mb.n, mb.nt)


# ---------------------------------------------------------------------------
# The cone of offsets.
#
# Every summand of a cone decomposition is >= 0 in the suffix order, so in
# suffix-sum coordinates T each summand satisfies 0 <= T_i <= S_i(a).  The
# existential search therefore runs over a finite box; it is organised as a
# reachability sweep, one summand family at a time.


def _summand_box(bounds: tuple[int, ...], kind: str, k: int) -> list[tuple[int, ...]]:
    """Suffix-sum vectors of admissible summands inside the box."""
    out = []
    for T in itertools.product(*(range(b + 1) for b in bounds)):
        total = T[0] if T else 0
        if kind == "A":
            step = 2 - k
            if step == 0 and total != 0:
                continue
            if step == 2 and total % 2:
                continue
        else:
            if k == 1 and total != 0:
                continue
            # entries nonnegative <=> suffix sums nonincreasing
            if any(T[i] < T[i + 1] for i in range(len(T) - 1)):
                continue
        out.append(T)
    return out


@lru_cache(maxsize=None)
def _cone_member(a: tuple[int, ...], alpha_support: tuple[int, ...], beta_support: tuple[int, ...]) -> bool:
    if not alpha_support and not beta_support:
        return all(v == 0 for v in a)
    S = suffix_sums(a)
    if any(s < 0 for s in S):
        return False
    if not a:
        return True
    reach = {tuple(0 for _ in S)}
    families = [("A", k) for k in alpha_support] + [("B", l) for l in beta_support]
    for kind, k in families:
        box = _summand_box(S, kind, k)
        nxt = set()
        for r in reach:
            for T in box:
                v = tuple(x + y for x, y in zip(r, T))
                if all(x <= s for x, s in zip(v, S)):
                    nxt.add(v)
        reach = nxt
    return S in reach


def cone_membership(a: Sequence[int], spec) -> bool:
    return _cone_member(tuple(a), spec.alpha_support, spec.beta_support)


def _from_suffix(T: Sequence[int]) -> tuple[int, ...]:
    return tuple(T[i] - (T[i + 1] if i + 1 < len(T) else 0) for i in range(len(T)))


def enumerate_cone_window(lam: Sequence[int], mbar, spec) -> list[tuple[int, ...]]:
    """Cone vectors a with 0 <= a <= phi(lam) in the suffix order, sorted lexicographically."""
    phi = phi_map(lam, mbar)
    S = suffix_sums(phi)
    out = []
    for T in itertools.product(*(range(s + 1) for s in S)):
        a = _from_suffix(T)
        if cone_membership(a, spec):
            out.append(a)
    return sorted(set(out))


def iter_prec_window(bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All vectors a with 0 <= S_i(a) <= bounds[i]."""
    for T in itertools.product(*(range(b + 1) for b in bounds)):
        yield _from_suffix(T)
