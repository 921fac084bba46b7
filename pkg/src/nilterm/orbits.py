"""Partition calculus for nilpotent orbits in sl, sp and so.

Parity rules: in sp every odd part has even multiplicity; in so every even part
has even multiplicity. The collapse of a partition is the dominance-largest
partition below it obeying the rule. Induction from a Levi factor
gl(k) + g' adds twice the gl partition to the g' partition and collapses.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import (ChainMismatch, InvalidBlock, ParityViolation, PreconditionViolated,
                     SumMismatch, UnsupportedFamily, VeryEvenUnsupported)

ORBIT_FAMILIES = ("sl", "sp", "soB", "soD")
_LETTER = {"A": "sl", "B": "soB", "C": "sp", "D": "soD"}


def orbit_family(family: str) -> str:
    """Accept a root-system letter or an orbit family name."""
    if family in ORBIT_FAMILIES:
        return family
    if family in _LETTER:
        return _LETTER[family]
    raise UnsupportedFamily(f"unknown family {family!r}")


def _parity_class(family: str) -> str:
    f = orbit_family(family)
    return "so" if f in ("soB", "soD") else f


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts if x != 0)
        if any(x < 0 for x in parts):
            raise InvalidBlock(f"negative part in {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def zero(cls, k: int) -> "Partition":
        return cls((1,) * k)

    def r(self, i: int) -> int:
        """Multiplicity of i."""
        return self.parts.count(i)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, k):
        return self.parts[k]

    def distinct(self) -> list:
        return sorted(set(self.parts), reverse=True)

    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def __str__(self):
        if not self.parts:
            return "[]"
        groups = []
        for v in self.distinct():
            m = self.r(v)
            groups.append(f"{v}^{m}" if m > 1 else str(v))
        return "[" + ",".join(groups) + "]"


def satisfies_parity(family: str, p: Partition) -> bool:
    cls = _parity_class(family)
    if cls == "sl":
        return True
    bad = 1 if cls == "sp" else 0
    c = Counter(p.parts)
    return all(m % 2 == 0 for v, m in c.items() if v % 2 == bad)


@dataclass(frozen=True)
class OrbitId:
    family: str
    dim: int
    partition: Partition

    def __post_init__(self):
        object.__setattr__(self, "family", orbit_family(self.family))
        if not isinstance(self.partition, Partition):
            object.__setattr__(self, "partition", Partition(tuple(self.partition)))


def ambient_dim(family: str, rank: int) -> int:
    """Size of the natural representation for a root-system letter."""
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[family]


def validate_orbit(o: OrbitId) -> bool:
    p = o.partition
    if p.size != o.dim:
        raise SumMismatch(f"{p} sums to {p.size}, expected {o.dim}")
    if o.family == "sp" and o.dim % 2:
        raise SumMismatch(f"sp needs even dimension, got {o.dim}")
    if o.family == "soB" and o.dim % 2 == 0:
        raise SumMismatch(f"odd orthogonal algebra needs odd dimension, got {o.dim}")
    if o.family == "soD" and o.dim % 2:
        raise SumMismatch(f"even orthogonal algebra needs even dimension, got {o.dim}")
    if not satisfies_parity(o.family, p):
        kind = "odd" if o.family == "sp" else "even"
        raise ParityViolation(f"{p}: some {kind} part has odd multiplicity")
    if o.family in ("soB", "soD") and p.parts and all(x % 2 == 0 for x in p.parts):
        raise VeryEvenUnsupported(f"{p} is very even")
    return True


def x_collapse(family: str, p: Partition) -> Partition:
    """Greedy collapse: fix the largest offending part, repeat."""
    cls = _parity_class(family)
    if cls == "sl":
        return p
    bad = 1 if cls == "sp" else 0
    if cls == "sp" and p.size % 2:
        raise SumMismatch(f"{p} has odd size; no symplectic partition lies below it")
    parts = list(p.parts)
    while True:
        c = Counter(parts)
        offenders = [v for v, m in c.items() if v % 2 == bad and m % 2]
        if not offenders:
            return Partition(tuple(parts))
        q = max(offenders)
        last = max(j for j, v in enumerate(parts) if v == q)
        parts[last] -= 1
        j = next((j for j in range(last + 1, len(parts)) if parts[j] < q - 1), None)
        if j is None:
            parts.append(1)
        else:
            parts[j] += 1
        parts.sort(reverse=True)


def dominates(p: Partition, q: Partition) -> bool:
    """p >= q in dominance order (equal sizes assumed)."""
    sp = sq = 0
    for k in range(max(len(p), len(q))):
        sp += p[k] if k < len(p) else 0
        sq += q[k] if k < len(q) else 0
        if sp < sq:
            return False
    return True


@lru_cache(maxsize=None)
def partitions_of(n: int, largest: Optional[int] = None) -> tuple:
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def brute_collapse(family: str, p: Partition) -> Partition:
    """Dominance maximum over all valid partitions below p (reference oracle)."""
    below = [Partition(q) for q in partitions_of(p.size)
             if satisfies_parity(family, Partition(q)) and dominates(p, Partition(q))]
    # a dominance maximum is also the lexicographic maximum; confirm it against all
    top = max(below, key=lambda q: q.parts, default=None)
    if top is None or not all(dominates(top, r) for r in below):
        raise PreconditionViolated(f"no unique collapse for {p} in {family}")
    return top


def _padded_sum(p: Sequence[int], q: Sequence[int], scale: int = 1) -> tuple:
    n = max(len(p), len(q))
    a = list(p) + [0] * (n - len(p))
    b = list(q) + [0] * (n - len(q))
    return tuple(x + scale * y for x, y in zip(a, b))


def induce(family: str, p: Partition, k: int, q: Optional[Partition] = None) -> Partition:
    q = Partition.zero(k) if q is None else q
    if k < 1 or q.size != k:
        raise InvalidBlock(f"{q} is not a partition of the block size {k}")
    return x_collapse(family, Partition(_padded_sum(p.parts, q.parts, 2)))


def gl_merge(q1: Partition, q2: Partition) -> Partition:
    t = _padded_sum(q1.transpose().parts, q2.transpose().parts)
    return Partition(t).transpose()


def _special_parity(family: str) -> int:
    cls = _parity_class(family)
    if cls == "sl":
        raise UnsupportedFamily("type II inductions do not occur in sl")
    return 0 if cls == "sp" else 1


def un_induce(family: str, pbar: Partition, i: int) -> Partition:
    if i % 2 != _special_parity(family):
        raise PreconditionViolated(f"member {i} has the wrong parity for {family}")
    if pbar.r(i) != 2:
        raise PreconditionViolated(f"multiplicity of {i} in {pbar} is {pbar.r(i)}, not 2")
    out = []
    for v in pbar.parts:
        if v > i:
            out.append(v - 2)
        elif v == i:
            out.append(i - 1)
        else:
            out.append(v)
    return Partition(tuple(out))


@dataclass(frozen=True)
class InductionStep:
    k: int
    q: Partition
    kind: str  # "TypeI" or "TypeII"
    source: Partition = field(compare=False)
    result: Partition = field(compare=False)
    witness: Optional[int] = None  # the special member i of a type II step

    @property
    def degree(self) -> int:
        return 2 if self.kind == "TypeII" else 1


def type_ii_witness(family: str, p: Partition, pbar: Partition, k: int) -> Optional[int]:
    """The special member i of a type II step, or None for type I."""
    if _parity_class(family) == "sl":
        return None
    par = _special_parity(family)
    found = [i for i in pbar.distinct()
             if i % 2 == par and pbar.r(i) == 2 and un_induce(family, pbar, i) == p]
    if not found:
        return None
    preferred = [i for i in found if sum(1 for v in pbar.parts if v > i) + 1 == k]
    return (preferred or found)[0]


def classify_induction(family: str, p: Partition, pbar: Partition, k: int,
                       q: Optional[Partition] = None) -> InductionStep:
    q = Partition.zero(k) if q is None else q
    if pbar.size != p.size + 2 * k:
        raise ChainMismatch(f"{p} and {pbar} differ by {pbar.size - p.size}, not 2*{k}")
    w = type_ii_witness(family, p, pbar, k)
    return InductionStep(k, q, "TypeII" if w is not None else "TypeI", p, pbar, w)


def is_rather_odd(p: Partition) -> bool:
    return all(m == 1 for v, m in Counter(p.parts).items() if v % 2)


def pi1_order(o: OrbitId) -> int:
    p = o.partition
    if o.family == "sl":
        raise UnsupportedFamily("fundamental groups in sl are not handled")
    if o.family == "sp":
        return 2 ** len({v for v in p.parts if v % 2 == 0})
    a = len({v for v in p.parts if v % 2})
    e = max(a - 1, 0)
    return 2 ** (e + 1) if is_rather_odd(p) else 2 ** e


def b3_cover_degree(p: Partition) -> int:
    """Degree of the special cover of a rather odd so orbit."""
    a = len({v for v in p.parts if v % 2})
    return 2 ** max(a - 1, 0)


def _members_below_top(p: Partition, parity: int) -> list:
    top = p[0] if p.parts else 0
    return [i for i in range(1, top + 1) if i % 2 == parity]


def _gaps_ok(p: Partition) -> bool:
    d = p.distinct()
    for a, b in zip(d, d[1:]):
        if a - b > 4 or (a - b == 4 and (a % 2 == 0 or b % 2 == 0)):
            return False
    return not d or d[-1] < 4


def core_case(family: str, p: Partition, gl_blocks: Optional[Sequence[int]] = None) -> str:
    """Which core shape ``p`` fits: "A", "B1", "B2", "B3" or "NotACore".

    ``gl_blocks`` (the gl block sizes) is only used to recognise the
    rather-odd-with-blocks shape; without it a rather odd partition is "B3".
    """
    f = orbit_family(family)
    if f == "sl":
        return "NotACore"
    if not satisfies_parity(f, p):
        return "NotACore"
    r = p.r
    if f == "sp":
        evens = _members_below_top(p, 0)
        if all(r(i) != 0 and r(i) != 2 for i in evens):
            return "A"
        return "NotACore"
    if gl_blocks and is_rather_odd(p) and _gaps_ok(p):
        m = {sum(1 for v in p.parts if v >= i) for i in range(1, (p[0] if p.parts else 0) + 1)}
        if all(k % 2 == 0 and k // 2 in m for k in gl_blocks):
            return "B1"
    if all(r(i) == 1 for i in set(p.parts) if i % 2):
        return "B3"
    odds = _members_below_top(p, 1)
    if (all(r(i) != 0 and r(i) != 2 for i in odds)
            and any(r(i) >= 3 for i in odds)):
        return "B2"
    return "NotACore"


def check_chain(core: OrbitId, steps: Sequence, target: OrbitId) -> list:
    """Fold induce over (k, q) steps from the core, classify each, compare with target."""
    family = core.family
    p = core.partition
    out = []
    for idx, step in enumerate(steps):
        k, q = step
        q = Partition.zero(k) if q is None else q
        try:
            pbar = induce(family, p, k, q)
        except InvalidBlock as e:
            raise ChainMismatch(str(e), step=idx) from None
        out.append(classify_induction(family, p, pbar, k, q))
        p = pbar
    if p != target.partition:
        bad = len(steps) - 1 if steps else 0
        raise ChainMismatch(f"chain ends at {p}, target is {target.partition}", step=bad)
    return out
