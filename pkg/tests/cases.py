"""Shared builders for the test suite."""
from __future__ import annotations

import random
from dataclasses import dataclass

from nilterm.counting import Setup
from nilterm.diagram import standard_parabolic
from nilterm.orbits import Partition, core_case, induce, partitions_of
from nilterm.rootsys import AlgebraFamily, build_root_system, reflect

# change of basis (a3, a6, a9, a9 - a13) for the D20 worked example
D20_BASIS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1), (0, 0, 0, -1))

D20_PUBLISHED = {
    "T3": ((-1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    "T6": ((1, 1, 0, 0), (0, -1, 0, 0), (0, 1, 1, 0), (0, 0, 0, 1)),
    "T9+13": ((1, 0, 0, 0), (0, 1, 2, 0), (0, 0, -1, 0), (0, 0, 0, 1)),
    "T13": ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1)),
}


# ---------------------------------------------------------------- twist pictures
#
# The pictures number a chain alpha_0, alpha_1, ...; alpha_j sits on Bourbaki
# vertex j + 1. Expected labels are dicts {j: coefficient of alpha_j}.

def _span(lo, hi, c=1):
    return {j: c for j in range(lo, hi + 1)}


def _plus(*parts):
    out = {}
    for p in parts:
        for j, c in p.items():
            out[j] = out.get(j, 0) + c
    return {j: c for j, c in out.items() if c}


@dataclass(frozen=True)
class TwistPicture:
    name: str
    family: str
    rank: int
    marks: frozenset
    beta: int  # vertex twisted at
    expected: dict  # vertex -> {j: coeff}, only for vertices that change
    new_marks: frozenset

    def coefficient_vector(self, combo: dict) -> tuple:
        v = [0] * self.rank
        for j, c in combo.items():
            v[j] += c  # alpha_j is vertex j + 1, index j
        return tuple(v)


def _reversed_chain(n):
    """Interior vertex of alpha_i shows -alpha_{n+1-i}."""
    return {i + 1: {n + 1 - i: -1} for i in range(1, n + 1)}


def _negated_chain(lo, hi):
    return {i + 1: {i: -1} for i in range(lo, hi + 1)}


def twist_pictures(n: int, k: int) -> list:
    """All eight relabelling pictures for one (n, k); inapplicable cases are skipped."""
    out = []
    chain_marks = frozenset({1, k + 1, n + 2})
    moved = frozenset({1, n + 2 - k, n + 2})

    exp = _reversed_chain(n)
    exp[1] = _plus({0: 1}, _span(1, n))
    exp[n + 2] = _plus({n + 1: 1}, _span(1, n))
    out.append(TwistPicture(f"i[{n},{k}]", "A", n + 3, chain_marks, k + 1, exp, moved))

    exp = _reversed_chain(n)
    exp[1] = _plus({0: 1}, _span(1, n))
    exp[n + 2] = _plus({1: 1}, _span(2, n - 1, 2), {n: 1, n + 1: 1})
    out.append(TwistPicture(f"ii[{n},{k}]", "D", n + 2, chain_marks, k + 1, exp, moved))

    exp = _reversed_chain(n)
    exp[1] = _plus({0: 1}, _span(1, n))
    exp[n + 2] = _plus(_span(1, n), {n + 1: 1})
    out.append(TwistPicture(f"iii[{n},{k}]", "B", n + 2, chain_marks, k + 1, exp, moved))

    exp = _reversed_chain(n)
    exp[1] = _plus({0: 1}, _span(1, n))
    exp[n + 2] = _plus(_span(1, n, 2), {n + 1: 1})
    out.append(TwistPicture(f"iv[{n},{k}]", "C", n + 2, chain_marks, k + 1, exp, moved))

    tail_marks = frozenset({1, k + 1})

    exp = _negated_chain(1, n)
    exp[1] = _plus({0: 1}, _span(1, n, 2))
    out.append(TwistPicture(f"v[{n},{k}]", "B", n + 1, tail_marks, k + 1, exp, tail_marks))

    exp = _negated_chain(1, n)
    exp[1] = _plus({0: 1}, _span(1, n - 1, 2), {n: 1})
    out.append(TwistPicture(f"vi[{n},{k}]", "C", n + 1, tail_marks, k + 1, exp, tail_marks))

    d_head = _plus({0: 1}, _span(1, n - 2, 2), {n - 1: 1, n: 1})
    if n % 2 == 1:
        exp = _negated_chain(1, n - 2)
        exp[n] = {n: -1}
        exp[n + 1] = {n - 1: -1}
        exp[1] = d_head
        if k <= n - 2:
            out.append(TwistPicture(f"vii[{n},{k}]", "D", n + 1, tail_marks, k + 1, exp,
                                    tail_marks))
        # the fork sub-case: alpha_{n-1} marked, its mark moves to the other fork
        out.append(TwistPicture(f"vii-fork[{n}]", "D", n + 1, frozenset({1, n}), n, exp,
                                frozenset({1, n + 1})))
    else:
        exp = _negated_chain(1, n)
        exp[1] = d_head
        out.append(TwistPicture(f"viii[{n},{k}]", "D", n + 1, tail_marks, k + 1, exp,
                                tail_marks))
    return out


def all_twist_pictures() -> list:
    """(4,2) and (5,3) everywhere; (3,1) and (6,3) fill the parity-restricted D cases."""
    seen, out = set(), []
    for n, k in ((4, 2), (5, 3), (3, 1), (6, 3)):
        for pic in twist_pictures(n, k):
            letter = pic.name.split("[")[0]
            parity_only = letter in ("vii", "vii-fork", "viii")
            if (n, k) in ((3, 1), (6, 3)) and not parity_only:
                continue
            if pic.name not in seen:
                seen.add(pic.name)
                out.append(pic)
    return out


def picture_parabolic(pic: TwistPicture):
    sys = build_root_system(AlgebraFamily(pic.family, pic.rank))
    return standard_parabolic(sys, pic.marks)


# ---------------------------------------------------------------- random subsystems

def random_subsystem(rng: random.Random, max_rank: int = 8):
    """(root system, base) where base is a random Weyl conjugate of a simple subset."""
    fam = rng.choice("ABCD")
    rank = rng.randint(2 if fam == "D" else 1, max_rank)
    sys = build_root_system(AlgebraFamily(fam, rank))
    size = rng.randint(1, rank)
    idx = sorted(rng.sample(range(1, rank + 1), size))
    base = [sys.simple(i) for i in idx]
    for _ in range(rng.randint(0, 6)):
        r = rng.choice(sys.roots)
        base = [reflect(b, r) for b in base]
    return sys, base


# ---------------------------------------------------------------- sp sweep

def compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def case_a_cores(k: int) -> list:
    """Case (a) core partitions of 2k for sp (the empty core when k = 0)."""
    if k == 0:
        return [Partition(())]
    return [Partition(q) for q in partitions_of(2 * k) if core_case("sp", Partition(q)) == "A"]


def sp_setups(max_rank: int = 8):
    """Every sp setup with a case (a) core and zero gl orbits, up to ``max_rank``."""
    for n in range(1, max_rank + 1):
        for k in range(n + 1):
            for core in case_a_cores(k):
                for blocks in compositions(n - k):
                    p = core
                    for b in reversed(blocks):
                        p = induce("C", p, b)
                    yield Setup(AlgebraFamily("C", n), p, blocks, core)
