"""Marked Dynkin diagrams whose vertices carry root labels.

A :class:`LabeledParabolic` is a base of the root system attached to the
vertices of the (fixed-shape) Dynkin diagram plus a set of marked vertices.
The unmarked labels always generate the same Levi subsystem ``levi`` for a
whole computation, which is what lets twists move between parabolics sharing a
Levi factor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .errors import DimensionMismatch, LeviMismatch, VeryEvenAmbiguity
from .rootsys import AlgebraFamily, RootSystem, build_root_system


@dataclass(frozen=True)
class FlagSpec:
    half_blocks: tuple
    middle: int
    family: AlgebraFamily

    def __post_init__(self):
        object.__setattr__(self, "half_blocks", tuple(self.half_blocks))
        if any(not isinstance(b, int) or b < 1 for b in self.half_blocks):
            raise DimensionMismatch(f"blocks must be positive integers: {self.half_blocks}")
        if self.middle < 0:
            raise DimensionMismatch("middle block must be nonnegative")
        fam = self.family
        total = sum(self.half_blocks)
        if fam.family == "A":
            if self.middle != 0 or total != fam.rank + 1:
                raise DimensionMismatch(
                    f"sl({fam.rank + 1}) flag blocks must sum to {fam.rank + 1} with middle 0")
            return
        ambient = 2 * fam.rank + (1 if fam.family == "B" else 0)
        if 2 * total + self.middle != ambient:
            raise DimensionMismatch(
                f"2*{total} + {self.middle} != {ambient} for {fam}")

    @property
    def partial_sums(self) -> tuple:
        out, s = [], 0
        for b in self.half_blocks:
            s += b
            out.append(s)
        return tuple(out)


@dataclass(frozen=True)
class LabeledParabolic:
    sys: RootSystem
    labels: tuple  # labels[i-1] sits on vertex i
    marks: frozenset
    levi: frozenset = field(repr=False, compare=False)

    def label(self, i: int) -> tuple:
        return self.labels[i - 1]

    @property
    def rank(self) -> int:
        return self.sys.rank

    @property
    def unmarked(self) -> list:
        return [i for i in range(1, self.rank + 1) if i not in self.marks]

    def component(self, vertices: Iterable[int], start: int) -> list:
        """Connected component of ``start`` in the diagram restricted to ``vertices``."""
        allowed = set(vertices)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.sys.neighbours(v):
                if u in allowed and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return sorted(seen)

    def unmarked_components(self) -> list:
        todo = set(self.unmarked)
        comps = []
        while todo:
            c = self.component(todo, min(todo))
            comps.append(c)
            todo -= set(c)
        return sorted(comps)


@dataclass(frozen=True)
class KBasis:
    marked_indices: tuple

    @property
    def d(self) -> int:
        return len(self.marked_indices)


def levi_of_marks(sys: RootSystem, marks: Iterable[int]) -> frozenset:
    marks = set(marks)
    idx = [i - 1 for i in marks]
    out = set()
    for r in sys.roots:
        c = sys.simple_coefficients(r)
        if all(c[k] == 0 for k in idx):
            out.add(r)
    return frozenset(out)


def standard_parabolic(sys: RootSystem, marks: Iterable[int]) -> LabeledParabolic:
    marks = frozenset(marks)
    return LabeledParabolic(sys, sys.simple_roots, marks, levi_of_marks(sys, marks))


def from_flag(f: FlagSpec) -> LabeledParabolic:
    fam = f.family
    sys = build_root_system(fam)
    n = fam.rank
    sums = f.partial_sums
    if fam.family == "A":
        marks = set(sums[:-1])
    else:
        marks = set(sums)
        if fam.family == "D":
            if f.middle == 0 and sums:
                raise VeryEvenAmbiguity(
                    "a maximal isotropic flag in type D needs a choice of fork vertex")
            if f.middle == 2:
                # GL x SO(2): both fork vertices are marked
                marks.add(n)
    return standard_parabolic(sys, marks)


def flag_of(p: LabeledParabolic) -> FlagSpec:
    """Recover the flag from a standard parabolic's marks (inverse of from_flag)."""
    fam = p.sys.fam
    n = fam.rank
    marks = sorted(p.marks)
    if fam.family == "A":
        cuts = marks + [n + 1]
    elif fam.family == "D" and n - 1 in p.marks and n in p.marks:
        cuts = [m for m in marks if m != n]
    else:
        cuts = marks
    blocks = [b - a for a, b in zip([0] + cuts, cuts)]
    if fam.family == "A":
        middle = 0
    else:
        ambient = 2 * n + (1 if fam.family == "B" else 0)
        middle = ambient - 2 * sum(blocks)
    return FlagSpec(tuple(blocks), middle, fam)


def levi_roots(p: LabeledParabolic) -> frozenset:
    """The closed subsystem generated by the unmarked labels."""
    base = [p.label(i) for i in p.unmarked]
    if not base:
        return frozenset()
    return frozenset(r for r in p.sys.roots if linalg.solve(base, r) is not None)


def k_basis(p: LabeledParabolic) -> KBasis:
    return KBasis(tuple(sorted(p.marks)))


def k_reduce(v: Sequence, base: LabeledParabolic, kb: KBasis) -> tuple:
    """Coordinates of v modulo span(levi) in the residues of the marked simple roots.

    ``base`` must carry the simple roots as labels (the reference parabolic).
    """
    c = base.sys.simple_coefficients(v)
    return tuple(c[i - 1] for i in kb.marked_indices)


def marks_of(labels: Sequence[Sequence], levi: frozenset) -> frozenset:
    marks = frozenset(i for i, lab in enumerate(labels, start=1) if tuple(lab) not in levi)
    # labels form a base, so the unmarked ones are independent; compare counts
    if len(labels) - len(marks) != _levi_rank(levi):
        raise LeviMismatch("unmarked labels do not span the Levi subsystem")
    return marks


@lru_cache(maxsize=256)
def _levi_rank(levi: frozenset) -> int:
    return linalg.rank(list(levi)) if levi else 0


def format_combination(coeffs: Sequence, symbol: str = "a") -> str:
    terms = []
    for i, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        mag = abs(c)
        body = f"{symbol}{i}" if mag == 1 else f"{mag}{symbol}{i}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


def render(p: LabeledParabolic) -> str:
    """One line per vertex: index, mark flag, label in the original simple roots."""
    width = len(str(p.rank))
    lines = []
    for i in range(1, p.rank + 1):
        flag = "*" if i in p.marks else "o"
        combo = format_combination(p.sys.simple_coefficients(p.label(i)))
        lines.append(f"{i:>{width}}  [{flag}]  {combo}")
    return "\n".join(lines)
