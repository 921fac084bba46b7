"""Classical root systems in standard coordinates.

Conventions (Bourbaki numbering, 1-based vertex indices):

* ``A_n`` lives in the sum-zero hyperplane of Z^(n+1), alpha_i = e_i - e_{i+1}.
* ``B_n``: alpha_i = e_i - e_{i+1} (i < n), alpha_n = e_n.
* ``C_n``: alpha_i = e_i - e_{i+1} (i < n), alpha_n = 2 e_n.
* ``D_n``: alpha_i = e_i - e_{i+1} (i < n), alpha_n = e_{n-1} + e_n.

Every root and every Weyl group element has integer coordinates, so vectors are
plain int tuples; Fractions only show up while solving linear systems.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from . import linalg
from .errors import InvalidRank, NotABase, NotInSpan

FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class AlgebraFamily:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidRank(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidRank(f"rank must be a positive integer, got {self.rank!r}")
        if self.family == "D" and self.rank < 2:
            raise InvalidRank("type D needs rank >= 2")

    @property
    def dim(self) -> int:
        """Dimension of the coordinate space."""
        return self.rank + 1 if self.family == "A" else self.rank

    def __str__(self):
        return f"{self.family}{self.rank}"


def _e(dim: int, *entries) -> tuple:
    v = [0] * dim
    for i, c in entries:
        v[i] += c
    return tuple(v)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Built once per family (cached), so identity equality is enough."""

    fam: AlgebraFamily
    simple_roots: tuple  # index 0 holds alpha_1
    roots: tuple  # sorted
    root_set: frozenset = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.fam.rank

    @property
    def dim(self) -> int:
        return self.fam.dim

    @property
    def family(self) -> str:
        return self.fam.family

    def simple(self, i: int) -> tuple:
        """alpha_i, 1-based."""
        return self.simple_roots[i - 1]

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self.root_set

    def simple_coefficients(self, v: Sequence) -> tuple:
        """Coefficients of v in the simple roots (closed form per family)."""
        return simple_coefficients(self.fam, v)

    def is_positive(self, v: Sequence) -> bool:
        c = self.simple_coefficients(v)
        return any(x > 0 for x in c) and all(x >= 0 for x in c)

    @property
    def positive_roots(self) -> tuple:
        return tuple(r for r in self.roots if self.is_positive(r))

    def adjacent(self, i: int, j: int) -> bool:
        """Dynkin adjacency of vertices i != j (nonzero pairing of simple roots)."""
        return i != j and linalg.dot(self.simple(i), self.simple(j)) != 0

    def neighbours(self, i: int) -> tuple:
        return _neighbour_table(self)[i - 1]


@lru_cache(maxsize=None)
def build_root_system(fam: AlgebraFamily) -> RootSystem:
    n, d = fam.rank, fam.dim
    simple = [_e(d, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    roots = set()
    if fam.family == "A":
        simple.append(_e(d, (n - 1, 1), (n, -1)))
        for i in range(d):
            for j in range(d):
                if i != j:
                    roots.add(_e(d, (i, 1), (j, -1)))
    else:
        if fam.family == "B":
            simple.append(_e(d, (n - 1, 1)))
        elif fam.family == "C":
            simple.append(_e(d, (n - 1, 2)))
        else:
            simple.append(_e(d, (n - 2, 1), (n - 1, 1)))
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.add(_e(d, (i, si), (j, sj)))
            if fam.family == "B":
                roots.update({_e(d, (i, 1)), _e(d, (i, -1))})
            elif fam.family == "C":
                roots.update({_e(d, (i, 2)), _e(d, (i, -2))})
    ordered = tuple(sorted(roots))
    return RootSystem(fam, tuple(simple), ordered, frozenset(roots))


@lru_cache(maxsize=None)
def _neighbour_table(sys: RootSystem) -> tuple:
    n = sys.rank
    return tuple(tuple(j for j in range(1, n + 1) if sys.adjacent(i, j))
                 for i in range(1, n + 1))


def simple_coefficients(fam: AlgebraFamily, v: Sequence) -> tuple:
    n = fam.rank
    partial = []
    s = 0
    for x in v:
        s += x
        partial.append(s)
    if fam.family == "A":
        if partial[-1] != 0:
            raise NotInSpan(f"{tuple(v)} does not lie in the sum-zero hyperplane")
        return tuple(partial[:n])
    if fam.family == "B":
        return tuple(partial)
    if fam.family == "C":
        return linalg.normalize(partial[: n - 1] + [Fraction(partial[n - 1], 2)])
    # D
    if n == 2:
        a, b = v
        return linalg.normalize([Fraction(a - b, 2), Fraction(a + b, 2)])
    head = partial[: n - 2]
    s_low, last = partial[n - 2], v[n - 1]
    return linalg.normalize(head + [Fraction(s_low - last, 2), Fraction(s_low + last, 2)])


def reflect(v: Sequence, alpha: Sequence) -> tuple:
    """s_alpha(v)."""
    c = Fraction(2 * linalg.dot(v, alpha), linalg.dot(alpha, alpha))
    return linalg.normalize(a - c * b for a, b in zip(v, alpha))


def express_in_base(v: Sequence, base: Sequence[Sequence]) -> tuple:
    try:
        c = linalg.solve(base, v)
    except ValueError:
        raise NotABase("base vectors are linearly dependent") from None
    if c is None:
        raise NotInSpan(f"{tuple(v)} is not in the span of the base")
    return c


@dataclass(frozen=True)
class OrthogonalMap:
    """An integer orthogonal matrix acting on the coordinate space."""
    matrix: tuple

    def __call__(self, v: Sequence) -> tuple:
        return linalg.matvec(self.matrix, v)

    def __matmul__(self, other: "OrthogonalMap") -> "OrthogonalMap":
        return OrthogonalMap(linalg.matmul(self.matrix, other.matrix))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def is_orthogonal(self) -> bool:
        m = self.matrix
        return linalg.matmul(linalg.transpose(m), m) == linalg.identity(len(m))


BaseSpec = Union[Iterable[int], Iterable[Sequence]]


def _resolve_base(sys: RootSystem, I: BaseSpec) -> list:
    base = []
    for x in I:
        base.append(sys.simple(x) if isinstance(x, int) else tuple(x))
    return base


def check_base(sys: RootSystem, base: Sequence[Sequence]) -> None:
    for b in base:
        if not sys.is_root(b):
            raise NotABase(f"{b} is not a root of {sys.fam}")
    if linalg.rank(base) != len(base):
        raise NotABase("base vectors are linearly dependent")
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            if linalg.dot(a, b) > 0:
                raise NotABase(f"{a} and {b} pair positively; not a base")


def longest_word(base: Sequence[Sequence]) -> list:
    """Reduced word (indices into ``base``) of the longest element.

    Images of the base roots are tracked as integer coefficient vectors over
    the base itself, using Cartan integers; the greedy loop multiplies on the
    right by s_j while some image is still positive. The word length equals the
    number of positive roots of the subsystem.
    """
    k = len(base)
    cartan = tuple(tuple(2 * linalg.dot(base[i], base[j]) // linalg.dot(base[j], base[j])
                         for j in range(k)) for i in range(k))
    return list(_longest_word_cartan(cartan))


@lru_cache(maxsize=None)
def _longest_word_cartan(cartan: tuple) -> tuple:
    k = len(cartan)
    images = [[int(i == j) for j in range(k)] for i in range(k)]
    word = []
    while True:
        j = next((j for j, img in enumerate(images) if all(c >= 0 for c in img)), None)
        if j is None:
            return tuple(word)
        wj = images[j]
        images = [img if cartan[i][j] == 0 else
                  [a - cartan[i][j] * b for a, b in zip(img, wj)]
                  for i, img in enumerate(images)]
        word.append(j)


def _sparse(a: Sequence) -> tuple:
    return tuple((i, x) for i, x in enumerate(a) if x)


def apply_word(base: Sequence[Sequence], word: Sequence[int], v: Sequence) -> tuple:
    """s_{word[0]} ... s_{word[-1]} (v).

    Every classical coordinate vector pairs integrally with every coroot, so the
    arithmetic stays in the integers. Roots have at most two nonzero
    coordinates, which keeps each reflection cheap.
    """
    sparse = {}
    v = list(v)
    for j in reversed(word):
        a = sparse.get(j)
        if a is None:
            nz = _sparse(base[j])
            a = sparse[j] = (nz, sum(x * x for _, x in nz))
        nz, aa = a
        c = 2 * sum(v[i] * x for i, x in nz) // aa
        if c:
            for i, x in nz:
                v[i] -= c * x
    return tuple(v)


def longest_element(sys: RootSystem, I: BaseSpec, *, with_steps: bool = False):
    """Longest element of the Weyl group generated by the base ``I``.

    ``I`` holds simple-root indices or explicit root vectors.
    """
    base = _resolve_base(sys, I)
    check_base(sys, base)
    dim = sys.dim
    word = longest_word(base) if base else []
    cols = [apply_word(base, word, _e(dim, (k, 1))) for k in range(dim)]
    m = OrthogonalMap(linalg.transpose(cols))
    return (m, len(word)) if with_steps else m


def subsystem_roots(sys: RootSystem, base: Sequence[Sequence]) -> frozenset:
    """Roots of Phi lying in the span of ``base`` (the closed subsystem it generates)."""
    base = [tuple(b) for b in base]
    if not base:
        return frozenset()
    out = set()
    for r in sys.roots:
        try:
            c = linalg.solve(base, r)
        except ValueError:
            raise NotABase("base vectors are linearly dependent") from None
        if c is not None:
            out.add(r)
    return frozenset(out)
