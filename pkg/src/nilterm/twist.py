"""Twists of labeled parabolics, the chamber graph, and the group they generate.

A twist at a marked vertex ``b`` applies the longest element of the component
of ``b`` inside (unmarked vertices + ``b``) to every label. The new marks are
the vertices whose labels left the Levi subsystem.

Only twists whose component symmetry fixes ``b`` keep the mark positions, and
only those normalize the Levi subsystem; their action on the quotient
h*/span(Levi) is an element of W' (a reflection). The remaining twists cross a
wall between chambers of different conjugacy classes.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import lcm
from typing import Optional

from . import linalg
from .diagram import KBasis, LabeledParabolic, k_basis, k_reduce, marks_of
from .errors import BudgetExceeded, DivisibilityViolation, NotMarked, NotNormalizing
from .rootsys import OrthogonalMap, RootSystem, apply_word, longest_word

DEFAULT_MAX_NODES = 1_000_000
DEFAULT_MAX_GROUP = 1_000_000


@dataclass(frozen=True)
class KMatrix:
    """Integer matrix on k-coordinates; row j is the image of the j-th marked root."""
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(int(x) for x in row) for row in self.entries))

    @classmethod
    def identity(cls, d: int) -> "KMatrix":
        return cls(linalg.identity(d))

    @property
    def d(self) -> int:
        return len(self.entries)

    @classmethod
    def _trusted(cls, entries: tuple) -> "KMatrix":
        # products of integer matrices are already int tuples
        m = object.__new__(cls)
        object.__setattr__(m, "entries", entries)
        return m

    def __matmul__(self, other: "KMatrix") -> "KMatrix":
        return KMatrix._trusted(linalg.matmul(self.entries, other.entries))

    def is_identity(self) -> bool:
        return self.entries == linalg.identity(self.d)

    def determinant(self) -> int:
        return int(linalg.determinant(self.entries))

    def order(self, limit: int = 10_000) -> int:
        m, k = self, 1
        while not m.is_identity():
            m = m @ self
            k += 1
            if k > limit:
                raise BudgetExceeded("element order exceeds limit")
        return k

    def fixed_rank(self) -> int:
        """Dimension of the fixed space."""
        diff = [[a - int(i == j) for j, a in enumerate(row)] for i, row in enumerate(self.entries)]
        return self.d - linalg.rank(diff)

    def is_reflection(self) -> bool:
        return (self @ self).is_identity() and not self.is_identity() and self.fixed_rank() == self.d - 1

    def change_basis(self, rows) -> "KMatrix":
        """Rewrite the row-vector map x -> x M in the basis given by ``rows``."""
        return KMatrix(linalg.matmul(linalg.matmul(rows, self.entries), linalg.inverse(rows)))

    def rows(self) -> list:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class TwistMap:
    """The longest element of a component, kept as a reflection word."""
    component: tuple
    base: tuple  # labels of the component
    word: tuple

    def __call__(self, v) -> tuple:
        return apply_word(self.base, self.word, v)

    def matrix(self, dim: int) -> OrthogonalMap:
        cols = [self(tuple(int(i == k) for i in range(dim))) for k in range(dim)]
        return OrthogonalMap(linalg.transpose(cols))


def twist_map(node: LabeledParabolic, beta: int) -> TwistMap:
    if beta not in node.marks:
        raise NotMarked(f"vertex {beta} is not marked")
    comp = tuple(node.component(set(node.unmarked) | {beta}, beta))
    base = tuple(node.label(i) for i in comp)
    return TwistMap(comp, base, tuple(longest_word(base)))


def twist_at(node: LabeledParabolic, beta: int) -> LabeledParabolic:
    return _apply_twist(node, twist_map(node, beta))


def _apply_twist(node: LabeledParabolic, T: TwistMap) -> LabeledParabolic:
    # labels away from the component are orthogonal to it and stay put
    touched = set(T.component)
    for v in T.component:
        touched.update(node.sys.neighbours(v))
    labels = tuple(T(lab) if i in touched else lab
                   for i, lab in enumerate(node.labels, start=1))
    return LabeledParabolic(node.sys, labels, marks_of(labels, node.levi), node.levi)


def is_normalizing(node: LabeledParabolic, beta: int) -> bool:
    """True when the twist keeps the mark positions (its map normalizes the Levi)."""
    return twist_at(node, beta).marks == node.marks


def k_action(node: LabeledParabolic, beta: int, base: LabeledParabolic,
             kb: Optional[KBasis] = None) -> KMatrix:
    T = twist_map(node, beta)
    if _apply_twist(node, T).marks != node.marks:
        raise NotNormalizing(f"twist at {beta} moves the marks; no W' element")
    return _k_matrix(T, base, kb or k_basis(base))


def _k_matrix(T: TwistMap, base: LabeledParabolic, kb: KBasis) -> KMatrix:
    return KMatrix(tuple(k_reduce(T(base.label(i)), base, kb) for i in kb.marked_indices))


def label_element(node: LabeledParabolic, base: LabeledParabolic,
                  kb: Optional[KBasis] = None) -> Optional[KMatrix]:
    """The W' element carrying ``base`` to ``node``, read off the labels.

    Defined only when ``node`` has the same mark positions as ``base``.
    """
    if node.marks != base.marks:
        return None
    kb = kb or k_basis(base)
    return KMatrix(tuple(k_reduce(node.label(i), base, kb) for i in kb.marked_indices))


@lru_cache(maxsize=None)
def _scaled_inverse_gram(sys: RootSystem):
    """(D, M) with M = D * inverse Gram matrix of the simple roots, M integral."""
    gram = [[linalg.dot(a, b) for b in sys.simple_roots] for a in sys.simple_roots]
    inv = linalg.inverse(gram)
    den = lcm(*(Fraction(x).denominator for row in inv for x in row))
    return den, tuple(tuple(int(x * den) for x in row) for row in inv)


def grading(node: LabeledParabolic) -> tuple:
    """Integer h with <h, label_j> = D for marked j and 0 otherwise.

    Labels always have the Gram matrix of the simple roots, so one inverse
    serves every node. ``h`` determines the parabolic, hence the chamber.
    """
    _, inv = _scaled_inverse_gram(node.sys)
    coeff = [sum(inv[i][j - 1] for j in node.marks) for i in range(node.rank)]
    h = [0] * node.sys.dim
    for c, lab in zip(coeff, node.labels):
        if c:
            for k, x in enumerate(lab):
                h[k] += c * x
    return tuple(h)


def nilradical_roots(node: LabeledParabolic) -> tuple:
    """Roots with nonnegative label coefficients and some positive marked coefficient."""
    h = grading(node)
    return tuple(r for r in node.sys.roots if linalg.dot(h, r) > 0)


@dataclass(frozen=True)
class ChamberNode:
    parabolic: LabeledParabolic
    key: tuple  # grading element; equivalent to the nilradical
    word: tuple  # ((node index, vertex), ...) from the root node

    @property
    def marks(self) -> frozenset:
        return self.parabolic.marks


@dataclass(frozen=True)
class Edge:
    src: int
    vertex: int
    dst: int
    normalizing: bool
    twist: Optional[TwistMap] = field(default=None, repr=False, compare=False)


@dataclass
class ChamberGraph:
    base: LabeledParabolic
    nodes: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.nodes)

    def shapes(self) -> set:
        return {n.marks for n in self.nodes}

    def reflection_edges(self) -> list:
        return [e for e in self.edges if e.normalizing]


def enumerate_chambers(base: LabeledParabolic, max_nodes: int = DEFAULT_MAX_NODES) -> ChamberGraph:
    graph = ChamberGraph(base)
    root_key = grading(base)
    graph.nodes.append(ChamberNode(base, root_key, ()))
    graph.index[root_key] = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        node = graph.nodes[i]
        for beta in sorted(node.marks):
            T = twist_map(node.parabolic, beta)
            nxt = _apply_twist(node.parabolic, T)
            key = grading(nxt)
            j = graph.index.get(key)
            if j is None:
                if len(graph.nodes) >= max_nodes:
                    raise BudgetExceeded(f"more than {max_nodes} chambers")
                j = len(graph.nodes)
                graph.nodes.append(ChamberNode(nxt, key, node.word + ((i, beta),)))
                graph.index[key] = j
                queue.append(j)
            normalizing = nxt.marks == node.marks
            graph.edges.append(Edge(i, beta, j, normalizing, T if normalizing else None))
    return graph


@dataclass
class MatrixGroup:
    """Finite matrix group with a generator word for every element."""
    gens: list
    elements: list
    words: dict  # KMatrix -> tuple of generator indices
    products: list  # (element index, generator index, element index)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, m) -> bool:
        return m in self.words

    def element_orders(self) -> dict:
        out = {}
        for m in self.elements:
            k = m.order()
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    def reflection_count(self) -> int:
        return sum(1 for m in self.elements if m.is_reflection())

    def is_closed(self) -> bool:
        have = set(self.elements)
        return all((a @ b) in have for a in self.elements for b in self.gens)


def close_group(gens, d: int, max_group: int = DEFAULT_MAX_GROUP) -> MatrixGroup:
    """Closure of ``gens`` under right multiplication, tracking words."""
    ident = KMatrix.identity(d)
    elements = [ident]
    words = {ident: ()}
    index = {ident: 0}
    products = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        m = elements[i]
        for g, gm in enumerate(gens):
            p = m @ gm
            j = index.get(p)
            if j is None:
                if len(elements) >= max_group:
                    raise BudgetExceeded(f"group order exceeds {max_group}")
                j = len(elements)
                elements.append(p)
                index[p] = j
                words[p] = words[m] + (g,)
                queue.append(j)
            products.append((i, g, j))
    return MatrixGroup(list(gens), elements, words, products)


def spanning_subgroup(elements, d: int, max_group: int = DEFAULT_MAX_GROUP):
    """Group generated by ``elements``, closed from a greedily chosen subset.

    Returns (indices of the chosen elements, group on those generators).
    Closing over a few generators instead of all of them keeps the number of
    products near |G| times the rank.
    """
    chosen = []
    group = close_group([], d, max_group)
    for i, m in enumerate(elements):
        if m not in group:
            chosen.append(i)
            group = close_group([elements[j] for j in chosen], d, max_group)
    return chosen, group


def edge_generators(graph: ChamberGraph, kb: Optional[KBasis] = None):
    """Distinct reflection matrices of the graph and, for each, the edges realizing it."""
    base = graph.base
    kb = kb or k_basis(base)
    gens, where = [], {}
    for e in graph.reflection_edges():
        if e.twist is not None:
            m = _k_matrix(e.twist, base, kb)
        else:
            m = k_action(graph.nodes[e.src].parabolic, e.vertex, base, kb)
        if m not in where:
            where[m] = []
            gens.append(m)
        where[m].append(e)
    return gens, where


def generate_w_prime(graph: ChamberGraph, max_group: int = DEFAULT_MAX_GROUP) -> MatrixGroup:
    kb = k_basis(graph.base)
    gens, _ = edge_generators(graph, kb)
    return spanning_subgroup(gens, kb.d, max_group)[1]


def class_count(graph_size: int, group_order: int) -> int:
    if group_order <= 0 or graph_size % group_order:
        raise DivisibilityViolation(
            f"{graph_size} chambers are not divisible by |W'| = {group_order}")
    return graph_size // group_order


def label_elements(graph: ChamberGraph) -> set:
    """W' read from every node sharing the base's mark positions."""
    kb = k_basis(graph.base)
    out = set()
    for n in graph.nodes:
        m = label_element(n.parabolic, graph.base, kb)
        if m is not None:
            out.add(m)
    return out
