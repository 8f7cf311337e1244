"""
Localization trees and the tree summation for Faber–Hurwitz numbers.

A localization tree has three kinds of vertices: 0-vertices (one of them the
root), ∞-vertices and monovalent t-vertices. Edges join a 0-vertex to an
∞-vertex (0∞-edges) or an ∞-vertex to a t-vertex (∞t-edges) and carry
positive integer weights. At an ∞-vertex v the weights of its 0∞-edges form
β^v and those of its ∞t-edges form γ^v, with |β^v| = |γ^v|; at a 0-vertex
the weights of its edges form δ^v. The t-vertex weights together form α.

Key Concepts:
    - r_∞ = Σ_v (l(γ^v) + l(β^v) − 2) over ∞-vertices; only trees with
      r_∞ ≤ 2g − 1 contribute
    - Labels: non-root 0-vertices are labelled, and t-vertices are labelled
      among those of equal weight. A tree shape with automorphism group
      Aut stands for η₀!·Π_k m_k(α)!/|Aut| labelled trees
    - Each labelled tree contributes
      (−1)^{r_∞}·r^Fab!·C(r^g_α − r_∞, r^Fab)/η₀!·A·B·C‡·D with
      A = 𝒫^g_m(δ^root)·Π_{root edges} ε^ε/ε!, B = Π_{0∞-edges} ε,
      C‡ = Π_{non-root 0-vertices} H⁰_δ/r⁰_δ!, D = Π_{∞-vertices} H⁰_{γ,β}/r⁰_{γ,β}!

Example:
    >>> from faberhurwitz.core.partitions import Partition
    >>> from faberhurwitz.localization.trees import enumerate_trees
    >>> [tree.r_infinity for tree in enumerate_trees(1, Partition.of(2))]
    [0, 1]
"""

import logging
import math
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Mapping, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from faberhurwitz.core.errors import PartitionError
from faberhurwitz.core.linear import FaberKey, SymbolLinear
from faberhurwitz.core.partitions import Partition, distinct_orderings, partitions_of, r_fab, r_single
from faberhurwitz.core.rational import ExactRational, binomial, rational
from faberhurwitz.hurwitz.closed import single_closed
from faberhurwitz.hurwitz.series import double_genus_zero
from faberhurwitz.localization.treeseries import faber_keys

logger = logging.getLogger(__name__)

TREE_MAX_DEGREE = 4
TREE_MAX_GENUS = 2


class VertexKind(Enum):
    """Vertex classes of a localization tree."""
    ROOT = "root"
    ZERO = "zero"
    INFINITY = "infinity"
    TARGET = "t"


# Canonical nested-tuple shapes:
#   ∞-branch: ("inf", weight, γ parts, sorted 0-branches below)
#   0-branch: ("zero", weight, sorted ∞-branches below)
#   tree:     ("root", sorted ∞-branches)
Shape = Tuple


class LocTree:
    """
    A localization tree, stored as an nx.DiGraph directed away from the root.

    Nodes carry a "kind" attribute (a VertexKind value) and edges a "weight".
    Node 0 is the root.
    """

    ROOT = 0

    def __init__(self, shape: Shape):
        self.shape = shape
        self.graph = nx.DiGraph()
        self.graph.add_node(self.ROOT, kind=VertexKind.ROOT.value)
        for branch in shape[1]:
            self._add_infinity(self.ROOT, branch)

    def _new_node(self, kind: VertexKind) -> int:
        node = self.graph.number_of_nodes()
        self.graph.add_node(node, kind=kind.value)
        return node

    def _add_infinity(self, parent: int, branch: Shape):
        _, weight, gamma, children = branch
        node = self._new_node(VertexKind.INFINITY)
        self.graph.add_edge(parent, node, weight=weight)
        for part in gamma:
            leaf = self._new_node(VertexKind.TARGET)
            self.graph.add_edge(node, leaf, weight=part)
        for child in children:
            self._add_zero(node, child)

    def _add_zero(self, parent: int, branch: Shape):
        _, weight, children = branch
        node = self._new_node(VertexKind.ZERO)
        self.graph.add_edge(parent, node, weight=weight)
        for child in children:
            self._add_infinity(node, child)

    # -- vertex data ------------------------------------------------------

    def kind(self, node: int) -> VertexKind:
        return VertexKind(self.graph.nodes[node]["kind"])

    def vertices(self, kind: VertexKind) -> List[int]:
        return [node for node, data in self.graph.nodes(data=True) if data["kind"] == kind.value]

    def _incident(self, node: int) -> Iterator[Tuple[int, int]]:
        for other in self.graph.predecessors(node):
            yield other, self.graph.edges[other, node]["weight"]
        for other in self.graph.successors(node):
            yield other, self.graph.edges[node, other]["weight"]

    def delta(self, node: int) -> Partition:
        """δ^v: weights of the edges at a 0-vertex."""
        return Partition(tuple(weight for _, weight in self._incident(node)))

    def beta(self, node: int) -> Partition:
        """β^v: weights of the 0∞-edges at an ∞-vertex."""
        return Partition(tuple(w for other, w in self._incident(node) if self.kind(other) is not VertexKind.TARGET))

    def gamma(self, node: int) -> Partition:
        """γ^v: weights of the ∞t-edges at an ∞-vertex."""
        return Partition(tuple(w for other, w in self._incident(node) if self.kind(other) is VertexKind.TARGET))

    @property
    def root_weights(self) -> Partition:
        return self.delta(self.ROOT)

    @property
    def degree(self) -> int:
        return self.graph.out_degree(self.ROOT)

    @property
    def alpha(self) -> Partition:
        parts: List[int] = []
        for node in self.vertices(VertexKind.INFINITY):
            parts.extend(self.gamma(node).parts)
        return Partition(tuple(parts))

    @property
    def r_infinity(self) -> int:
        return sum(
            self.gamma(node).length + self.beta(node).length - 2
            for node in self.vertices(VertexKind.INFINITY)
        )

    @property
    def eta0(self) -> int:
        """Number of non-root 0-vertices."""
        return len(self.vertices(VertexKind.ZERO))

    def zero_infinity_edges(self) -> List[int]:
        """Weights of all 0∞-edges."""
        return [
            data["weight"]
            for a, b, data in self.graph.edges(data=True)
            if self.kind(b) is not VertexKind.TARGET
        ]

    def is_balanced(self) -> bool:
        return all(self.beta(v).size == self.gamma(v).size for v in self.vertices(VertexKind.INFINITY))

    # -- symmetry ---------------------------------------------------------

    def automorphisms(self) -> int:
        """Automorphisms preserving vertex kinds and edge weights (the root is fixed by its kind)."""
        matcher = isomorphism.DiGraphMatcher(
            self.graph,
            self.graph,
            node_match=isomorphism.categorical_node_match("kind", None),
            edge_match=isomorphism.categorical_edge_match("weight", None),
        )
        return sum(1 for _ in matcher.isomorphisms_iter())

    def labellings(self) -> int:
        """Number of labelled trees of this shape: η₀!·Π_k m_k(α)!/|Aut|."""
        return math.factorial(self.eta0) * self.alpha.aut_size() // self.automorphisms()

    def __repr__(self) -> str:
        return f"LocTree(alpha={self.alpha}, root={self.root_weights}, r_inf={self.r_infinity})"


# -- enumeration ------------------------------------------------------------

Candidate = Tuple[Shape, int, int]


def _bags(candidates: Sequence[Candidate], budget: int, r_budget: int) -> Iterator[Tuple[Tuple[Shape, ...], int, int]]:
    """Multisets of candidates with total cost ≤ budget and total r ≤ r_budget."""

    def walk(start: int, budget: int, r_budget: int):
        yield (), 0, 0
        for i in range(start, len(candidates)):
            shape, cost, r = candidates[i]
            if cost > budget or r > r_budget:
                continue
            for rest, rest_cost, rest_r in walk(i, budget - cost, r_budget - r):
                yield (shape,) + rest, cost + rest_cost, r + rest_r

    yield from walk(0, budget, r_budget)


@lru_cache(maxsize=None)
def _infinity_branches(weight: int, budget: int, r_budget: int) -> Tuple[Candidate, ...]:
    """∞-branches hanging from an edge of the given weight, with t-weight ≤ budget."""
    if weight > budget:
        return ()
    spare = budget - weight
    candidates: List[Candidate] = []
    for c in range(1, spare + 1):
        for shape, cost, r in _zero_branches(c, spare - c, r_budget):
            candidates.append((shape, c + cost, r))
    results: List[Candidate] = []
    for children, cost, r in _bags(candidates, spare, r_budget):
        below = cost - sum(shape[1] for shape in children)
        size = weight + sum(shape[1] for shape in children)
        beta_length = 1 + len(children)
        for gamma in _partitions_of(size):
            r_here = len(gamma) + beta_length - 2
            if r + r_here > r_budget or size + below > budget:
                continue
            shape = ("inf", weight, gamma, tuple(sorted(children)))
            results.append((shape, size + below, r + r_here))
    return tuple(results)


@lru_cache(maxsize=None)
def _zero_branches(weight: int, budget: int, r_budget: int) -> Tuple[Candidate, ...]:
    """0-branches hanging from an edge of the given weight, with t-weight ≤ budget."""
    candidates: List[Candidate] = []
    for w in range(1, budget + 1):
        candidates.extend(_infinity_branches(w, budget, r_budget))
    return tuple(
        (("zero", weight, tuple(sorted(children))), cost, r)
        for children, cost, r in _bags(candidates, budget, r_budget)
    )


@lru_cache(maxsize=None)
def _partitions_of(n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(p.parts for p in partitions_of(n))


def _check_size(g: int, alpha: Partition):
    if g < 1:
        raise PartitionError(f"localization trees need genus >= 1, got {g}")
    if alpha.is_empty():
        raise PartitionError("localization trees need a nonempty partition")
    if g > TREE_MAX_GENUS or alpha.size > TREE_MAX_DEGREE:
        raise PartitionError(
            f"tree enumeration is limited to g <= {TREE_MAX_GENUS} and |alpha| <= {TREE_MAX_DEGREE}, "
            f"got g={g}, alpha={alpha}"
        )


def enumerate_trees(g: int, alpha: Partition) -> List[LocTree]:
    """
    Every tree shape with ⨿γ^v = α and r_∞ ≤ 2g − 1, once each.

    Labelled trees are accounted for by LocTree.labellings().

    Raises:
        PartitionError: If g < 1, α is empty, or the size guard is exceeded
    """
    _check_size(g, alpha)
    d = alpha.size
    r_budget = 2 * g - 1
    candidates: List[Candidate] = []
    for w in range(1, d + 1):
        candidates.extend(_infinity_branches(w, d, r_budget))
    trees = []
    for children, cost, _ in _bags(candidates, d, r_budget):
        if not children or cost != d:
            continue
        tree = LocTree(("root", tuple(sorted(children))))
        if tree.alpha == alpha:
            trees.append(tree)
    trees.sort(key=lambda tree: (tree.r_infinity, tree.shape))
    logger.debug("%d tree shapes for g=%d, alpha=%s", len(trees), g, alpha)
    return trees


# -- summation --------------------------------------------------------------

def faber_polynomial_form(g: int, arguments: Sequence[int]) -> SymbolLinear:
    """
    𝒫^g_m(α) = Σ (−1)^k ⟨τ_{a_1}⋯τ_{a_m}λ_k⟩ α_1^{a_1}⋯α_m^{a_m} as a linear form,
    summed over ordered (a_1, …, a_m) with Σa + k = g − 2 + m.
    """
    arguments = tuple(arguments)
    terms: Dict[FaberKey, ExactRational] = {}
    for key in faber_keys(g, len(arguments)):
        total = 0
        for ordering in distinct_orderings(key.indices):
            total += math.prod(x ** a for x, a in zip(arguments, ordering))
        terms[key] = rational(-total if key.k % 2 else total)
    return SymbolLinear(terms)


def tree_weight(g: int, tree: LocTree) -> SymbolLinear:
    """Contribution of all labelled trees of one shape, in ψ₁^{g−1} units."""
    alpha = tree.alpha
    r_inf = tree.r_infinity
    r_f = r_fab(g, alpha)
    scalar = rational(
        (-1) ** r_inf * math.factorial(r_f) * binomial(r_single(g, alpha) - r_inf, r_f) * tree.labellings(),
        math.factorial(tree.eta0),
    )
    if not scalar:
        return SymbolLinear()
    for weight in tree.root_weights:
        scalar *= rational(weight ** weight, math.factorial(weight))
    for weight in tree.zero_infinity_edges():
        scalar *= weight
    for node in tree.vertices(VertexKind.ZERO):
        delta = tree.delta(node)
        scalar *= single_closed(delta) / math.factorial(delta.size + delta.length - 2)
    for node in tree.vertices(VertexKind.INFINITY):
        gamma, beta = tree.gamma(node), tree.beta(node)
        scalar *= double_genus_zero(gamma, beta) / math.factorial(gamma.length + beta.length - 2)
    return faber_polynomial_form(g, tree.root_weights.parts).scale(scalar)


def tree_sum_form(g: int, alpha: Partition) -> SymbolLinear:
    """
    F^g_α from the tree summation, as a linear form in the Faber symbols.

    Raises:
        PartitionError: If g < 1, α is empty, or the size guard is exceeded
    """
    total = SymbolLinear()
    for tree in enumerate_trees(g, alpha):
        total = total + tree_weight(g, tree)
    return total.scale(rational(math.factorial(g - 1), 2 ** g))


def tree_sum(g: int, alpha: Partition, table: Any) -> ExactRational:
    """
    Evaluate the tree summation with a table of Faber symbols.

    Args:
        g: Genus
        alpha: Ramification profile
        table: A SymbolTable (anything with evaluate(SymbolLinear)) or a
            plain mapping FaberKey -> value

    Raises:
        MissingSymbolError: If the table lacks a needed symbol
    """
    form = tree_sum_form(g, alpha)
    if isinstance(table, Mapping):
        return form.evaluate(table)
    return table.evaluate(form)
