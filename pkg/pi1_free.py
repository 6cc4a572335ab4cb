"""
Pi1 Free Module
The free fundamental group pi_1(X, A) of a finite graph X relative to a base subtree A
"""

from __future__ import annotations

import functools
import logging
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

logger = logging.getLogger(__name__)

# (edge id, +1 for tail -> head or -1 for head -> tail)
Step = Tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs, paths that are not edge paths, or endpoints outside A."""


# =============================
# Data Models
# =============================


@dataclass(frozen=True, slots=True)
class Edge:
    id: int
    tail: int
    head: int


@dataclass(frozen=True)
class GraphComplex:
    """
    A finite graph X with base subgraph A. A is given by its edges, or by a
    single `base_vertex` when it has none.
    """
    vertex_count: int
    edges: Tuple[Edge, ...]
    base_edges: FrozenSet[int] = frozenset()
    base_vertex: Optional[int] = None

    def __post_init__(self):
        if self.vertex_count < 1:
            raise GraphError(f"A graph needs at least one vertex, got {self.vertex_count}")
        seen: Set[int] = set()
        for edge in self.edges:
            if edge.id in seen:
                raise GraphError(f"Duplicate edge id {edge.id}")
            seen.add(edge.id)
            for vertex in (edge.tail, edge.head):
                if not 0 <= vertex < self.vertex_count:
                    raise GraphError(f"Edge {edge.id} uses unknown vertex {vertex}")
        unknown = self.base_edges - seen
        if unknown:
            raise GraphError(f"Base edge {min(unknown)} is not an edge of the graph")
        if self.base_vertex is not None and not 0 <= self.base_vertex < self.vertex_count:
            raise GraphError(f"Unknown base vertex {self.base_vertex}")

    @functools.cached_property
    def edge_map(self) -> Dict[int, Edge]:
        return {edge.id: edge for edge in self.edges}

    @functools.cached_property
    def base_vertices(self) -> FrozenSet[int]:
        vertices = {v for e in self.base_edges for v in (self.edge_map[e].tail, self.edge_map[e].head)}
        if self.base_vertex is not None:
            vertices.add(self.base_vertex)
        return frozenset(vertices)

    @functools.cached_property
    def root(self) -> int:
        """The vertex of A that hosts the identity class."""
        if self.base_vertex is not None:
            return self.base_vertex
        return min(self.base_vertices)

    def step_source(self, step: Step) -> int:
        edge = self.edge_map[step[0]]
        return edge.tail if step[1] > 0 else edge.head

    def step_target(self, step: Step) -> int:
        edge = self.edge_map[step[0]]
        return edge.head if step[1] > 0 else edge.tail

    def steps_from(self, vertex: int) -> Iterator[Step]:
        """Every step leaving `vertex`, in edge id order, forward before backward."""
        for edge in sorted(self.edges, key=lambda e: e.id):
            if edge.tail == vertex:
                yield (edge.id, 1)
            if edge.head == vertex:
                yield (edge.id, -1)


@dataclass(frozen=True, slots=True)
class EdgePath:
    start: int
    steps: Tuple[Step, ...] = ()


@dataclass(frozen=True, slots=True)
class RelClass:
    """Canonical representative of a class in pi_1(X, A); empty steps is the identity."""
    steps: Tuple[Step, ...] = ()

    @property
    def length(self) -> int:
        return len(self.steps)


# =============================
# Graph structure
# =============================


def _components(vertices: Iterable[int], edges: Iterable[Edge]) -> int:
    parent = {v: v for v in vertices}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for edge in edges:
        parent[find(edge.tail)] = find(edge.head)
    return len({find(v) for v in parent})


def validate(g: GraphComplex) -> bool:
    """X connected; A non-empty, connected and acyclic."""
    if _components(range(g.vertex_count), g.edges) != 1:
        logger.info("[Pi1] Graph is not connected")
        return False
    if not g.base_vertices:
        logger.info("[Pi1] Base subgraph is empty")
        return False
    base = [g.edge_map[e] for e in g.base_edges]
    if _components(g.base_vertices, base) != 1:
        logger.info("[Pi1] Base subgraph is not connected")
        return False
    if len(g.base_vertices) != len(base) + 1:
        logger.info("[Pi1] Base subgraph contains a cycle")
        return False
    return True


def require_valid(g: GraphComplex) -> None:
    if not validate(g):
        raise GraphError("Graph must be connected with a non-empty base subtree")


def with_base(
    g: GraphComplex, base_edges: Iterable[int], base_vertex: Optional[int] = None
) -> GraphComplex:
    """The same graph with a different base subgraph."""
    return GraphComplex(g.vertex_count, g.edges, frozenset(base_edges), base_vertex)


@functools.lru_cache(maxsize=4096)
def tree_path(g: GraphComplex, u: int, v: int) -> Tuple[Step, ...]:
    """The unique reduced path from u to v inside the base subtree."""
    if u not in g.base_vertices or v not in g.base_vertices:
        raise GraphError(f"Vertices {u} and {v} must both lie in A")
    previous: Dict[int, Tuple[int, Step]] = {}
    queue = deque([u])
    visited = {u}
    while queue:
        current = queue.popleft()
        if current == v:
            break
        for step in g.steps_from(current):
            if step[0] not in g.base_edges:
                continue
            following = g.step_target(step)
            if following in visited:
                continue
            visited.add(following)
            previous[following] = (current, step)
            queue.append(following)
    if v not in visited:
        raise GraphError(f"No path from {u} to {v} inside A")
    steps: List[Step] = []
    current = v
    while current != u:
        current, step = previous[current]
        steps.append(step)
    return tuple(reversed(steps))


def diameter(g: GraphComplex) -> int:
    """Largest tree distance between two vertices of A."""
    return max(len(tree_path(g, u, v)) for u in g.base_vertices for v in g.base_vertices)


# =============================
# Paths and classes
# =============================


def path_end(g: GraphComplex, p: EdgePath) -> int:
    """
    Final vertex of p.

    Raises:
        GraphError: If an edge id is unknown or consecutive steps do not meet
    """
    current = p.start
    for position, step in enumerate(p.steps, start=1):
        if step[0] not in g.edge_map or step[1] not in (1, -1):
            raise GraphError(f"Unknown step {step} at position {position}")
        if g.step_source(step) != current:
            raise GraphError(f"Step {position} does not start at vertex {current}")
        current = g.step_target(step)
    return current


def reduce_path(steps: Iterable[Step]) -> Tuple[Step, ...]:
    """Cancel every immediate backtrack e · e^-1."""
    stack: List[Step] = []
    for step in steps:
        if stack and stack[-1] == (step[0], -step[1]):
            stack.pop()
        else:
            stack.append(step)
    return tuple(stack)


def class_of(g: GraphComplex, p: EdgePath) -> RelClass:
    """
    Canonical representative of p in pi_1(X, A): the reduced path with its
    maximal leading and trailing A-subpaths removed.

    Raises:
        GraphError: If an endpoint of p lies outside A
    """
    end = path_end(g, p)
    if p.start not in g.base_vertices or end not in g.base_vertices:
        raise GraphError(f"Path endpoints {p.start} and {end} must both lie in A")
    steps = reduce_path(p.steps)
    first, last = 0, len(steps)
    while first < last and steps[first][0] in g.base_edges:
        first += 1
    while last > first and steps[last - 1][0] in g.base_edges:
        last -= 1
    return RelClass(steps[first:last])


def class_start(g: GraphComplex, c: RelClass) -> int:
    return g.step_source(c.steps[0]) if c.steps else g.root


def class_end(g: GraphComplex, c: RelClass) -> int:
    return g.step_target(c.steps[-1]) if c.steps else g.root


def as_path(g: GraphComplex, c: RelClass) -> EdgePath:
    return EdgePath(class_start(g, c), c.steps)


def rel_product(g: GraphComplex, p: RelClass, q: RelClass) -> RelClass:
    """p, then the A-path from p's end to q's start, then q."""
    bridge = tree_path(g, class_end(g, p), class_start(g, q))
    return class_of(g, EdgePath(class_start(g, p), p.steps + bridge + q.steps))


def inverse_class(c: RelClass) -> RelClass:
    return RelClass(tuple((edge, -sign) for edge, sign in reversed(c.steps)))


def _reduced_paths(g: GraphComplex, start: int, max_len: int) -> Iterator[Tuple[Step, ...]]:
    """Depth-first, in step order: every reduced path from `start` of length <= max_len."""
    stack: List[Tuple[int, Tuple[Step, ...]]] = [(start, ())]
    while stack:
        vertex, steps = stack.pop()
        yield steps
        if len(steps) == max_len:
            continue
        extensions = [
            step for step in g.steps_from(vertex)
            if not steps or step != (steps[-1][0], -steps[-1][1])
        ]
        for step in reversed(extensions):
            stack.append((g.step_target(step), steps + (step,)))


def enumerate_classes(g: GraphComplex, max_len: int) -> List[RelClass]:
    """
    Every class of pi_1(X, A) whose canonical representative has length <= max_len,
    shortest first and then by steps.
    """
    classes: Set[RelClass] = {RelClass()}
    for start in sorted(g.base_vertices):
        for steps in _reduced_paths(g, start, max_len):
            if not steps:
                continue
            if steps[0][0] in g.base_edges or steps[-1][0] in g.base_edges:
                continue
            if g.step_target(steps[-1]) not in g.base_vertices:
                continue
            classes.add(RelClass(steps))
    return sorted(classes, key=lambda c: (c.length, c.steps))


def enumerate_loops(g: GraphComplex, x0: int, max_len: int) -> List[EdgePath]:
    """Reduced loops at x0 of length <= max_len."""
    return [
        EdgePath(x0, steps)
        for steps in _reduced_paths(g, x0, max_len)
        if (g.step_target(steps[-1]) if steps else x0) == x0
    ]


def equivalent_by_base_paths(g: GraphComplex, p: EdgePath, q: EdgePath) -> bool:
    """
    Brute-force equivalence: v^-1 · p · u reduces to q, where v runs from p(0)
    to q(0) and u from p(1) to q(1) inside A.
    """
    p_end, q_end = path_end(g, p), path_end(g, q)
    v = tree_path(g, p.start, q.start)
    u = tree_path(g, p_end, q_end)
    v_inverse = inverse_class(RelClass(v)).steps
    return reduce_path(v_inverse + p.steps + u) == reduce_path(q.steps)


# =============================
# Group structure and change of base
# =============================


def group_axioms_check(g: GraphComplex, max_len: int, assoc_len: int = 3) -> bool:
    """
    Identity and inverses on every class of length <= max_len, and
    associativity on all triples of classes of length <= assoc_len.
    """
    window = enumerate_classes(g, max_len)
    identity = RelClass()
    for c in window:
        if rel_product(g, identity, c) != c or rel_product(g, c, identity) != c:
            logger.info("[Pi1] Identity law fails for %s", c.steps)
            return False
        if rel_product(g, c, inverse_class(c)) != identity:
            logger.info("[Pi1] Inverse law fails for %s", c.steps)
            return False

    short = [c for c in window if c.length <= assoc_len]
    for p, q, r in product(short, repeat=3):
        left = rel_product(g, rel_product(g, p, q), r)
        right = rel_product(g, p, rel_product(g, q, r))
        if left != right:
            logger.info("[Pi1] Associativity fails for %s, %s, %s", p.steps, q.steps, r.steps)
            return False
    return True


def _push_class(source: GraphComplex, target: GraphComplex, c: RelClass) -> RelClass:
    # a source class read as a path between target base vertices
    return class_of(target, as_path(source, c))


def subbase_iso_check(g: GraphComplex, sub: GraphComplex, max_len: int) -> bool:
    """
    Check that pi_1(X, B) -> pi_1(X, A) is a bijective homomorphism on a window,
    for a base subtree B (carried by `sub`) inside A (carried by `g`).

    Injective and multiplicative on B-classes of length <= max_len (products on
    pairs of total length <= max_len), and every A-class of length <= max_len
    has a preimage of length <= max_len + 2 · diameter(A).
    """
    require_valid(g)
    require_valid(sub)
    if not sub.base_vertices <= g.base_vertices or not sub.base_edges <= g.base_edges:
        raise GraphError("The sub-base must lie inside A")

    domain = enumerate_classes(sub, max_len)
    images: Dict[RelClass, RelClass] = {}
    hit: Set[RelClass] = set()
    for c in domain:
        image = _push_class(sub, g, c)
        if image in hit:
            logger.info("[Pi1] Two classes collapse onto %s", image.steps)
            return False
        hit.add(image)
        images[c] = image

    for p in domain:
        for q in domain:
            # domain is sorted by length
            if p.length + q.length > max_len:
                break
            if images[rel_product(sub, p, q)] != rel_product(g, images[p], images[q]):
                logger.info("[Pi1] Product of %s and %s is not preserved", p.steps, q.steps)
                return False

    anchor = sub.root
    bound = max_len + 2 * diameter(g)
    for c in enumerate_classes(g, max_len):
        lift = EdgePath(
            anchor,
            tree_path(g, anchor, class_start(g, c)) + c.steps + tree_path(g, class_end(g, c), anchor),
        )
        preimage = class_of(sub, lift)
        if preimage.length > bound or _push_class(sub, g, preimage) != c:
            logger.info("[Pi1] No short preimage for %s", c.steps)
            return False
    return True


def basepoint_iso_check(g: GraphComplex, x0: int, max_len: int) -> bool:
    """pi_1(X, x0) -> pi_1(X, A) is an isomorphism on the window."""
    if x0 not in g.base_vertices:
        raise GraphError(f"Vertex {x0} is not in A")
    return subbase_iso_check(g, with_base(g, (), x0), max_len)


def intersecting_bases_check(g: GraphComplex, other: GraphComplex, max_len: int) -> bool:
    """
    For two bases A (on g) and B (on other) of the same graph sharing a vertex,
    the correspondences through that vertex are mutually inverse on the window.
    """
    if g.edges != other.edges or g.vertex_count != other.vertex_count:
        raise GraphError("Both bases must live on the same graph")
    require_valid(g)
    require_valid(other)
    shared = g.base_vertices & other.base_vertices
    if not shared:
        raise GraphError("The two bases do not intersect")
    pivot = min(shared)

    def transfer(source: GraphComplex, target: GraphComplex, c: RelClass) -> RelClass:
        loop = (
            tree_path(source, pivot, class_start(source, c))
            + c.steps
            + tree_path(source, class_end(source, c), pivot)
        )
        return class_of(target, EdgePath(pivot, loop))

    for source, target in ((g, other), (other, g)):
        for c in enumerate_classes(source, max_len):
            if transfer(target, source, transfer(source, target, c)) != c:
                logger.info("[Pi1] Round trip through vertex %d moves %s", pivot, c.steps)
                return False
    return True


# =============================
# Example graphs
# =============================


def theta_graph(base_edges: Iterable[int] = (0,), base_vertex: Optional[int] = None) -> GraphComplex:
    """Two vertices joined by three parallel edges 0, 1, 2."""
    edges = tuple(Edge(e, 0, 1) for e in range(3))
    return GraphComplex(2, edges, frozenset(base_edges), base_vertex)


def wedge_of_loops(k: int) -> GraphComplex:
    """k loops at a single vertex, with A = that vertex."""
    return GraphComplex(1, tuple(Edge(e, 0, 0) for e in range(k)), frozenset(), 0)
