"""Combinatorial graphs carrying per-edge qubit states and one shared
generator frame, with the global gauge action and the dimension measurements
at a vertex.

The shared frame is a single object referenced by every projection, which
makes "all edge vectors live in the same R^3" a structural fact.  Dropping
that sharing is available only as the explicit counterfactual measurement,
which hands every incident edge an independent random frame and embeds each
edge's vectors in its own R^3 block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .equivariance import adjoint_rotation
from .errors import InvalidDimensionError
from .linalg import (
    GeneratorBasis,
    PureState,
    haar_pure_state,
    haar_special_unitary,
    numerical_rank,
    pauli_basis,
)
from .projection import BlochVector, bloch_project

__all__ = [
    "Graph",
    "GraphAssignment",
    "VertexConfiguration",
    "star_graph",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "parse_graph_spec",
    "assign_random_states",
    "apply_global_gauge",
    "vertex_configuration",
    "ambient_dimension",
    "counterfactual_dimension",
]


@dataclass(frozen=True)
class Graph:
    """Connected simple undirected graph; ``adjacency[v]`` lists the indices
    of the edges incident to vertex v, in insertion order."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("graph needs at least one vertex")
        normalized = []
        seen = set()
        for a, b in self.edges:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise ValueError(f"edge ({a}, {b}) has an invalid endpoint")
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            normalized.append(key)
        object.__setattr__(self, "edges", tuple(normalized))
        adjacency = [[] for _ in range(self.vertex_count)]
        for idx, (a, b) in enumerate(self.edges):
            adjacency[a].append(idx)
            adjacency[b].append(idx)
        object.__setattr__(self, "adjacency", tuple(tuple(row) for row in adjacency))
        if not self._connected():
            raise ValueError("graph is not connected")

    def _connected(self) -> bool:
        if self.vertex_count == 1:
            return True
        reached = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for e in self.adjacency[v]:
                a, b = self.edges[e]
                w = b if a == v else a
                if w not in reached:
                    reached.add(w)
                    frontier.append(w)
        return len(reached) == self.vertex_count

    def valence(self, v: int) -> int:
        return len(self.adjacency[v])


def star_graph(k: int) -> Graph:
    """Star with center vertex 0 of valence k and leaves 1..k."""
    if k < 1:
        raise ValueError(f"star graph needs valence >= 1, got {k}")
    return Graph(k + 1, tuple((0, leaf) for leaf in range(1, k + 1)))


def path_graph(n: int) -> Graph:
    if n < 2:
        raise ValueError(f"path graph needs >= 2 vertices, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle graph needs >= 3 vertices, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise ValueError(f"complete graph needs >= 2 vertices, got {n}")
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


_GRAPH_KINDS = {
    "star": (star_graph, "k"),
    "path": (path_graph, "n"),
    "cycle": (cycle_graph, "n"),
    "complete": (complete_graph, "n"),
}


def parse_graph_spec(spec: str) -> Graph:
    """Build a graph from a name+parameter string such as ``kind=star,k=6``."""
    fields = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"malformed graph spec field {part!r} (expected key=value)")
        key, _, value = part.partition("=")
        fields[key.strip()] = value.strip()
    kind = fields.pop("kind", None)
    if kind not in _GRAPH_KINDS:
        raise ValueError(
            f"unknown graph kind {kind!r}; expected one of {sorted(_GRAPH_KINDS)}"
        )
    builder, param = _GRAPH_KINDS[kind]
    if set(fields) != {param}:
        raise ValueError(f"graph kind {kind!r} takes exactly one parameter {param!r}")
    return builder(int(fields[param]))


@dataclass(frozen=True)
class GraphAssignment:
    """Graph plus one qubit state per edge and the single shared frame."""

    graph: Graph
    edge_states: tuple[PureState, ...]
    frame: GeneratorBasis

    def __post_init__(self):
        if len(self.edge_states) != len(self.graph.edges):
            raise ValueError("need exactly one state per edge")
        if self.frame.n != 2:
            raise InvalidDimensionError("edge states are qubits; frame must have n=2")
        for s in self.edge_states:
            if s.n != 2:
                raise InvalidDimensionError("edge states must live in C^2")
        object.__setattr__(self, "edge_states", tuple(self.edge_states))


@dataclass(frozen=True)
class VertexConfiguration:
    """Bloch vectors of the edges incident to one vertex, in adjacency order."""

    vertex: int
    bloch_vectors: tuple[BlochVector, ...]

    def matrix(self) -> np.ndarray:
        """k x 3 matrix with one unit row per incident edge."""
        return np.array([v.components for v in self.bloch_vectors])


def assign_random_states(g: Graph, rng: np.random.Generator) -> GraphAssignment:
    """Independent Haar state per edge; the shared frame is the Pauli basis."""
    states = tuple(haar_pure_state(2, rng) for _ in g.edges)
    return GraphAssignment(g, states, pauli_basis())


def apply_global_gauge(a: GraphAssignment, u: np.ndarray) -> GraphAssignment:
    """Apply one U in SU(2) to every edge state, leaving the frame untouched.

    Every projected Bloch vector then transforms by the same rotation R(U).
    """
    adjoint_rotation(u, a.frame)  # validates u against the shared frame
    u = np.asarray(u, dtype=complex)
    states = tuple(PureState(u @ s.amplitudes) for s in a.edge_states)
    return GraphAssignment(a.graph, states, a.frame)


def vertex_configuration(a: GraphAssignment, v: int) -> VertexConfiguration:
    """Project every edge incident to v through the shared frame."""
    if not (0 <= v < a.graph.vertex_count):
        raise ValueError(f"vertex {v} out of range")
    vectors = tuple(
        bloch_project(a.edge_states[e], a.frame) for e in a.graph.adjacency[v]
    )
    return VertexConfiguration(v, vectors)


def ambient_dimension(c: VertexConfiguration, tol: float = 1e-10) -> int:
    """Rank of the k x 3 configuration matrix; never exceeds 3."""
    return numerical_rank(c.matrix(), tol)


def counterfactual_dimension(
    a: GraphAssignment,
    v: int,
    rng: np.random.Generator,
    tol: float = 1e-10,
    samples_per_edge: int = 4,
) -> int:
    """Dimension reached at v when the shared-frame axiom is dropped.

    Every incident edge gets an independent random frame (a random rotation
    of the shared generator basis) and its projections are embedded in the
    edge's own R^3 block of R^(3k).  With at least three generic resampled
    states per edge the rank is 3k, against 3 for the shared frame.
    """
    incident = a.graph.adjacency[v]
    k = len(incident)
    if k < 1:
        raise ValueError(f"vertex {v} has no incident edges")
    if samples_per_edge < 3:
        raise ValueError("need at least 3 samples per edge to span each block")
    rows = np.zeros((k * samples_per_edge, 3 * k))
    for i in range(k):
        u = haar_special_unitary(2, rng)
        frame = GeneratorBasis(
            2, np.einsum("ij,ajk,lk->ail", u, a.frame.generators, u.conj())
        )
        for s in range(samples_per_edge):
            psi = haar_pure_state(2, rng)
            rows[i * samples_per_edge + s, 3 * i : 3 * i + 3] = bloch_project(
                psi, frame
            ).components
    return numerical_rank(rows, tol)
