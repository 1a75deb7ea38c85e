from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, NamedTuple

import numpy as np

from ergm_calibration.core.kernels import toggle_dyad
from ergm_calibration.exceptions.graph import GraphStructureError
from ergm_calibration.exceptions.model import ModelDataMismatchError


@dataclass(frozen=True, slots=True)
class Dyad:
    """Canonical unordered node pair, 0 <= i < j."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if not (0 <= self.i < self.j):
            raise GraphStructureError(
                f"Dyad ({self.i}, {self.j}) is not canonical (need 0 <= i < j)"
            )

    @classmethod
    def of(cls, a: int, b: int) -> Dyad:
        if a == b:
            raise GraphStructureError(f"Self-loop ({a}, {b}) is not a dyad")
        return cls(min(a, b), max(a, b))


@dataclass(frozen=True, slots=True, kw_only=True)
class NodeAttribute:
    """
    Categorical node attribute.

    Levels are stored once; ``codes[v]`` indexes into ``levels``.
    """

    name: str
    codes: np.ndarray
    levels: tuple[str, ...]

    @classmethod
    def from_values(cls, name: str, values: Iterable[Any]) -> NodeAttribute:
        labels = [str(v) for v in values]
        levels = tuple(sorted(set(labels), key=_level_key))
        index = {level: k for k, level in enumerate(levels)}
        codes = np.array([index[v] for v in labels], dtype=np.int64)
        return cls(name=name, codes=codes, levels=levels)

    def indicator(self, level: Any) -> np.ndarray:
        level = str(level)
        if level not in self.levels:
            raise ModelDataMismatchError(
                f"Attribute '{self.name}' has no level '{level}' (levels: {list(self.levels)})"
            )
        return (self.codes == self.levels.index(level)).astype(np.float64)

    def values(self) -> list[str]:
        return [self.levels[c] for c in self.codes]


def _level_key(level: str) -> tuple[int, float | str]:
    try:
        return (0, float(level))
    except ValueError:
        return (1, level)


class GraphBuffers(NamedTuple):
    adj: np.ndarray
    degree: np.ndarray
    edges: np.ndarray
    edge_pos: np.ndarray
    edge_count: np.ndarray


class Graph:
    """
    Undirected simple graph on nodes 0..n-1 with optional categorical
    node attributes.

    Storage is a dense symmetric uint8 adjacency matrix with a degree
    vector and a swap-remove edge list, so dyad queries, toggles and
    uniform edge picks are O(1).
    """

    __slots__ = ("_n", "_adj", "_degree", "_edges", "_edge_pos", "_edge_count",
                 "_attributes", "_frozen")

    def __init__(
        self,
        n: int,
        *,
        attributes: Mapping[str, NodeAttribute] | None = None,
    ) -> None:
        if n < 1:
            raise GraphStructureError(f"Node count must be positive, got {n}")
        self._n = int(n)
        n_dyads = max(self._n * (self._n - 1) // 2, 1)
        self._adj = np.zeros((n, n), dtype=np.uint8)
        self._degree = np.zeros(n, dtype=np.int64)
        self._edges = np.zeros((n_dyads, 2), dtype=np.int64)
        self._edge_pos = np.full((n, n), -1, dtype=np.int64)
        self._edge_count = np.zeros(1, dtype=np.int64)
        self._frozen = False

        attributes = dict(attributes or {})
        for name, attribute in attributes.items():
            if len(attribute.codes) != n:
                raise GraphStructureError(
                    f"Attribute '{name}' has {len(attribute.codes)} values for {n} nodes"
                )
        self._attributes = attributes

    # -------------------------
    # Construction
    # -------------------------

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        *,
        attributes: Mapping[str, NodeAttribute] | None = None,
    ) -> Graph:
        graph = cls(n, attributes=attributes)
        for a, b in edges:
            dyad = Dyad.of(int(a), int(b))
            graph._check(dyad)
            if not graph.has_edge(dyad):
                graph.toggle(dyad)
        return graph

    @classmethod
    def from_adjacency(
        cls,
        matrix: np.ndarray,
        *,
        attributes: Mapping[str, NodeAttribute] | None = None,
    ) -> Graph:
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise GraphStructureError("Adjacency matrix must be square")
        rows, cols = np.nonzero(np.triu(matrix, k=1))
        return cls.from_edges(matrix.shape[0], zip(rows, cols), attributes=attributes)

    def copy(self) -> Graph:
        """Independent, mutable deep copy."""
        clone = Graph.__new__(Graph)
        clone._n = self._n
        clone._adj = self._adj.copy()
        clone._degree = self._degree.copy()
        clone._edges = self._edges.copy()
        clone._edge_pos = self._edge_pos.copy()
        clone._edge_count = self._edge_count.copy()
        clone._attributes = dict(self._attributes)
        clone._frozen = False
        return clone

    def freeze(self) -> Graph:
        """Make the graph read-only so it can be shared across threads."""
        for array in (self._adj, self._degree, self._edges, self._edge_pos, self._edge_count):
            array.flags.writeable = False
        self._frozen = True
        return self

    # -------------------------
    # Queries
    # -------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def n_dyads(self) -> int:
        return self._n * (self._n - 1) // 2

    @property
    def edge_count(self) -> int:
        return int(self._edge_count[0])

    @property
    def density(self) -> float:
        return self.edge_count / self.n_dyads if self.n_dyads else 0.0

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def adjacency(self) -> np.ndarray:
        view = self._adj.view()
        view.flags.writeable = False
        return view

    @property
    def degree(self) -> np.ndarray:
        view = self._degree.view()
        view.flags.writeable = False
        return view

    @property
    def attributes(self) -> Mapping[str, NodeAttribute]:
        return dict(self._attributes)

    def attribute(self, name: str) -> NodeAttribute:
        try:
            return self._attributes[name]
        except KeyError:
            raise ModelDataMismatchError(
                f"Graph has no node attribute '{name}' (available: {sorted(self._attributes)})"
            ) from None

    def has_edge(self, dyad: Dyad) -> bool:
        self._check(dyad)
        return bool(self._adj[dyad.i, dyad.j])

    def edge_list(self) -> list[tuple[int, int]]:
        """Current edges in canonical row-major order."""
        rows, cols = np.nonzero(np.triu(self._adj, k=1))
        return list(zip(rows.tolist(), cols.tolist()))

    def dyad_list(self) -> list[Dyad]:
        """All n(n-1)/2 dyads, i ascending then j."""
        n = self._n
        return [Dyad(i, j) for i in range(n) for j in range(i + 1, n)]

    def buffers(self) -> GraphBuffers:
        """Raw arrays handed to the compiled kernels."""
        return GraphBuffers(self._adj, self._degree, self._edges, self._edge_pos,
                            self._edge_count)

    # -------------------------
    # Mutation
    # -------------------------

    def toggle(self, dyad: Dyad) -> Graph:
        """Flip y_ij in place and return the graph."""
        self._check(dyad)
        if self._frozen:
            raise GraphStructureError("Cannot toggle a dyad of a frozen graph")
        toggle_dyad(self._adj, self._degree, self._edges, self._edge_pos,
                    self._edge_count, dyad.i, dyad.j)
        return self

    # -------------------------
    # Internal
    # -------------------------

    def _check(self, dyad: Dyad) -> None:
        if dyad.j >= self._n:
            raise GraphStructureError(
                f"Dyad ({dyad.i}, {dyad.j}) out of range for a graph with {self._n} nodes"
            )

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edge_count}, attributes={sorted(self._attributes)})"
