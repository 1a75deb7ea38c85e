"""
Readers for the plain-text network formats.

- Edge list: one edge per line, two whitespace-separated integer node
  indices; blank lines and lines starting with ``#`` are ignored.
- Attributes: CSV with header ``node,<attr>[,<attr>...]`` and one row per
  node.

Indices are 0-based unless ``one_indexed`` is set.
"""

from __future__ import annotations

import warnings
from pathlib import Path

import numpy as np
import pandas as pd

from ergm_calibration.core.logging import logger
from ergm_calibration.domain.models.graph import Graph, NodeAttribute
from ergm_calibration.exceptions.graph import DataFormatError, GraphStructureError


def read_edge_list(
    path: str | Path,
    *,
    one_indexed: bool = False,
    n: int | None = None,
) -> tuple[int, np.ndarray]:
    """
    Returns ``(n, edges)`` with ``edges`` an E×2 array of 0-based indices.
    ``n`` defaults to the largest index seen plus one.
    """
    path = Path(path)
    try:
        with warnings.catch_warnings():
            # An edgeless file is valid
            warnings.simplefilter("ignore", UserWarning)
            edges = np.loadtxt(path, comments="#", dtype=np.int64, ndmin=2)
    except ValueError as exc:
        raise DataFormatError(f"{path}: {exc}") from exc

    if edges.size == 0:
        edges = np.zeros((0, 2), dtype=np.int64)
    elif edges.shape[1] != 2:
        raise DataFormatError(f"{path}: expected two columns per edge, found {edges.shape[1]}")
    if one_indexed:
        edges = edges - 1
    if edges.size and edges.min() < 0:
        raise DataFormatError(
            f"{path}: negative node index (is the file {'0' if one_indexed else '1'}-indexed?)"
        )

    seen = int(edges.max()) + 1 if edges.size else 0
    if n is None:
        n = seen
    elif seen > n:
        raise DataFormatError(f"{path}: node index {seen - 1} out of range for n = {n}")
    logger.debug(f"Read {edges.shape[0]} edges on {n} nodes from {path}")
    return int(n), edges


def read_attributes(
    path: str | Path,
    *,
    one_indexed: bool = False,
    n: int | None = None,
) -> dict[str, NodeAttribute]:
    """Categorical node attributes keyed by column name."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, skipinitialspace=True)
    except (ValueError, pd.errors.ParserError) as exc:
        raise DataFormatError(f"{path}: {exc}") from exc

    if frame.columns.size < 2 or frame.columns[0].strip().lower() != "node":
        raise DataFormatError(f"{path}: header must be 'node,<attribute>'")
    try:
        nodes = frame.iloc[:, 0].astype(np.int64).to_numpy() - (1 if one_indexed else 0)
    except ValueError as exc:
        raise DataFormatError(f"{path}: node column must hold integers") from exc

    expected = len(nodes) if n is None else n
    if sorted(nodes.tolist()) != list(range(expected)):
        raise DataFormatError(f"{path}: expected exactly one row for each of {expected} nodes")
    if frame.iloc[:, 1:].isna().any().any():
        raise DataFormatError(f"{path}: missing attribute values")

    ordered = frame.iloc[np.argsort(nodes)]
    return {
        column.strip(): NodeAttribute.from_values(column.strip(), ordered[column].str.strip())
        for column in frame.columns[1:]
    }


def load_graph(
    edge_path: str | Path,
    attribute_path: str | Path | None = None,
    *,
    one_indexed: bool = False,
    n: int | None = None,
) -> Graph:
    """Edge list plus optional attribute file as one ``Graph``."""
    attributes = None
    if attribute_path is not None:
        attributes = read_attributes(attribute_path, one_indexed=one_indexed, n=n)
        n = n or len(next(iter(attributes.values())).codes)
    n, edges = read_edge_list(edge_path, one_indexed=one_indexed, n=n)
    try:
        graph = Graph.from_edges(n, edges, attributes=attributes)
    except GraphStructureError as exc:
        raise DataFormatError(f"{edge_path}: {exc}") from exc
    logger.info(f"Loaded {graph!r} from {edge_path}")
    return graph


def write_edge_list(graph: Graph, path: str | Path, *, one_indexed: bool = False) -> Path:
    path = Path(path)
    edges = np.array(graph.edge_list(), dtype=np.int64).reshape(-1, 2)
    np.savetxt(path, edges + (1 if one_indexed else 0), fmt="%d",
               header=f"n={graph.n} edges={graph.edge_count}")
    return path
