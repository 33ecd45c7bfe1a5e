"""Input checks shared by the estimator wrappers."""

from __future__ import annotations

import numbers

from .graph import BoundedDegreeGraph, QueryOracle, build_graph


def check_graph(x, allow_oracle: bool = False):
    """Return a BoundedDegreeGraph (or QueryOracle when allowed) for ``x``.

    networkx graphs with integer nodes ``0..n-1`` are converted, with the
    degree bound set to their maximum degree.
    """
    if isinstance(x, BoundedDegreeGraph):
        return x
    if isinstance(x, QueryOracle):
        if allow_oracle:
            return x
        raise TypeError("a QueryOracle is not accepted here; pass the graph")
    if hasattr(x, "nodes") and hasattr(x, "edges"):
        n = x.number_of_nodes()
        if set(x.nodes) != set(range(n)):
            raise ValueError("networkx graphs must have nodes 0..n-1")
        d = max((deg for _, deg in x.degree), default=0)
        return build_graph(n, d, x.edges)
    raise TypeError(f"expected a graph, got {type(x).__name__}")


def check_graphs(X, allow_oracle: bool = False) -> list:
    if isinstance(X, (BoundedDegreeGraph, QueryOracle)):
        X = [X]
    items = [check_graph(x, allow_oracle) for x in X]
    if not items:
        raise ValueError("empty input")
    return items


def check_positive(name: str, value, integer: bool = False, allow_zero: bool = False):
    kind = numbers.Integral if integer else numbers.Real
    if not isinstance(value, kind) or isinstance(value, bool):
        raise TypeError(f"{name} must be {'an integer' if integer else 'a number'}, got {value!r}")
    if value < 0 or (value == 0 and not allow_zero):
        raise ValueError(f"{name} must be {'non-negative' if allow_zero else 'positive'}, got {value!r}")
    return value


def check_labels(y, n: int) -> list[int]:
    labels = [int(v) for v in y]
    if len(labels) != n:
        raise ValueError(f"got {len(labels)} labels for {n} graphs")
    if set(labels) - {0, 1}:
        raise ValueError("labels must be 0 (far) or 1 (in class)")
    return labels
