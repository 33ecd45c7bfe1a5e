"""Edge-list text format: a header line ``n d`` then one ``u v`` line per edge."""

from __future__ import annotations

from pathlib import Path

from .exceptions import InvalidEdge, ParseError
from .graph import BoundedDegreeGraph, build_graph


def parse_edge_list(text: str) -> BoundedDegreeGraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {raw.strip()!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer token in {raw.strip()!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("n and d must be non-negative", lineno)
            header = (a, b)
            continue
        if a >= b:
            raise ParseError(f"edge {a} {b} must satisfy u < v", lineno)
        if b >= header[0]:
            raise InvalidEdge(a, b, f"endpoint out of range on line {lineno}")
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'n d' header", None)
    return build_graph(header[0], header[1], edges)


def format_edge_list(g: BoundedDegreeGraph) -> str:
    lines = [f"{g.n} {g.d}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def load_edge_list(path) -> BoundedDegreeGraph:
    return parse_edge_list(Path(path).read_text())


def save_edge_list(g: BoundedDegreeGraph, path) -> None:
    Path(path).write_text(format_edge_list(g))


def save_cut_edges(edges, path) -> None:
    """Write a cut as ``u v`` lines (no header)."""
    Path(path).write_text("".join(f"{min(u, v)} {max(u, v)}\n" for u, v in sorted(edges)))
