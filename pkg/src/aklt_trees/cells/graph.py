"""Cell graphs: finite rooted bipartite graphs glued boundary-to-root.

The root is the link to the parent cell and is not a site. Every other
vertex is a site whose degree is its graph degree plus the number of times
it appears in the boundary list.

File format (UTF-8 JSON):

    {"vertices": [...], "edges": [[u, v], ...], "root": r,
     "boundary": [...], "bipartition": {"A": [...], "B": [...]}}

An optional "reference" entry carries printed values to compare against:
{"p": [...], "q": [...], "slope": "p/q"} with coefficients as "p/q" strings.
"""
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Hashable, List, Optional, Tuple, Union

import networkx as nx

from src.aklt_trees.core.paths import get_cell_path
from src.aklt_trees.core.report import rational_to_str
from src.aklt_trees.utils.errors import CellGraphError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CellReference:
    """Printed transfer polynomials and slope of a cell, for diff reports."""
    p: Tuple[Fraction, ...] = ()
    q: Tuple[Fraction, ...] = ()
    slope: Optional[Fraction] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CellReference":
        slope = data.get("slope")
        return cls(
            p=tuple(Fraction(str(c)) for c in data.get("p", [])),
            q=tuple(Fraction(str(c)) for c in data.get("q", [])),
            slope=Fraction(str(slope)) if slope is not None else None,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": [rational_to_str(c) for c in self.p],
            "q": [rational_to_str(c) for c in self.q],
            "slope": rational_to_str(self.slope) if self.slope is not None else None,
        }


@dataclass(frozen=True, eq=False)
class CellGraph:
    vertices: Tuple[Hashable, ...]
    edges: Tuple[Tuple[Hashable, Hashable], ...]
    root: Hashable
    boundary: Tuple[Hashable, ...]
    bipartition: Optional[Dict[str, Tuple[Hashable, ...]]] = None
    name: str = ""
    reference: Optional[CellReference] = None
    graph: nx.Graph = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "graph", self._validate())

    def _validate(self) -> nx.Graph:
        label = self.name or "cell"
        if len(set(self.vertices)) != len(self.vertices):
            raise CellGraphError(f"{label}: duplicate vertex ids")
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for u, v in self.edges:
            if u not in graph or v not in graph:
                raise CellGraphError(f"{label}: edge ({u}, {v}) names an unknown vertex")
            if u == v:
                raise CellGraphError(f"{label}: self-loop at {u}")
            if graph.has_edge(u, v):
                raise CellGraphError(f"{label}: duplicate edge ({u}, {v})")
            graph.add_edge(u, v)

        if self.root not in graph:
            raise CellGraphError(f"{label}: root {self.root} is not a vertex")
        if not nx.is_connected(graph):
            raise CellGraphError(f"{label}: invariant 'connected' violated")
        if not nx.is_bipartite(graph):
            raise CellGraphError(
                f"{label}: invariant 'bipartite' violated",
                "Cells with odd cycles are not supported.",
            )
        if graph.degree(self.root) != 1:
            raise CellGraphError(
                f"{label}: invariant 'deg(root) = 1' violated (degree {graph.degree(self.root)})"
            )
        if not self.boundary:
            raise CellGraphError(f"{label}: boundary list is empty")
        for x in self.boundary:
            if x == self.root:
                raise CellGraphError(f"{label}: invariant 'root not in boundary' violated")
            if x not in graph:
                raise CellGraphError(f"{label}: boundary vertex {x} is not a vertex")

        if self.bipartition is not None:
            side = {}
            for part in ("A", "B"):
                for v in self.bipartition.get(part, ()):
                    side[v] = part
            if set(side) != set(self.vertices):
                raise CellGraphError(f"{label}: bipartition labels do not cover every vertex")
            for u, v in graph.edges:
                if side[u] == side[v]:
                    raise CellGraphError(
                        f"{label}: invariant 'bipartite labels' violated on edge ({u}, {v})"
                    )

        multiplicity = Counter(self.boundary)
        for x in graph.nodes:
            if x != self.root and graph.degree(x) + multiplicity[x] < 2:
                raise CellGraphError(
                    f"{label}: site {x} has degree {graph.degree(x) + multiplicity[x]}",
                    "Every site needs an edge towards the root and at least one more leg.",
                )
        return graph

    @property
    def top(self) -> Hashable:
        """The site attached to the root."""
        return next(iter(self.graph.neighbors(self.root)))

    @property
    def sites(self) -> List[Hashable]:
        return [v for v in self.vertices if v != self.root]

    @property
    def is_tree(self) -> bool:
        return nx.is_tree(self.graph)

    def site_degree(self, x: Hashable) -> int:
        return self.graph.degree(x) + self.boundary.count(x)

    def distance(self, x: Hashable) -> int:
        return nx.shortest_path_length(self.graph, self.root, x)

    def pendant_sign(self, x: Hashable) -> int:
        """+1 at odd distance from the root, -1 at even distance."""
        return 1 if self.distance(x) % 2 else -1

    def internal_edges(self) -> List[Tuple[Hashable, Hashable]]:
        """Edges between two sites (the root edge excluded)."""
        return [e for e in self.edges if self.root not in e]

    def to_dict(self) -> Dict[str, Any]:
        colors = nx.bipartite.color(self.graph)
        data = {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "root": self.root,
            "boundary": list(self.boundary),
            "bipartition": self.bipartition or {
                "A": [v for v in self.vertices if colors[v] == colors[self.root]],
                "B": [v for v in self.vertices if colors[v] != colors[self.root]],
            },
        }
        if self.reference is not None:
            data["reference"] = self.reference.to_dict()
        return data


def cell_from_dict(data: Dict[str, Any], name: str = "") -> CellGraph:
    missing = [key for key in ("vertices", "edges", "root", "boundary") if key not in data]
    if missing:
        raise CellGraphError(f"{name or 'cell'}: missing keys {missing}")
    bipartition = data.get("bipartition")
    if bipartition is not None:
        bipartition = {part: tuple(bipartition.get(part, ())) for part in ("A", "B")}
    reference = data.get("reference")
    return CellGraph(
        vertices=tuple(data["vertices"]),
        edges=tuple(tuple(e) for e in data["edges"]),
        root=data["root"],
        boundary=tuple(data["boundary"]),
        bipartition=bipartition,
        name=data.get("name", name),
        reference=CellReference.from_dict(reference) if reference else None,
    )


def load_cell(path: Union[str, Path]) -> CellGraph:
    """Load a cell by path or by the name of a bundled cell."""
    resolved = get_cell_path(path)
    if not resolved.exists():
        raise CellGraphError(
            f"cell file not found: {resolved}",
            "Pass a path or the name of a file in data/cells.",
        )
    try:
        data = json.loads(resolved.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise CellGraphError(f"{resolved.name}: invalid JSON ({e})")
    logger.debug(f"Loaded cell {resolved.stem}")
    return cell_from_dict(data, name=resolved.stem)


def save_cell(cell: CellGraph, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(cell.to_dict(), f, indent=2)
        f.write("\n")


# Builders. Vertex 0 is always the root.

def star_cell(d: int) -> CellGraph:
    """One site of degree d: the root edge plus d-1 boundary legs."""
    return decorated_star_cell(d, 0)


def single_edge_cell() -> CellGraph:
    return CellGraph((0, 1), ((0, 1),), 0, (1,), name="single_edge")


def decorated_star_cell(d: int, g: int) -> CellGraph:
    """A chain of g degree-2 sites from the root down to a center of degree d.

    The center carries the d-1 boundary legs; g = 0 is the star cell.
    """
    if g < 0:
        raise CellGraphError(f"decoration number must be nonnegative, got {g}")
    if d < 2:
        raise CellGraphError(f"decorated star needs d >= 2, got {d}")
    center = g + 1
    vertices = tuple(range(center + 1))
    edges = tuple((i, i + 1) for i in range(center))
    name = f"star{d}" if g == 0 else f"decorated_d{d}_g{g}"
    return CellGraph(vertices, edges, 0, (center,) * (d - 1), name=name)


# printed F = -26t / (82 + 24t^2), normalized to q(0) = 1
SQUARE_REFERENCE = CellReference(
    p=(Fraction(0), Fraction(-13, 41)),
    q=(Fraction(1), Fraction(0), Fraction(12, 41)),
    slope=Fraction(-13, 41),
)


def square_cell() -> CellGraph:
    """Four-cycle a-b-c-d hanging from the root at a; boundary b, c, d."""
    # ids: root 0, b 1, c 2, d 3, a 4
    return CellGraph(
        vertices=(0, 1, 2, 3, 4),
        edges=((4, 1), (1, 2), (2, 3), (3, 4), (4, 0)),
        root=0,
        boundary=(1, 2, 3),
        bipartition={"A": (4, 2), "B": (0, 1, 3)},
        name="square",
        reference=SQUARE_REFERENCE,
    )
