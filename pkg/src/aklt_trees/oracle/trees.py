"""Finite rooted trees for the contraction oracle.

Vertices are integers, edges point from parent to child. Each vertex has an
outgoing edge towards its parent (the root's goes to the probe), one edge
per child and a number of dangling boundary legs, each carrying a sign +1 or
-1 that flips the Bloch vector of the boundary operator placed on it.

Bilayer trees reuse the same shape with kind BILAYER: every vertex is then a
bilayer node (two sites joined by a rung) and every leg a pair of half-spins.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Hashable, Iterable, List, Optional, Tuple

import networkx as nx

from src.aklt_trees.cells.graph import CellGraph
from src.aklt_trees.config import MAX_TREE_VERTICES, MIN_DEGREE
from src.aklt_trees.transfer.sequence import DegreeSequence
from src.aklt_trees.utils.errors import TreeError

logger = logging.getLogger(__name__)


class TreeKind(str, Enum):
    """What a vertex of the tree stands for."""
    SITES = "sites"
    BILAYER = "bilayer"


@dataclass
class FiniteTree:
    graph: nx.DiGraph
    root: int
    dangling: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    family: str = "custom"
    params: Dict[str, Any] = field(default_factory=dict)
    kind: TreeKind = TreeKind.SITES

    def __post_init__(self):
        if self.root not in self.graph:
            raise TreeError(f"root {self.root} is not a vertex")
        if not nx.is_arborescence(self.graph):
            raise TreeError(
                "graph is not a rooted tree",
                "Trees must be connected and acyclic with edges pointing away from the root.",
            )
        if self.graph.in_degree(self.root) != 0:
            raise TreeError(f"root {self.root} has a parent")
        for v, signs in self.dangling.items():
            if any(s not in (1, -1) for s in signs):
                raise TreeError(f"dangling signs at {v} must be +1 or -1, got {signs}")
        if self.kind is TreeKind.SITES:
            for v in self.graph.nodes:
                if self.degree(v) < MIN_DEGREE:
                    raise TreeError(
                        f"vertex {v} has degree {self.degree(v)}",
                        "Give leaves dangling boundary legs.",
                    )
        self._depths = nx.single_source_shortest_path_length(self.graph, self.root)

    # structure

    def children(self, v: int) -> List[int]:
        return sorted(self.graph.successors(v))

    def legs(self, v: int) -> Tuple[int, ...]:
        return self.dangling.get(v, ())

    def degree(self, v: int) -> int:
        """Parent edge + children + dangling legs."""
        return 1 + self.graph.out_degree(v) + len(self.legs(v))

    def generation(self, v: int) -> int:
        """1 for the root."""
        return self._depths[v] + 1

    @property
    def depth(self) -> int:
        return max(self._depths.values()) + 1

    @property
    def size(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def spin_count(self) -> int:
        """Physical spins: one per site, two per bilayer node."""
        return self.size * (2 if self.kind is TreeKind.BILAYER else 1)

    def postorder(self) -> Iterable[int]:
        return nx.dfs_postorder_nodes(self.graph, self.root)

    def leaves(self) -> List[int]:
        return [v for v in self.graph.nodes if self.graph.out_degree(v) == 0]

    def dangling_count(self) -> int:
        return sum(len(s) for s in self.dangling.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "params": self.params,
            "kind": self.kind,
            "vertices": self.size,
            "depth": self.depth,
            "dangling": self.dangling_count(),
        }

    # construction

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[Hashable, Hashable]], root: Hashable,
                   leaf_degree: int = 2, dangling: Optional[Dict[Any, Tuple[int, ...]]] = None) -> "FiniteTree":
        """Orient an undirected tree from `root` and relabel vertices 0..n-1.

        Leaves without explicit dangling signs get leaf_degree - 1 legs of sign +1.
        """
        undirected = nx.Graph()
        undirected.add_edges_from(edges)
        if root not in undirected:
            undirected.add_node(root)
        if not nx.is_tree(undirected):
            raise TreeError(
                "edge list does not describe a tree",
                "Remove cycles and connect every component.",
            )
        order = list(nx.bfs_tree(undirected, root))
        index = {v: i for i, v in enumerate(order)}
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(order)))
        graph.add_edges_from((index[u], index[v]) for u, v in nx.bfs_edges(undirected, root))
        legs = {index[v]: tuple(s) for v, s in (dangling or {}).items()}
        for v in graph.nodes:
            if graph.out_degree(v) == 0 and v not in legs:
                legs[v] = (1,) * (leaf_degree - 1)
        return cls(graph, 0, legs, family="custom")


def _too_large(family: str) -> TreeError:
    return TreeError(
        f"{family} tree would exceed {MAX_TREE_VERTICES} vertices",
        "Lower the depth; degree products grow the tree geometrically.",
    )


def check_tree_size(family: str, generation_sizes: Iterable[int]) -> int:
    """Sum generation sizes, stopping as soon as the total passes MAX_TREE_VERTICES."""
    total = 0
    for size in generation_sizes:
        total += size
        if total > MAX_TREE_VERTICES:
            raise _too_large(family)
    return total


class _Builder:
    def __init__(self, family: str = "custom"):
        self.graph = nx.DiGraph()
        self.dangling: Dict[int, Tuple[int, ...]] = {}
        self.family = family
        self._next = 0

    def add(self, parent: Optional[int] = None) -> int:
        if self._next >= MAX_TREE_VERTICES:
            raise _too_large(self.family)
        v = self._next
        self._next += 1
        self.graph.add_node(v)
        if parent is not None:
            self.graph.add_edge(parent, v)
        return v


def layered(seq: DegreeSequence, depth: int) -> FiniteTree:
    """Vertices of generation i have degree d_i; generation `depth` holds the boundary."""
    if depth < 1:
        raise TreeError(f"depth must be positive, got {depth}")

    def sizes():
        width = 1
        for gen in range(1, depth + 1):
            yield width
            width *= seq.degree(gen) - 1

    check_tree_size("layered", sizes())
    b = _Builder("layered")
    frontier = [b.add()]
    for gen in range(1, depth + 1):
        d = seq.degree(gen)
        if gen == depth:
            for v in frontier:
                b.dangling[v] = (1,) * (d - 1)
            break
        frontier = [b.add(v) for v in frontier for _ in range(d - 1)]
    tree = FiniteTree(b.graph, 0, b.dangling, family="layered",
                      params={"sequence": seq.name or list(seq.degrees), "depth": depth})
    logger.debug(f"layered tree: {tree.size} vertices, depth {depth}")
    return tree


def cayley(d: int, depth: int) -> FiniteTree:
    tree = layered(DegreeSequence.constant(d), depth)
    tree.family = "cayley"
    tree.params = {"d": d, "depth": depth}
    return tree


def decorated(d: int, g: int, depth: int) -> FiniteTree:
    """Cayley tree of degree d with g degree-2 sites on every edge.

    depth counts branch generations; the root is a branch vertex and the
    deepest branch vertices hold the boundary.
    """
    if d < MIN_DEGREE or g < 0 or depth < 1:
        raise TreeError(f"bad decorated tree parameters d={d}, g={g}, depth={depth}")
    # g decoration sites above every non-root branch vertex
    check_tree_size("decorated", ((d - 1) ** k * (1 if k == 0 else g + 1) for k in range(depth)))
    b = _Builder("decorated")
    frontier = [b.add()]
    for gen in range(1, depth + 1):
        if gen == depth:
            for v in frontier:
                b.dangling[v] = (1,) * (d - 1)
            break
        nxt = []
        for v in frontier:
            for _ in range(d - 1):
                tip = v
                for _ in range(g):
                    tip = b.add(tip)
                nxt.append(b.add(tip))
        frontier = nxt
    return FiniteTree(b.graph, 0, b.dangling, family="decorated",
                      params={"d": d, "g": g, "depth": depth})


def from_cell(cell: CellGraph, depth: int) -> FiniteTree:
    """Quasi-Cayley tree of `depth` nested copies of a tree cell.

    A copy hanging from boundary vertex x of a copy with orientation o gets
    orientation o * s_x, s_x the pendant sign of x; the deepest copies turn
    their boundary entries into dangling legs of sign o * s_x. A uniform
    boundary B(t e_1) then reproduces the depth-fold iterate of F_cell.
    """
    if not cell.is_tree:
        raise TreeError(
            f"cell {cell.name} has loops",
            "Only tree cells unfold into trees; use cell_iterate for the others.",
        )
    if depth < 1:
        raise TreeError(f"depth must be positive, got {depth}")
    copy_size = cell.graph.number_of_nodes() - 1
    check_tree_size("from_cell", (copy_size * len(cell.boundary) ** k for k in range(depth)))
    b = _Builder("from_cell")
    sign ={x: cell.pendant_sign(x) for x in set(cell.boundary)}
    # (parent vertex in the tree or None, orientation, copy generation)
    queue = deque([(None, 1, 1)])
    while queue:
        parent, orient, gen = queue.popleft()
        ids = {}
        for u, v in nx.bfs_edges(cell.graph, cell.root):
            if u == cell.root:
                ids[v] = b.add(parent)
            else:
                ids[v] = b.add(ids[u])
        for x in cell.boundary:
            child_orient = orient * sign[x]
            if gen == depth:
                b.dangling[ids[x]] = b.dangling.get(ids[x], ()) + (child_orient,)
            else:
                queue.append((ids[x], child_orient, gen + 1))
    return FiniteTree(b.graph, 0, b.dangling, family="from_cell",
                      params={"cell": cell.name, "depth": depth})


def bilayer_cayley(g: int, depth: int) -> FiniteTree:
    """Tree of bilayer nodes, each with g child nodes; the deepest hold g boundary pairs."""
    if g < 1 or depth < 1:
        raise TreeError(f"bad bilayer tree parameters g={g}, depth={depth}")
    check_tree_size("bilayer_cayley", (g ** k for k in range(depth)))
    b = _Builder("bilayer_cayley")
    frontier = [b.add()]
    for gen in range(1, depth + 1):
        if gen == depth:
            for v in frontier:
                b.dangling[v] = (1,) * g
            break
        frontier = [b.add(v) for v in frontier for _ in range(g)]
    return FiniteTree(b.graph, 0, b.dangling, family="bilayer_cayley",
                      params={"g": g, "depth": depth}, kind=TreeKind.BILAYER)


def tree_families() -> Dict[str, Any]:
    return {
        "cayley": cayley,
        "decorated": decorated,
        "layered": layered,
        "from_cell": from_cell,
        "bilayer_cayley": bilayer_cayley,
    }
