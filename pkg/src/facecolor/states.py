"""States of a perfect-matching diagram and their circle decompositions.

A state is a choice of smoothing per matching edge, indexed by a bitmask
``alpha`` (bit i set = crossed smoothing of matching tuple i; matching
index 0 is the least significant bit).  Resolving every matching edge
turns the diagram into immersed circles: a partition of the arc labels
computed with a union-find.  Virtual crossings resolved as nodes fuse
circles into complexes without merging the circles themselves.

Circle ids are canonical: a circle is named by its minimum arc label,
so decompositions are independent of union-find processing order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pd import PmDiagram


class UnionFind:
    """Array union-find with path halving; cheap to copy for state DFS."""

    __slots__ = ("parent", "count")

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.count = size

    def copy(self) -> "UnionFind":
        other = UnionFind.__new__(UnionFind)
        other.parent = self.parent[:]
        other.count = self.count
        return other

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra  # keep the smaller index as root
        self.count -= 1
        return True


@dataclass(frozen=True)
class CircleDecomposition:
    """Circles of one fully resolved state, with node-fused complexes.

    ``circles`` partitions the arc labels (each sorted, ordered by
    minimum label); ``fused`` partitions circle ids into complexes; with
    no node choices ``fused`` is the discrete partition.  ``site_pairs``
    records, per matching site, the ids of the two circles whose strands
    touch there (equal ids mark a self-touching circle).
    """

    circles: tuple[tuple[int, ...], ...]
    fused: tuple[tuple[int, ...], ...]
    site_pairs: tuple[tuple[int, int], ...]

    @property
    def num_circles(self) -> int:
        return len(self.circles)

    @property
    def num_complexes(self) -> int:
        return len(self.fused)


@dataclass(frozen=True)
class TouchGraph:
    """Multigraph on a state's circles with one edge per matching site."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


def arc_order(diagram: PmDiagram) -> list[int]:
    return sorted(diagram.arc_labels)


def _arc_indices(diagram: PmDiagram) -> dict[int, int]:
    return {label: i for i, label in enumerate(arc_order(diagram))}


def check_alpha(diagram: PmDiagram, alpha: int) -> None:
    if not 0 <= alpha < (1 << diagram.num_matchings):
        raise ValueError(
            f"alpha {alpha:#b} out of range for {diagram.num_matchings} matchings"
        )


def resolve_arcs(diagram: PmDiagram, alpha: int) -> tuple[UnionFind, dict[int, int]]:
    """Union-find over arc labels after smoothing every matching site."""
    check_alpha(diagram, alpha)
    index = _arc_indices(diagram)
    uf = UnionFind(len(index))
    for i, (a, b, c, d) in enumerate(diagram.matchings):
        if alpha >> i & 1:
            uf.union(index[a], index[c])
            uf.union(index[b], index[d])
        else:
            uf.union(index[a], index[d])
            uf.union(index[b], index[c])
    return uf, index


def circles(
    diagram: PmDiagram, alpha: int, node_mask: int = 0
) -> CircleDecomposition:
    """Circle decomposition of state ``alpha`` with virtual node choices.

    ``node_mask`` bit j set means virtual crossing j is resolved as a
    node (its two arcs fused into one complex); clear means plain
    pass-through.
    """
    if not 0 <= node_mask < (1 << diagram.num_virtuals):
        raise ValueError("node_mask out of range for this diagram")
    uf, index = resolve_arcs(diagram, alpha)
    labels = arc_order(diagram)

    groups: dict[int, list[int]] = {}
    for label in labels:
        groups.setdefault(uf.find(index[label]), []).append(label)
    circle_list = sorted((tuple(sorted(g)) for g in groups.values()))
    cid_of_root = {uf.find(index[c[0]]): c[0] for c in circle_list}

    # second-level union-find over circles for node fusions
    cids = [c[0] for c in circle_list]
    cpos = {cid: i for i, cid in enumerate(cids)}
    fuse = UnionFind(len(cids))
    for j, (x, y) in enumerate(diagram.virtuals):
        if node_mask >> j & 1:
            fuse.union(cpos[cid_of_root[uf.find(index[x])]],
                       cpos[cid_of_root[uf.find(index[y])]])
    complexes: dict[int, list[int]] = {}
    for i, cid in enumerate(cids):
        complexes.setdefault(fuse.find(i), []).append(cid)
    fused = sorted(tuple(sorted(g)) for g in complexes.values())

    pairs = []
    for a, b, _, _ in diagram.matchings:
        u = cid_of_root[uf.find(index[a])]
        v = cid_of_root[uf.find(index[b])]
        pairs.append((u, v) if u <= v else (v, u))
    return CircleDecomposition(tuple(circle_list), tuple(fused), tuple(pairs))


def touch_graph(diagram: PmDiagram, alpha: int) -> TouchGraph:
    """Touch graph of a matching state: circles joined at matching sites."""
    decomposition = circles(diagram, alpha)
    return TouchGraph(
        vertices=tuple(c[0] for c in decomposition.circles),
        edges=decomposition.site_pairs,
    )


def edge_type(diagram: PmDiagram, alpha: int, i: int) -> str:
    """Classify the hypercube edge flipping matching bit i: merge/split/neutral."""
    if not 0 <= i < diagram.num_matchings:
        raise ValueError(f"matching index {i} out of range")
    if alpha >> i & 1:
        raise ValueError(f"bit {i} of alpha is already set")
    before, _ = resolve_arcs(diagram, alpha)
    after, _ = resolve_arcs(diagram, alpha | (1 << i))
    delta = after.count - before.count
    if delta == -1:
        return "merge"
    if delta == 1:
        return "split"
    if delta == 0:
        return "neutral"
    raise AssertionError("adjacent states differ by more than one circle")


def parse_alpha_bits(bits: str, num_matchings: int) -> int:
    """Bit string with character i giving the smoothing of matching i."""
    if len(bits) != num_matchings or any(ch not in "01" for ch in bits):
        raise ValueError(
            f"alpha must be a {num_matchings}-character string of 0s and 1s"
        )
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


def alpha_bits(alpha: int, num_matchings: int) -> str:
    return "".join("1" if alpha >> i & 1 else "0" for i in range(num_matchings))
