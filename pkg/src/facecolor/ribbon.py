"""Abstract ribbon graphs: rotation systems, blowups, matchings, immersions.

A ribbon graph is a multigraph with a cyclic ordering of half-edges at
each vertex.  Matched trivalent ribbon graphs are turned into planar
perfect-matching diagrams by ``immerse``: contract the matching edges to
4-valent points, place those points on a horizontal line, route every
non-matching arc as an arch in the upper half-plane respecting each
rotation, and record the arch crossings as virtual tuples.  Any such
immersion computes the same brackets, so the layout is only optimized
heuristically to keep the virtual count small.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import permutations

from .pd import PdValidationError, PmDiagram, validate as validate_diagram


@dataclass(frozen=True)
class RibbonGraph:
    """Rotation system: per vertex the cyclic tuple of its half-edge ids."""

    rotations: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    matching: tuple[int, ...] | None = None  # edge indices
    free_loops: int = 0

    @property
    def num_vertices(self) -> int:
        return len(self.rotations)

    def half_edges(self) -> list[int]:
        return [h for rot in self.rotations for h in rot]

    def vertex_of(self) -> dict[int, int]:
        return {h: v for v, rot in enumerate(self.rotations) for h in rot}

    def edge_of(self) -> dict[int, int]:
        return {h: e for e, pair in enumerate(self.edges) for h in pair}


class RibbonGraphError(ValueError):
    pass


def check(graph: RibbonGraph) -> None:
    """Every half-edge belongs to exactly one vertex and one edge; a
    matching, if present, covers every vertex exactly once."""
    halves = graph.half_edges()
    if len(halves) != len(set(halves)):
        raise RibbonGraphError("a half-edge appears at more than one vertex slot")
    in_edges = [h for pair in graph.edges for h in pair]
    if sorted(in_edges) != sorted(halves):
        raise RibbonGraphError("edges do not pair the half-edges exactly")
    if graph.matching is not None:
        vertex_of = graph.vertex_of()
        seen: dict[int, int] = {}
        for e in graph.matching:
            h1, h2 = graph.edges[e]
            u, v = vertex_of[h1], vertex_of[h2]
            if u == v:
                raise RibbonGraphError(f"matching edge {e} is a loop")
            for w in (u, v):
                if w in seen:
                    raise RibbonGraphError(
                        f"vertex {w} is covered by matching edges {seen[w]} and {e}"
                    )
                seen[w] = e
        if len(seen) != graph.num_vertices:
            missing = sorted(set(range(graph.num_vertices)) - set(seen))
            raise RibbonGraphError(f"vertices {missing} not covered by the matching")


def is_trivalent(graph: RibbonGraph) -> bool:
    return all(len(rot) == 3 for rot in graph.rotations)


def with_matching(graph: RibbonGraph, matching: tuple[int, ...]) -> RibbonGraph:
    out = replace(graph, matching=tuple(sorted(matching)))
    check(out)
    return out


def perfect_matchings(graph: RibbonGraph) -> list[tuple[int, ...]]:
    """All perfect matchings as sorted tuples of edge indices, sorted."""
    vertex_of = graph.vertex_of()
    incident: list[list[int]] = [[] for _ in range(graph.num_vertices)]
    for e, (h1, h2) in enumerate(graph.edges):
        u, v = vertex_of[h1], vertex_of[h2]
        if u != v:
            incident[u].append(e)
            incident[v].append(e)

    results: list[tuple[int, ...]] = []
    covered = [False] * graph.num_vertices

    def extend(chosen: list[int]) -> None:
        try:
            u = covered.index(False)
        except ValueError:
            results.append(tuple(sorted(chosen)))
            return
        for e in incident[u]:
            h1, h2 = graph.edges[e]
            v = vertex_of[h1] if vertex_of[h2] == u else vertex_of[h2]
            if covered[v]:
                continue
            covered[u] = covered[v] = True
            extend(chosen + [e])
            covered[u] = covered[v] = False

    if graph.num_vertices % 2 == 0:
        extend([])
    return sorted(set(results))


def blowup(graph: RibbonGraph) -> RibbonGraph:
    """Replace every degree-k vertex by a k-cycle respecting the rotation.

    The original edges become the canonical perfect matching of the
    output, which is trivalent with sum(deg) vertices.  Isolated
    vertices become free loops.
    """
    fresh = iter(range(1, 10**9))
    rotations: list[tuple[int, int, int]] = []
    edges: list[tuple[int, int]] = []
    attach: dict[int, int] = {}  # original half-edge -> new attachment half
    loops = graph.free_loops

    for rot in graph.rotations:
        k = len(rot)
        if k == 0:
            loops += 1
            continue
        verts = []
        for h in rot:
            a, nxt, prv = next(fresh), next(fresh), next(fresh)
            attach[h] = a
            verts.append((a, nxt, prv))
            rotations.append((a, nxt, prv))
        for j in range(k):
            edges.append((verts[j][1], verts[(j + 1) % k][2]))

    matching = []
    for h1, h2 in graph.edges:
        matching.append(len(edges))
        edges.append((attach[h1], attach[h2]))
    out = RibbonGraph(tuple(rotations), tuple(edges), tuple(matching), loops)
    check(out)
    return out


# ---------------------------------------------------------------------------
# Immersion: matched trivalent ribbon graph -> perfect-matching diagram.
# ---------------------------------------------------------------------------


def _sites_and_arcs(graph: RibbonGraph):
    """Contract matching edges: per site the ccw 4-tuple of arc ends.

    At each endpoint of a matching edge the two other half-edges are
    read in rotation order after the matching half; with the edge drawn
    between them the counterclockwise order of arc ends around the
    contracted point is (a, b, c, d), so the surface-respecting
    0-smoothing joins (a, d) and (b, c).
    """
    check(graph)
    if not is_trivalent(graph):
        raise RibbonGraphError("immersion needs a trivalent graph")
    if graph.matching is None:
        raise RibbonGraphError("immersion needs a perfect matching")
    vertex_of = graph.vertex_of()
    edge_of = graph.edge_of()
    matching_set = set(graph.matching)

    def after(h: int) -> tuple[int, int]:
        rot = graph.rotations[vertex_of[h]]
        pos = rot.index(h)
        return rot[(pos + 1) % 3], rot[(pos + 2) % 3]

    sites = []  # per matching edge: ccw 4-tuple of half-edges (a, b, c, d)
    for e in graph.matching:
        h_u, h_v = graph.edges[e]
        a, b = after(h_u)
        c, d = after(h_v)
        sites.append((a, b, c, d))

    # label non-matching edges consecutively along the cycles they form
    other_half = {}
    for rot in graph.rotations:
        non = [h for h in rot if edge_of[h] not in matching_set]
        other_half[non[0]], other_half[non[1]] = non[1], non[0]
    mate = {}
    for h1, h2 in graph.edges:
        mate[h1], mate[h2] = h2, h1

    arc_of_edge: dict[int, int] = {}
    label = 0
    for e, (h1, _) in enumerate(graph.edges):
        if e in matching_set or e in arc_of_edge:
            continue
        h = h1
        while edge_of[h] not in arc_of_edge:
            label += 1
            arc_of_edge[edge_of[h]] = label
            h = other_half[mate[h]]
    site_tuples = [tuple(arc_of_edge[edge_of[h]] for h in quad) for quad in sites]
    return site_tuples


def _count_crossings(site_tuples, order, flags) -> tuple[int, list[tuple[int, int]]]:
    """Arch crossings for one layout: two chords cross iff they interleave."""
    ends: dict[int, list[int]] = {}
    for rank, site in enumerate(order):
        a, b, c, d = site_tuples[site]
        if flags >> site & 1:
            a, b, c, d = c, d, a, b
        base = 4 * rank
        for offset, arc in enumerate((d, c, b, a)):
            ends.setdefault(arc, []).append(base + offset)
    chords = sorted((min(p), max(p), arc) for arc, p in ends.items())
    crossings = []
    for i in range(len(chords)):
        l1, r1, arc1 = chords[i]
        for j in range(i + 1, len(chords)):
            l2, r2, arc2 = chords[j]
            if l1 < l2 < r1 < r2:
                crossings.append((min(arc1, arc2), max(arc1, arc2)))
    return len(crossings), sorted(crossings)


def _best_layout(site_tuples):
    ell = len(site_tuples)
    best = None
    if ell <= 5:
        for order in permutations(range(ell)):
            for flags in range(1 << ell):
                count, crossings = _count_crossings(site_tuples, order, flags)
                key = (count, order, flags)
                if best is None or key < best[0]:
                    best = (key, flags, crossings)
        return best[1], best[2]
    # hill climbing: toggle flags and swap positions, deterministic
    order = list(range(ell))
    flags = 0
    count, crossings = _count_crossings(site_tuples, order, flags)
    improved = True
    passes = 0
    while improved and passes < 30:
        improved = False
        passes += 1
        for i in range(ell):
            cand = flags ^ (1 << order[i])
            c2, x2 = _count_crossings(site_tuples, order, cand)
            if c2 < count:
                flags, count, crossings = cand, c2, x2
                improved = True
        for i in range(ell):
            for j in range(i + 1, ell):
                order[i], order[j] = order[j], order[i]
                c2, x2 = _count_crossings(site_tuples, order, flags)
                if c2 < count:
                    count, crossings = c2, x2
                    improved = True
                else:
                    order[i], order[j] = order[j], order[i]
    return flags, crossings


def immerse(graph: RibbonGraph) -> PmDiagram:
    """A planar perfect-matching diagram realizing the ribbon structure.

    Virtual crossings never involve matching edges: the matching edges
    are contracted before drawing and re-expanded locally afterwards.
    The particular drawing is an arbitrary (heuristically small) choice;
    all brackets are invariant under it.
    """
    site_tuples = _sites_and_arcs(graph)
    flags, crossings = _best_layout(site_tuples)
    matchings = []
    for i, (a, b, c, d) in enumerate(site_tuples):
        matchings.append((c, d, a, b) if flags >> i & 1 else (a, b, c, d))
    diagram = PmDiagram(tuple(matchings), tuple(crossings), graph.free_loops)
    violations = validate_diagram(diagram)
    if violations:
        raise PdValidationError(violations)
    return diagram


def matched_site_edges(graph: RibbonGraph) -> list[tuple[int, int, int, int]]:
    """Per matching edge the edge ids (p, q, r, s) of the four non-matching
    half-edges around it ((p, q) at one end, (r, s) at the other)."""
    check(graph)
    if not is_trivalent(graph):
        raise RibbonGraphError("the coloring oracle needs a trivalent graph")
    if graph.matching is None:
        raise RibbonGraphError("the coloring oracle needs a perfect matching")
    vertex_of = graph.vertex_of()
    edge_of = graph.edge_of()
    matching_set = set(graph.matching)
    quads = []
    for e in graph.matching:
        ends = []
        for h in graph.edges[e]:
            rot = graph.rotations[vertex_of[h]]
            ends.extend(edge_of[x] for x in rot if edge_of[x] not in matching_set)
        quads.append(tuple(ends))
    return quads


def diagram_to_graph(diagram: PmDiagram) -> RibbonGraph:
    """Reconstruct the matched trivalent ribbon graph a diagram encodes.

    Each matching tuple becomes one matching edge with trivalent
    endpoints; rotations follow the tuple convention (counterclockwise:
    matching half, then the two arc ends).
    """
    fresh = iter(range(1, 10**9))
    rotations: list[tuple[int, int, int]] = []
    edges: list[tuple[int, int]] = []
    matching: list[int] = []
    arc_ends: dict[int, list[int]] = {}
    for a, b, c, d in diagram.matchings:
        mu, mv = next(fresh), next(fresh)
        ha, hb, hc, hd = (next(fresh) for _ in range(4))
        rotations.append((mu, ha, hb))
        rotations.append((mv, hc, hd))
        matching.append(len(edges))
        edges.append((mu, mv))
        for label, h in ((a, ha), (b, hb), (c, hc), (d, hd)):
            arc_ends.setdefault(label, []).append(h)
    for label in sorted(arc_ends):
        h1, h2 = arc_ends[label]
        edges.append((h1, h2))
    out = RibbonGraph(
        tuple(rotations), tuple(edges), tuple(matching), diagram.free_loops
    )
    check(out)
    return out


def isaacs_jm(m: int) -> PmDiagram:
    """The Isaacs snark J_m as a perfect-matching diagram, m odd >= 3.

    Generalizes the J_3 diagram by repeating its two-tuple block around
    the circle with labels shifted by 3 on the outer 3m-cycle and by 1
    on the hub m-cycle; the m virtual crossings tile the same way.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError("the Isaacs family J_m needs odd m >= 3")

    def outer(x: int) -> int:
        return (x - 1) % (3 * m) + 1

    def hub(j: int) -> int:
        return 3 * m + (j - 1) % m + 1

    matchings: list[tuple[int, int, int, int]] = []
    virtuals: list[tuple[int, int]] = []
    for i in range(m):
        matchings.append(
            (outer(5 + 3 * i), outer(6 + 3 * i), outer(9 + 3 * i), outer(1 + 3 * i))
        )
        matchings.append((outer(4 + 3 * i), outer(5 + 3 * i), hub(i), hub(i + 1)))
        x, y = outer(3 + 3 * i), outer(6 + 3 * i)
        virtuals.append((min(x, y), max(x, y)))
    diagram = PmDiagram(tuple(matchings), tuple(sorted(virtuals)))
    violations = validate_diagram(diagram)
    if violations:
        raise PdValidationError(violations)
    return diagram


# ---------------------------------------------------------------------------
# Text and JSON graph formats.
# ---------------------------------------------------------------------------


def loads_graph(text: str) -> RibbonGraph:
    """Parse a ribbon graph from the line format or from JSON.

    Line format (``#`` comments allowed)::

        vertex 0: 1 2 3      # cyclic order of half-edge ids
        edge: 1 4
        match: 1 4           # optional; names a matching edge by its halves
        loops: 0             # optional free loop count
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        import json

        data = json.loads(text)
        graph = RibbonGraph(
            tuple(tuple(rot) for rot in data["vertices"]),
            tuple(tuple(e) for e in data["edges"]),
            None,
            int(data.get("loops", 0)),
        )
        if "matching" in data:
            pairs = {frozenset(e) for e in data["matching"]}
            matching = tuple(
                i for i, e in enumerate(graph.edges) if frozenset(e) in pairs
            )
            graph = replace(graph, matching=matching)
        check(graph)
        return graph

    vertices: dict[int, tuple[int, ...]] = {}
    edges: list[tuple[int, int]] = []
    match_pairs: list[frozenset[int]] = []
    loops = 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        head = head.strip().lower()
        fields = rest.split()
        if head.startswith("vertex"):
            vertices[int(head.split()[1])] = tuple(int(x) for x in fields)
        elif head == "edge":
            edges.append((int(fields[0]), int(fields[1])))
        elif head == "match":
            match_pairs.append(frozenset(int(x) for x in fields))
        elif head == "loops":
            loops = int(fields[0])
        else:
            raise RibbonGraphError(f"unrecognized line: {raw!r}")
    rotations = tuple(vertices[i] for i in sorted(vertices))
    matching = None
    if match_pairs:
        matching = tuple(
            i for i, e in enumerate(edges) if frozenset(e) in set(match_pairs)
        )
        if len(matching) != len(match_pairs):
            raise RibbonGraphError("a match: line does not name an edge")
    graph = RibbonGraph(rotations, tuple(edges), matching, loops)
    check(graph)
    return graph


def dumps_graph(graph: RibbonGraph) -> str:
    lines = [f"vertex {i}: " + " ".join(map(str, rot))
             for i, rot in enumerate(graph.rotations)]
    lines += [f"edge: {h1} {h2}" for h1, h2 in graph.edges]
    if graph.matching is not None:
        lines += [f"match: {graph.edges[e][0]} {graph.edges[e][1]}"
                  for e in graph.matching]
    if graph.free_loops:
        lines.append(f"loops: {graph.free_loops}")
    return "\n".join(lines) + "\n"
