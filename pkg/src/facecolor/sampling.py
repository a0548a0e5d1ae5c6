"""Random generators for property-based testing.

Random diagrams are generated *realizably*: place the matching sites on
a horizontal line with four upward ports each, pair the ports by arches
in the upper half-plane, and read off virtual crossings from chord
interleavings.  Every diagram produced this way is the immersion of an
actual matched trivalent ribbon graph, so identities that hold only for
realizable diagrams (such as the agreement of the two bracket
definitions) may be tested on these samples.  Starting from a uniform
noncrossing pairing and applying a bounded number of endpoint swaps
keeps the virtual count controllable.
"""

from __future__ import annotations

import random

from .pd import PmDiagram
from .ribbon import RibbonGraph, check


def _noncrossing_pairing(rng: random.Random, num_ports: int) -> list[tuple[int, int]]:
    """Random balanced parenthesization of the ports, paired by a stack."""
    pairs = []
    stack: list[int] = []
    opens = closes = 0
    half = num_ports // 2
    for pos in range(num_ports):
        remaining = num_ports - pos
        can_open = opens < half
        can_close = stack and closes < half and len(stack) < remaining
        if can_open and (not can_close or rng.random() < 0.5):
            stack.append(pos)
            opens += 1
        else:
            pairs.append((stack.pop(), pos))
            closes += 1
    return pairs


def _crossings(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out = []
    for i, (l1, r1) in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            l2, r2 = pairs[j]
            if l1 < l2 < r1 < r2 or l2 < l1 < r2 < r1:
                out.append((i, j))
    return out


def random_diagram(
    rng: random.Random, num_sites: int, max_virtuals: int = 4
) -> PmDiagram:
    """A realizable diagram with ``num_sites`` matching edges and at most
    ``max_virtuals`` virtual crossings."""
    if num_sites < 1:
        raise ValueError("need at least one matching site")
    pairs = _noncrossing_pairing(rng, 4 * num_sites)
    for _ in range(4 * max_virtuals):
        i, j = rng.randrange(len(pairs)), rng.randrange(len(pairs))
        if i == j:
            continue
        (a1, b1), (a2, b2) = pairs[i], pairs[j]
        if rng.random() < 0.5:
            cand_i, cand_j = (a1, b2), (a2, b1)
        else:
            cand_i, cand_j = (a1, a2), (b1, b2)
        saved_i, saved_j = pairs[i], pairs[j]
        pairs[i] = (min(cand_i), max(cand_i))
        pairs[j] = (min(cand_j), max(cand_j))
        if len(_crossings(pairs)) > max_virtuals:
            pairs[i], pairs[j] = saved_i, saved_j

    pairs.sort()  # arc label = 1 + index of the chord by left endpoint
    arc_at_port = {}
    for label, (l, r) in enumerate(pairs, start=1):
        arc_at_port[l] = arc_at_port[r] = label
    matchings = []
    for s in range(num_sites):
        base = 4 * s  # ports left to right carry arcs (d, c, b, a)
        d, c, b, a = (arc_at_port[base + k] for k in range(4))
        matchings.append((a, b, c, d))
    virtuals = sorted(
        (min(i + 1, j + 1), max(i + 1, j + 1)) for i, j in _crossings(pairs)
    )
    return PmDiagram(tuple(matchings), tuple(virtuals))


def random_matched_cubic(rng: random.Random, num_vertices: int) -> RibbonGraph:
    """A random trivalent ribbon graph with a distinguished perfect matching.

    The matching is a random pairing of the vertices; the remaining
    edges form the functional graph of a random permutation (every
    vertex one out- and one in-edge, so degree 2, loops allowed); the
    rotation at each vertex is a random shuffle of its three half-edges.
    """
    if num_vertices < 2 or num_vertices % 2:
        raise ValueError("need an even number of vertices, at least 2")
    n = num_vertices
    halves = [[3 * v, 3 * v + 1, 3 * v + 2] for v in range(n)]
    edges: list[tuple[int, int]] = []

    order = list(range(n))
    rng.shuffle(order)
    matching = []
    for k in range(0, n, 2):
        u, v = order[k], order[k + 1]
        matching.append(len(edges))
        edges.append((halves[u][0], halves[v][0]))

    sigma = list(range(n))
    rng.shuffle(sigma)
    for v in range(n):
        edges.append((halves[v][1], halves[sigma[v]][2]))

    rotations = []
    for v in range(n):
        rot = halves[v][:]
        rng.shuffle(rot)
        rotations.append(tuple(rot))
    graph = RibbonGraph(tuple(rotations), tuple(edges), tuple(sorted(matching)))
    check(graph)
    return graph
