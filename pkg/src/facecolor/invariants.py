"""Coloring invariants of perfect-matching diagrams, with brute-force oracles.

Four invariants are computed as sums over the 2^l matching states:

* ``penrose_polynomial``: sum of (-1)^|alpha| n^{k_alpha}; virtual
  crossings are plain pass-throughs.
* ``pk_bracket``: the Penrose recursion augmented with the virtual
  crossing relation  [square] = 2[node] - [cross].  Expanding the node
  choices per state gives, for each matching state, a factor equal to a
  random-cluster partition sum with edge weight -2 over the multigraph
  of circles joined by virtual crossings; a complex of node-fused
  circles contributes a single factor n.
* ``color_bracket``: sum over matching states of the chromatic
  polynomial of the state's touch graph (circles must differ across
  every matching site).  All signs are +1.
* ``total_polynomial``: the same sum graded by t^|alpha|; at t = 1 it
  reproduces the color bracket.

The brackets agree as polynomials for any diagram that is a planar
immersion of a matched trivalent ribbon graph (every diagram produced
by :mod:`facecolor.ribbon` is).  Two independent certifiers are also
provided: a literal diagrammatic tensor contraction and an exhaustive
count of perfect-matching n-colorings on the abstract graph.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator

import numpy as np

from .budget import charge
from .pd import PmDiagram
from .poly import N, ONE, ZERO, IntPoly, const
from .states import UnionFind, TouchGraph, arc_order

# ---------------------------------------------------------------------------
# Random-cluster partition sums: Z(H; n, w) = sum over edge subsets S of
# w^|S| n^{#components(S)}.  Chromatic polynomials are the case w = -1
# (Whitney's expansion); the virtual-crossing factor of the PK-bracket is
# the case w = -2.
# ---------------------------------------------------------------------------

_CLUSTER_MEMO: dict[tuple, IntPoly] = {}


def cluster_poly(num_vertices: int, edges: Iterable[tuple[int, int]], w: int) -> IntPoly:
    """Z(H; n, w) for a multigraph on vertices 0..num_vertices-1 (loops ok)."""
    normalized = tuple(sorted((u, v) if u <= v else (v, u) for u, v in edges))
    return _cluster(num_vertices, normalized, w)


def _cluster(num_vertices: int, edges: tuple[tuple[int, int], ...], w: int) -> IntPoly:
    # A loop contributes a factor (1 + w); a bundle of j parallel edges
    # acts as a single edge of weight (1 + w)^j - 1, which for the two
    # weights used here is again 0 or w, so the graph reduces to a simple
    # graph with uniform weight w.
    sign = 1
    bundles = Counter()
    for u, v in edges:
        if u == v:
            if w == -1:
                return ZERO
            sign = -sign  # w == -2: loop factor (1 + w) = -1
        else:
            bundles[(u, v)] += 1
    simple: list[tuple[int, int]] = []
    for pair, j in bundles.items():
        if w == -1 or j % 2:
            simple.append(pair)

    used = {x for e in simple for x in e}
    result = N ** (num_vertices - len(used))
    for comp in _components(simple):
        result = result * _dc_component(comp, w)
    if sign != 1:
        result = result * const(sign)
    return result


def _components(edges: list[tuple[int, int]]) -> list[tuple[tuple[int, int], ...]]:
    verts = sorted({x for e in edges for x in e})
    pos = {v: i for i, v in enumerate(verts)}
    uf = UnionFind(len(verts))
    for u, v in edges:
        uf.union(pos[u], pos[v])
    by_root: dict[int, list[tuple[int, int]]] = {}
    for u, v in edges:
        by_root.setdefault(uf.find(pos[u]), []).append((u, v))
    out = []
    for group in by_root.values():
        cverts = sorted({x for e in group for x in e})
        relabel = {v: i for i, v in enumerate(cverts)}
        out.append(tuple(sorted((relabel[u], relabel[v]) for u, v in group)))
    return sorted(out)


def _dc_component(edges: tuple[tuple[int, int], ...], w: int) -> IntPoly:
    """Deletion-contraction on a connected simple graph, vertices 0..k-1."""
    key = (w, edges)
    cached = _CLUSTER_MEMO.get(key)
    if cached is not None:
        return cached
    num_vertices = max(max(e) for e in edges) + 1
    if len(edges) == num_vertices - 1:  # spanning tree: Z factorizes per edge
        result = N * (N + const(w)) ** len(edges)
    else:
        u, v = edges[-1]
        deleted = _cluster(num_vertices, edges[:-1], w)
        contracted_edges = []
        for a, b in edges[:-1]:
            a = u if a == v else (a - 1 if a > v else a)
            b = u if b == v else (b - 1 if b > v else b)
            contracted_edges.append((a, b) if a <= b else (b, a))
        contracted = _cluster(num_vertices - 1, tuple(sorted(contracted_edges)), w)
        result = deleted + const(w) * contracted
    _CLUSTER_MEMO[key] = result
    return result


def chromatic_polynomial(graph: TouchGraph) -> IntPoly:
    """Chromatic polynomial of a multigraph; loops force the zero polynomial."""
    pos = {v: i for i, v in enumerate(graph.vertices)}
    return cluster_poly(len(graph.vertices), [(pos[u], pos[v]) for u, v in graph.edges], -1)


# ---------------------------------------------------------------------------
# State enumeration.  Matching states are visited by depth-first search
# over the smoothing bits so that union-find work on shared prefixes is
# done once; each node copies one small parent array.
# ---------------------------------------------------------------------------


def _iter_states(
    diagram: PmDiagram, prefix: int = 0, prefix_len: int = 0
) -> Iterator[tuple[int, UnionFind]]:
    """Yield (alpha, resolved union-find) for all states extending the prefix."""
    index = {label: i for i, label in enumerate(arc_order(diagram))}
    sites = [tuple(index[x] for x in tup) for tup in diagram.matchings]
    ell = len(sites)

    def apply(uf: UnionFind, site: int, bit: int) -> None:
        a, b, c, d = sites[site]
        if bit:
            uf.union(a, c)
            uf.union(b, d)
        else:
            uf.union(a, d)
            uf.union(b, c)

    root = UnionFind(len(index))
    for i in range(prefix_len):
        apply(root, i, prefix >> i & 1)
    stack = [(prefix_len, prefix & ((1 << prefix_len) - 1), root)]
    while stack:
        site, alpha, uf = stack.pop()
        if site == ell:
            yield alpha, uf
            continue
        crossed = uf.copy()
        apply(crossed, site, 1)
        stack.append((site + 1, alpha | (1 << site), crossed))
        apply(uf, site, 0)
        stack.append((site + 1, alpha, uf))


def _virtual_cluster_factor(
    diagram: PmDiagram, uf: UnionFind, virtual_idx: list[tuple[int, int]]
) -> IntPoly:
    """Closed-form sum over node/plain choices for one matching state.

    Expanding [square] = 2[node] - [cross] over all virtual crossings
    gives (-1)^v * Z(H; n, -2) where H joins the circles crossed by each
    virtual.  Circles untouched by virtuals contribute plain factors n.
    """
    roots: dict[int, int] = {}
    edges = []
    for x, y in virtual_idx:
        rx, ry = uf.find(x), uf.find(y)
        edges.append((roots.setdefault(rx, len(roots)), roots.setdefault(ry, len(roots))))
    factor = cluster_poly(len(roots), edges, -2) * N ** (uf.count - len(roots))
    if len(virtual_idx) % 2:
        factor = -factor
    return factor


def _bracket_terms(
    diagram: PmDiagram, kind: str, prefix: int = 0, prefix_len: int = 0
) -> dict[tuple[int, int], int]:
    """Raw term accumulation for one slice of the state hypercube."""
    index = {label: i for i, label in enumerate(arc_order(diagram))}
    virtual_idx = [(index[x], index[y]) for x, y in diagram.virtuals]
    coeffs: dict[tuple[int, int], int] = {}

    def accumulate(poly: IntPoly, tdeg: int, scale: int) -> None:
        for (dn, _), c in poly._terms.items():
            key = (dn, tdeg)
            new = coeffs.get(key, 0) + scale * c
            if new:
                coeffs[key] = new
            else:
                del coeffs[key]

    for alpha, uf in _iter_states(diagram, prefix, prefix_len):
        sign = -1 if alpha.bit_count() % 2 else 1
        if kind == "penrose":
            key = (uf.count, 0)
            new = coeffs.get(key, 0) + sign
            if new:
                coeffs[key] = new
            else:
                del coeffs[key]
        elif kind == "pk":
            if virtual_idx:
                accumulate(_virtual_cluster_factor(diagram, uf, virtual_idx), 0, sign)
            else:
                key = (uf.count, 0)
                new = coeffs.get(key, 0) + sign
                if new:
                    coeffs[key] = new
                else:
                    del coeffs[key]
        else:  # color / total: chromatic polynomial of the touch graph
            roots: dict[int, int] = {}
            edges = []
            for a, b, _, _ in diagram.matchings:
                ra, rb = uf.find(index[a]), uf.find(index[b])
                edges.append(
                    (roots.setdefault(ra, len(roots)), roots.setdefault(rb, len(roots)))
                )
            chrom = cluster_poly(uf.count, edges, -1)
            accumulate(chrom, alpha.bit_count() if kind == "total" else 0, 1)
    return coeffs


def _finish(diagram: PmDiagram, coeffs: dict[tuple[int, int], int]) -> IntPoly:
    shift = diagram.free_loops
    return IntPoly({(dn + shift, dt): c for (dn, dt), c in coeffs.items()})


def _merge(into: dict[tuple[int, int], int], part: dict[tuple[int, int], int]) -> None:
    for key, c in part.items():
        new = into.get(key, 0) + c
        if new:
            into[key] = new
        else:
            del into[key]


def _state_sum(
    diagram: PmDiagram, kind: str, workers: int = 1, budget: int | None = None
) -> IntPoly:
    ell = diagram.num_matchings
    per_state = diagram.num_arcs + diagram.num_virtuals + ell + 1
    charge(f"{kind} state sum", (1 << ell) * per_state, budget)
    if workers > 1 and ell >= 4:
        prefix_len = min(ell, max(1, (workers - 1).bit_length()))
        coeffs: dict[tuple[int, int], int] = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_bracket_terms, diagram, kind, prefix, prefix_len)
                for prefix in range(1 << prefix_len)
            ]
            for fut in futures:
                _merge(coeffs, fut.result())
        return _finish(diagram, coeffs)
    return _finish(diagram, _bracket_terms(diagram, kind))


def pk_bracket(diagram: PmDiagram, workers: int = 1, budget: int | None = None) -> IntPoly:
    """Penrose-Kauffman bracket: a polynomial in n counting perfect-matching
    n-colorings of the diagram's underlying matched graph."""
    return _state_sum(diagram, "pk", workers, budget)


def penrose_polynomial(
    diagram: PmDiagram, workers: int = 1, budget: int | None = None
) -> IntPoly:
    """Penrose polynomial; equals the PK-bracket when the diagram has no
    virtual crossings."""
    return _state_sum(diagram, "penrose", workers, budget)


def color_bracket(
    diagram: PmDiagram, workers: int = 1, budget: int | None = None
) -> IntPoly:
    """Sum over matching states of touch-graph chromatic polynomials."""
    return _state_sum(diagram, "color", workers, budget)


def total_polynomial(
    diagram: PmDiagram, workers: int = 1, budget: int | None = None
) -> IntPoly:
    """2-variable total face color polynomial: per-state coloring counts
    graded by t^{homological degree}.  At t = 1 it equals the color bracket."""
    return _state_sum(diagram, "total", workers, budget)


def state_terms(diagram: PmDiagram, kind: str = "pk") -> dict[int, IntPoly]:
    """Per-state contributions (including sign), keyed by alpha.

    Exposed for the relation tests: e.g. a matching state whose two
    circles meet one virtual crossing contributes sign * (2n - n^2).
    """
    index = {label: i for i, label in enumerate(arc_order(diagram))}
    virtual_idx = [(index[x], index[y]) for x, y in diagram.virtuals]
    out: dict[int, IntPoly] = {}
    for alpha, uf in _iter_states(diagram):
        sign = const(-1 if alpha.bit_count() % 2 else 1)
        if kind == "pk":
            if virtual_idx:
                out[alpha] = sign * _virtual_cluster_factor(diagram, uf, virtual_idx)
            else:
                out[alpha] = sign * N**uf.count
        elif kind == "penrose":
            out[alpha] = sign * N**uf.count
        else:
            raise ValueError(f"unknown kind {kind!r}")
    return out


# ---------------------------------------------------------------------------
# Diagrammatic tensor contraction: an independent certification route.
# ---------------------------------------------------------------------------


def tensor_contraction(
    diagram: PmDiagram, n_val: int, budget: int | None = None
) -> tuple[int, bool]:
    """Literal sum over all arc colorings of the product of tensor values.

    Each matching tuple (a,b,c,d) contributes delta(a,d)delta(b,c) -
    delta(a,c)delta(b,d); each virtual crossing of arcs x,y contributes
    +1 when they carry equal colors and -1 otherwise (the square-virtual
    tensor with both strands passing through).  Returns the value and
    whether every nonzero term equaled +1 — the Jordan-curve property of
    planar immersions.
    """
    if n_val < 2:
        raise ValueError("tensor contraction needs n >= 2")
    arcs = arc_order(diagram)
    narcs = len(arcs)
    tuples = diagram.num_matchings + diagram.num_virtuals + 1
    charge("tensor contraction", n_val**narcs * tuples, budget)
    if n_val**narcs > 1 << 26:
        charge("tensor contraction (memory)", n_val**narcs * tuples, 0)
    index = {label: i for i, label in enumerate(arcs)}

    def axis(i: int) -> np.ndarray:
        shape = [1] * narcs
        shape[i] = n_val
        return np.arange(n_val).reshape(shape)

    terms = np.ones((n_val,) * narcs, dtype=np.int8)
    for a, b, c, d in diagram.matchings:
        ia, ib, ic, id_ = (axis(index[x]) for x in (a, b, c, d))
        planar = np.logical_and(ia == id_, ib == ic)
        crossed = np.logical_and(ia == ic, ib == id_)
        terms = terms * (planar.astype(np.int8) - crossed.astype(np.int8))
    for x, y in diagram.virtuals:
        eq = (axis(index[x]) == axis(index[y])).astype(np.int8)
        terms = terms * (2 * eq - 1)
    all_plus_one = bool(terms.min(initial=0) >= 0) if narcs else True
    value = int(terms.sum(dtype=np.int64)) if narcs else 1
    return value * n_val**diagram.free_loops, all_plus_one


# ---------------------------------------------------------------------------
# Exhaustive perfect-matching n-coloring count on the abstract graph.
# ---------------------------------------------------------------------------


def count_pm_colorings(graph, n_val: int, budget: int | None = None) -> int:
    """Brute-force count of perfect matching n-colorings (Def: the four
    non-matching edge-ends around each matching edge carry exactly two
    distinct colors, both present at each end).

    ``graph`` is a matched trivalent :class:`facecolor.ribbon.RibbonGraph`.
    """
    from .ribbon import matched_site_edges  # deferred: ribbon imports pd only

    sites = matched_site_edges(graph)
    nonmatching = sorted({e for quad in sites for e in quad})
    charge("perfect-matching coloring oracle", n_val ** len(nonmatching), budget)
    pos = {e: i for i, e in enumerate(nonmatching)}
    site_idx = [tuple(pos[e] for e in quad) for quad in sites]

    # per assignment position, the constraints that become fully decided
    full_at: list[list[tuple[int, int, int, int]]] = [[] for _ in nonmatching]
    half_at: list[list[tuple[int, int]]] = [[] for _ in nonmatching]
    for p, q, r, s in site_idx:
        full_at[max(p, q, r, s)].append((p, q, r, s))
        half_at[max(p, q)].append((p, q))
        half_at[max(r, s)].append((r, s))

    colors = [0] * len(nonmatching)
    total = 0
    stack = [(0, 0)]
    while stack:
        pos_i, color = stack.pop()
        pos_i -= 1
        if pos_i >= 0:
            colors[pos_i] = color
            ok = all(colors[a] != colors[b] for a, b in half_at[pos_i]) and all(
                {colors[p], colors[q]} == {colors[r], colors[s]}
                for p, q, r, s in full_at[pos_i]
            )
            if not ok:
                continue
        nxt = pos_i + 1
        if nxt == len(nonmatching):
            total += 1
            continue
        for c in range(n_val):
            stack.append((nxt + 1, c))
    return total * n_val**graph.free_loops


# ---------------------------------------------------------------------------
# Snark census: PK-brackets over every perfect matching of a graph.
# ---------------------------------------------------------------------------


def census(graph, n_probe: Iterable[int] = (), budget: int | None = None) -> list[dict]:
    """For every perfect matching of ``graph``: the PK-bracket through a
    canonical immersion, a zero/nonzero verdict, and optional evaluations."""
    from .ribbon import immerse, perfect_matchings, with_matching

    probes = list(n_probe)
    rows = []
    for matching in perfect_matchings(graph):
        diagram = immerse(with_matching(graph, matching))
        poly = pk_bracket(diagram, budget=budget)
        rows.append(
            {
                "matching": [sorted(graph.edges[e]) for e in matching],
                "pk": poly,
                "is_zero": poly.is_zero(),
                "evals": {n: poly.evaluate(n) for n in probes},
            }
        )
    return rows
