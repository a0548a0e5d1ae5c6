"""Filtered n-color homology of a perfect-matching diagram, numerically.

To each state alpha of the hypercube we attach V^(k_alpha) with
V = C[x]/(x^n - 1); each hypercube edge carries a local map determined
by the change in circle count: a merge map m(x^i (x) x^j) = x^{i+j}, a
split map D(x^k) = sum_{i+j = k+2m (mod n)} x^i (x) x^j, or a neutral
map e(x^k) = sqrt(n) x^{k+m}, with the shift m = n/2 for even n and
(n-1)/2 otherwise.  Edges act by the local map on the circles through
the flipped site and by the identity elsewhere, with the standard cube
sign (-1)^{sum_{j<i} alpha_j}.

Everything here is double-precision complex linear algebra with
singular-value rank thresholding; the exact integer answers are
certified independently by the combinatorial state sums, so floating
point plus an ambiguity check on the singular values is safe.  Free
loops contribute constant identity tensor factors.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .budget import BudgetError
from .pd import PmDiagram
from .states import check_alpha, circles

DIM_BUDGET = 200_000
RANK_TOLERANCE = 1e-8


class RankAmbiguityError(RuntimeError):
    """Singular values fell inside the thresholding band; rank is unreliable."""

    def __init__(self, values: list[float], threshold: float):
        super().__init__(
            f"singular values {values} lie within a factor 100 of the rank "
            f"threshold {threshold:.3e}; refusing to resolve the rank"
        )
        self.values = values
        self.threshold = threshold


def shift(n: int) -> int:
    return n // 2 if n % 2 == 0 else (n - 1) // 2


@dataclass
class ChainComplex:
    """The hypercube chain complex of one diagram at one color count.

    ``blocks[(alpha, i)]`` is the unsigned local map for the edge that
    sets matching bit i of alpha; ``offsets[alpha]`` locates the state's
    tensor factor inside its homological degree.  Basis order within a
    state: circles sorted by canonical id, exponents as big-endian base-n
    digits, free-loop factors last.
    """

    diagram: PmDiagram
    n: int
    m: int
    dims: dict[int, int]
    circle_ids: dict[int, tuple[int, ...]]
    blocks: dict[tuple[int, int], np.ndarray]
    offsets: dict[int, int]
    degree_dims: list[int]

    @property
    def num_degrees(self) -> int:
        return self.diagram.num_matchings + 1

    def dim(self, i: int) -> int:
        return self.degree_dims[i] if 0 <= i < self.num_degrees else 0

    def states_of_degree(self, i: int) -> list[int]:
        ell = self.diagram.num_matchings
        return [a for a in range(1 << ell) if bin(a).count("1") == i]

    def differential(self, i: int) -> np.ndarray:
        """Dense matrix of the degree-i differential, cube signs included."""
        d = np.zeros((self.dim(i + 1), self.dim(i)), dtype=np.complex128)
        for alpha in self.states_of_degree(i):
            for bit in range(self.diagram.num_matchings):
                if alpha >> bit & 1:
                    continue
                alpha2 = alpha | (1 << bit)
                sign = -1 if bin(alpha & ((1 << bit) - 1)).count("1") % 2 else 1
                block = self.blocks[(alpha, bit)]
                r0, c0 = self.offsets[alpha2], self.offsets[alpha]
                d[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] += sign * block
        return d


def _digits(indices: np.ndarray, k: int, n: int) -> list[np.ndarray]:
    """Big-endian base-n digits of each index, one array per position."""
    return [(indices // n ** (k - 1 - p)) % n for p in range(k)]


def _encode(digit_list: list[np.ndarray], n: int) -> np.ndarray:
    k = len(digit_list)
    out = np.zeros_like(digit_list[0]) if k else np.zeros(1, dtype=np.int64)
    for p, dig in enumerate(digit_list):
        out = out + dig * n ** (k - 1 - p)
    return out


def _edge_block(
    diagram: PmDiagram, alpha: int, bit: int, n: int, m: int
) -> np.ndarray:
    """Unsigned local map for the cube edge alpha -> alpha | 1<<bit."""
    src = circles(diagram, alpha)
    tgt = circles(diagram, alpha | (1 << bit))
    src_sets = [frozenset(c) for c in src.circles]
    tgt_sets = [frozenset(c) for c in tgt.circles]
    k_src, k_tgt = len(src_sets), len(tgt_sets)
    loops = diagram.free_loops

    idx = np.arange(n**k_src, dtype=np.int64)
    dig = _digits(idx, k_src, n)
    src_pos = {s: p for p, s in enumerate(src_sets)}

    block = np.zeros((n**k_tgt, n**k_src), dtype=np.complex128)
    if k_tgt == k_src - 1:  # merge: the new target circle is a union
        new = [p for p, s in enumerate(tgt_sets) if s not in src_pos]
        assert len(new) == 1
        merged = [p for p, s in enumerate(src_sets) if s not in set(tgt_sets)]
        assert len(merged) == 2 and src_sets[merged[0]] | src_sets[merged[1]] == tgt_sets[new[0]]
        tgt_dig = []
        for p, s in enumerate(tgt_sets):
            if p == new[0]:
                tgt_dig.append((dig[merged[0]] + dig[merged[1]]) % n)
            else:
                tgt_dig.append(dig[src_pos[s]])
        block[_encode(tgt_dig, n), idx] = 1.0
    elif k_tgt == k_src + 1:  # split: one source circle is a union
        old = [p for p, s in enumerate(src_sets) if s not in set(tgt_sets)]
        assert len(old) == 1
        parts = [p for p, s in enumerate(tgt_sets) if s not in src_pos]
        assert len(parts) == 2
        a, b = parts
        assert tgt_sets[a] | tgt_sets[b] == src_sets[old[0]]
        for first in range(n):
            tgt_dig = []
            for p, s in enumerate(tgt_sets):
                if p == a:
                    tgt_dig.append(np.full_like(idx, first))
                elif p == b:
                    tgt_dig.append((dig[old[0]] + 2 * m - first) % n)
                else:
                    tgt_dig.append(dig[src_pos[s]])
            block[_encode(tgt_dig, n), idx] += 1.0
    elif k_tgt == k_src:  # neutral: one circle rewires through the site
        assert src_sets == tgt_sets, "neutral edge changed the circle partition"
        u, v = src.site_pairs[bit]
        assert u == v, "neutral edge at a two-circle site"
        p = src_pos[frozenset(src.circles[[c[0] for c in src.circles].index(u)])]
        tgt_dig = [((d + m) % n if q == p else d) for q, d in enumerate(dig)]
        block[_encode(tgt_dig, n), idx] = math.sqrt(n)
    else:
        raise AssertionError("adjacent states differ by more than one circle")

    if loops:
        block = np.kron(block, np.eye(n**loops, dtype=np.complex128))
    return block


def build_complex(
    diagram: PmDiagram, n: int, budget: int | None = None
) -> ChainComplex:
    """Assemble the full hypercube complex; refuses oversized inputs."""
    if n < 2:
        raise ValueError("need at least two colors")
    ell = diagram.num_matchings
    m = shift(n)
    dims: dict[int, int] = {}
    circle_ids: dict[int, tuple[int, ...]] = {}
    total = 0
    for alpha in range(1 << ell):
        dec = circles(diagram, alpha)
        circle_ids[alpha] = tuple(c[0] for c in dec.circles)
        dims[alpha] = n ** (dec.num_circles + diagram.free_loops)
        total += dims[alpha]
    limit = DIM_BUDGET if budget is None else budget
    if total > limit:
        raise BudgetError("the chain complex dimension", total, limit)

    offsets: dict[int, int] = {}
    degree_dims = [0] * (ell + 1)
    by_degree: dict[int, list[int]] = {}
    for alpha in range(1 << ell):
        by_degree.setdefault(bin(alpha).count("1"), []).append(alpha)
    for i, alphas in sorted(by_degree.items()):
        off = 0
        for alpha in alphas:
            offsets[alpha] = off
            off += dims[alpha]
        degree_dims[i] = off

    blocks = {}
    for alpha in range(1 << ell):
        for bit in range(ell):
            if not alpha >> bit & 1:
                blocks[(alpha, bit)] = _edge_block(diagram, alpha, bit, n, m)
    return ChainComplex(diagram, n, m, dims, circle_ids, blocks, offsets, degree_dims)


def differential_norm_check(c: ChainComplex) -> float:
    """max_i ||d_{i+1} d_i|| / ||d||^2 — should be numerically zero."""
    mats = [c.differential(i) for i in range(c.num_degrees - 1)]
    norm = max((np.linalg.norm(m_) for m_ in mats), default=0.0)
    if norm == 0.0:
        return 0.0
    worst = 0.0
    for i in range(len(mats) - 1):
        worst = max(worst, float(np.linalg.norm(mats[i + 1] @ mats[i])))
    return worst / float(norm) ** 2


def _rank(matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    svals = np.linalg.svd(matrix, compute_uv=False)
    smax = svals[0] if len(svals) else 0.0
    if smax == 0.0:
        return 0
    threshold = RANK_TOLERANCE * smax
    band = [float(s) for s in svals if threshold / 100 < s < threshold * 100]
    if band:
        raise RankAmbiguityError(band, threshold)
    return int(np.sum(svals > threshold))


def betti(c: ChainComplex) -> list[int]:
    """Betti numbers b_i = dim C^i - rank d_i - rank d_{i-1}."""
    ranks = [_rank(c.differential(i)) for i in range(c.num_degrees - 1)]
    out = []
    for i in range(c.num_degrees):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i > 0 else 0
        out.append(c.dim(i) - r_out - r_in)
    return out


def harmonic_dim(diagram: PmDiagram, alpha: int, n: int) -> int:
    """dim(ker of the outgoing differential  ∩  ker of the incoming adjoint).

    Realized as the nullity of the stacked matrix whose rows are all
    outgoing edge blocks at the state followed by the conjugate
    transposes of all incoming edge blocks.
    """
    check_alpha(diagram, alpha)
    m = shift(n)
    rows = []
    for bit in range(diagram.num_matchings):
        if alpha >> bit & 1:
            source = alpha & ~(1 << bit)
            rows.append(_edge_block(diagram, source, bit, n, m).conj().T)
        else:
            rows.append(_edge_block(diagram, alpha, bit, n, m))
    dim = n ** (len(circles(diagram, alpha).circles) + diagram.free_loops)
    if not rows:
        return dim
    stacked = np.vstack(rows)
    return dim - _rank(stacked)


# ---------------------------------------------------------------------------
# Color basis checks.
# ---------------------------------------------------------------------------


def _monomial_maps(n: int):
    """Matrices of the three local maps in the monomial basis."""
    m = shift(n)
    merge = np.zeros((n, n * n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            merge[(i + j) % n, i * n + j] = 1.0
    split = np.zeros((n * n, n), dtype=np.complex128)
    for k in range(n):
        for i in range(n):
            split[i * n + (k + 2 * m - i) % n, k] = 1.0
    eta = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        eta[(k + m) % n, k] = math.sqrt(n)
    return merge, split, eta


def color_vectors(n: int) -> np.ndarray:
    """Columns are c_i = (1/n) sum_k lambda^{ik} x^k."""
    lam = cmath.exp(2j * cmath.pi / n)
    return np.array(
        [[lam ** (i * k) / n for i in range(n)] for k in range(n)],
        dtype=np.complex128,
    )


def color_basis_check(n: int) -> dict:
    """Numerically verify the color-basis identities and adjoint formulas.

    The local identities checked (lambda = e^{2 pi i / n}, m the shift):
      1. m(c_i (x) c_j) = delta_ij c_j
      2. D(c_i) = n lambda^{-2mi} c_i (x) c_i
      3. e(c_i) = sqrt(n) lambda^{-mi} c_i
      4. (lambda^i x) . c_i = c_i
    Adjoints are conjugate transposes in the monomial basis; they match
    the formulas m*(c_i) = c_i (x) c_i, D*(c_i (x) c_j) = n lambda^{2mi}
    delta_ij c_i, e*(c_i) = sqrt(n) lambda^{mi} c_i up to one positive
    scalar per map, which is measured and reported.
    """
    if not 2 <= n <= 12:
        raise ValueError("color-basis check supports 2 <= n <= 12")
    m = shift(n)
    lam = cmath.exp(2j * cmath.pi / n)
    merge, split, eta = _monomial_maps(n)
    c = color_vectors(n)

    x_mult = np.zeros((n, n), dtype=np.complex128)  # multiplication by x
    for k in range(n):
        x_mult[(k + 1) % n, k] = 1.0

    deviations: dict[str, float] = {}

    dev = 0.0
    for i in range(n):
        for j in range(n):
            got = merge @ np.kron(c[:, i], c[:, j])
            want = c[:, j] if i == j else np.zeros(n)
            dev = max(dev, float(np.abs(got - want).max()))
    deviations["product c_i c_j = delta_ij c_j"] = dev

    dev = 0.0
    for i in range(n):
        got = split @ c[:, i]
        want = n * lam ** (-2 * m * i) * np.kron(c[:, i], c[:, i])
        dev = max(dev, float(np.abs(got - want).max()))
    deviations["split of c_i"] = dev

    dev = 0.0
    for i in range(n):
        got = eta @ c[:, i]
        want = math.sqrt(n) * lam ** (-m * i) * c[:, i]
        dev = max(dev, float(np.abs(got - want).max()))
    deviations["neutral map on c_i"] = dev

    dev = 0.0
    for i in range(n):
        got = (lam**i) * (x_mult @ c[:, i])
        dev = max(dev, float(np.abs(got - c[:, i]).max()))
    deviations["(lambda^i x) c_i = c_i"] = dev

    def measured_scalar(got: np.ndarray, want: np.ndarray) -> complex:
        p = int(np.argmax(np.abs(want)))
        return got[p] / want[p]

    scalars: dict[str, complex] = {}

    dev = 0.0
    samples = []
    for i in range(n):
        got = merge.conj().T @ c[:, i]
        want = np.kron(c[:, i], c[:, i])
        samples.append(measured_scalar(got, want))
    scalars["merge adjoint"] = samples[0]
    for i in range(n):
        got = merge.conj().T @ c[:, i]
        want = samples[0] * np.kron(c[:, i], c[:, i])
        dev = max(dev, float(np.abs(got - want).max()))
    deviations["merge adjoint (up to scalar)"] = dev

    dev = 0.0
    samples = []
    for i in range(n):
        got = split.conj().T @ np.kron(c[:, i], c[:, i])
        want = n * lam ** (2 * m * i) * c[:, i]
        samples.append(measured_scalar(got, want))
    scalars["split adjoint"] = samples[0]
    for i in range(n):
        for j in range(n):
            got = split.conj().T @ np.kron(c[:, i], c[:, j])
            want = (
                samples[0] * n * lam ** (2 * m * i) * c[:, i]
                if i == j
                else np.zeros(n)
            )
            dev = max(dev, float(np.abs(got - want).max()))
    deviations["split adjoint (up to scalar)"] = dev

    dev = 0.0
    samples = []
    for i in range(n):
        got = eta.conj().T @ c[:, i]
        want = math.sqrt(n) * lam ** (m * i) * c[:, i]
        samples.append(measured_scalar(got, want))
    scalars["neutral adjoint"] = samples[0]
    for i in range(n):
        got = eta.conj().T @ c[:, i]
        want = samples[0] * math.sqrt(n) * lam ** (m * i) * c[:, i]
        dev = max(dev, float(np.abs(got - want).max()))
    deviations["neutral adjoint (up to scalar)"] = dev

    worst = max(deviations.values())
    return {
        "n": n,
        "identities": deviations,
        "adjoint_scalars": {
            k: [float(v.real), float(v.imag)] for k, v in scalars.items()
        },
        "max_deviation": worst,
        "ok": worst <= 1e-9,
    }
