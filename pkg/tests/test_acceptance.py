"""End-to-end acceptance suite.

Each test prints one PASS line per criterion after asserting it; run
with ``pytest -v tests/test_acceptance.py -s`` to see the lines.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time

from facecolor import corpus_path, pd
from facecolor.homology import (
    betti,
    build_complex,
    color_basis_check,
    differential_norm_check,
    harmonic_dim,
)
from facecolor.invariants import (
    census,
    chromatic_polynomial,
    color_bracket,
    count_pm_colorings,
    penrose_polynomial,
    pk_bracket,
    tensor_contraction,
    total_polynomial,
)
from facecolor.poly import parse_poly
from facecolor.ribbon import diagram_to_graph
from facecolor.sampling import random_diagram
from facecolor.states import touch_graph

from conftest import load_diagram, load_graph


def _timed(fn):
    start = time.time()
    result = fn()
    return result, time.time() - start


def test_criterion_1_reference_value_regression():
    cases = [
        ("theta.pd", "pk", "n^2 - n", 1.0),
        ("theta.pd", "penrose", "n^2 - n", 1.0),
        ("theta.pd", "color", "n^2 - n", 1.0),
        ("doubletheta_a.pd", "pk", "n(n-1)^2", 1.0),
        ("doubletheta_b.pd", "pk", "2n(n-1)", 1.0),
        ("k33.pd", "pk", "n(n-1)^2", 1.0),
        ("k33.pd", "penrose", "n(n-1)(n-3)", 1.0),
        ("pet.pd", "pk", "0", 1.0),
        ("j3.pd", "pk", "n(n^3-6n^2+11n-6)", 1.0),
        ("petbu.pd", "pk", "(n-4)(n-3)(n-2)(n-1)n(40+2n)", 60.0),
    ]
    compute = {
        "pk": pk_bracket,
        "penrose": penrose_polynomial,
        "color": color_bracket,
    }
    for name, kind, expected_text, limit in cases:
        d = load_diagram(name)
        poly, elapsed = _timed(lambda: compute[kind](d))
        assert poly == parse_poly(expected_text), (name, kind)
        assert elapsed < limit, (name, elapsed)
    theta = load_diagram("theta.pd")
    total = total_polynomial(theta)
    assert total == parse_poly("n^2 - n") and total.t_coefficient(1).is_zero()
    k33 = load_diagram("k33.pd")
    assert pk_bracket(k33).evaluate(3) == 12
    assert penrose_polynomial(k33).evaluate(3) == 0
    j3 = load_diagram("j3.pd")
    assert pk_bracket(j3).evaluate(3) == 0 and pk_bracket(j3).evaluate(4) == 24
    print("PASS criterion 1: reference-value regression (incl. 15-site blowup < 60s)")


def test_criterion_2_theorem_identities():
    corpus = [
        load_diagram(n)
        for n in ("theta.pd", "doubletheta_a.pd", "doubletheta_b.pd", "k33.pd",
                  "pet.pd", "j3.pd")
    ]
    rng = random.Random(1234)
    diagrams = list(corpus)
    while len(diagrams) < len(corpus) + 200:
        diagrams.append(random_diagram(rng, rng.randint(1, 5), max_virtuals=4))
    for d in diagrams:
        pk = pk_bracket(d)
        color = color_bracket(d)
        assert pk == color
        total = total_polynomial(d)
        at_one = sum(
            (total.t_coefficient(i) for i in range(total.max_t_degree() + 1)),
            start=parse_poly("0"),
        )
        assert at_one == color
        if not d.virtuals:
            assert penrose_polynomial(d) == pk
        ns = (2, 3, 4) if d.num_arcs <= 8 else (2, 3)
        for n_val in ns:
            value, all_plus_one = tensor_contraction(d, n_val)
            assert value == pk.evaluate(n_val)
            assert all_plus_one
        if d.matchings and d.num_arcs <= 12:
            graph = diagram_to_graph(d)
            for n_val in (2, 3):
                assert count_pm_colorings(graph, n_val) == color.evaluate(n_val)
    curl_base = corpus[0]
    arc = min(curl_base.arc_labels)
    curled = pd.PmDiagram(
        curl_base.matchings, curl_base.virtuals + ((arc, arc),), curl_base.free_loops
    )
    assert pk_bracket(curled) == pk_bracket(curl_base)
    from facecolor.invariants import state_terms

    two_circle = pd.parse("G[M[1,2,2,1],V[1,2]]")
    assert state_terms(two_circle, "pk")[0] == parse_poly("2n - n^2")
    print(f"PASS criterion 2: theorem identities on corpus + {len(diagrams) - len(corpus)} random diagrams")


def test_criterion_3_homology_certification():
    start = time.time()
    desk = ["theta.pd", "doubletheta_a.pd", "doubletheta_b.pd", "k33.pd"]
    for name in desk:
        d = load_diagram(name)
        total = total_polynomial(d)
        for n in (2, 3, 4):
            c = build_complex(d, n)
            assert differential_norm_check(c) <= 1e-8
            got = betti(c)
            want = [total.t_coefficient(i).evaluate(n) for i in range(c.num_degrees)]
            assert got == want
            euler = sum((-1) ** i * c.dim(i) for i in range(c.num_degrees))
            assert euler == penrose_polynomial(d).evaluate(n)
            for alpha in range(1 << d.num_matchings):
                want_h = chromatic_polynomial(touch_graph(d, alpha)).evaluate(n)
                assert harmonic_dim(d, alpha, n) == want_h
    for n in (2, 3, 4):
        report = color_basis_check(n)
        assert report["max_deviation"] <= 1e-9
    elapsed = time.time() - start
    assert elapsed < 30, elapsed
    print(f"PASS criterion 3: homology certification in {elapsed:.1f}s (< 30s)")


def test_criterion_4_census_evidence():
    start = time.time()
    rows = census(load_graph("petersen.graph"))
    assert len(rows) == 6 and all(r["is_zero"] for r in rows)
    rows = census(load_graph("j3.graph"))
    target = parse_poly("n(n^3-6n^2+11n-6)")
    assert any(r["is_zero"] for r in rows)
    assert any(r["pk"] == target for r in rows)
    elapsed = time.time() - start
    assert elapsed < 10, elapsed
    print(f"PASS criterion 4: census evidence in {elapsed:.1f}s (< 10s)")


def test_criterion_5_worker_determinism():
    names = ["theta.pd", "doubletheta_a.pd", "doubletheta_b.pd", "k33.pd",
             "pet.pd", "j3.pd", "petbu.pd"]
    for name in names:
        outputs = []
        for workers in ("1", "8"):
            proc = subprocess.run(
                [sys.executable, "-m", "facecolor.cli", "eval",
                 "--input", str(corpus_path(name)), "--json",
                 "--workers", workers, "--n", "3", "--n", "4"],
                capture_output=True,
                check=True,
            )
            outputs.append(proc.stdout)
        assert outputs[0] == outputs[1], name
    print("PASS criterion 5: byte-identical output with 1 and 8 workers")
