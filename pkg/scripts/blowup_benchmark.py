#!/usr/bin/env python3
"""Benchmark the bracket state sum on the 15-site blowup diagram.

The 2^15 matching states each carry a closed-form factor for the eight
virtual crossings, so the full polynomial should come out in well under
a minute on commodity hardware.  Prints the polynomial, the factored
form it matches, and the wall time for 1..N workers.
"""

from __future__ import annotations

import argparse
import time

from facecolor import corpus_path, pd, pk_bracket
from facecolor.poly import parse_poly

EXPECTED = "(n-4)(n-3)(n-2)(n-1)n(40+2n)"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workers", type=int, nargs="*", default=[1, 2, 4, 8])
    args = parser.parse_args()

    diagram = pd.loads(corpus_path("petbu.pd").read_text())
    print(f"{diagram.num_matchings} matching sites, "
          f"{diagram.num_virtuals} virtual crossings, "
          f"{1 << diagram.num_matchings} states")
    reference = None
    for workers in args.workers:
        start = time.time()
        poly = pk_bracket(diagram, workers=workers)
        elapsed = time.time() - start
        print(f"workers={workers}: {elapsed:6.2f}s  {poly.render()}")
        if reference is None:
            reference = poly
        assert poly == reference, "worker counts disagree"
    assert reference == parse_poly(EXPECTED)
    print(f"matches {EXPECTED}")


if __name__ == "__main__":
    main()
