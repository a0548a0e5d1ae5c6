"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 input validation error,
3 budget exceeded, 4 internal inconsistency (a failed cross-check is a
bug in the library, never a property of valid input).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import budget as budget_mod
from . import homology as homology_mod
from . import invariants, pd, ribbon, states
from .poly import IntPoly, PolyParseError, parse_poly

USAGE_EXIT = 1
VALIDATION_EXIT = 2
BUDGET_EXIT = 3
INTERNAL_EXIT = 4

SCHEMA = "1"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


class InternalInconsistency(RuntimeError):
    pass


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _load_diagram(path: str) -> pd.PmDiagram:
    return pd.loads(_read_input(path))


def _load_graph(path: str) -> ribbon.RibbonGraph:
    return ribbon.loads_graph(_read_input(path))


def _emit_json(payload: dict) -> None:
    payload = {"schema": SCHEMA, **payload}
    print(json.dumps(payload, indent=2, sort_keys=True))


def _poly_json(poly: IntPoly) -> dict:
    data = poly.to_json()
    data["text"] = poly.render()
    return data


# --------------------------------------------------------------------------
# Subcommand handlers.
# --------------------------------------------------------------------------


def _cmd_parse(args) -> int:
    diagram = _load_diagram(args.input)
    if args.json:
        _emit_json(
            {
                "matchings": [list(t) for t in diagram.matchings],
                "virtuals": [list(t) for t in diagram.virtuals],
                "free_loops": diagram.free_loops,
                "num_arcs": diagram.num_arcs,
            }
        )
    else:
        sys.stdout.write(pd.dumps(diagram))
    return 0


def _cmd_validate(args) -> int:
    text = _read_input(args.input)
    try:
        pd.loads(text)
    except pd.PdValidationError as err:
        for violation in err.violations:
            print(f"invalid: {violation}", file=sys.stderr)
        return VALIDATION_EXIT
    print("ok")
    return 0


_INVARIANTS = {
    "pk": invariants.pk_bracket,
    "penrose": invariants.penrose_polynomial,
    "color": invariants.color_bracket,
    "total": invariants.total_polynomial,
}


def _cmd_eval(args) -> int:
    diagram = _load_diagram(args.input)
    compute = _INVARIANTS[args.invariant]
    poly = compute(diagram, workers=args.workers, budget=args.budget)

    if args.self_check:
        pk = invariants.pk_bracket(diagram, workers=args.workers, budget=args.budget)
        color = invariants.color_bracket(
            diagram, workers=args.workers, budget=args.budget
        )
        if pk != color:
            raise InternalInconsistency(
                "self-check failed: the two bracket state sums disagree "
                f"({pk.render()} vs {color.render()})"
            )
        for n_val in (2, 3):
            value, _ = invariants.tensor_contraction(diagram, n_val, args.budget)
            if value != pk.evaluate(n_val):
                raise InternalInconsistency(
                    f"self-check failed: tensor contraction at n={n_val} gives "
                    f"{value}, bracket gives {pk.evaluate(n_val)}"
                )

    if args.factor_check is not None:
        expected = parse_poly(args.factor_check)
        if expected != poly:
            print(
                f"factor-check mismatch: computed {poly.render()}, "
                f"expected {expected.render()}",
                file=sys.stderr,
            )
            return VALIDATION_EXIT

    evals = {n_val: poly.evaluate(n_val, args.t) for n_val in args.n}
    if args.json:
        _emit_json(
            {
                "invariant": args.invariant,
                "polynomial": _poly_json(poly),
                "evaluations": [
                    {"n": n_val, "t": args.t, "value": str(v)}
                    for n_val, v in sorted(evals.items())
                ],
            }
        )
    else:
        print(poly.render())
        for n_val, value in sorted(evals.items()):
            print(f"n={n_val}: {value}")
    return 0


def _cmd_states(args) -> int:
    diagram = _load_diagram(args.input)
    if args.alpha is not None:
        alpha = states.parse_alpha_bits(args.alpha, diagram.num_matchings)
        dec = states.circles(diagram, alpha)
        if args.json:
            _emit_json(
                {
                    "alpha": args.alpha,
                    "circles": [list(c) for c in dec.circles],
                    "site_pairs": [list(p) for p in dec.site_pairs],
                }
            )
        else:
            print(f"state {args.alpha}: {dec.num_circles} circles")
            for circle in dec.circles:
                print("  circle " + " ".join(map(str, circle)))
        return 0
    rows = []
    for alpha in range(1 << diagram.num_matchings):
        bits = states.alpha_bits(alpha, diagram.num_matchings)
        dec = states.circles(diagram, alpha)
        rows.append({"alpha": bits, "circles": dec.num_circles})
    if args.json:
        _emit_json({"states": rows})
    else:
        for row in rows:
            print(f"{row['alpha']} {row['circles']}")
    return 0


def _cmd_oracle(args) -> int:
    graph = _load_graph(args.input)
    count = invariants.count_pm_colorings(graph, args.n, args.budget)
    if args.json:
        _emit_json({"n": args.n, "colorings": str(count)})
    else:
        print(count)
    return 0


def _cmd_tensor(args) -> int:
    diagram = _load_diagram(args.input)
    value, all_plus_one = invariants.tensor_contraction(diagram, args.n, args.budget)
    if args.json:
        _emit_json({"n": args.n, "value": str(value), "all_terms_plus_one": all_plus_one})
    else:
        print(value)
        print(f"all_terms_plus_one: {'yes' if all_plus_one else 'no'}")
    return 0


def _cmd_census(args) -> int:
    graph = _load_graph(args.input)
    rows = invariants.census(graph, n_probe=args.n, budget=args.budget)
    if args.json:
        _emit_json(
            {
                "rows": [
                    {
                        "matching": row["matching"],
                        "pk": _poly_json(row["pk"]),
                        "is_zero": row["is_zero"],
                        "evals": [
                            {"n": n_val, "value": str(v)}
                            for n_val, v in sorted(row["evals"].items())
                        ],
                    }
                    for row in rows
                ],
                "num_matchings": len(rows),
                "all_zero": all(row["is_zero"] for row in rows),
            }
        )
    else:
        for row in rows:
            pairs = " ".join(f"{u}-{v}" for u, v in row["matching"])
            print(f"matching [{pairs}]: {row['pk'].render()}")
        zero = sum(1 for row in rows if row["is_zero"])
        print(f"{len(rows)} matchings, {zero} with zero bracket")
    return 0


def _cmd_blowup(args) -> int:
    graph = _load_graph(args.input)
    sys.stdout.write(ribbon.dumps_graph(ribbon.blowup(graph)))
    return 0


def _cmd_immerse(args) -> int:
    graph = _load_graph(args.input)
    sys.stdout.write(pd.dumps(ribbon.immerse(graph)))
    return 0


def _cmd_jm(args) -> int:
    sys.stdout.write(pd.dumps(ribbon.isaacs_jm(args.m)))
    return 0


def _cmd_homology(args) -> int:
    diagram = _load_diagram(args.input)
    report: dict = {"n": args.n}
    if args.check_basis:
        basis = homology_mod.color_basis_check(args.n)
        report["color_basis"] = basis
        if not basis["ok"]:
            raise InternalInconsistency(
                f"color-basis identities deviate by {basis['max_deviation']:.3e}"
            )
    need_complex = args.betti or not (args.check_basis or args.harmonic)
    if need_complex:
        complex_ = homology_mod.build_complex(diagram, args.n, args.budget)
        report["dims"] = [complex_.dim(i) for i in range(complex_.num_degrees)]
        residual = homology_mod.differential_norm_check(complex_)
        report["d_squared_residual"] = residual
        if residual > 1e-8:
            raise InternalInconsistency(
                f"composed differential is not zero (residual {residual:.3e})"
            )
        if args.betti:
            report["betti"] = homology_mod.betti(complex_)
    if args.harmonic:
        if args.alpha is None:
            raise pd.PdValidationError(["--harmonic needs --alpha <bits>"])
        alpha = states.parse_alpha_bits(args.alpha, diagram.num_matchings)
        report["harmonic"] = {
            "alpha": args.alpha,
            "dim": homology_mod.harmonic_dim(diagram, alpha, args.n),
        }
    _emit_json(report)
    return 0


# --------------------------------------------------------------------------
# Argument parsing.
# --------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="facecolor",
        description="Coloring invariants of matched trivalent ribbon graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_, diagram_input=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(handler=handler)
        p.add_argument("--input", default="-", help="input file, or - for stdin")
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument("--budget", type=int, default=None, help="step budget override")
        return p

    add("parse", _cmd_parse, "parse a diagram and print its canonical form")
    add("validate", _cmd_validate, "check a diagram file, exit 2 if invalid")

    p = add("eval", _cmd_eval, "compute an invariant polynomial")
    p.add_argument("--invariant", choices=sorted(_INVARIANTS), default="pk")
    p.add_argument("--n", type=int, action="append", default=[],
                   help="also evaluate at this n (repeatable)")
    p.add_argument("--t", type=int, default=1, help="t value for evaluations")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--self-check", action="store_true",
                   help="cross-check brackets and tensor contraction first")
    p.add_argument("--factor-check", metavar="EXPR",
                   help="compare against a (possibly factored) expression")

    p = add("states", _cmd_states, "list state circle decompositions")
    p.add_argument("--alpha", help="bit string selecting one state")

    p = add("oracle", _cmd_oracle, "brute-force coloring count on a graph file")
    p.add_argument("--n", type=int, required=True)

    p = add("tensor", _cmd_tensor, "diagrammatic tensor contraction at one n")
    p.add_argument("--n", type=int, required=True)

    p = add("census", _cmd_census, "bracket for every perfect matching of a graph")
    p.add_argument("--n", type=int, action="append", default=[],
                   help="evaluation point per row (repeatable)")

    add("blowup", _cmd_blowup, "blow up a ribbon graph file to a matched trivalent one")
    add("immerse", _cmd_immerse, "immerse a matched trivalent graph file as a diagram")

    p = sub.add_parser("jm", help="emit the Isaacs snark J_m diagram")
    p.set_defaults(handler=_cmd_jm)
    p.add_argument("--m", type=int, required=True)

    p = add("homology", _cmd_homology, "numerical chain-complex reports")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--betti", action="store_true")
    p.add_argument("--harmonic", action="store_true")
    p.add_argument("--alpha", help="bit string selecting one state")
    p.add_argument("--check-basis", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return args.handler(args)
    except budget_mod.BudgetError as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return BUDGET_EXIT
    except (InternalInconsistency, homology_mod.RankAmbiguityError) as err:
        print(f"internal inconsistency: {err}", file=sys.stderr)
        return INTERNAL_EXIT
    except (
        pd.PdSyntaxError,
        pd.PdValidationError,
        ribbon.RibbonGraphError,
        PolyParseError,
        ValueError,
        OSError,
    ) as err:
        print(f"error: {err}", file=sys.stderr)
        return VALIDATION_EXIT


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
