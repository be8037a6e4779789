"""
AKLT trees - Command-line entry point

Every subcommand prints one result (JSON by default) on stdout; logs go to
stderr and the daily log file. Exit status is 0 on success, 2 when an input
is rejected and 1 when a computation fails.
"""
import argparse
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.aklt_trees.bilayer import (
    BilayerVector,
    Cycle,
    Subspace,
    compare_printed,
    extract_system,
    iterate_dynamics,
    load_printed_system,
    solve_fixed_points,
    symmetric_fixed_point,
)
from src.aklt_trees.cells import (
    Convention,
    breaking_criterion,
    cell_iterate,
    convention_report,
    decorated_star_cell,
    decorated_threshold,
    load_cell,
    transfer_polynomials,
    tree_cell_condition,
)
from src.aklt_trees.config import DEFAULT_SEED, NEWTON_STARTS
from src.aklt_trees.core.report import dumps, to_jsonable
from src.aklt_trees.oracle import (
    BoundaryAssignment,
    TreeKind,
    alternating_assignment,
    check_sweep,
    depth_series,
    order_parameter_scan,
    tree_families,
)
from src.aklt_trees.oracle.statevector import MAX_STATEVECTOR_SPINS
from src.aklt_trees.pauli.operators import BlochVector, HSOperator, PauliWord
from src.aklt_trees.site.closed_form import closed_form_coefficient
from src.aklt_trees.site.transfer import Backend, apply_site_transfer, boundary_trace
from src.aklt_trees.transfer import (
    DegreeSequence,
    classify_growth,
    compose_sequence,
    counterexample_sequence,
    eval_F,
    fixed_point,
    load_degree_sequence,
    two_sided_bounds,
)
from src.aklt_trees.transfer.leafpath import leafpath_sequence_bound
from src.aklt_trees.utils.errors import ContractViolation, NumericalError, ValidationError
from src.aklt_trees.utils.logging import log_error_with_context, setup_logging

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_VALIDATION = 2


def parse_int_list(text: str) -> List[int]:
    """"1..6" or "2,4,8"."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v.strip()]


def parse_float_list(text: str) -> List[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def parse_word(text: str) -> PauliWord:
    """"I13" or "013": I/0 for the identity, 1..3 for the sigmas."""
    letters = []
    for ch in text.strip():
        if ch in "Ii0":
            letters.append(0)
        elif ch in "123":
            letters.append(int(ch))
        else:
            raise ContractViolation(f"bad Pauli letter {ch!r} in {text!r}", "Use I, 1, 2 or 3.")
    return PauliWord(tuple(letters))


# Subcommands

def cmd_site(args: argparse.Namespace) -> Any:
    if args.counts is not None:
        return closed_form_coefficient(args.d, *args.counts)
    if args.word is not None:
        word = parse_word(args.word)
        image = apply_site_transfer(args.d, HSOperator(word.arity, {word: 1}), Backend(args.backend))
        return {"d": args.d, "word": str(word), "backend": args.backend, "image": image.to_dict()}
    x = BlochVector(tuple(args.bloch))
    identity, sigma = boundary_trace(args.d, x)
    return {"d": args.d, "x": list(x.x), "identity": identity, "sigma": sigma}


def cmd_fn(args: argparse.Namespace) -> Any:
    if (args.fixed_point or args.eval is not None) and args.d is None:
        raise ContractViolation("--fixed-point and --eval need --d")
    if args.fixed_point:
        return fixed_point(args.d)
    if args.eval is not None:
        lower, upper = two_sided_bounds(args.d, args.eval)
        return {"d": args.d, "t": args.eval, "F": eval_F(args.d, args.eval), "lower": lower, "upper": upper}

    if args.counterexample is not None:
        seq = counterexample_sequence(args.counterexample, args.d or 5)
    elif args.sequence:
        seq = load_degree_sequence(args.sequence)
    elif args.d is not None:
        seq = DegreeSequence.constant(args.d)
    else:
        raise ContractViolation("fn needs --d, --sequence or --counterexample")
    if args.classify:
        return classify_growth(seq)
    if args.leafpath:
        return leafpath_sequence_bound(seq, args.C, args.mu, args.layers)
    return compose_sequence(seq, args.t0, args.layers)


def cmd_cell(args: argparse.Namespace) -> Any:
    cell = load_cell(args.file)
    if args.criterion:
        result = breaking_criterion(cell).to_dict()
        if cell.reference is not None and cell.reference.slope is not None:
            result["slope_reference"] = cell.reference.slope
        return result
    if args.report:
        return convention_report(cell)
    if args.iterate is not None:
        return {"cell": cell.name, "t": args.iterate, "iterates": cell_iterate(cell, args.iterate, args.depth)}
    return transfer_polynomials(cell, Convention(args.convention))


def cmd_decorated(args: argparse.Namespace) -> Any:
    result: Dict[str, Any] = {
        "d": args.d,
        "g": args.g,
        "threshold": 3 ** (args.g + 1) + 1,
        "phase": decorated_threshold(args.d, args.g),
    }
    if args.exact:
        result["slope"] = transfer_polynomials(decorated_star_cell(args.d, args.g)).slope
    return result


def cmd_treecell(args: argparse.Namespace) -> Any:
    return tree_cell_condition(load_cell(args.file), check=args.check)


def cmd_bilayer(args: argparse.Namespace) -> Any:
    if args.solve:
        return solve_fixed_points(
            args.g,
            cycle=Cycle(args.cycle),
            starts=args.starts,
            seed=args.seed,
            subspace=Subspace(args.subspace),
        )
    if args.symmetric:
        return symmetric_fixed_point(args.g)
    if args.dynamics:
        return iterate_dynamics(args.g, BilayerVector.from_symmetric(*args.x), args.steps)
    system = extract_system(args.g)
    result: Dict[str, Any] = {"system": system.to_dict()}
    if args.compare:
        result["diffs"] = [d.to_dict() for d in compare_printed(system, load_printed_system(args.g))]
    return result


def _family_params(args: argparse.Namespace) -> Dict[str, Any]:
    if args.family == "cayley":
        return {"d": args.d}
    if args.family == "decorated":
        return {"d": args.d, "g": args.g}
    if args.family == "layered":
        if not args.sequence:
            raise ContractViolation("--family layered needs --sequence", "Pass a sequence file or bundled name.")
        return {"seq": load_degree_sequence(args.sequence)}
    if args.family == "from_cell":
        if not args.cell:
            raise ContractViolation("--family from_cell needs --cell", "Pass a tree cell file or bundled name.")
        return {"cell": load_cell(args.cell)}
    return {"g": args.g}


def _boundary(args: argparse.Namespace, tree) -> BoundaryAssignment:
    if tree.kind is TreeKind.BILAYER:
        return BoundaryAssignment(BilayerVector.from_symmetric(*args.pair).to_dense())
    x = BlochVector.along(args.axis, args.t)
    if args.alternating:
        return alternating_assignment(tree, x)
    return BoundaryAssignment.uniform(x)


def cmd_simulate(args: argparse.Namespace) -> Any:
    params = _family_params(args)
    depths = parse_int_list(args.depths)
    if args.scan:
        return order_parameter_scan(args.family, params, parse_float_list(args.t_grid), depths, args.axis)

    build = tree_families()[args.family]

    def factory(depth: int):
        return build(**params, depth=depth)

    first = factory(depths[0])
    observable = PauliWord((args.axis, 0)) if first.kind is TreeKind.BILAYER else args.axis
    series = depth_series(factory, _boundary(args, first), depths, observable, stride=args.stride)
    result: Dict[str, Any] = {
        "family": args.family,
        "params": {k: getattr(v, "name", v) for k, v in params.items()},
        "t": args.t,
        "axis": args.axis,
        "series": series,
    }
    if args.check_dense:
        rng = np.random.default_rng(args.seed)
        gaps = {}
        for depth in depths:
            tree = factory(depth)
            if tree.kind is TreeKind.BILAYER or tree.spin_count > MAX_STATEVECTOR_SPINS:
                continue
            gaps[depth] = check_sweep(tree, BoundaryAssignment.random(tree, rng))
        result["dense_gaps"] = gaps
    return result


COMMANDS: Dict[str, Callable[[argparse.Namespace], Any]] = {
    "site": cmd_site,
    "fn": cmd_fn,
    "cell": cmd_cell,
    "decorated": cmd_decorated,
    "treecell": cmd_treecell,
    "bilayer": cmd_bilayer,
    "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=["json", "csv", "text"], default="json", help='Output format')
    common.add_argument('--output', type=Path, help='Write the result here instead of stdout')
    common.add_argument('--seed', type=int, default=DEFAULT_SEED, help='Seed for solver starts and random boundaries')
    common.add_argument('--debug', action='store_true', help='Enable debug logging')

    parser = argparse.ArgumentParser(
        prog="aklt_trees",
        description="Transfer operators of AKLT ground states on trees and tree-like graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    site = sub.add_parser("site", parents=[common], help='Single-site map coefficients')
    site.add_argument('--d', type=int, required=True, help='Site degree')
    what = site.add_mutually_exclusive_group(required=True)
    what.add_argument('--counts', type=int, nargs=3, metavar=("K1", "K2", "K3"), help='Closed-form coefficient of an axis-count class')
    what.add_argument('--word', help='Image of one Pauli word, e.g. I13')
    what.add_argument('--bloch', type=float, nargs=3, metavar=("X1", "X2", "X3"), help='Boundary trace of B(x)')
    site.add_argument('--backend', choices=[b.value for b in Backend], default=Backend.CLOSED_FORM.value)

    fn = sub.add_parser("fn", parents=[common], help='Scalar transfer function and degree sequences')
    fn.add_argument('--d', type=int, help='Degree (tail degree for --counterexample)')
    fn.add_argument('--fixed-point', action='store_true', help='Nonzero solution of F_d(t) = -t')
    fn.add_argument('--eval', type=float, metavar="T", help='F_d(T) with its two-sided bounds')
    fn.add_argument('--sequence', help='Degree sequence file or bundled name')
    fn.add_argument('--counterexample', type=int, metavar="N", help='N degree-2 layers, then degree d')
    fn.add_argument('--classify', action='store_true', help='Classify growth instead of composing')
    fn.add_argument('--leafpath', action='store_true', help='Leaf-path growth bound on the layered tree')
    fn.add_argument('--C', type=float, default=1.0, help='Constant of the leaf-path condition')
    fn.add_argument('--mu', type=float, default=4 / 3, help='Growth rate of the leaf-path condition')
    fn.add_argument('--t0', type=float, default=1.0, help='Start value of the composition')
    fn.add_argument('--layers', type=int, default=20, help='Number of composed layers')

    cell = sub.add_parser("cell", parents=[common], help='Transfer polynomials of a cell file')
    cell.add_argument('--file', required=True, help='Cell file or bundled name')
    cell.add_argument('--convention', choices=[c.value for c in Convention], default=Convention.ORACLE.value)
    cell.add_argument('--criterion', action='store_true', help="Slope F'(0) and the breaking verdict")
    cell.add_argument('--report', action='store_true', help='Both conventions with their diffs')
    cell.add_argument('--iterate', type=float, metavar="T", help='Iterate F_cell from T')
    cell.add_argument('--depth', type=int, default=10, help='Iterations for --iterate')

    decorated = sub.add_parser("decorated", parents=[common], help='Threshold of decorated Cayley trees')
    decorated.add_argument('--d', type=int, required=True)
    decorated.add_argument('--g', type=int, required=True, help='Decoration number')
    decorated.add_argument('--exact', action='store_true', help='Also compute the exact slope of the decorated star')

    treecell = sub.add_parser("treecell", parents=[common], help='Path-sum condition of a tree cell')
    treecell.add_argument('--file', required=True)
    treecell.add_argument('--check', action='store_true', help='Compare the sum with the exact slope')

    bilayer = sub.add_parser("bilayer", parents=[common], help='Bilayer polynomial systems and their roots')
    bilayer.add_argument('--g', type=int, required=True, help='Splitting number')
    bilayer.add_argument('--compare', action='store_true', help='Diff the extracted system against the printed one')
    mode = bilayer.add_mutually_exclusive_group()
    mode.add_argument('--solve', action='store_true', help='Multi-start Newton search')
    mode.add_argument('--symmetric', action='store_true', help='SU(2)-symmetric fixed point and its x1 slope')
    mode.add_argument('--dynamics', action='store_true', help='Iterate the normalized map')
    bilayer.add_argument('--cycle', choices=[c.value for c in Cycle], default=Cycle.PERIOD1.value)
    bilayer.add_argument('--subspace', choices=[s.value for s in Subspace], default=Subspace.SYMMETRIC.value)
    bilayer.add_argument('--starts', type=int, default=NEWTON_STARTS)
    bilayer.add_argument('--x', type=float, nargs=3, default=[0.1, 0.0, 0.1], metavar=("X1", "X2", "X3"))
    bilayer.add_argument('--steps', type=int, default=50)

    simulate = sub.add_parser("simulate", parents=[common], help='Contract finite trees')
    simulate.add_argument('--family', choices=sorted(tree_families()), default="cayley")
    simulate.add_argument('--d', type=int, default=5)
    simulate.add_argument('--g', type=int, default=1)
    simulate.add_argument('--sequence', help='Degree sequence for the layered family')
    simulate.add_argument('--cell', help='Tree cell for the from_cell family')
    simulate.add_argument('--t', type=float, default=0.0, help='Boundary Bloch length')
    simulate.add_argument('--axis', type=int, choices=[1, 2, 3], default=3)
    simulate.add_argument('--alternating', action='store_true', help='Alternate boundary signs by generation')
    simulate.add_argument('--pair', type=float, nargs=3, default=[0.0, 0.0, 0.0], metavar=("X1", "X2", "X3"),
                          help='Symmetric pair boundary for bilayer trees')
    simulate.add_argument('--depths', default="1..4", help='"1..6" or "2,4,8"')
    simulate.add_argument('--stride', type=int, default=1, help='Compare depths this far apart for convergence')
    simulate.add_argument('--scan', action='store_true', help='Tabulate expectation and scalar map over --t-grid')
    simulate.add_argument('--t-grid', default="0,0.25,0.5,0.75", help='Comma-separated t values for --scan')
    simulate.add_argument('--check-dense', action='store_true', help='Check the sweep against the dense state')
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def _flatten(data: Any, prefix: str = "") -> Dict[str, Any]:
    if isinstance(data, dict):
        out: Dict[str, Any] = {}
        for key, value in data.items():
            out.update(_flatten(value, f"{prefix}{key}."))
        return out
    return {prefix.rstrip("."): data}


def render(result: Any, fmt: str) -> str:
    if isinstance(result, pd.DataFrame):
        if fmt == "csv":
            return result.to_csv(index=False)
        if fmt == "text":
            return result.to_string(index=False) + "\n"
        return result.to_json(orient="records", indent=2) + "\n"
    if fmt == "json":
        return dumps(result) + "\n"
    flat = _flatten(to_jsonable(result))
    if fmt == "csv":
        return pd.DataFrame([flat]).to_csv(index=False)
    return "".join(f"{key}: {value}\n" for key, value in flat.items())


def emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    logger = setup_logging("src.aklt_trees", debug=args.debug)
    logger.debug(f"Running {args.command} with {vars(args)}")

    try:
        result = COMMANDS[args.command](args)
        emit(render(result, args.format), args.output)
    except ValidationError as e:
        log_error_with_context(
            logger,
            f"The {args.command} command rejected its input",
            e.message,
            e.suggestion or "Check the flags and input files.",
            "Nothing was computed",
        )
        return EXIT_VALIDATION
    except NumericalError as e:
        log_error_with_context(
            logger,
            f"The {args.command} computation could not produce a trustworthy result",
            e.message,
            e.suggestion or "Rerun with --debug for the solver trace.",
            "No output was written",
        )
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
