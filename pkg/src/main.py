"""
Main entry point for cubik.

    python -m src.main shape --kind inner_open_box --n 2 --i 1 --eps 0 -o box.cub
    python -m src.main product a.cub b.cub -o ab.cub
    python -m src.main theta-verify --nerve poset:3 --bound 4
    python -m src.main suite all --report summary.csv

Exit status is 0 on success, 1 when a check fails and 2 for usage or
parse errors.
"""

import argparse
import os
import sys
from typing import Any, List, Optional, Union

try:
    from .category import Nerve, nerve, poset_category, terminal_category, walking_isomorphism
    from .complex import SHAPES, CubicalComplex, CubicalSet, standard_shape
    from .config import get_setting, reset_config_cache
    from .cone import cone, integral, parse_kind, q_functor
    from .errors import CubikError, FormatError, InvalidOperator, PreconditionError
    from .logger import get_logger
    from .quasicat import ho, is_quasicategory_up_to, mapping_space, suspension
    from .serialization import complex_to_text, load, save, simplicial_to_text
    from .simplex import SIMPLICIAL_SHAPES, SimplicialComplex, standard_simplicial_shape
    from .suites import SUITES, run_suites, summary_frame, write_report
    from .tensor import product
    from .theta import theta_report_lines, verify_theta
    from .triangulation import triangulate
except ImportError:
    from category import Nerve, nerve, poset_category, terminal_category, walking_isomorphism
    from complex import SHAPES, CubicalComplex, CubicalSet, standard_shape
    from config import get_setting, reset_config_cache
    from cone import cone, integral, parse_kind, q_functor
    from errors import CubikError, FormatError, InvalidOperator, PreconditionError
    from logger import get_logger
    from quasicat import ho, is_quasicategory_up_to, mapping_space, suspension
    from serialization import complex_to_text, load, save, simplicial_to_text
    from simplex import SIMPLICIAL_SHAPES, SimplicialComplex, standard_simplicial_shape
    from suites import SUITES, run_suites, summary_frame, write_report
    from tensor import product
    from theta import theta_report_lines, verify_theta
    from triangulation import triangulate

logger = get_logger()

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

AnyComplex = Union[CubicalComplex, SimplicialComplex]


class UsageError(CubikError):
    """Arguments that parse but do not make sense together."""


# Inputs ------------------------------------------------------------------

def parse_nerve(spec: str, bound: int) -> Nerve:
    """'poset:<k>', 'iso' or 'terminal'."""
    if spec == "iso":
        return nerve(walking_isomorphism(), bound)
    if spec == "terminal":
        return nerve(terminal_category(), bound)
    kind, _, k = spec.partition(":")
    if kind == "poset" and k.isdigit():
        return nerve(poset_category(int(k)), bound)
    raise UsageError(f"unknown nerve {spec!r} (use poset:<k>, iso or terminal)")


def load_cubical(path: str) -> CubicalComplex:
    X = load(path)
    if not isinstance(X, CubicalComplex):
        raise UsageError(f"{path} is simplicial, expected a .cub file")
    return X


def load_simplicial(path: str) -> SimplicialComplex:
    S = load(path)
    if not isinstance(S, SimplicialComplex):
        raise UsageError(f"{path} is cubical, expected a .sim file")
    return S


def cubical_input(args: argparse.Namespace, bound: int) -> CubicalSet:
    """The complex named on the command line, or the nerve given by --nerve."""
    if args.nerve:
        if args.input:
            raise UsageError("give either an input file or --nerve, not both")
        return parse_nerve(args.nerve, bound)
    if not args.input:
        raise UsageError("an input file or --nerve is required")
    return load_cubical(args.input)


def vertex(X: CubicalSet, name: str) -> Any:
    if isinstance(X, Nerve):
        if name not in X.category.identities:
            raise UsageError(f"{X.name} has no object {name!r}")
        return X.vertex(name)
    if name not in X.ids(0):
        raise UsageError(f"{X.name} has no vertex {name!r}")
    return X.ref(name)


def emit(X: AnyComplex, args: argparse.Namespace) -> int:
    """Write the result to -o, or print it."""
    if args.name:
        X = X.renamed(args.name)
    if args.output:
        save(X, args.output)
        print(f"{X.name}: {X.counts()} -> {args.output}")
    elif isinstance(X, SimplicialComplex):
        sys.stdout.write(simplicial_to_text(X))
    else:
        sys.stdout.write(complex_to_text(X))
    return EXIT_OK


# Verbs -------------------------------------------------------------------

def cmd_shape(args: argparse.Namespace) -> int:
    if args.simplicial:
        return emit(standard_simplicial_shape(args.kind, args.n, args.i), args)
    return emit(standard_shape(args.kind, args.n, args.i, args.eps), args)


def cmd_product(args: argparse.Namespace) -> int:
    return emit(product(load_cubical(args.left), load_cubical(args.right)), args)


def cmd_triangulate(args: argparse.Namespace) -> int:
    return emit(triangulate(load_cubical(args.input)).complex, args)


def cmd_cone(args: argparse.Namespace) -> int:
    return emit(cone(load_cubical(args.input), parse_kind(args.kind)).complex, args)


def cmd_q(args: argparse.Namespace) -> int:
    return emit(q_functor(load_simplicial(args.input), parse_kind(args.kind)).complex, args)


def cmd_integrate(args: argparse.Namespace) -> int:
    X = cubical_input(args, args.bound)
    return emit(integral(X, args.bound, parse_kind(args.kind), args.budget), args)


def cmd_check_qcat(args: argparse.Namespace) -> int:
    X = cubical_input(args, args.dim)
    report = is_quasicategory_up_to(X, args.dim, args.budget)
    if report.ok:
        print(f"{X.name}: quasicategory up to dimension {args.dim} ({report.checked} inner open boxes)")
        return EXIT_OK
    print(f"{X.name}: no filler for {report.witness}")
    return EXIT_CHECK_FAILED


def cmd_ho(args: argparse.Namespace) -> int:
    X = cubical_input(args, 3)
    H = ho(X, fallback_to_tau1=args.tau1)
    C = H.category
    print(f"{C.name}: {len(C.objects)} objects, {len(C.morphisms)} morphisms"
          + (" (from the presentation)" if H.from_presentation else ""))
    for m, (s, t) in sorted(C.morphisms.items()):
        print(f"  {m}: {s} -> {t}")
    for (g, f), gf in sorted(C.composition.items()):
        print(f"  {g} . {f} = {gf}")
    if H.well_defined is not None and not H.well_defined.ok:
        print(f"composition is not well defined: {H.well_defined.witnesses[0]}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_map_space(args: argparse.Namespace) -> int:
    X = cubical_input(args, args.bound + 1)
    space = mapping_space(X, vertex(X, args.x0), vertex(X, args.x1), args.side, args.bound)
    return emit(space, args)


def cmd_suspend(args: argparse.Namespace) -> int:
    return emit(suspension(load_cubical(args.input), args.side).complex, args)


def cmd_theta_verify(args: argparse.Namespace) -> int:
    bound = args.bound if args.bound is not None else get_setting('suites', 'theta_bound', 4)
    X = cubical_input(args, bound)
    report = verify_theta(X, bound)
    for line in theta_report_lines(report):
        print(line)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_suite(args: argparse.Namespace) -> int:
    results = run_suites(args.name, args.seed, args.budget)
    frame = summary_frame(results)
    if args.report:
        write_report(frame, args.report)
    print(frame.to_string(index=False))
    failed = int((~frame["ok"]).sum()) if len(frame) else 0
    print(f"{len(frame)} checks, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


# Parser ------------------------------------------------------------------

def _output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", help="Write the result here (.cub or .sim); print it otherwise")
    parser.add_argument("--name", help="Name of the result")


def _nerve_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", nargs="?", help="A .cub file")
    parser.add_argument("--nerve", help="Use a cubical nerve instead: poset:<k>, iso or terminal")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, help="Enumeration budget (overrides CUBIK_BUDGET)")
    parser = argparse.ArgumentParser(prog="cubik", description="Cubical sets with connections.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("shape", parents=[common], help="Build a standard shape")
    p.add_argument("--kind", required=True,
                   help=f"One of {', '.join(SHAPES)}; with --simplicial one of {', '.join(SIMPLICIAL_SHAPES)}")
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--eps", type=int, choices=(0, 1))
    p.add_argument("--simplicial", action="store_true")
    _output_flags(p)
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("product", parents=[common], help="Geometric product of two complexes")
    p.add_argument("left")
    p.add_argument("right")
    _output_flags(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("triangulate", parents=[common], help="Triangulation of a complex")
    p.add_argument("input")
    _output_flags(p)
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("cone", parents=[common], help="Cone on a complex")
    p.add_argument("input")
    p.add_argument("--kind", default="L1", help="L1, L0, R0 or R1")
    _output_flags(p)
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("q", parents=[common], help="Q of a simplicial set")
    p.add_argument("input")
    p.add_argument("--kind", default="L1")
    _output_flags(p)
    p.set_defaults(func=cmd_q)

    p = sub.add_parser("integrate", parents=[common], help="The simplicial set ∫X up to a dimension")
    _nerve_flags(p)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--kind", default="L1")
    _output_flags(p)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("check-qcat", parents=[common], help="Inner open box fillers up to a dimension")
    _nerve_flags(p)
    p.add_argument("--dim", type=int, default=3)
    p.set_defaults(func=cmd_check_qcat)

    p = sub.add_parser("ho", parents=[common], help="Homotopy category")
    _nerve_flags(p)
    p.add_argument("--tau1", action="store_true", help="Fall back to τ₁ when fillers are missing")
    p.set_defaults(func=cmd_ho)

    p = sub.add_parser("map-space", parents=[common], help="Mapping space between two vertices")
    _nerve_flags(p)
    p.add_argument("--x0", required=True)
    p.add_argument("--x1", required=True)
    p.add_argument("--side", choices=("L", "R"), default="R")
    p.add_argument("--bound", type=int, default=2)
    _output_flags(p)
    p.set_defaults(func=cmd_map_space)

    p = sub.add_parser("suspend", parents=[common], help="Suspension of a complex")
    p.add_argument("input")
    p.add_argument("--side", choices=("L", "R"), default="R")
    _output_flags(p)
    p.set_defaults(func=cmd_suspend)

    p = sub.add_parser("theta-verify", parents=[common], help="Check the identities of the θ family")
    _nerve_flags(p)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_theta_verify)

    p = sub.add_parser("suite", parents=[common], help="Run an acceptance suite")
    p.add_argument("name", choices=list(SUITES) + ["all"])
    p.add_argument("--seed", type=int)
    p.add_argument("--report", help="Write the summary table as CSV")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one verb and return the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is not None:
        if args.budget <= 0:
            parser.error("--budget must be positive")
        os.environ['CUBIK_BUDGET'] = str(args.budget)
        reset_config_cache()
    try:
        return args.func(args)
    except (FormatError, InvalidOperator, PreconditionError, UsageError) as e:
        logger.error(f"{args.verb}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CubikError as e:
        logger.error(f"{args.verb} failed: {e}")
        print(f"failed: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
