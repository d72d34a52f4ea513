"""Command-line front end.

Exit codes: 0 success, 2 usage/validation, 3 singular matrix,
4 post-selection impossible, 5 no discriminating digit.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import (
    AdmissibilityError,
    DigitCollisionError,
    NoDiscriminatingDigitError,
    PostSelectionError,
    SingularMatrixError,
)
from .figures import write_heatmap_svg
from .gates import RotationParams
from .io import ProblemFileError, load_problem, write_grid_csv
from .pipeline import AXES, PipelineConfig, ScanSpec, Semantics, run, scan
from .spectral import classical_solution, discriminating_position, eigh, ternary_digits

EXIT_OK, EXIT_USAGE, EXIT_SINGULAR, EXIT_POSTSELECT, EXIT_NO_DIGIT = 0, 2, 3, 4, 5

# problem files carry ~5 significant decimals; snap eigenvalues that close to a ternary grid point
EIGENVALUE_GUARD = 1e-4


class UsageError(Exception):
    pass


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.6f} {z.imag:+.6f}i"


def _digit_string(lam: float, places: int) -> str:
    try:
        return "0." + "".join(map(str, ternary_digits(lam, places, EIGENVALUE_GUARD)))
    except ValueError:
        return "n/a"


def cmd_oracle(args) -> int:
    problem = load_problem(args.problem)
    x = classical_solution(problem)
    d = eigh(problem.A)
    print("solution")
    for k, z in enumerate(x):
        print(f"  x[{k}] = {_fmt_complex(z)}")
    print("eigenvalues")
    for k, lam in enumerate(d.eigenvalues):
        print(f"  lambda[{k}] = {lam:.6f}  ternary {_digit_string(lam, 6)}")
    return EXIT_OK


def _semantics(args) -> Semantics:
    form = {"1": Semantics.DIGIT_SELECT_FORM_ONE, "one": Semantics.DIGIT_SELECT_FORM_ONE,
            "2": Semantics.DIGIT_SELECT_FORM_TWO, "two": Semantics.DIGIT_SELECT_FORM_TWO}
    by_form = form[args.form] if args.form else None
    if args.semantics is None:
        if by_form is None:
            raise UsageError("give --semantics (or --form for a rotation form)")
        return by_form
    sem = Semantics(args.semantics)
    if by_form is not None and by_form is not sem:
        raise UsageError(f"--form {args.form} conflicts with --semantics {args.semantics}")
    return sem


def cmd_solve(args) -> int:
    sem = _semantics(args)
    rs = (args.r1, args.r2, args.r3)
    if sem is Semantics.IDEAL:
        if any(r is not None for r in rs):
            raise UsageError("--r1/--r2/--r3 apply to form semantics, not ideal")
        if args.c is None:
            raise UsageError("ideal semantics needs --c")
        config = PipelineConfig(n=args.n, semantics=sem, C=args.c)
    else:
        if args.c is not None:
            raise UsageError("--c applies to ideal semantics only")
        if any(r is None for r in rs):
            raise UsageError(f"{sem.value} semantics needs --r1, --r2 and --r3")
        config = PipelineConfig(n=args.n, semantics=sem, params=RotationParams(*rs, form=sem.form))
    problem = load_problem(args.problem)
    result = run(problem, config)
    print("solution state")
    for k, z in enumerate(result.solution_state.amplitudes):
        print(f"  x[{k}] = {_fmt_complex(z)}")
    print(f"success probability  {result.success_probability:.10f}")
    print(f"clock residual       {result.clock_residual:.3e}")
    print(f"oracle fidelity      {result.oracle_fidelity:.10f}")
    return EXIT_OK


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise UsageError(f"--range must look like MIN:MAX, got {text!r}") from None
    return lo, hi


def cmd_scan(args) -> int:
    axes = tuple(a.strip() for a in args.axes.split(","))
    if len(axes) != 2 or len(set(axes)) != 2 or not set(axes) <= set(AXES):
        raise UsageError(f"--axes needs two distinct names from {','.join(AXES)}, got {args.axes!r}")
    fixed_axis = next(a for a in AXES if a not in axes)
    name, _, value = args.fixed.partition("=")
    if name.strip() != fixed_axis or not value:
        raise UsageError(f"--fixed must set the remaining axis, e.g. {fixed_axis}=0")
    try:
        fixed = float(value)
    except ValueError:
        raise UsageError(f"--fixed value {value!r} is not a number") from None
    lo, hi = _parse_range(args.range)
    if not lo < hi:
        raise UsageError("--range needs MIN < MAX")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    sem = Semantics(args.semantics)
    if sem is Semantics.IDEAL:
        raise UsageError("scan needs form1 or form2 semantics")
    spec = ScanSpec(axes=axes, ranges=((lo, hi, args.points),) * 2, fixed=fixed,
                    semantics=sem, n=args.n)
    problem = load_problem(args.problem)
    grid = scan(problem, spec, workers=args.workers)
    write_grid_csv(grid, args.out)
    if args.svg:
        write_heatmap_svg(grid, args.svg)
    best = ", ".join(f"{k}={v:g}" for k, v in grid.best_point.items())
    print(f"best point      {best}")
    print(f"best fidelity   {grid.best_fidelity:.10f}")
    if grid.failures:
        print(f"post-selection impossible at {grid.failures} grid point(s) (recorded as 0)")
    return EXIT_OK


def cmd_digits(args) -> int:
    problem = load_problem(args.problem)
    lam = eigh(problem.A).eigenvalues
    if np.any(lam < 0) or np.any(lam >= 1):
        raise AdmissibilityError("eigenvalues must lie in [0, 1) for a ternary expansion")
    for k, x in enumerate(lam):
        print(f"  lambda[{k}] = {x:.6f}  ternary {_digit_string(x, args.max_digits)}")
    n = discriminating_position(lam, args.max_digits, EIGENVALUE_GUARD)
    print(f"suggested n = {n}")
    return EXIT_OK


def _range_arg_fix(argv):
    # "--range -1:1" would otherwise be parsed as an option
    out = list(argv)
    for k in range(len(out) - 1):
        if out[k] == "--range" and out[k + 1].startswith("-"):
            out[k:k + 2] = [f"--range={out[k + 1]}", ""]
    return [a for a in out if a != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qutrit-sle",
        description="Qutrit circuit simulator for 3x3 Hermitian linear systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="classical solution, eigenvalues and their ternary digits")
    p.add_argument("problem")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("solve", help="run the circuit once")
    p.add_argument("problem")
    p.add_argument("--n", type=int, default=2, help="ternary digit position (default 2)")
    p.add_argument("--semantics", choices=[s.value for s in Semantics])
    p.add_argument("--form", choices=["one", "two", "1", "2"], help="rotation form (alias for form semantics)")
    p.add_argument("--r1", type=float)
    p.add_argument("--r2", type=float)
    p.add_argument("--r3", type=float)
    p.add_argument("--c", type=float, help="inversion constant for ideal semantics")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan", help="fidelity landscape over two rotation angles")
    p.add_argument("problem")
    p.add_argument("--axes", default="r1,r2", help="two scanned angles (default r1,r2)")
    p.add_argument("--fixed", default="r3=0", help="value of the third angle (default r3=0)")
    p.add_argument("--range", default="-1:1", help="MIN:MAX for both axes (default -1:1)")
    p.add_argument("--points", type=int, default=81, help="grid points per axis (default 81)")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--svg", help="optional SVG heatmap path")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--semantics", choices=["form1", "form2"], default="form2")
    p.add_argument("--workers", type=int, default=None, help="thread count; results do not depend on it")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("digits", help="ternary digits of the eigenvalues and the suggested n")
    p.add_argument("problem")
    p.add_argument("--max-digits", type=int, default=6, help="digits to expand (default 6)")
    p.set_defaults(func=cmd_digits)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_range_arg_fix(sys.argv[1:] if argv is None else argv))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except PostSelectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POSTSELECT
    except NoDiscriminatingDigitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_DIGIT
    except (ProblemFileError, AdmissibilityError, DigitCollisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
