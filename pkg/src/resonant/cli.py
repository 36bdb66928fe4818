"""Command-line front end: ``resonant {run,convergence,diagnose,oscint}``.

Every subcommand writes CSV to ``--out`` (default: standard output) and a
short summary to standard error.  Flags can also come from a ``key = value``
file given with ``--config``; command-line flags take precedence.

Exit status: 0 on success, 1 on usage or configuration errors, 2 on numerical
aborts (blow-up, reference mismatch).
"""

from __future__ import annotations

import argparse
import csv
import sys
from contextlib import contextmanager

from . import __version__
from .data import make_initial_data, parse_data_spec
from .harness import (
    ConvergenceConfig,
    ReferenceMismatchError,
    dyadic_taus,
    emit_csv,
    median_slope,
    run_convergence,
    run_diagnostics,
    run_seeds,
)
from .oracle import osc_integral_quadrature, resonance_integral_order1, resonance_integral_order2
from .problems import PRESETS, make_problem
from .schemes import SchemeKind, StepperConfig, evolve, symmetry_defect
from .spectral import FourierGrid, to_physical

SCHEME_NAMES = [k.value for k in SchemeKind]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _scheme(name: str) -> str:
    try:
        return SchemeKind.parse(name).value
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _data(text: str) -> str:
    try:
        parse_data_spec(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _seeds(text: str) -> list[int]:
    try:
        return [int(s) for s in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be integers, got {text!r}") from None


def _eq_param(text: str) -> tuple[str, complex]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.strip(), complex(value.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value in {text!r}") from None


def _flag(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {value!r}")


def _common(p: argparse.ArgumentParser, scheme_default="lie", data_default="two_mode:0.5:1:0.5:2"):
    p.add_argument("--config", metavar="FILE", help="key = value file with default flag values")
    p.add_argument("--equation", choices=PRESETS, default="nls_cubic", help="equation preset")
    p.add_argument("--eq-param", type=_eq_param, action="append", default=[], metavar="KEY=VALUE",
                   help="equation parameter, e.g. alpha=1+1j for ginzburg_landau (repeatable)")
    p.add_argument("--scheme", type=_scheme, default=scheme_default,
                   help=f"one of: {', '.join(SCHEME_NAMES)}")
    p.add_argument("--n-modes", type=int, default=256, help="number of Fourier modes N (even)")
    p.add_argument("--t-end", type=float, default=1.0, help="final time T")
    p.add_argument("--data", type=_data, default=data_default,
                   help="rough:sigma:seed | plane_wave:c:k | two_mode:c1:k1:c2:k2 | gaussian_like:width")
    p.add_argument("--dealias", type=_flag, nargs="?", const=True, default=False,
                   help="2/3-rule truncation of nonlinear products")
    p.add_argument("--alpha", type=float, default=1.0, help="filter exponent, K = tau^(-alpha/2)")
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="resonant", description=__doc__.splitlines()[0], formatter_class=fmt)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="single trajectory, final field as CSV", formatter_class=fmt)
    _common(p)
    p.add_argument("--tau", type=float, default=2.0**-8, help="step size")

    p = sub.add_parser("convergence", help="step-size sweep with fitted order", formatter_class=fmt)
    _common(p)
    p.add_argument("--tau-max", type=float, default=2.0**-4, help="largest step size")
    p.add_argument("--tau-min", type=float, default=2.0**-10,
                   help="smallest step size; steps are halved from --tau-max down to it")
    p.add_argument("--seeds", type=_seeds, default=None,
                   help="comma-separated seeds for rough data (overrides the seed in --data)")
    p.add_argument("--ref-factor", type=int, default=32, help="reference step is tau-min / ref-factor (>= 16)")
    p.add_argument("--hs-index", type=float, default=1.0, help="Sobolev index of the hs_error column")
    p.add_argument("--target-tol", type=float, default=1e-6,
                   help="reference cross-check must agree within 100x this value")
    p.add_argument("--workers", type=int, default=1, help="processes used for multi-seed sweeps")

    p = sub.add_parser("diagnose", help="mass/energy series and symmetry defect", formatter_class=fmt)
    _common(p)
    p.add_argument("--tau", type=float, default=0.01, help="step size")
    p.add_argument("--steps", type=int, default=1000, help="number of steps")

    p = sub.add_parser("oscint", help="oscillatory integral: quadrature vs resonance approximations",
                       formatter_class=fmt)
    p.add_argument("--config", metavar="FILE", help="key = value file with default flag values")
    p.add_argument("--n-modes", type=int, default=64, help="number of Fourier modes N (even)")
    p.add_argument("--data", type=_data, default="rough:4:0", help="initial data spec, as for the other commands")
    p.add_argument("--t-max", type=float, default=2.0**-3, help="largest integration length")
    p.add_argument("--t-min", type=float, default=2.0**-8, help="smallest integration length (dyadic fill)")
    p.add_argument("--panels", type=int, default=16, help="Gauss-Legendre panels of the quadrature")
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout")
    return parser


def read_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc.strerror or exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        values[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return values


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    """Install config-file values as subparser defaults (CLI flags still win)."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config or not argv or argv[0].startswith("-"):
        return
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    subparser = sub_action.choices.get(argv[0])
    if subparser is None:
        return
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, raw in read_config(known.config).items():
        action = actions.get(key)
        if action is None or key in ("help", "config"):
            raise UsageError(f"{known.config}: unknown option {key!r} for '{argv[0]}'")
        try:
            value = action.type(raw) if action.type else raw
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"{known.config}: bad value for {key}: {exc}") from None
        if action.choices is not None and value not in action.choices:
            raise UsageError(f"{known.config}: {key} must be one of {list(action.choices)}")
        if isinstance(action, argparse._AppendAction):
            value = [value]
        defaults[key] = value
    subparser.set_defaults(**defaults)


@contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise UsageError(f"cannot open output {path!r}: {exc.strerror or exc}") from None
    with fh:
        yield fh


def _problem(args):
    try:
        return make_problem(args.equation, **dict(args.eq_param))
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _cmd_run(args) -> int:
    grid = FourierGrid(args.n_modes)
    problem = _problem(args)
    u0 = make_initial_data(grid, args.data)
    n = max(0, round(args.t_end / args.tau))
    u = evolve(args.scheme, problem, u0, StepperConfig(args.tau, args.alpha, args.dealias), n)
    v = to_physical(u)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("j", "x", "re", "im"))
        for j, (x, z) in enumerate(zip(grid.points, v)):
            w.writerow((j, repr(float(x)), repr(float(z.real)), repr(float(z.imag))))
    print(f"{args.scheme}: {n} steps of {args.tau:g}, final L2 norm {u.l2_norm():.12g}", file=sys.stderr)
    return 0


def _cmd_convergence(args) -> int:
    _problem(args)
    cfg = ConvergenceConfig(
        scheme=args.scheme, taus=dyadic_taus(args.tau_max, args.tau_min), n_modes=args.n_modes,
        t_end=args.t_end, data=args.data, equation=args.equation,
        equation_params=tuple(args.eq_param), ref_factor=args.ref_factor, alpha=args.alpha,
        dealias=args.dealias, hs_index=args.hs_index, target_tol=args.target_tol,
    )
    if args.seeds:
        reports = run_seeds(cfg, args.seeds, max_workers=args.workers)
    else:
        reports = [run_convergence(cfg)]
    with _output(args.out) as fh:
        emit_csv(reports, fh)
    for rep in reports:
        slope = "insufficient range" if rep.slope is None else f"{rep.slope:.4f}"
        tag = f" seed {rep.seed}" if rep.seed is not None else ""
        print(f"{rep.scheme}{tag}: slope {slope}", file=sys.stderr)
    if len(reports) > 1:
        med = median_slope(reports)
        print(f"{cfg.scheme}: median slope {'n/a' if med is None else f'{med:.4f}'}", file=sys.stderr)
    return 0


def _cmd_diagnose(args) -> int:
    grid = FourierGrid(args.n_modes)
    problem = _problem(args)
    u0 = make_initial_data(grid, args.data)
    series = run_diagnostics(args.scheme, u0, args.tau, args.steps, problem, args.alpha, args.dealias)
    with _output(args.out) as fh:
        emit_csv(series, fh)
    m = series.mass
    drift = abs(m[-1] - m[0]) / m[0] if m[0] else 0.0
    defect = symmetry_defect(args.scheme, u0, args.tau, problem, args.alpha)
    print(f"{args.scheme}: relative mass drift {drift:.3e}, symmetry defect {defect:.3e}", file=sys.stderr)
    return 0


def _cmd_oscint(args) -> int:
    grid = FourierGrid(args.n_modes)
    u0 = make_initial_data(grid, args.data)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("t", "order1_error", "order2_error"))
        for t in dyadic_taus(args.t_max, args.t_min):
            q = osc_integral_quadrature(t, u0, args.panels)
            e1 = (q - resonance_integral_order1(t, u0)).l2_norm()
            e2 = (q - resonance_integral_order2(t, u0)).l2_norm()
            w.writerow((repr(t), repr(e1), repr(e2)))
    return 0


COMMANDS = {"run": _cmd_run, "convergence": _cmd_convergence, "diagnose": _cmd_diagnose,
            "oscint": _cmd_oscint}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FloatingPointError as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return 2
    except ReferenceMismatchError as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
