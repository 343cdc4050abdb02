"""Command-line interface.

Subcommands: verify-lemma, spectrum, gap, sweep, full-diag, critical-b.
Models are specified by --n, --lambda, --b and exactly one of --delta-ev
or --v-ev (the other follows from v = lambda * delta), either as flags or
through a JSON config file; flags override the config.  All solvers run
in spacing units and outputs are converted according to --units.

Exit status: 0 on success, 2 when a requested gap has no real root or the
gap equation has no solution (reported, not crashed), 1 on usage errors
and guard violations.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .fullspace import build_full_hamiltonian, dense_eigenvalues, verify_lemma
from .gap import gap_from_spectrum, solve_gap_equation
from .model import make_model, params_from_config
from .subspace import sub1_eigenvalues
from .sweeps import (
    SweepSpec,
    find_critical_b,
    preset,
    records_to_csv,
    records_to_json,
    run_sweep,
)

MAX_FULL_DIAG_N = 10


class CliError(Exception):
    """Usage or input error: message to stderr, exit status 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved here for
    # no-root outcomes, so remap parser errors to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="JSON model config")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--format", choices=("csv", "json", "text"), default=None,
                   help="output format (default: csv for sweep, text otherwise)")
    p.add_argument("--units", choices=("ev", "delta"), default="ev",
                   help="energy units for outputs (default ev)")
    p.add_argument("--tol", type=float, default=None,
                   help="solver tolerance override")


def _add_model(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=None, help="number of levels")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="coupling ratio v/delta")
    p.add_argument("--delta-ev", type=float, default=None,
                   help="level spacing in eV")
    p.add_argument("--v-ev", type=float, default=None,
                   help="coupling strength in eV")
    p.add_argument("--b", type=int, default=None, help="level offset (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pairgap",
                     description="Exact pairing spectra and gap extraction")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")

    p = sub.add_parser("verify-lemma",
                       help="probe the projector-diagonal identities")
    _add_common(p)
    p.add_argument("--n-max", type=int, default=12,
                   help="check N = 2..n_max (default 12)")

    p = sub.add_parser("spectrum",
                       help="eigenvalues of the single-excitation block")
    _add_common(p)
    _add_model(p)

    p = sub.add_parser("gap", help="extract the gap")
    _add_common(p)
    _add_model(p)
    p.add_argument("--method", choices=("sub1", "eqn", "both"), default="both",
                   help="spectrum route, gap equation, or both (default)")

    p = sub.add_parser("sweep", help="parameter sweep comparing both routes")
    _add_common(p)
    _add_model(p)
    p.add_argument("--preset", choices=("fig1", "fig2", "fig3"), default=None,
                   help="canonical sweep (pins every parameter)")
    p.add_argument("--param", choices=("n", "lambda", "b"), default=None,
                   help="custom sweep parameter")
    p.add_argument("--from", dest="from_", type=float, default=None,
                   metavar="A", help="first swept value")
    p.add_argument("--to", dest="to", type=float, default=None,
                   metavar="B", help="last swept value (inclusive)")
    p.add_argument("--step", type=float, default=1.0, metavar="S",
                   help="swept value step (default 1)")
    p.add_argument("--figure", nargs="?", const=True, default=None,
                   metavar="PATH",
                   help="also render the sweep to an image (default path "
                        "derives from --out)")

    p = sub.add_parser("full-diag",
                       help="dense spectrum of the full 2^N Hamiltonian")
    _add_common(p)
    _add_model(p)
    p.add_argument("--dump-matrix", metavar="PATH", default=None,
                   help="also write the dense matrix as plain text")

    p = sub.add_parser("critical-b",
                       help="largest level offset with a real spectrum-route gap")
    _add_common(p)
    _add_model(p)
    p.add_argument("--b-max", type=int, default=70,
                   help="scan b = 0..b_max (default 70)")

    return parser


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise CliError(f"malformed config {path}: expected a JSON object")
    return cfg


def _merged_model_mapping(args) -> dict:
    merged = _load_config(args.config) if args.config else {}
    if args.delta_ev is not None and args.v_ev is not None:
        raise CliError("give exactly one of --delta-ev, --v-ev")
    if args.n is not None:
        merged["n"] = args.n
    if args.lam is not None:
        merged["lambda"] = args.lam
    if args.b is not None:
        merged["b"] = args.b
    if args.delta_ev is not None:
        merged.pop("v_ev", None)
        merged["delta_ev"] = args.delta_ev
    if args.v_ev is not None:
        merged.pop("delta_ev", None)
        merged["v_ev"] = args.v_ev
    return merged


def _resolve_model(args):
    """Model parameters in spacing units plus the eV spacing."""
    try:
        return params_from_config(_merged_model_mapping(args))
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _unit_scale(args, delta_ev: float) -> float:
    return delta_ev if args.units == "ev" else 1.0


def _pick_format(args, allowed: tuple[str, ...], default: str) -> str:
    fmt = args.format if args.format is not None else default
    if fmt not in allowed:
        raise CliError(f"format {fmt!r} not supported here (allowed: "
                       f"{', '.join(allowed)})")
    return fmt


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_verify_lemma(args) -> int:
    _pick_format(args, ("text",), "text")
    if args.n_max < 2:
        raise CliError("--n-max must be >= 2")
    lines = []
    all_ok = True
    for n in range(2, args.n_max + 1):
        report = verify_lemma(n)
        if report.ok:
            lines.append(f"N={n} PASS ({report.checked} probes)")
        else:
            all_ok = False
            lines.append(f"N={n} FAIL ({len(report.violations)} violations)")
    _emit(args, "\n".join(lines) + "\n")
    return 0 if all_ok else 1


def _cmd_spectrum(args) -> int:
    params, delta_ev = _resolve_model(args)
    model = make_model(params)
    spectrum = sub1_eigenvalues(model, **_tol_kw(args))
    scale = _unit_scale(args, delta_ev)
    values = [v * scale for v in spectrum.values]
    fmt = _pick_format(args, ("text", "json"), "text")
    if fmt == "json":
        payload = {"eigenvalues": values, "solver": spectrum.solver,
                   "units": args.units}
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        _emit(args, "\n".join(_fmt(v) for v in values) + "\n")
    return 0


def _tol_kw(args) -> dict:
    return {} if args.tol is None else {"tol": args.tol}


def _cmd_gap(args) -> int:
    params, delta_ev = _resolve_model(args)
    model = make_model(params)
    scale = _unit_scale(args, delta_ev)
    results = {}
    if args.method in ("sub1", "both"):
        spectrum = sub1_eigenvalues(model, **_tol_kw(args))
        results["sub1"] = gap_from_spectrum(model, spectrum)
    if args.method in ("eqn", "both"):
        results["eqn"] = solve_gap_equation(model, **_tol_kw(args))

    fmt = _pick_format(args, ("text", "json"), "text")
    if fmt == "json":
        payload = {}
        for key, r in results.items():
            payload[key] = {
                "outcome": r.outcome,
                "gap": None if r.delta is None else r.delta * scale,
                "residual": r.residual,
                "units": args.units,
            }
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        lines = []
        for key, r in results.items():
            text = _fmt(r.delta * scale) if r.ok else r.outcome
            lines.append(text if args.method != "both" else f"{key} {text}")
        _emit(args, "\n".join(lines) + "\n")
    return 0 if all(r.ok for r in results.values()) else 2


def _cmd_full_diag(args) -> int:
    params, delta_ev = _resolve_model(args)
    if params.n_levels > MAX_FULL_DIAG_N:
        raise CliError(f"full-diag limited to --n <= {MAX_FULL_DIAG_N}")
    model = make_model(params)
    h = build_full_hamiltonian(model)
    spectrum = dense_eigenvalues(h, **_tol_kw(args))
    scale = _unit_scale(args, delta_ev)
    values = [v * scale for v in spectrum.values]
    if args.dump_matrix:
        rows = "\n".join(" ".join(_fmt(x * scale) for x in row) for row in h)
        Path(args.dump_matrix).write_text(rows + "\n", encoding="utf-8")
    fmt = _pick_format(args, ("text", "json"), "text")
    if fmt == "json":
        _emit(args, json.dumps({"eigenvalues": values, "units": args.units},
                               indent=2) + "\n")
    else:
        _emit(args, "\n".join(_fmt(v) for v in values) + "\n")
    return 0


def _cmd_critical_b(args) -> int:
    if args.b is not None:
        raise CliError("critical-b scans b; --b is not accepted")
    params, delta_ev = _resolve_model(args)
    result = find_critical_b(params.n_levels, params.lam,
                             delta_ev * params.lam, args.b_max)
    if not result.prefix_ok:
        print("warning: real roots do not form a prefix of the scan",
              file=sys.stderr)
    fmt = _pick_format(args, ("text", "json"), "text")
    if fmt == "json":
        payload = {"b_star": result.b_star, "b_max": result.b_max,
                   "prefix_ok": result.prefix_ok}
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        _emit(args, f"b_star {result.b_star}\n")
    return 0


def _reject_model_flags(args, context: str) -> None:
    given = [flag for flag, value in (
        ("--n", args.n), ("--lambda", args.lam), ("--b", args.b),
        ("--delta-ev", args.delta_ev), ("--v-ev", args.v_ev),
        ("--config", args.config),
    ) if value is not None]
    if given:
        raise CliError(f"{context} pins every parameter; drop {', '.join(given)}")


def _custom_sweep_spec(args) -> SweepSpec:
    if args.param is None or args.from_ is None or args.to is None:
        raise CliError("custom sweeps need --param, --from and --to "
                       "(or use --preset)")
    if args.step <= 0:
        raise CliError("--step must be > 0")
    values = []
    x = args.from_
    # inclusive endpoint, tolerant of float stepping
    eps = 1e-9 * max(abs(args.from_), abs(args.to), args.step)
    k = 0
    while x <= args.to + eps:
        values.append(round(x) if args.param in ("n", "b") and
                      abs(x - round(x)) < eps else x)
        k += 1
        x = args.from_ + k * args.step
    if not values:
        raise CliError("empty sweep range")
    merged = _merged_model_mapping(args)
    fixed = {}
    if "n" in merged:
        fixed["n"] = merged["n"]
    if "lambda" in merged:
        fixed["lam"] = merged["lambda"]
    if "b" in merged:
        fixed["b"] = merged["b"]
    if "v_ev" in merged:
        fixed["v_ev"] = merged["v_ev"]
    elif "delta_ev" in merged:
        fixed["v_ev"] = merged["delta_ev"] * fixed.get("lam", 10.0)
    try:
        return SweepSpec(swept=args.param, values=tuple(values), **fixed)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _cmd_sweep(args) -> int:
    if args.preset is not None:
        _reject_model_flags(args, f"--preset {args.preset}")
        if args.param is not None or args.from_ is not None or args.to is not None:
            raise CliError("--preset and --param ranges are mutually exclusive")
        spec = preset(args.preset)
    else:
        spec = _custom_sweep_spec(args)
    records = run_sweep(spec, tol=args.tol)
    fmt = _pick_format(args, ("csv", "json"), "csv")
    if args.units == "delta":
        records = [_record_in_delta_units(r) for r in records]
    text = records_to_csv(records) if fmt == "csv" else records_to_json(records)
    _emit(args, text)
    if args.figure is not None:
        from .plots import render_sweep_figure  # matplotlib import is slow

        if args.figure is True:
            base = Path(args.out).with_suffix(".png") if args.out \
                else Path("sweep.png")
            figure_path = str(base)
        else:
            figure_path = args.figure
        render_sweep_figure(records, spec.swept, figure_path, units=args.units)
        if not args.out:
            print(f"figure written to {figure_path}", file=sys.stderr)
    return 0


def _record_in_delta_units(r):
    # the spacing-unit gaps are stored on the record, so this conversion
    # is exact rather than a rounding division by delta_ev
    from dataclasses import replace

    return replace(
        r,
        v_ev=float(r.lam),
        delta_ev=1.0,
        gap_sub1_ev=r.gap_sub1_spacing,
        gap_eqn_ev=r.gap_eqn_spacing,
    )


_COMMANDS = {
    "verify-lemma": _cmd_verify_lemma,
    "spectrum": _cmd_spectrum,
    "gap": _cmd_gap,
    "sweep": _cmd_sweep,
    "full-diag": _cmd_full_diag,
    "critical-b": _cmd_critical_b,
}


def parse_and_dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"pairgap: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, IndexError, RuntimeError) as exc:
        print(f"pairgap: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"pairgap: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(parse_and_dispatch(sys.argv[1:]))
