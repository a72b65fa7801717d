"""Command-line front end.

Subcommands: `sweep` (figure presets / free grids -> CSV), `validate-mc`
(Monte Carlo vs closed form with z-scores), `ew` (noiseless witness runs).
Exit codes: 0 success, 1 usage or I/O error, 2 numerical/positivity error,
3 Monte Carlo validation failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import DomainError, UsageError
from .noise import AveragingMode
from .sweep import (
    PRESETS,
    MCSettings,
    SweepConfig,
    WITNESS_PRESET,
    csv_text,
    emit_csv,
    load_config_file,
    parse_couplings,
    run_mc_validation,
    run_sweep,
    write_metadata,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None
    if not values:
        raise UsageError(f"expected at least one number, got {text!r}")
    return values


def _mode(text: str) -> AveragingMode:
    try:
        return AveragingMode(text)
    except ValueError:
        raise UsageError(f"mode: expected PaperLiteral or GaussianExact, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="werner-ou",
                     description="Two dephasing qubits in classical OU noise: "
                                 "uncertainty, concurrence and witness sweeps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = sub.add_parser("sweep", help="run a grid or figure preset and emit CSV")
    sweep.add_argument("--preset", choices=sorted(PRESETS), help="figure preset")
    sweep.add_argument("--config", help="CQN, IQN or both")
    sweep.add_argument("--mode", type=_mode, help="PaperLiteral or GaussianExact")
    sweep.add_argument("--g", type=_float_list, help="comma-separated g values")
    sweep.add_argument("--p", type=_float_list, help="comma-separated purity values")
    sweep.add_argument("--lambda", dest="lam", type=float, help="coupling strength")
    sweep.add_argument("--tau-max", type=float, help="end of the time grid")
    sweep.add_argument("--tau-points", type=int, help="number of grid points")
    sweep.add_argument("--seed", type=int, help="seed echoed into metadata")
    sweep.add_argument("--config-file", help="JSON file mirroring the sweep config")
    sweep.add_argument("--workers", type=int, default=1, help="parallel workers")
    sweep.add_argument("--out", help="output CSV path (stdout when omitted)")

    val = sub.add_parser("validate-mc", help="Monte Carlo corner check vs closed form")
    val.add_argument("--config", help="CQN, IQN or both")
    val.add_argument("--g", type=_float_list, help="comma-separated g values")
    val.add_argument("--lambda", dest="lam", type=_float_list,
                     help="comma-separated coupling strengths")
    val.add_argument("--tau", type=_float_list, help="comma-separated checkpoints")
    val.add_argument("--n-traj", type=int, help="trajectories per estimate")
    val.add_argument("--dt", type=float, help="integration step")
    val.add_argument("--seed", type=int, help="base Philox seed")
    val.add_argument("--config-file", help="JSON file mirroring the sweep config")
    val.add_argument("--out", help="write the JSON report here")

    ew = sub.add_parser("ew", help="noiseless witness dynamics (fig2 preset)")
    ew.add_argument("--lambda", dest="lam", type=_float_list,
                    help="comma-separated coupling strengths")
    ew.add_argument("--p", type=_float_list, help="comma-separated purity values")
    ew.add_argument("--chi", type=float, help="noise amplitude (default 1)")
    ew.add_argument("--tau-max", type=float, help="end of the time grid")
    ew.add_argument("--tau-points", type=int, help="number of grid points")
    ew.add_argument("--seed", type=int, help="seed echoed into metadata")
    ew.add_argument("--workers", type=int, default=1, help="parallel workers")
    ew.add_argument("--out", help="output CSV path (stdout when omitted)")
    return parser


def _assemble_config(args, *, witness: bool = False, validation: bool = False) -> SweepConfig:
    fields: dict = {}
    file_fields = load_config_file(args.config_file) if getattr(args, "config_file", None) else {}
    preset = getattr(args, "preset", None) or file_fields.get("preset")
    if witness:
        preset = WITNESS_PRESET
    if preset:
        if preset not in PRESETS:
            raise UsageError(f"preset: unknown preset {preset!r}")
        fields.update(PRESETS[preset])
        fields["preset"] = preset
    fields.update({k: v for k, v in file_fields.items() if k != "preset"})

    if getattr(args, "config", None):
        fields["couplings"] = parse_couplings(args.config)
    if getattr(args, "mode", None):
        fields["mode"] = args.mode
    if getattr(args, "g", None):
        fields["g_values"] = args.g
    if getattr(args, "p", None):
        fields["p_values"] = args.p
    if getattr(args, "lam", None):
        if witness or validation:
            fields["lam_values"] = args.lam
        else:
            fields["lam"] = args.lam
    if getattr(args, "chi", None) is not None:
        fields["chi"] = args.chi
    if getattr(args, "tau", None):
        fields["tau_values"] = args.tau
    if getattr(args, "tau_max", None) is not None:
        fields["tau_max"] = args.tau_max
    if getattr(args, "tau_points", None) is not None:
        fields["tau_points"] = args.tau_points
    if getattr(args, "seed", None) is not None:
        fields["seed"] = args.seed
    if validation:
        mc_fields = dict(file_fields.get("mc").__dict__) if file_fields.get("mc") else {}
        if args.n_traj is not None:
            mc_fields["n_traj"] = args.n_traj
        if args.dt is not None:
            mc_fields["dt"] = args.dt
        if args.seed is not None:
            mc_fields["seed"] = args.seed
        if "n_traj" not in mc_fields:
            raise UsageError("n_traj: required for validate-mc")
        fields["mc"] = MCSettings(**mc_fields)
    return SweepConfig(**fields)


def _emit(result, out: str | None) -> None:
    if out is None:
        sys.stdout.write(csv_text(result))
        return
    emit_csv(result, out)
    write_metadata(result, out + ".meta.json")


def _cmd_sweep(args) -> int:
    cfg = _assemble_config(args)
    result = run_sweep(cfg, workers=args.workers)
    _emit(result, args.out)
    return 0


def _cmd_ew(args) -> int:
    cfg = _assemble_config(args, witness=True)
    result = run_sweep(cfg, workers=args.workers)
    _emit(result, args.out)
    return 0


def _cmd_validate_mc(args) -> int:
    cfg = _assemble_config(args, validation=True)
    report = run_mc_validation(cfg)
    print(f"{'config':<6} {'g':>6} {'lambda':>8} {'tau':>6} "
          f"{'mc':>12} {'target':>12} {'se':>10} {'z':>8}")
    for chk in report.checks:
        print(f"{chk.config:<6} {chk.g:>6g} {chk.lam:>8g} {chk.tau:>6g} "
              f"{chk.mc_real:>12.6f} {chk.target:>12.6f} {chk.se_real:>10.2e} {chk.z:>8.2f}")
    verdict = "OK" if report.ok else "FAIL"
    print(f"{verdict}: max |z| = {report.max_abs_z:.3f} (limit {report.z_limit})")
    if args.out:
        import json

        try:
            with open(args.out, "w", newline="") as fh:
                json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            raise OSError(f"cannot write report to {args.out!r}: {exc}") from exc
    return 0 if report.ok else 3


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "validate-mc":
            return _cmd_validate_mc(args)
        if args.command == "ew":
            return _cmd_ew(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
