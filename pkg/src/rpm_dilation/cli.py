"""Command-line driver: ``rpm-dilation sweep`` and ``rpm-dilation dynamics``."""
import argparse
import sys

from .errors import IoFailure, RPMError
from .experiment import emit_csv, emit_plot, parse_config, run_angle_sweep, run_dynamics


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rpm-dilation",
        description="Radical pair yields from dilated Kraus circuits vs the exact master equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("sweep", "final yields over a grid of field angles"),
        ("dynamics", "yield time series at one field angle"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", help="key = value config file")
        if name == "sweep":
            p.add_argument("--theta", help="comma-separated angle grid in radians")
        else:
            p.add_argument("--theta", type=float, help="field angle in radians")
        p.add_argument("--dt", type=float, help="time step in seconds")
        p.add_argument("--steps", type=int, help="number of time steps")
        p.add_argument("--mode", choices=("analytic", "sampled"))
        p.add_argument("--shots", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out-csv", help="CSV output path (stdout if omitted)")
        p.add_argument("--out-plot", help="SVG output path")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    flags = {
        "dt": args.dt,
        "n_steps": args.steps,
        "mode": args.mode,
        "shots": args.shots,
        "seed": args.seed,
        "out_csv": args.out_csv,
        "out_plot": args.out_plot,
    }
    flags["theta_grid" if args.command == "sweep" else "theta"] = args.theta
    try:
        cfg = parse_config(args.config, flags)
        if args.command == "sweep":
            quantum, oracle = run_angle_sweep(cfg)
        else:
            quantum, oracle = run_dynamics(cfg)
        text = emit_csv([quantum, oracle], cfg.out_csv)
        if cfg.out_csv is None:
            sys.stdout.write(text)
        if cfg.out_plot:
            emit_plot(quantum, oracle, cfg.out_plot)
    except IoFailure as exc:
        print(f"IoFailure: {exc}", file=sys.stderr)
        return 3
    except RPMError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
