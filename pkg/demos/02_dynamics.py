"""Yield dynamics at theta = pi/2: dilated-circuit path vs exact propagation.

Writes dynamics.csv and dynamics.svg into the output directory (default: out/).

    python demos/02_dynamics.py [outdir]
"""
import pathlib
import sys

from rpm_dilation.experiment import emit_csv, emit_plot, parse_config, run_dynamics

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "out")
out.mkdir(exist_ok=True)

cfg = parse_config()
quantum, oracle = run_dynamics(cfg)

print(f"{'t (ms)':>8} {'branches':>8} {'S circuit':>10} {'S exact':>10} {'T circuit':>10} {'T exact':>10}")
for i, t in enumerate(quantum.times):
    print(f"{t * 1e3:8.3f} {quantum.branch_counts[i]:8d} "
          f"{quantum.singlet_yield[i]:10.4f} {oracle.singlet_yield[i]:10.4f} "
          f"{quantum.triplet_yield[i]:10.4f} {oracle.triplet_yield[i]:10.4f}")

emit_csv([quantum, oracle], out / "dynamics.csv")
emit_plot(quantum, oracle, out / "dynamics.svg")
print(f"\nwrote {out / 'dynamics.csv'} and {out / 'dynamics.svg'}")
