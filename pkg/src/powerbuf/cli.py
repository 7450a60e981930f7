"""Command-line front end.

Subcommands::

    powerbuf optimize --scheme {size,interval} CONFIG [--csv]
    powerbuf table --which {3,5} [CONFIG] [--out PATH]
    powerbuf sweep --fig N [--set key=value ...] [--out PATH]
    powerbuf simulate CONFIG [--seed N] [--trace PATH] [--csv]
    powerbuf tree CONFIG [--extremes] [--csv]

Exit codes: 0 on success, 2 for usage or config-structure errors, 3 for
parameter-domain or infeasibility errors.  Output is deterministic given
(config, flags, seed).  POWERBUF_THREADS caps the worker threads used to
evaluate sweep figures (default 1); row order is unaffected.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import math
import sys

from . import sweeps
from .config import RunConfig, load_config
from .errors import ConfigError, PowerBufError
from .fixed_interval import avg_power_fi, no_buffer_power, optimal_interval, \
    power_at_optimal_fi
from .fixed_size import avg_power_fs, optimal_size
from .lifespan import Battery, lifespan_years, table3, table5
from .power_model import HardwareProfile, default_table2_profile
from .sim import FixedInterval, FixedSize, SimConfig, run
from .tree import degenerate_vector, parent_optimal_interval, parent_power, \
    range_bound, uniform_vector

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

# second hardware profile of the published fixed-interval lifespan table
TABLE5_ALT_PROFILE_KW = dict(e_wu_w=800.0, p_idle_m=10.0)


def _echo_rows(header, rows, out_path):
    target = open(out_path, "w", newline="") if out_path else sys.stdout
    try:
        writer = csv.writer(target)
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if out_path:
            target.close()


@contextlib.contextmanager
def _report_target(out_path):
    if out_path is None:
        yield
        return
    with open(out_path, "w") as fh, contextlib.redirect_stdout(fh):
        yield


def _warn_unequal_radio(hw: HardwareProfile) -> None:
    if not math.isclose(hw.e_tx_w, hw.e_rx_w, rel_tol=1e-12):
        print("warning: e_rx_w differs from e_tx_w; the closed forms assume "
              "equal per-byte radio energies and use e_tx_w for both",
              file=sys.stderr)


def _need(cfg: RunConfig, attr: str, what: str):
    value = getattr(cfg, attr)
    if value is None:
        raise ConfigError(f"this command needs a [{what}] section")
    return value


def cmd_optimize(cfg: RunConfig, scheme: str, as_csv: bool) -> int:
    traffic = _need(cfg, "traffic", "traffic")
    hw = cfg.hardware
    _warn_unequal_radio(hw)
    if scheme == "size":
        b = optimal_size(hw, traffic)
        power = avg_power_fs(hw, traffic, b)
        banks = int(math.ceil(b / hw.b_size))
        years = lifespan_years(cfg.battery, power)
        if as_csv:
            _echo_rows(["b_star_bytes", "banks", "power_uw", "lifespan_years"],
                       [[f"{b:.4f}", banks, f"{power:.4f}", f"{years:.4f}"]],
                       None)
        else:
            print(f"optimal buffer size: {b:.2f} bytes ({banks} banks)")
            print(f"power at optimum:    {power:.4f} uW")
            print(f"lifespan:            {years:.4f} years")
    else:
        T = optimal_interval(hw, traffic)
        power = power_at_optimal_fi(hw, traffic)
        years = lifespan_years(cfg.battery, power)
        if as_csv:
            _echo_rows(["t_star_s", "power_uw", "lifespan_years"],
                       [[f"{T:.2f}", f"{power:.4f}", f"{years:.4f}"]], None)
        else:
            print(f"optimal interval: {T:.2f} s")
            print(f"power at optimum: {power:.4f} uW")
            print(f"lifespan:         {years:.4f} years")
    return EXIT_OK


def cmd_table(cfg: RunConfig, which: int, out_path) -> int:
    hw, battery = cfg.hardware, cfg.battery
    if which == 3:
        header = ["lambda", "power_fs_opt_uw", "life_fs_opt_yr",
                  "power_fi_opt_uw", "life_fi_opt_yr",
                  "power_fs256_uw", "life_fs256_yr"]
        rows = [[f"{r.rate:g}",
                 f"{r.power_fs_opt:.4f}", f"{r.life_fs_opt:.4f}",
                 f"{r.power_fi_opt:.4f}", f"{r.life_fi_opt:.4f}",
                 f"{r.power_fixed:.4f}", f"{r.life_fixed:.4f}"]
                for r in table3(hw, battery)]
    else:
        alt = HardwareProfile(
            e_tx_w=hw.e_tx_w, e_rx_w=hw.e_rx_w, e_r_m=hw.e_r_m,
            e_w_m=hw.e_w_m, e_resyn_m=hw.e_resyn_m, b_size=hw.b_size,
            **TABLE5_ALT_PROFILE_KW)
        header = ["lambda_label", "rate_per_s",
                  "t_star_a_s", "power_a_uw", "life_a_yr",
                  "t_star_b_s", "power_b_uw", "life_b_yr"]
        rows = [[f"{r.lambda_label:g}", f"{r.rate:g}",
                 f"{r.t_star[0]:.2f}", f"{r.power[0]:.2f}", f"{r.years[0]:.3f}",
                 f"{r.t_star[1]:.2f}", f"{r.power[1]:.2f}", f"{r.years[1]:.3f}"]
                for r in table5((hw, alt), battery)]
    _echo_rows(header, rows, out_path)
    return EXIT_OK


def _parse_overrides(pairs) -> dict:
    out = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise ConfigError(f"--set expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def cmd_sweep(fig: int, overrides, out_path) -> int:
    header, rows = sweeps.sweep(fig, overrides)
    formatted = [[f"{v:.6g}" if isinstance(v, float) else v for v in row]
                 for row in rows]
    _echo_rows(header, formatted, out_path)
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, seed_override, trace_path, as_csv) -> int:
    traffic = _need(cfg, "traffic", "traffic")
    policy = _need(cfg, "policy", "policy")
    if cfg.cycles is None and cfg.sim_time is None:
        raise ConfigError("this command needs [sim] cycles or sim_time")
    hw = cfg.hardware
    _warn_unequal_radio(hw)
    seed = cfg.seed if seed_override is None else seed_override
    sim_cfg = SimConfig(hardware=hw, traffic=traffic, policy=policy,
                        cycles=cfg.cycles, sim_time=cfg.sim_time, seed=seed,
                        quantized_banks=cfg.quantized_banks)
    result = run(sim_cfg, trace_path=trace_path)
    if isinstance(policy, FixedSize):
        analytic = avg_power_fs(hw, traffic, policy.b)
        label = f"fixed_size b={policy.b:g}"
    elif isinstance(policy, FixedInterval):
        analytic = avg_power_fi(hw, traffic, policy.T)
        label = f"fixed_interval T={policy.T:g}"
    else:
        analytic = no_buffer_power(hw, traffic)
        label = "no_buffer"
    rel_err = (result.avg_power - analytic) / analytic
    if as_csv:
        _echo_rows(
            ["policy", "cycles", "sim_power_uw", "analytic_power_uw",
             "rel_err", "stderr_uw", "mean_tau", "var_tau", "backend"],
            [[label, result.cycles, repr(result.avg_power), repr(analytic),
              f"{rel_err:.3e}", repr(result.stderr_power),
              repr(result.mean_tau), repr(result.var_tau), result.backend]],
            None)
    else:
        print(f"policy:            {label}")
        print(f"backend:           {result.backend}")
        print(f"cycles simulated:  {result.cycles}")
        print(f"simulated power:   {result.avg_power:.4f} uW "
              f"(stderr {result.stderr_power:.4f})")
        print(f"analytic power:    {analytic:.4f} uW")
        print(f"relative error:    {rel_err:+.3%}")
        print(f"mean/var tau:      {result.mean_tau:.4f} / {result.var_tau:.4f}")
        print(f"mean cycle length: {result.mean_cycle_len:.4f} s")
    return EXIT_OK


def cmd_tree(cfg: RunConfig, extremes: bool, as_csv: bool) -> int:
    children = cfg.children
    if not children:
        raise ConfigError("this command needs a [tree] section with children")
    hw = cfg.hardware
    t_p = parent_optimal_interval(hw, children)
    power = parent_power(hw, children)
    total = sum(c.bandwidth for c in children)
    k = len(children)
    rows = [["t_p_star_s", f"{t_p:.4f}"],
            ["parent_power_uw", f"{power:.4f}"],
            ["total_bandwidth_bytes_s", f"{total:g}"],
            ["children", k]]
    if extremes:
        bound = range_bound(hw, total, k)
        rows += [["uniform_power_uw",
                  f"{parent_power(hw, uniform_vector(total, k)):.4f}"],
                 ["degenerate_power_uw",
                  f"{parent_power(hw, degenerate_vector(total, k)):.4f}"],
                 ["range_bound_uw", f"{bound:.4f}"]]
    if as_csv:
        _echo_rows(["quantity", "value"], rows, None)
    else:
        for name, value in rows:
            print(f"{name}: {value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerbuf",
        description="Power models and simulation for sensor-node buffering")
    sub = parser.add_subparsers(dest="command", required=True)

    p_opt = sub.add_parser("optimize", help="optimal threshold or interval")
    p_opt.add_argument("config")
    p_opt.add_argument("--scheme", choices=("size", "interval"),
                       required=True)
    p_opt.add_argument("--csv", action="store_true")
    p_opt.add_argument("--out")

    p_table = sub.add_parser("table", help="reference comparison tables")
    p_table.add_argument("config", nargs="?")
    p_table.add_argument("--which", type=int, choices=(3, 5), required=True)
    p_table.add_argument("--out")

    p_sweep = sub.add_parser("sweep", help="figure-reproduction data")
    p_sweep.add_argument("--fig", type=int, required=True,
                         choices=sweeps.FIGURE_IDS)
    p_sweep.add_argument("--set", action="append", metavar="KEY=VALUE")
    p_sweep.add_argument("--out")

    p_sim = sub.add_parser("simulate", help="Monte Carlo oracle run")
    p_sim.add_argument("config")
    p_sim.add_argument("--seed", type=int)
    p_sim.add_argument("--trace", metavar="PATH")
    p_sim.add_argument("--csv", action="store_true")
    p_sim.add_argument("--out")

    p_tree = sub.add_parser("tree", help="collection-tree parent analysis")
    p_tree.add_argument("config")
    p_tree.add_argument("--extremes", action="store_true")
    p_tree.add_argument("--csv", action="store_true")
    p_tree.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "table":
            cfg = load_config(args.config) if args.config else _default_config()
            return cmd_table(cfg, args.which, args.out)
        if args.command == "sweep":
            return cmd_sweep(args.fig, _parse_overrides(args.set), args.out)
        # report-style commands write to stdout; --out redirects that
        with _report_target(args.out):
            if args.command == "optimize":
                cfg = load_config(args.config)
                return cmd_optimize(cfg, args.scheme, args.csv)
            if args.command == "simulate":
                cfg = load_config(args.config)
                return cmd_simulate(cfg, args.seed, args.trace, args.csv)
            cfg = load_config(args.config)
            return cmd_tree(cfg, args.extremes, args.csv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PowerBufError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def _default_config() -> RunConfig:
    return RunConfig(hardware=default_table2_profile(),
                     battery=Battery(2700.0, 3.3), traffic=None, policy=None,
                     cycles=None, sim_time=None, seed=0,
                     quantized_banks=False, children=None)


if __name__ == "__main__":
    sys.exit(main())
