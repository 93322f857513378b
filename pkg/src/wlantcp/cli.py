"""Command line front end: run scenario tables and diff the estimators.

Renders one table row per scenario with the analytic throughput, the
simulated mean with its 95% confidence half-width, and the relative
error between the two.  Exit code 0 means every compared row stayed
within the tolerance, 1 means some row exceeded it, 2 means a row or
the configuration failed outright.

CSV columns are fixed.  Aggregate tables:
    row,profile,w_down,w_up,ref_mbps,analysis_mbps,sim_mbps,
    sim_ci_mbps,rel_err_pct,status
Split (per-direction) tables:
    row,profile,w_down,w_up,ref_down_mbps,ref_up_mbps,
    analysis_down_mbps,analysis_up_mbps,sim_down_mbps,sim_down_ci_mbps,
    sim_up_mbps,sim_up_ci_mbps,rel_err_down_pct,rel_err_up_pct,status

The WLANTCP_OUTDIR environment variable sets the directory where
relative output file paths (--beta-dump) are created; default is the
working directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .config import ConfigError, RunConfig, parse_config
from .model import CollisionPolicy, Scenario, throughput
from .phy import Fidelity, builtin_profile
from .presets import PRESETS, PresetRow
from .saturation import build_table, dump_csv
from .simulator import estimate, run_replications

_AGG_COLS = ("row", "profile", "w_down", "w_up", "ref_mbps",
             "analysis_mbps", "sim_mbps", "sim_ci_mbps", "rel_err_pct",
             "status")
_SPLIT_COLS = ("row", "profile", "w_down", "w_up", "ref_down_mbps",
               "ref_up_mbps", "analysis_down_mbps", "analysis_up_mbps",
               "sim_down_mbps", "sim_down_ci_mbps", "sim_up_mbps",
               "sim_up_ci_mbps", "rel_err_down_pct", "rel_err_up_pct",
               "status")


@dataclass(frozen=True)
class TableResult:
    """Rendered document plus the row data and the exit-code verdict."""

    document: str
    rows: tuple[dict, ...]
    within_tolerance: bool
    had_errors: bool

    @property
    def exit_code(self) -> int:
        if self.had_errors:
            return 2
        return 0 if self.within_tolerance else 1


@dataclass(frozen=True)
class _Settings:
    mode: str
    replications: int
    horizon_s: float
    seed: int
    collision_policy: CollisionPolicy
    fidelity: Fidelity
    n_max: int
    output_format: str
    tolerance_pct: float
    workers: int | None

    @property
    def warmup_s(self) -> float:
        return 2.0 if self.horizon_s > 4.0 else 0.1 * self.horizon_s


def _rel_err_pct(analysis: float, sim: float) -> float:
    return 100.0 * abs(analysis - sim) / analysis


def _compute_row(spec: PresetRow, index: int, s: _Settings) -> dict:
    row: dict = {key: None for key in (_SPLIT_COLS if spec.split
                                       else _AGG_COLS)}
    row.update(row=spec.label, profile=spec.profile,
               w_down=spec.w_down, w_up=spec.w_up)
    if spec.split:
        row.update(ref_down_mbps=spec.ref_download_mbps,
                   ref_up_mbps=spec.ref_upload_mbps)
    else:
        row.update(ref_mbps=spec.ref_aggregate_mbps)
    try:
        scenario = Scenario.from_windows(spec.downloads, spec.uploads)
        profile = builtin_profile(spec.profile)
        if s.mode in ("analyze", "both"):
            report = throughput(scenario, profile, n_max=s.n_max,
                                policy=s.collision_policy,
                                fidelity=s.fidelity)
            if spec.split:
                row.update(
                    analysis_down_mbps=report.phi_download_bps / 1e6,
                    analysis_up_mbps=report.phi_upload_bps / 1e6)
            else:
                row.update(analysis_mbps=report.phi_aggregate_bps / 1e6)
        if s.mode in ("simulate", "both"):
            stats = run_replications(
                scenario, profile, s.replications, s.horizon_s,
                s.seed + 100000 * index, fidelity=s.fidelity,
                warmup_s=s.warmup_s, workers=s.workers)
            if len(stats) >= 2:
                est = estimate(stats)
                means = (est.aggregate_mean_bps, est.download_mean_bps,
                         est.upload_mean_bps)
                cis = (est.aggregate_ci_bps, est.download_ci_bps,
                       est.upload_ci_bps)
            else:
                only = stats[0]
                means = (only.aggregate_bps, only.download_bps,
                         only.upload_bps)
                cis = (None, None, None)
            if spec.split:
                row.update(
                    sim_down_mbps=means[1] / 1e6,
                    sim_down_ci_mbps=None if cis[1] is None else cis[1] / 1e6,
                    sim_up_mbps=means[2] / 1e6,
                    sim_up_ci_mbps=None if cis[2] is None else cis[2] / 1e6)
            else:
                row.update(
                    sim_mbps=means[0] / 1e6,
                    sim_ci_mbps=None if cis[0] is None else cis[0] / 1e6)
        if s.mode == "both":
            if spec.split:
                err_d = _rel_err_pct(row["analysis_down_mbps"],
                                     row["sim_down_mbps"])
                err_u = _rel_err_pct(row["analysis_up_mbps"],
                                     row["sim_up_mbps"])
                row.update(rel_err_down_pct=err_d, rel_err_up_pct=err_u)
                ok = max(err_d, err_u) <= s.tolerance_pct
            else:
                err = _rel_err_pct(row["analysis_mbps"], row["sim_mbps"])
                row.update(rel_err_pct=err)
                ok = err <= s.tolerance_pct
            row["status"] = "ok" if ok else "outside-tolerance"
        else:
            row["status"] = "ok"
    except Exception as exc:
        row["status"] = f"error: {exc}"
    return row


def _fmt_cell(value, fmt: str, missing: str) -> str:
    if value is None:
        return missing
    if isinstance(value, float):
        return format(value, fmt)
    return str(value)


def _render_csv(cols, rows) -> str:
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(_fmt_cell(row[c], ".6f", "") for c in cols))
    return "\n".join(lines) + "\n"


def _render_markdown(cols, rows) -> str:
    lines = ["| " + " | ".join(cols) + " |",
             "|" + "|".join(" --- " for _ in cols) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(_fmt_cell(row[c], ".4f", "-")
                                       for c in cols) + " |")
    return "\n".join(lines) + "\n"


def _render_json(cols, rows, s: _Settings, within: bool,
                 had_errors: bool) -> str:
    doc = {
        "version": __version__,
        "mode": s.mode,
        "replications": s.replications,
        "horizon_s": s.horizon_s,
        "seed": s.seed,
        "collision_policy": s.collision_policy.value,
        "fidelity": s.fidelity.value,
        "n_max": s.n_max,
        "tolerance_pct": s.tolerance_pct,
        "columns": list(cols),
        "rows": [dict(row) for row in rows],
        "within_tolerance": within,
        "had_errors": had_errors,
    }
    return json.dumps(doc, indent=2) + "\n"


def run_tables(config_or_preset: RunConfig | str, *,
               mode: str | None = None, replications: int | None = None,
               horizon_s: float | None = None, seed: int | None = None,
               collision_policy: CollisionPolicy | None = None,
               fidelity: Fidelity | None = None, n_max: int | None = None,
               output_format: str | None = None, tolerance_pct: float = 2.0,
               workers: int | None = None) -> TableResult:
    """Evaluate a config or preset and render its comparison table.

    Keyword arguments override the corresponding config fields; preset
    runs start from the config defaults.  Every row is an independent
    single-profile run seeded deterministically from the base seed.
    """
    if isinstance(config_or_preset, str):
        if config_or_preset not in PRESETS:
            raise ConfigError(f"unknown preset {config_or_preset!r}; "
                              f"choose from {sorted(PRESETS)}")
        specs = list(PRESETS[config_or_preset])
        base = RunConfig(profile=specs[0].profile,
                         downloads=specs[0].downloads,
                         uploads=specs[0].uploads)
    else:
        base = config_or_preset
        specs = [PresetRow("cfg-1", base.profile,
                           tuple(base.downloads), tuple(base.uploads))]
    s = _Settings(
        mode=mode or base.mode,
        replications=replications or base.replications,
        horizon_s=horizon_s or base.horizon_s,
        seed=base.seed if seed is None else seed,
        collision_policy=collision_policy or base.collision_policy,
        fidelity=fidelity or base.fidelity,
        n_max=n_max or base.n_max,
        output_format=output_format or base.output_format,
        tolerance_pct=tolerance_pct,
        workers=workers)
    rows = tuple(_compute_row(spec, i, s) for i, spec in enumerate(specs))
    split = specs[0].split
    cols = _SPLIT_COLS if split else _AGG_COLS
    had_errors = any(str(row["status"]).startswith("error") for row in rows)
    within = all(row["status"] == "ok" for row in rows if
                 not str(row["status"]).startswith("error"))
    if s.output_format == "csv":
        document = _render_csv(cols, rows)
    elif s.output_format == "json":
        document = _render_json(cols, rows, s, within, had_errors)
    else:
        document = _render_markdown(cols, rows)
    return TableResult(document=document, rows=rows,
                       within_tolerance=within, had_errors=had_errors)


def _out_path(path: str) -> str:
    if os.path.isabs(path):
        return path
    return os.path.join(os.environ.get("WLANTCP_OUTDIR", "."), path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wlantcp",
        description="AP TCP throughput tables by analysis and simulation")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", metavar="PATH",
                        help="JSON run configuration file")
    source.add_argument("--preset", choices=sorted(PRESETS),
                        help="built-in scenario table")
    parser.add_argument("--mode", choices=("analyze", "simulate", "both"))
    parser.add_argument("--replications", type=int, metavar="N")
    parser.add_argument("--horizon", type=float, metavar="SECONDS",
                        dest="horizon_s")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--collision-policy",
                        choices=[p.value for p in CollisionPolicy])
    parser.add_argument("--fidelity", choices=[f.value for f in Fidelity])
    parser.add_argument("--format", choices=("csv", "json", "markdown"),
                        dest="output_format")
    parser.add_argument("--tolerance", type=float, default=2.0,
                        metavar="PCT", help="relative error bound, percent")
    parser.add_argument("--beta-dump", metavar="PATH",
                        help="write the saturated access probability "
                             "table as CSV")
    parser.add_argument("--workers", type=int, default=None, metavar="N",
                        help="worker processes for replications")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config is not None:
            with open(args.config, encoding="utf-8") as handle:
                target: RunConfig | str = parse_config(handle.read())
        else:
            target = args.preset
        result = run_tables(
            target, mode=args.mode, replications=args.replications,
            horizon_s=args.horizon_s, seed=args.seed,
            collision_policy=(None if args.collision_policy is None
                              else CollisionPolicy(args.collision_policy)),
            fidelity=(None if args.fidelity is None
                      else Fidelity(args.fidelity)),
            output_format=args.output_format,
            tolerance_pct=args.tolerance, workers=args.workers)
        if args.beta_dump:
            if isinstance(target, RunConfig):
                profile = builtin_profile(target.profile)
                n_max = target.n_max
            else:
                profile = builtin_profile(PRESETS[target][0].profile)
                n_max = 40
            path = _out_path(args.beta_dump)
            os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
            dump_csv(build_table(n_max + 1, profile), path)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(result.document)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
