"""Analytic predictions against event-driven simulation with 95% CIs.

Runs a handful of replications per scenario (enough for tight Student-t
intervals at demo scale) and plots simulated aggregate throughput with
error bars over the analytic curve.  Expect agreement within a percent
or so; the run takes roughly a minute on one core.
"""

import os
import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from wlantcp import (Scenario, builtin_profile, estimate, run_replications,
                     throughput)

FIGDIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "figures")

SCENARIOS = [
    ("802.11b@11", [16, 32], [24, 40]),
    ("802.11b@11", [64], [8, 8, 8]),
    ("802.11g@54", [24, 24, 24], [16, 16]),
    ("802.11g@54", [100], [100]),
    ("802.11g@12", [32, 32], [32]),
    ("802.11b@2", [16, 16], [16, 16]),
]

REPLICATIONS = 8
HORIZON_S = 10.0


def main():
    os.makedirs(FIGDIR, exist_ok=True)
    labels, analysis, means, cis = [], [], [], []
    print(f"{'scenario':>28} {'analysis':>9} {'sim mean':>9} "
          f"{'ci':>7} {'dev%':>6} {'secs':>6}")
    for i, (profile_name, downs, ups) in enumerate(SCENARIOS):
        profile = builtin_profile(profile_name)
        scenario = Scenario.from_windows(downs, ups)
        report = throughput(scenario, profile)
        t0 = time.perf_counter()
        stats = run_replications(scenario, profile, REPLICATIONS,
                                 HORIZON_S, 1000 + 97 * i)
        est = estimate(stats)
        wall = time.perf_counter() - t0
        dev = 100 * (est.aggregate_mean_bps - report.phi_aggregate_bps) \
            / report.phi_aggregate_bps
        tag = f"{profile_name} {downs}/{ups}"
        print(f"{tag:>28} {report.phi_aggregate_bps / 1e6:>9.3f} "
              f"{est.aggregate_mean_bps / 1e6:>9.3f} "
              f"{est.aggregate_ci_bps / 1e6:>7.4f} {dev:>+6.2f} "
              f"{wall:>6.1f}")
        labels.append(tag)
        analysis.append(report.phi_aggregate_bps / 1e6)
        means.append(est.aggregate_mean_bps / 1e6)
        cis.append(est.aggregate_ci_bps / 1e6)

    xs = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(9, 4.5))
    ax.plot(xs, analysis, "s-", label="analysis", color="tab:blue")
    ax.errorbar(xs, means, yerr=cis, fmt="o", capsize=4,
                label=f"simulation ({REPLICATIONS} x {HORIZON_S:.0f} s, "
                      f"95% CI)", color="tab:orange")
    ax.set_xticks(xs, labels, rotation=25, ha="right", fontsize=8)
    ax.set_ylabel("aggregate TCP throughput (Mbps)")
    ax.set_title("renewal-reward analysis vs event-driven simulation")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    out = os.path.join(FIGDIR, "model_vs_simulation.png")
    fig.savefig(out, dpi=130)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
