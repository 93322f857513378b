"""Analytic throughput for every preset scenario vs its reference value.

Prints one line per preset row under both collision policies and plots
the aggregate predictions against the bundled reference numbers the
presets carry.  Pure analysis, so the whole sweep takes well under a
second.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from wlantcp import (CollisionPolicy, Scenario, TABLE1, TABLE2, TABLE3,
                     builtin_profile, throughput)

FIGDIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "figures")


def aggregate_mbps(row, policy):
    scenario = Scenario.from_windows(row.downloads, row.uploads)
    report = throughput(scenario, builtin_profile(row.profile), policy=policy)
    return report.phi_aggregate_bps / 1e6


def main():
    os.makedirs(FIGDIR, exist_ok=True)
    rows = TABLE1 + TABLE2
    print(f"{'row':>5} {'profile':>13} {'W_d':>4} {'W_u':>4} "
          f"{'ref':>7} {'mixture':>8} {'simple':>8} {'dev%':>7}")
    mixture, simple, refs = [], [], []
    for row in rows:
        phi_m = aggregate_mbps(row, CollisionPolicy.MIXTURE)
        phi_s = aggregate_mbps(row, CollisionPolicy.PAPER_SIMPLE)
        dev = 100 * (phi_m - row.ref_aggregate_mbps) / row.ref_aggregate_mbps
        print(f"{row.label:>5} {row.profile:>13} {row.w_down:>4} "
              f"{row.w_up:>4} {row.ref_aggregate_mbps:>7.2f} "
              f"{phi_m:>8.3f} {phi_s:>8.3f} {dev:>+7.1f}")
        mixture.append(phi_m)
        simple.append(phi_s)
        refs.append(row.ref_aggregate_mbps)

    print("\nsplit scenarios (download/upload Mbps, mixture policy)")
    for row in TABLE3:
        scenario = Scenario.from_windows(row.downloads, row.uploads)
        report = throughput(scenario, builtin_profile(row.profile))
        print(f"{row.label:>5} analysis {report.phi_download_bps / 1e6:7.3f}"
              f"/{report.phi_upload_bps / 1e6:<7.3f} reference "
              f"{row.ref_download_mbps:7.3f}/{row.ref_upload_mbps:<7.3f}")

    xs = np.arange(len(rows))
    fig, ax = plt.subplots(figsize=(9, 4.2))
    ax.bar(xs - 0.22, refs, 0.44, label="reference", color="0.75")
    ax.plot(xs, mixture, "o", label="mixture policy")
    ax.plot(xs, simple, "x", label="closed-form policy")
    ax.set_xticks(xs, [r.label for r in rows], rotation=45)
    ax.set_ylabel("aggregate TCP throughput (Mbps)")
    ax.set_title("preset scenarios: analysis vs reference")
    ax.legend()
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    out = os.path.join(FIGDIR, "preset_tables.png")
    fig.savefig(out, dpi=130)
    print(f"\nwrote {out}")


if __name__ == "__main__":
    main()
