"""How TCP windows shape AP throughput: totals matter, splits decide shares.

Left panel: aggregate throughput as the download share of a fixed total
window sweeps from all-upload to all-download, for several profiles.
Right panel: download and upload components for one profile, showing
the proportional split and the window-scale invariance (doubling every
window leaves all three curves untouched).
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from wlantcp import Scenario, builtin_profile, throughput

FIGDIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "figures")

TOTAL = 200


def sweep(profile_name, scale=1):
    profile = builtin_profile(profile_name)
    shares = np.arange(1, TOTAL) / TOTAL
    agg, down, up = [], [], []
    for w_down in range(1, TOTAL):
        scenario = Scenario.from_windows([w_down * scale],
                                         [(TOTAL - w_down) * scale])
        report = throughput(scenario, profile)
        agg.append(report.phi_aggregate_bps / 1e6)
        down.append(report.phi_download_bps / 1e6)
        up.append(report.phi_upload_bps / 1e6)
    return shares, np.array(agg), np.array(down), np.array(up)


def main():
    os.makedirs(FIGDIR, exist_ok=True)
    fig, (ax_a, ax_s) = plt.subplots(1, 2, figsize=(11, 4.2))

    for name in ("802.11g@54", "802.11g@24", "802.11b@11", "802.11b@2"):
        shares, agg, _, _ = sweep(name)
        span = 100 * (agg.max() - agg.min()) / agg.mean()
        print(f"{name:>13}: aggregate {agg.min():7.3f}..{agg.max():7.3f} "
              f"Mbps across splits (span {span:.2f}% of mean)")
        ax_a.plot(shares, agg, label=name)
    ax_a.set_xlabel("download share of total window")
    ax_a.set_ylabel("aggregate throughput (Mbps)")
    ax_a.set_title(f"fixed total window W = {TOTAL}")
    ax_a.legend(fontsize=8)
    ax_a.grid(alpha=0.3)

    shares, agg, down, up = sweep("802.11g@54")
    _, agg2, down2, up2 = sweep("802.11g@54", scale=2)
    assert np.array_equal(agg, agg2) and np.array_equal(down, down2) \
        and np.array_equal(up, up2)
    print("doubling every window reproduces all curves exactly")
    ax_s.plot(shares, agg, label="aggregate", color="0.3")
    ax_s.plot(shares, down, label="download", color="tab:blue")
    ax_s.plot(shares, up, label="upload", color="tab:orange")
    ax_s.plot(shares, agg * shares, ":", color="k", linewidth=1,
              label="share x aggregate")
    ax_s.set_xlabel("download share of total window")
    ax_s.set_ylabel("throughput (Mbps)")
    ax_s.set_title("802.11g@54 split components")
    ax_s.legend(fontsize=8)
    ax_s.grid(alpha=0.3)

    fig.tight_layout()
    out = os.path.join(FIGDIR, "window_sweep.png")
    fig.savefig(out, dpi=130)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
