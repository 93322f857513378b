"""Frame airtimes and saturated attempt rates across PHY profiles.

Left panel: data-segment and TCP-ACK exchange durations for each
built-in profile under both overhead fidelities.  Right panel: the
per-slot attempt probability from the backoff fixed point as the
number of saturated contenders grows, for both contention ladders.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from wlantcp import (Fidelity, Standard, builtin_profile,
                     exchange_durations, solve_beta)

FIGDIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "figures")


def main():
    os.makedirs(FIGDIR, exist_ok=True)
    names = [s.value for s in Standard]
    fig, (ax_t, ax_b) = plt.subplots(1, 2, figsize=(11, 4.2))

    width = 0.2
    xs = np.arange(len(names))
    print("exchange durations (microseconds)")
    print(f"{'profile':>14} {'fidelity':>10} {'t_data':>9} {'t_ack':>8}")
    for j, fidelity in enumerate(Fidelity):
        t_data_us, t_ack_us = [], []
        for name in names:
            d = exchange_durations(builtin_profile(name), fidelity)
            t_data_us.append(d.t_data_s * 1e6)
            t_ack_us.append(d.t_ack_s * 1e6)
            print(f"{name:>14} {fidelity.value:>10} "
                  f"{d.t_data_s * 1e6:9.1f} {d.t_ack_s * 1e6:8.1f}")
        off = (j - 0.5) * 2 * width
        ax_t.bar(xs + off - width / 2, t_data_us, width,
                 label=f"data, {fidelity.value}")
        ax_t.bar(xs + off + width / 2, t_ack_us, width,
                 label=f"ack, {fidelity.value}", alpha=0.7)
    ax_t.set_xticks(xs, names, rotation=20)
    ax_t.set_ylabel("exchange airtime (us)")
    ax_t.set_title("segment and TCP-ACK exchanges")
    ax_t.legend(fontsize=8)

    ks = np.arange(1, 41)
    for cw_min, cw_max, label in ((31, 1023, "cw 31..1023 (11b)"),
                                  (15, 1023, "cw 15..1023 (11g)")):
        betas = [solve_beta(int(k), cw_min, cw_max) for k in ks]
        ax_b.plot(ks, betas, marker=".", label=label)
    ax_b.set_xlabel("saturated contenders k")
    ax_b.set_ylabel("attempt probability per slot")
    ax_b.set_title("backoff fixed point")
    ax_b.legend()
    ax_b.grid(alpha=0.3)

    fig.tight_layout()
    out = os.path.join(FIGDIR, "frame_timings.png")
    fig.savefig(out, dpi=130)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
