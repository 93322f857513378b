"""Built-in scenario tables with bundled reference values.

Each preset is a tuple of rows over mixed window populations (24, 20,
and 16 packets).  Reference throughputs are in Mbps: analytic values
plus the reported simulation means and 95% confidence half-widths.
The "table3" preset reuses the "table2" scenarios but carries the
per-direction reference split instead of the aggregate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class PresetRow:
    """One scenario row plus its bundled reference values."""

    label: str
    profile: str
    downloads: tuple[int, ...]
    uploads: tuple[int, ...]
    ref_aggregate_mbps: float | None = None
    ref_sim_aggregate_mbps: float | None = None
    ref_sim_aggregate_ci_mbps: float | None = None
    ref_download_mbps: float | None = None
    ref_upload_mbps: float | None = None
    ref_sim_download_mbps: float | None = None
    ref_sim_upload_mbps: float | None = None

    @property
    def split(self) -> bool:
        """True when the reference values are a download/upload pair."""
        return self.ref_download_mbps is not None

    @property
    def w_down(self) -> int:
        return sum(self.downloads)

    @property
    def w_up(self) -> int:
        return sum(self.uploads)


def _mix(n24: int, n20: int, n16: int) -> tuple[int, ...]:
    return (24,) * n24 + (20,) * n20 + (16,) * n16


TABLE1: tuple[PresetRow, ...] = (
    PresetRow("b-1", "802.11b@11", _mix(1, 2, 3), _mix(4, 2, 3),
              ref_aggregate_mbps=4.38, ref_sim_aggregate_mbps=4.37,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("b-2", "802.11b@11", _mix(2, 1, 3), _mix(4, 2, 3),
              ref_aggregate_mbps=4.38, ref_sim_aggregate_mbps=4.37,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("b-3", "802.11b@5.5", _mix(3, 2, 1), _mix(4, 2, 3),
              ref_aggregate_mbps=3.04, ref_sim_aggregate_mbps=3.04,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("b-4", "802.11b@5.5", _mix(4, 3, 2), _mix(1, 3, 2),
              ref_aggregate_mbps=3.04, ref_sim_aggregate_mbps=3.04,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("b-5", "802.11b@2", _mix(3, 2, 4), _mix(3, 1, 2),
              ref_aggregate_mbps=1.5, ref_sim_aggregate_mbps=1.5,
              ref_sim_aggregate_ci_mbps=0.001),
    PresetRow("b-6", "802.11b@2", _mix(3, 2, 4), _mix(3, 2, 1),
              ref_aggregate_mbps=1.5, ref_sim_aggregate_mbps=1.5,
              ref_sim_aggregate_ci_mbps=0.001),
)

TABLE2: tuple[PresetRow, ...] = (
    PresetRow("g-1", "802.11g@54", _mix(1, 2, 3), _mix(4, 2, 3),
              ref_aggregate_mbps=22.61, ref_sim_aggregate_mbps=22.5,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("g-2", "802.11g@54", _mix(4, 1, 2), _mix(2, 1, 3),
              ref_aggregate_mbps=22.61, ref_sim_aggregate_mbps=22.56,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("g-3", "802.11g@48", _mix(3, 2, 1), _mix(4, 2, 3),
              ref_aggregate_mbps=19.68, ref_sim_aggregate_mbps=19.54,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("g-4", "802.11g@48", _mix(4, 3, 2), _mix(1, 3, 4),
              ref_aggregate_mbps=19.68, ref_sim_aggregate_mbps=19.53,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("g-5", "802.11g@36", _mix(3, 2, 1), _mix(4, 2, 3),
              ref_aggregate_mbps=14.94, ref_sim_aggregate_mbps=14.92,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("g-6", "802.11g@36", _mix(4, 3, 2), _mix(1, 3, 2),
              ref_aggregate_mbps=14.94, ref_sim_aggregate_mbps=14.92,
              ref_sim_aggregate_ci_mbps=0.01),
    PresetRow("g-7", "802.11g@12", _mix(3, 2, 4), _mix(3, 1, 2),
              ref_aggregate_mbps=5.16, ref_sim_aggregate_mbps=5.15,
              ref_sim_aggregate_ci_mbps=0.001),
    PresetRow("g-8", "802.11g@12", _mix(3, 2, 1), _mix(3, 2, 4),
              ref_aggregate_mbps=5.16, ref_sim_aggregate_mbps=5.14,
              ref_sim_aggregate_ci_mbps=0.001),
)

_TABLE3_SPLITS = (
    (8.56, 13.987, 8.51, 14.055),
    (12.68, 9.935, 12.65, 9.9127),
    (8.074, 11.524, 8.016, 11.606),
    (11.011, 8.603, 10.94, 8.6686),
    (6.13, 8.799, 6.12, 8.812),
    (9.24, 5.693, 9.23, 5.701),
    (3.027, 2.127, 3.021, 2.133),
    (2.173, 2.976, 2.164, 2.987),
)

TABLE3: tuple[PresetRow, ...] = tuple(
    replace(row, label=row.label + "-split",
            ref_aggregate_mbps=None, ref_sim_aggregate_mbps=None,
            ref_sim_aggregate_ci_mbps=None,
            ref_download_mbps=down, ref_upload_mbps=up,
            ref_sim_download_mbps=sim_down, ref_sim_upload_mbps=sim_up)
    for row, (down, up, sim_down, sim_up) in zip(TABLE2, _TABLE3_SPLITS))

PRESETS: dict[str, tuple[PresetRow, ...]] = {
    "table1": TABLE1,
    "table2": TABLE2,
    "table3": TABLE3,
}
