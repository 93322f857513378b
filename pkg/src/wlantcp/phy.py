"""PHY profiles and 802.11 DCF exchange durations.

Every TCP data segment crosses the channel as an RTS/CTS protected
exchange; TCP-ACK segments use basic access.  The durations computed
here are the building blocks of both the analytical model and the
simulator: t_data (full protected data exchange), t_ack (basic-access
TCP-ACK exchange) and the two collision lengths (initial frame heard
on the air plus the EIFS deferral that follows).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace


class Standard(enum.Enum):
    """Built-in PHY operating points (standard @ data rate in Mbps)."""

    B11 = "802.11b@11"
    B5_5 = "802.11b@5.5"
    B2 = "802.11b@2"
    G54 = "802.11g@54"
    G48 = "802.11g@48"
    G36 = "802.11g@36"
    G24 = "802.11g@24"
    G18 = "802.11g@18"
    G12 = "802.11g@12"
    G6 = "802.11g@6"


class Fidelity(enum.Enum):
    """MAC-ACK rate convention inside the TCP-ACK exchange.

    PAPER sends the MAC-level ACK at the data rate, which is how the
    timing expressions behind the reference tables are written.
    STANDARDS sends it at the control rate, the usual standards
    convention.  The two coincide whenever data and control rates are
    equal (802.11b at 2 Mbps, 802.11g at 6 Mbps).
    """

    PAPER = "paper"
    STANDARDS = "standards"


def _is_pow2(x: int) -> bool:
    return x > 0 and (x & (x - 1)) == 0


@dataclass(frozen=True)
class PhyProfile:
    """One PHY operating point plus the frame sizes riding on it."""

    name: str
    data_rate_bps: float
    control_rate_bps: float
    preamble_time_s: float
    phy_header_time_s: float
    slot_time_s: float
    sifs_s: float
    difs_s: float
    eifs_s: float
    cw_min: int
    cw_max: int
    mac_header_bytes: int = 34
    rts_bytes: int = 20
    cts_bytes: int = 14
    mac_ack_bytes: int = 14
    ip_header_bytes: int = 20
    tcp_header_bytes: int = 20
    tcp_ack_payload_bytes: int = 20
    tcp_data_payload_bytes: int = 1460

    def __post_init__(self):
        if self.data_rate_bps <= 0 or self.control_rate_bps <= 0:
            raise ValueError("rates must be positive")
        if self.data_rate_bps < self.control_rate_bps:
            raise ValueError("data rate below control rate")
        if self.preamble_time_s < 0:
            raise ValueError("preamble time must be >= 0")
        for field in ("phy_header_time_s", "slot_time_s", "sifs_s",
                      "difs_s", "eifs_s"):
            if getattr(self, field) <= 0:
                raise ValueError(f"{field} must be positive")
        for field in ("mac_header_bytes", "rts_bytes", "cts_bytes",
                      "mac_ack_bytes", "ip_header_bytes",
                      "tcp_header_bytes", "tcp_ack_payload_bytes",
                      "tcp_data_payload_bytes"):
            if getattr(self, field) <= 0:
                raise ValueError(f"{field} must be positive")
        if not 0 < self.cw_min < self.cw_max:
            raise ValueError("need 0 < cw_min < cw_max")
        if not (_is_pow2(self.cw_min + 1) and _is_pow2(self.cw_max + 1)):
            raise ValueError("cw_min+1 and cw_max+1 must be powers of two")

    @property
    def retry_stages(self) -> int:
        """Number of contention-window doublings from cw_min to cw_max."""
        return ((self.cw_max + 1).bit_length()
                - (self.cw_min + 1).bit_length())

    @property
    def tcp_segment_bits(self) -> int:
        """Payload bits credited per delivered TCP segment."""
        return 8 * self.tcp_data_payload_bytes


@dataclass(frozen=True)
class ExchangeDurations:
    """Channel occupancy of the four event types seen by a contender."""

    t_data_s: float
    t_ack_s: float
    t_colli_rts_s: float
    t_colli_tcpack_s: float

    def __post_init__(self):
        for field in ("t_data_s", "t_ack_s", "t_colli_rts_s",
                      "t_colli_tcpack_s"):
            if getattr(self, field) <= 0:
                raise ValueError(f"{field} must be positive")
        if self.t_data_s <= self.t_ack_s:
            raise ValueError("data exchange must outlast TCP-ACK exchange")


_B_COMMON = dict(control_rate_bps=2e6, preamble_time_s=144e-6,
                 phy_header_time_s=48e-6, slot_time_s=20e-6, sifs_s=10e-6,
                 difs_s=50e-6, eifs_s=364e-6, cw_min=31, cw_max=1023)
_G_COMMON = dict(control_rate_bps=6e6, preamble_time_s=0.0,
                 phy_header_time_s=20e-6, slot_time_s=9e-6, sifs_s=10e-6,
                 difs_s=28e-6, eifs_s=364e-6, cw_min=15, cw_max=1023)

_PROFILES = {
    Standard.B11: PhyProfile(name="802.11b@11", data_rate_bps=11e6, **_B_COMMON),
    Standard.B5_5: PhyProfile(name="802.11b@5.5", data_rate_bps=5.5e6, **_B_COMMON),
    Standard.B2: PhyProfile(name="802.11b@2", data_rate_bps=2e6, **_B_COMMON),
    Standard.G54: PhyProfile(name="802.11g@54", data_rate_bps=54e6, **_G_COMMON),
    Standard.G48: PhyProfile(name="802.11g@48", data_rate_bps=48e6, **_G_COMMON),
    Standard.G36: PhyProfile(name="802.11g@36", data_rate_bps=36e6, **_G_COMMON),
    Standard.G24: PhyProfile(name="802.11g@24", data_rate_bps=24e6, **_G_COMMON),
    Standard.G18: PhyProfile(name="802.11g@18", data_rate_bps=18e6, **_G_COMMON),
    Standard.G12: PhyProfile(name="802.11g@12", data_rate_bps=12e6, **_G_COMMON),
    Standard.G6: PhyProfile(name="802.11g@6", data_rate_bps=6e6, **_G_COMMON),
}


def builtin_profile(standard: Standard | str) -> PhyProfile:
    """Return the PhyProfile for a Standard or its selector string."""
    if isinstance(standard, str):
        try:
            standard = Standard(standard)
        except ValueError:
            valid = ", ".join(s.value for s in Standard)
            raise ValueError(
                f"unknown profile {standard!r}; expected one of {valid}"
            ) from None
    return _PROFILES[standard]


def custom_profile(base: PhyProfile | Standard | str,
                   **overrides) -> PhyProfile:
    """Clone a profile with selected fields replaced."""
    if not isinstance(base, PhyProfile):
        base = builtin_profile(base)
    return replace(base, **overrides)


def frame_airtime(n_bytes: int, rate_bps: float, profile: PhyProfile) -> float:
    """Airtime of one frame: preamble + PHY header + payload bits / rate."""
    if n_bytes <= 0:
        raise ValueError("frame size must be positive")
    if rate_bps <= 0:
        raise ValueError("rate must be positive")
    return (profile.preamble_time_s + profile.phy_header_time_s
            + 8.0 * n_bytes / rate_bps)


def t_data(profile: PhyProfile) -> float:
    """Duration of a successful RTS/CTS protected TCP data exchange.

    RTS - SIFS - CTS - SIFS - DATA - SIFS - MAC-ACK - DIFS, controls at
    the control rate, the 1534-byte data frame at the data rate.
    """
    data_bytes = (profile.mac_header_bytes + profile.ip_header_bytes
                  + profile.tcp_header_bytes + profile.tcp_data_payload_bytes)
    ctrl = profile.control_rate_bps
    return (frame_airtime(profile.rts_bytes, ctrl, profile)
            + profile.sifs_s
            + frame_airtime(profile.cts_bytes, ctrl, profile)
            + profile.sifs_s
            + frame_airtime(data_bytes, profile.data_rate_bps, profile)
            + profile.sifs_s
            + frame_airtime(profile.mac_ack_bytes, ctrl, profile)
            + profile.difs_s)


def tcp_ack_frame_bytes(profile: PhyProfile) -> int:
    """On-air size of a TCP-ACK segment (MAC + IP headers + ACK)."""
    return (profile.mac_header_bytes + profile.ip_header_bytes
            + profile.tcp_ack_payload_bytes)


def t_ack(profile: PhyProfile, fidelity: Fidelity = Fidelity.PAPER) -> float:
    """Duration of a successful basic-access TCP-ACK exchange.

    TCP-ACK frame - SIFS - MAC-ACK - DIFS.  The TCP-ACK frame goes at
    the data rate; the MAC-ACK rate follows the fidelity flag.
    """
    mac_ack_rate = (profile.data_rate_bps if fidelity is Fidelity.PAPER
                    else profile.control_rate_bps)
    return (frame_airtime(tcp_ack_frame_bytes(profile),
                          profile.data_rate_bps, profile)
            + profile.sifs_s
            + frame_airtime(profile.mac_ack_bytes, mac_ack_rate, profile)
            + profile.difs_s)


def collision_durations(profile: PhyProfile) -> tuple[float, float]:
    """(RTS-involved, all-TCP-ACK) collision lengths, EIFS included.

    A collision occupies the channel for the longest initial frame
    transmitted, then every station defers EIFS.  At 11 Mbps and all
    802.11g rates the 20-byte RTS at the slow control rate outlasts the
    74-byte TCP-ACK at the data rate; at 2 and 5.5 Mbps the ordering
    flips.
    """
    rts = (frame_airtime(profile.rts_bytes, profile.control_rate_bps, profile)
           + profile.eifs_s)
    ack = (frame_airtime(tcp_ack_frame_bytes(profile),
                         profile.data_rate_bps, profile)
           + profile.eifs_s)
    return rts, ack


def exchange_durations(profile: PhyProfile,
                       fidelity: Fidelity = Fidelity.PAPER) -> ExchangeDurations:
    """Bundle the four event durations for a profile."""
    rts, ack = collision_durations(profile)
    return ExchangeDurations(t_data_s=t_data(profile),
                             t_ack_s=t_ack(profile, fidelity),
                             t_colli_rts_s=rts,
                             t_colli_tcpack_s=ack)
