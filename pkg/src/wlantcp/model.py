"""Renewal-reward throughput model of an AP serving TCP uploads and downloads.

The number of STAs with nonempty MAC queues evolves as a birth-death
chain embedded at success epochs: from state n the AP wins the next
success with probability 1/(n+1) and fills one more STA queue, while a
STA win empties one.  Its stationary law pi_n = (n+1)/(n! * 2e) weights
per-state mean cycle lengths E_nX; the AP earns reward 1/(n+1) per
cycle, and each AP success carries exactly one TCP segment end to end,
so the aggregate rate is the AP success frequency times the segment
payload.  Download and upload shares then split the aggregate in
proportion to the cumulative advertised windows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .phy import (ExchangeDurations, Fidelity, PhyProfile,
                  exchange_durations)
from .saturation import build_table


class Direction(enum.Enum):
    DOWNLOAD = "download"
    UPLOAD = "upload"


class CollisionPolicy(enum.Enum):
    """How the per-state collision term of the cycle length is formed.

    PAPER_SIMPLE evaluates the literal closed-form expressions: the
    collision probability beta*(1 - (1-beta)^n) and a single collision
    length, the TCP-ACK form.  MIXTURE completes the probability space
    (P_c as the complement of idle and the two success events) and
    weighs the two collision lengths by the chance that the longer
    initial frame type is present among the colliders.
    """

    PAPER_SIMPLE = "paper"
    MIXTURE = "mixture"


class TruncationError(ValueError):
    """State-space cutoff left more stationary mass behind than allowed."""


@dataclass(frozen=True)
class Connection:
    """One long-lived TCP transfer through the AP."""

    direction: Direction
    max_window_pkts: int

    def __post_init__(self):
        if self.max_window_pkts < 1:
            raise ValueError("window must be >= 1 packet")


@dataclass(frozen=True)
class Scenario:
    """A population of simultaneous upload and download connections."""

    connections: tuple[Connection, ...]

    def __post_init__(self):
        if len(self.connections) < 1:
            raise ValueError("need at least one connection")

    @classmethod
    def from_windows(cls, downloads=(), uploads=()) -> "Scenario":
        """Build from two window lists, one entry per STA."""
        conns = tuple(Connection(Direction.DOWNLOAD, int(w)) for w in downloads)
        conns += tuple(Connection(Direction.UPLOAD, int(w)) for w in uploads)
        return cls(conns)

    def _dir(self, direction: Direction) -> list[Connection]:
        return [c for c in self.connections if c.direction is direction]

    @property
    def m_down(self) -> int:
        return len(self._dir(Direction.DOWNLOAD))

    @property
    def m_up(self) -> int:
        return len(self._dir(Direction.UPLOAD))

    @property
    def w_down(self) -> int:
        return sum(c.max_window_pkts for c in self._dir(Direction.DOWNLOAD))

    @property
    def w_up(self) -> int:
        return sum(c.max_window_pkts for c in self._dir(Direction.UPLOAD))

    @property
    def w_total(self) -> int:
        return self.w_down + self.w_up

    @property
    def p_d(self) -> float:
        """Probability the AP's head-of-line frame is a data segment."""
        return self.w_down / self.w_total

    @property
    def p_u(self) -> float:
        """Probability the AP's head-of-line frame is a TCP-ACK."""
        return self.w_up / self.w_total


@dataclass(frozen=True)
class StateMetrics:
    """Per-state slot probabilities and cycle length diagnostics."""

    n: int
    pi_n: float
    p_idle: float
    p_s_ap: float
    p_s_sta: float
    p_c: float
    t_s_ap_s: float
    t_s_sta_s: float
    t_c_s: float
    e_n_x_s: float

    def __post_init__(self):
        total = self.p_idle + self.p_s_ap + self.p_s_sta + self.p_c
        if abs(total - 1.0) > 1e-12:
            raise ValueError("event probabilities must partition to 1")
        if self.e_n_x_s <= 0 or self.pi_n < 0:
            raise ValueError("cycle length must be positive, pi_n >= 0")


@dataclass(frozen=True)
class ThroughputReport:
    """Analytic throughput decomposition for one scenario."""

    phi_aggregate_bps: float
    phi_download_bps: float
    phi_upload_bps: float
    ap_success_rate_per_s: float
    truncation_n_max: int
    truncation_tail_mass: float

    def __post_init__(self):
        parts = self.phi_download_bps + self.phi_upload_bps
        if abs(parts - self.phi_aggregate_bps) > 1e-9 * self.phi_aggregate_bps:
            raise ValueError("split must add up to the aggregate")


def stationary_distribution(n_max: int) -> tuple[np.ndarray, float]:
    """pi_n = (n+1)/(n! * 2e) for n = 0..n_max, plus leftover tail mass.

    Satisfies the detailed balance pi_n/(n+1) = pi_{n+1}*(n+1)/(n+2)
    and sums to 1 over n = 0..infinity since sum (n+1)/n! = 2e.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    n = np.arange(n_max + 1)
    factorials = np.array([math.factorial(int(i)) for i in n], dtype=float)
    pi = (n + 1) / (factorials * 2.0 * math.e)
    tail = max(0.0, 1.0 - float(pi.sum()))
    return pi, tail


def state_event_probs(n: int, beta: float) -> tuple[float, float, float, float]:
    """Per-slot event probabilities with n nonempty STAs plus the AP.

    Returns (p_idle, p_s_ap, p_s_sta, p_c) where p_c completes the
    partition: p_c = 1 - p_idle - p_s_ap - p_s_sta.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    q = 1.0 - beta
    p_idle = q ** (n + 1)
    p_s_ap = beta * q ** n
    p_s_sta = n * beta * q ** n
    p_c = 1.0 - p_idle - p_s_ap - p_s_sta
    if p_c < 0.0:
        # float dust at n = 0 or tiny beta; the exact value is >= 0
        p_c = 0.0
    return p_idle, p_s_ap, p_s_sta, p_c


def appendix_collision_prob(n: int, beta: float) -> float:
    """Literal closed-form collision probability beta*(1-(1-beta)^n).

    Undercounts STA-STA collisions for n >= 2 and does not complete the
    event partition; kept for fidelity experiments under PAPER_SIMPLE.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return beta * (1.0 - (1.0 - beta) ** n)


def _mixture_collision_s(n: int, p_d: float, p_u: float, beta: float,
                         d_rts: float, d_ack: float) -> float:
    """Expected collision length when the longest initial frame rules.

    The AP's colliding frame starts with an RTS w.p. p_d and with a
    TCP-ACK w.p. p_u; each STA's starts with an RTS w.p. p_u and a
    TCP-ACK w.p. p_d.  Conditioned on >= 2 transmitters, the slot lasts
    for the longer type unless every collider sent the shorter one.
    """
    q = 1.0 - beta
    p_c = 1.0 - q ** (n + 1) - (n + 1) * beta * q ** n
    if p_c <= 0.0:
        return d_ack
    if d_rts >= d_ack:
        short, long_, ap_short, sta_short = d_ack, d_rts, p_u, p_d
    else:
        short, long_, ap_short, sta_short = d_rts, d_ack, p_d, p_u
    # P(no long-type frame on air) minus the <= 1-transmitter cases
    none_or_short = ((q + beta * ap_short) * (q + beta * sta_short) ** n
                     - q ** (n + 1)
                     - beta * ap_short * q ** n
                     - n * beta * sta_short * q ** n)
    all_short = max(0.0, none_or_short)
    return (all_short * short + (p_c - all_short) * long_) / p_c


def collision_duration(n: int, scenario: Scenario, profile: PhyProfile,
                       policy: CollisionPolicy, *,
                       beta: float | None = None) -> float:
    """Collision slot length in state n under the chosen policy."""
    if n < 1:
        raise ValueError("collisions require n >= 1")
    durations = exchange_durations(profile)
    if policy is CollisionPolicy.PAPER_SIMPLE:
        return durations.t_colli_tcpack_s
    if beta is None:
        from .saturation import solve_beta
        beta = solve_beta(n + 1, profile.cw_min, profile.cw_max)
    return _mixture_collision_s(n, scenario.p_d, scenario.p_u, beta,
                                durations.t_colli_rts_s,
                                durations.t_colli_tcpack_s)


def mean_cycle_length(n: int, scenario: Scenario,
                      durations: ExchangeDurations, beta: float,
                      collision_policy: CollisionPolicy,
                      slot_time_s: float) -> float:
    """Mean time between successful transmissions in state n.

        E_nX = (P_idle*delta + P_sAP*T_sAP + P_c*T_c + P_sSTA*T_sSTA)
               / (P_sAP + P_sSTA)

    with T_sAP = p_d*T_Data + p_u*T_Ack and T_sSTA = p_u*T_Data +
    p_d*T_Ack.  Under PAPER_SIMPLE the collision term keeps the literal
    closed forms (appendix_collision_prob and the TCP-ACK collision
    length); under MIXTURE it uses the complement probability and the
    expected max-frame length.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    p_idle, p_s_ap, p_s_sta, p_c = state_event_probs(n, beta)
    p_d, p_u = scenario.p_d, scenario.p_u
    t_s_ap = p_d * durations.t_data_s + p_u * durations.t_ack_s
    t_s_sta = p_u * durations.t_data_s + p_d * durations.t_ack_s
    if collision_policy is CollisionPolicy.PAPER_SIMPLE:
        p_coll = appendix_collision_prob(n, beta)
        t_c = durations.t_colli_tcpack_s
    else:
        p_coll = p_c
        t_c = _mixture_collision_s(n, p_d, p_u, beta,
                                   durations.t_colli_rts_s,
                                   durations.t_colli_tcpack_s)
    return ((p_idle * slot_time_s + p_s_ap * t_s_ap + p_coll * t_c
             + p_s_sta * t_s_sta)
            / (p_s_ap + p_s_sta))


def state_metrics(n: int, scenario: Scenario, profile: PhyProfile,
                  policy: CollisionPolicy = CollisionPolicy.MIXTURE,
                  fidelity: Fidelity = Fidelity.PAPER, *,
                  beta: float | None = None,
                  pi_n: float | None = None) -> StateMetrics:
    """Assemble the per-state diagnostic record."""
    if beta is None:
        from .saturation import solve_beta
        beta = solve_beta(n + 1, profile.cw_min, profile.cw_max)
    if pi_n is None:
        pi_n = (n + 1) / (math.factorial(n) * 2.0 * math.e)
    durations = exchange_durations(profile, fidelity)
    p_idle, p_s_ap, p_s_sta, p_c = state_event_probs(n, beta)
    p_d, p_u = scenario.p_d, scenario.p_u
    if n >= 1:
        t_c = collision_duration(n, scenario, profile, policy, beta=beta)
    else:
        t_c = durations.t_colli_tcpack_s
    return StateMetrics(
        n=n, pi_n=pi_n, p_idle=p_idle, p_s_ap=p_s_ap, p_s_sta=p_s_sta,
        p_c=p_c,
        t_s_ap_s=p_d * durations.t_data_s + p_u * durations.t_ack_s,
        t_s_sta_s=p_u * durations.t_data_s + p_d * durations.t_ack_s,
        t_c_s=t_c,
        e_n_x_s=mean_cycle_length(n, scenario, durations, beta, policy,
                                  profile.slot_time_s))


def throughput(scenario: Scenario, profile: PhyProfile, n_max: int = 40,
               policy: CollisionPolicy = CollisionPolicy.MIXTURE,
               fidelity: Fidelity = Fidelity.PAPER) -> ThroughputReport:
    """Renewal-reward aggregate throughput and its directional split.

    AP success rate = sum_n pi_n/(n+1) divided by sum_n pi_n*E_nX; each
    AP success moves exactly one TCP segment end to end (a download
    delivery, or the ACK that releases one upload segment), so the
    aggregate is that rate times 8*L_TCP, split p_d/p_u between the
    directions.
    """
    pi, tail = stationary_distribution(n_max)
    if tail >= 1e-12:
        raise TruncationError(
            f"tail mass {tail:.3e} at n_max={n_max} exceeds 1e-12")
    durations = exchange_durations(profile, fidelity)
    betas = build_table(n_max + 1, profile)
    reward = 0.0
    cycle = 0.0
    for n in range(n_max + 1):
        beta = betas.beta(n + 1)
        e_n_x = mean_cycle_length(n, scenario, durations, beta, policy,
                                  profile.slot_time_s)
        reward += pi[n] / (n + 1)
        cycle += pi[n] * e_n_x
    rate = reward / cycle
    aggregate = rate * profile.tcp_segment_bits
    return ThroughputReport(
        phi_aggregate_bps=aggregate,
        phi_download_bps=scenario.p_d * aggregate,
        phi_upload_bps=scenario.p_u * aggregate,
        ap_success_rate_per_s=rate,
        truncation_n_max=n_max,
        truncation_tail_mass=tail)


def per_sta_rates(report: ThroughputReport,
                  scenario: Scenario) -> list[float]:
    """Window-proportional long-run rate of each connection, in bps."""
    rates = []
    for conn in scenario.connections:
        if conn.direction is Direction.DOWNLOAD:
            rates.append(report.phi_download_bps
                         * conn.max_window_pkts / scenario.w_down)
        else:
            rates.append(report.phi_upload_bps
                         * conn.max_window_pkts / scenario.w_up)
    return rates


def contention_free_throughput(profile: PhyProfile,
                               fidelity: Fidelity = Fidelity.PAPER) -> float:
    """Aggregate rate of an ideal loss-free AP/STA alternation, in bps.

    One data exchange and one TCP-ACK exchange move one segment with no
    idle slots or collisions: 8*L_TCP / (t_data + t_ack).  Useful upper
    reference when judging how much contention costs.
    """
    d = exchange_durations(profile, fidelity)
    return profile.tcp_segment_bits / (d.t_data_s + d.t_ack_s)
