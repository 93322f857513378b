"""Slot-synchronized DCF simulator of an AP serving TCP transfers.

Nodes contend with binary exponential backoff.  Data segments ride an
RTS/CTS exchange, TCP-ACKs use basic access.  Backoff counters advance
once per virtual slot: an idle slot, a success, or a collision each
count as one, so a busy period decrements every non-transmitting
contender by one.  Transmitters redraw after their slot resolves.

TCP state is a closed loop of per-connection tokens: every segment of a
connection's advertised window is either queued at the AP or queued at
its STA, so window conservation holds structurally.  A delivered
download segment becomes a TCP-ACK at the STA; a delivered upload
TCP-ACK releases the next segment at the STA (zero-RTT server); the
reverse transfers feed the AP backlog.
"""

from __future__ import annotations

import enum
import json
import math
import os
import random
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats as _scipy_stats

from .model import Direction, Scenario
from .phy import Fidelity, PhyProfile, exchange_durations


class Role(enum.Enum):
    AP = "ap"
    DOWNLOADER = "download_sta"
    UPLOADER = "upload_sta"


@dataclass(slots=True)
class NodeState:
    """Mutable per-node MAC state; queue contents live in the engine."""

    node_id: int
    role: Role
    contention_window: int
    backoff_counter: int | None = None

    def __post_init__(self):
        if self.contention_window < 1:
            raise ValueError("contention window must be >= 1")
        bc = self.backoff_counter
        if bc is not None and not 0 <= bc <= self.contention_window:
            raise ValueError("backoff counter must lie in [0, cw]")


class CIUnavailableError(ValueError):
    """Confidence intervals need at least two replications."""


_TUPLE_INT_FIELDS = ("conn_windows", "attempts_by_node",
                     "conn_segments_total", "conn_acks_total",
                     "conn_segments", "conn_acks")


@dataclass(frozen=True)
class SimStats:
    """One replication's counters; full-run unless prefixed measured_.

    Throughput properties use the measured (post-warmup) window; the
    full-run counters back the conservation and slot-accounting checks.
    """

    seed: int
    horizon_s: float
    warmup_s: float
    segment_bits: int
    conn_directions: tuple[str, ...]
    conn_windows: tuple[int, ...]
    idle_slots: int
    data_successes: int
    ack_successes: int
    rts_collisions: int
    tcpack_collisions: int
    attempts_by_node: tuple[int, ...]
    ap_successes: int
    ap_empty_target_successes: int
    conn_segments_total: tuple[int, ...]
    conn_acks_total: tuple[int, ...]
    measured_idle_slots: int
    measured_data_successes: int
    measured_ack_successes: int
    measured_rts_collisions: int
    measured_tcpack_collisions: int
    conn_segments: tuple[int, ...]
    conn_acks: tuple[int, ...]
    elapsed_s: float
    measured_s: float

    @property
    def virtual_slots(self) -> int:
        return (self.idle_slots + self.data_successes + self.ack_successes
                + self.rts_collisions + self.tcpack_collisions)

    @property
    def empty_target_fraction(self) -> float:
        if self.ap_successes == 0:
            return 0.0
        return self.ap_empty_target_successes / self.ap_successes

    def _bits(self, direction: str) -> int:
        segs = sum(s for s, d in zip(self.conn_segments,
                                     self.conn_directions) if d == direction)
        return segs * self.segment_bits

    @property
    def download_bits(self) -> int:
        return self._bits(Direction.DOWNLOAD.value)

    @property
    def upload_bits(self) -> int:
        return self._bits(Direction.UPLOAD.value)

    @property
    def aggregate_bps(self) -> float:
        return (self.download_bits + self.upload_bits) / self.measured_s

    @property
    def download_bps(self) -> float:
        return self.download_bits / self.measured_s

    @property
    def upload_bps(self) -> float:
        return self.upload_bits / self.measured_s

    def to_json_line(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json_line(cls, line: str) -> "SimStats":
        d = json.loads(line)
        for key in _TUPLE_INT_FIELDS:
            d[key] = tuple(int(v) for v in d[key])
        d["conn_directions"] = tuple(str(v) for v in d["conn_directions"])
        return cls(**d)


@dataclass(frozen=True)
class SaturatedStats:
    """Attempt counters of a saturated contention sub-run."""

    nodes: int
    virtual_slots: int
    attempts: int
    seed: int

    @property
    def attempt_frequency(self) -> float:
        """Per-node per-virtual-slot transmission attempt frequency."""
        return self.attempts / (self.nodes * self.virtual_slots)


@dataclass(frozen=True)
class SimEstimate:
    """Across-replication means with 95% Student-t confidence bounds."""

    replications: int
    aggregate_mean_bps: float
    aggregate_ci_bps: float
    download_mean_bps: float
    download_ci_bps: float
    upload_mean_bps: float
    upload_ci_bps: float


def run(scenario: Scenario, profile: PhyProfile, duration_s: float,
        seed: int, *, fidelity: Fidelity = Fidelity.PAPER,
        warmup_s: float = 2.0, hol_mode: str = "iid") -> SimStats:
    """Simulate one replication and return its counters.

    hol_mode picks how the AP refills its head-of-line frame: "iid"
    draws the direction with probabilities (p_d, p_u) and the target
    connection with window-proportional weight among those with backlog;
    "fifo" serves a literal queue fed by arrival order.
    """
    if duration_s <= 0 or not duration_s > warmup_s >= 0:
        raise ValueError("need duration_s > warmup_s >= 0")
    if hol_mode not in ("iid", "fifo"):
        raise ValueError("hol_mode must be 'iid' or 'fifo'")
    rng = random.Random(seed)
    durations = exchange_durations(profile, fidelity)
    t_data, t_ack = durations.t_data_s, durations.t_ack_s
    t_crts, t_cack = durations.t_colli_rts_s, durations.t_colli_tcpack_s
    slot = profile.slot_time_s
    cw_min, cw_max = profile.cw_min, profile.cw_max

    conns = scenario.connections
    m_conn = len(conns)
    is_down = [c.direction is Direction.DOWNLOAD for c in conns]
    windows = [c.max_window_pkts for c in conns]
    p_d = scenario.p_d
    # closed loop of window tokens: at_ap[c] + at_sta[c] == windows[c]
    at_ap = [w if d else 0 for d, w in zip(is_down, windows)]
    at_sta = [0 if d else w for d, w in zip(is_down, windows)]

    nodes = [NodeState(0, Role.AP, cw_min)]
    for c in range(m_conn):
        role = Role.DOWNLOADER if is_down[c] else Role.UPLOADER
        nodes.append(NodeState(c + 1, role, cw_min))

    ap_fifo: deque[int] = deque()
    if hol_mode == "fifo":
        backlog = [c for c in range(m_conn) if is_down[c]
                   for _ in range(windows[c])]
        rng.shuffle(backlog)
        ap_fifo.extend(backlog)

    def pick_hol() -> int | None:
        if hol_mode == "fifo":
            return ap_fifo.popleft() if ap_fifo else None
        want = Direction.DOWNLOAD if rng.random() < p_d else Direction.UPLOAD
        for down_pass in (want is Direction.DOWNLOAD,
                          want is Direction.UPLOAD):
            cand = [c for c in range(m_conn)
                    if is_down[c] == down_pass and at_ap[c] > 0]
            if cand:
                return rng.choices(cand, [windows[c] for c in cand])[0]
        return None

    def draw(node: NodeState):
        node.backoff_counter = rng.randint(0, node.contention_window)

    hol = pick_hol()
    if hol is not None:
        draw(nodes[0])
    for c in range(m_conn):
        if at_sta[c] > 0:
            draw(nodes[c + 1])

    idle_slots = 0
    n_data = n_ack = n_crts = n_cack = 0
    attempts = [0] * (m_conn + 1)
    ap_succ = ap_empty = 0
    segs = [0] * m_conn
    acks = [0] * m_conn
    snap = None
    t = 0.0

    while t < duration_s:
        if snap is None and t >= warmup_s:
            snap = (idle_slots, n_data, n_ack, n_crts, n_cack,
                    list(segs), list(acks))
        contenders = [nodes[0]] if hol is not None else []
        contenders += [nodes[c + 1] for c in range(m_conn) if at_sta[c] > 0]
        m = min(node.backoff_counter for node in contenders)
        idle_slots += m
        t += m * slot
        tx = [node for node in contenders if node.backoff_counter == m]
        for node in contenders:
            node.backoff_counter -= m
        for node in tx:
            attempts[node.node_id] += 1
        newly: list[NodeState] = []
        if len(tx) == 1:
            node = tx[0]
            if node.node_id == 0:
                c = hol
                ap_succ += 1
                if at_sta[c] == 0:
                    ap_empty += 1
                at_ap[c] -= 1
                was_empty = at_sta[c] == 0
                at_sta[c] += 1
                if is_down[c]:
                    dur = t_data
                    n_data += 1
                    segs[c] += 1
                else:
                    dur = t_ack
                    n_ack += 1
                    acks[c] += 1
                if was_empty:
                    newly.append(nodes[c + 1])
                hol = pick_hol()
                node.contention_window = cw_min
                if hol is not None:
                    draw(node)
                else:
                    node.backoff_counter = None
            else:
                c = node.node_id - 1
                at_sta[c] -= 1
                ap_was_idle = hol is None
                at_ap[c] += 1
                if hol_mode == "fifo":
                    ap_fifo.append(c)
                if is_down[c]:
                    dur = t_ack
                    n_ack += 1
                    acks[c] += 1
                else:
                    dur = t_data
                    n_data += 1
                    segs[c] += 1
                if ap_was_idle:
                    hol = pick_hol()
                    nodes[0].contention_window = cw_min
                    newly.append(nodes[0])
                node.contention_window = cw_min
                if at_sta[c] > 0:
                    draw(node)
                else:
                    node.backoff_counter = None
        else:
            has_rts = has_ack = False
            for node in tx:
                c = hol if node.node_id == 0 else node.node_id - 1
                sends_data = (is_down[c] if node.node_id == 0
                              else not is_down[c])
                if sends_data:
                    has_rts = True
                else:
                    has_ack = True
            if t_crts >= t_cack:
                dur = t_crts if has_rts else t_cack
            else:
                dur = t_cack if has_ack else t_crts
            if dur == t_crts:
                n_crts += 1
            else:
                n_cack += 1
            for node in tx:
                node.contention_window = min(
                    2 * (node.contention_window + 1) - 1, cw_max)
                draw(node)
        # the busy virtual slot decrements the other contenders too
        for node in contenders:
            bc = node.backoff_counter
            if node not in tx and bc is not None and bc > 0:
                node.backoff_counter = bc - 1
        for node in newly:
            if node.backoff_counter is None:
                draw(node)
        t += dur

    def recon(i, d, a, cr, ca):
        return i * slot + d * t_data + a * t_ack + cr * t_crts + ca * t_cack

    if snap is None:
        # horizon crossed within one event of the warmup boundary;
        # fall back to measuring the whole run
        snap = (0, 0, 0, 0, 0, [0] * m_conn, [0] * m_conn)
    s_idle, s_data, s_ack, s_crts, s_cack, s_segs, s_acks = snap
    elapsed = recon(idle_slots, n_data, n_ack, n_crts, n_cack)
    measured = recon(idle_slots - s_idle, n_data - s_data, n_ack - s_ack,
                     n_crts - s_crts, n_cack - s_cack)
    return SimStats(
        seed=seed, horizon_s=duration_s, warmup_s=warmup_s,
        segment_bits=profile.tcp_segment_bits,
        conn_directions=tuple(c.direction.value for c in conns),
        conn_windows=tuple(windows),
        idle_slots=idle_slots, data_successes=n_data, ack_successes=n_ack,
        rts_collisions=n_crts, tcpack_collisions=n_cack,
        attempts_by_node=tuple(attempts),
        ap_successes=ap_succ, ap_empty_target_successes=ap_empty,
        conn_segments_total=tuple(segs), conn_acks_total=tuple(acks),
        measured_idle_slots=idle_slots - s_idle,
        measured_data_successes=n_data - s_data,
        measured_ack_successes=n_ack - s_ack,
        measured_rts_collisions=n_crts - s_crts,
        measured_tcpack_collisions=n_cack - s_cack,
        conn_segments=tuple(v - s for v, s in zip(segs, s_segs)),
        conn_acks=tuple(v - s for v, s in zip(acks, s_acks)),
        elapsed_s=elapsed, measured_s=measured)


def run_saturated(k: int, profile: PhyProfile, min_slots: int,
                  seed: int) -> SaturatedStats:
    """Contend k always-backlogged nodes and count their attempts.

    No frames are exchanged; only the backoff process runs, so the
    per-node attempt frequency estimates the saturated access
    probability for k contenders.
    """
    if k < 1 or min_slots < 1:
        raise ValueError("need k >= 1 and min_slots >= 1")
    rng = random.Random(seed)
    cw_min, cw_max = profile.cw_min, profile.cw_max
    cw = [cw_min] * k
    counter = [rng.randint(0, cw[i]) for i in range(k)]
    slots = 0
    attempts = 0
    while slots < min_slots:
        m = min(counter)
        slots += m + 1
        tx = [i for i in range(k) if counter[i] == m]
        for i in range(k):
            counter[i] -= m
        attempts += len(tx)
        for i in range(k):
            if i in tx:
                if len(tx) == 1:
                    cw[i] = cw_min
                else:
                    cw[i] = min(2 * (cw[i] + 1) - 1, cw_max)
                counter[i] = rng.randint(0, cw[i])
            elif counter[i] > 0:
                counter[i] -= 1
    return SaturatedStats(nodes=k, virtual_slots=slots, attempts=attempts,
                          seed=seed)


def _run_one(args) -> SimStats:
    scenario, profile, duration_s, seed, fidelity, warmup_s, hol_mode = args
    return run(scenario, profile, duration_s, seed, fidelity=fidelity,
               warmup_s=warmup_s, hol_mode=hol_mode)


def run_replications(scenario: Scenario, profile: PhyProfile,
                     replications: int, duration_s: float, base_seed: int,
                     *, fidelity: Fidelity = Fidelity.PAPER,
                     warmup_s: float = 2.0, hol_mode: str = "iid",
                     workers: int | None = None) -> list[SimStats]:
    """Run independent replications seeded base_seed, base_seed+1, ...

    Replications are deterministic given their seed, so results are
    identical whether they execute serially or across worker processes.
    """
    if replications < 1:
        raise ValueError("need replications >= 1")
    jobs = [(scenario, profile, duration_s, base_seed + i, fidelity,
             warmup_s, hol_mode) for i in range(replications)]
    if workers is None:
        workers = min(os.cpu_count() or 1, replications)
    if workers <= 1 or replications == 1:
        return [_run_one(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, jobs))


def _mean_ci(values: np.ndarray) -> tuple[float, float]:
    n = len(values)
    mean = float(np.mean(values))
    sd = float(np.std(values, ddof=1))
    half = float(_scipy_stats.t.ppf(0.975, n - 1)) * sd / math.sqrt(n)
    return mean, half


def estimate(stats: list[SimStats]) -> SimEstimate:
    """Mean and 95% Student-t confidence half-widths across replications."""
    if len(stats) < 2:
        raise CIUnavailableError(
            "confidence intervals need at least 2 replications")
    agg = np.array([s.aggregate_bps for s in stats])
    down = np.array([s.download_bps for s in stats])
    up = np.array([s.upload_bps for s in stats])
    a_m, a_c = _mean_ci(agg)
    d_m, d_c = _mean_ci(down)
    u_m, u_c = _mean_ci(up)
    return SimEstimate(replications=len(stats),
                       aggregate_mean_bps=a_m, aggregate_ci_bps=a_c,
                       download_mean_bps=d_m, download_ci_bps=d_c,
                       upload_mean_bps=u_m, upload_ci_bps=u_c)
