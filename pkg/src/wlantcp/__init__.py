"""TCP throughput of an 802.11 DCF access point, by analysis and simulation."""

from .phy import (Standard, Fidelity, PhyProfile, ExchangeDurations,
                  builtin_profile, custom_profile, frame_airtime,
                  t_data, t_ack, tcp_ack_frame_bytes,
                  collision_durations, exchange_durations)
from .saturation import (FixedPointError, AccessProbTable, solve_beta,
                         build_table, dump_csv)
from .model import (Direction, CollisionPolicy, TruncationError,
                    Connection, Scenario, StateMetrics, ThroughputReport,
                    stationary_distribution, state_event_probs,
                    appendix_collision_prob, collision_duration,
                    mean_cycle_length, state_metrics, throughput,
                    per_sta_rates, contention_free_throughput)

__version__ = "0.1.0"

from .simulator import (Role, NodeState, SimStats, SaturatedStats,
                        SimEstimate, CIUnavailableError, run,
                        run_saturated, run_replications, estimate)
from .config import ConfigError, RunConfig, parse_config, render_config
from .presets import PresetRow, PRESETS, TABLE1, TABLE2, TABLE3
from .cli import TableResult, run_tables, main
