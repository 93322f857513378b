"""Frame airtime and exchange duration checks against hand-computed sums."""

import dataclasses

import pytest

from wlantcp.phy import (ExchangeDurations, Fidelity, PhyProfile, Standard,
                         builtin_profile, collision_durations,
                         custom_profile, exchange_durations, frame_airtime,
                         t_ack, t_data, tcp_ack_frame_bytes)

US = 1e-6

# frozen microsecond oracles, summed term by term from the profile tables
T_DATA_US = {
    "802.11b@11": 272 + 10 + 248 + 10 + (192 + 8 * 1534 / 11) + 10 + 248 + 50,
    "802.11b@5.5": 272 + 10 + 248 + 10 + (192 + 8 * 1534 / 5.5) + 10 + 248 + 50,
    "802.11b@2": 272 + 10 + 248 + 10 + (192 + 8 * 1534 / 2) + 10 + 248 + 50,
    "802.11g@54": (20 + 8 * 20 / 6) + 10 + (20 + 8 * 14 / 6) + 10
                  + (20 + 8 * 1534 / 54) + 10 + (20 + 8 * 14 / 6) + 28,
    "802.11g@12": (20 + 8 * 20 / 6) + 10 + (20 + 8 * 14 / 6) + 10
                  + (20 + 8 * 1534 / 12) + 10 + (20 + 8 * 14 / 6) + 28,
}
T_ACK_PAPER_US = {
    "802.11b@11": (192 + 8 * 74 / 11) + 10 + (192 + 8 * 14 / 11) + 50,
    "802.11b@5.5": (192 + 8 * 74 / 5.5) + 10 + (192 + 8 * 14 / 5.5) + 50,
    "802.11b@2": (192 + 8 * 74 / 2) + 10 + (192 + 8 * 14 / 2) + 50,
    "802.11g@54": (20 + 8 * 74 / 54) + 10 + (20 + 8 * 14 / 54) + 28,
    "802.11g@12": (20 + 8 * 74 / 12) + 10 + (20 + 8 * 14 / 12) + 28,
}
T_ACK_STANDARDS_US = {
    "802.11b@11": (192 + 8 * 74 / 11) + 10 + (192 + 8 * 14 / 2) + 50,
    "802.11b@2": (192 + 8 * 74 / 2) + 10 + (192 + 8 * 14 / 2) + 50,
    "802.11g@54": (20 + 8 * 74 / 54) + 10 + (20 + 8 * 14 / 6) + 28,
}


@pytest.mark.parametrize("selector,want_us", sorted(T_DATA_US.items()))
def test_t_data_matches_term_sums(selector, want_us):
    assert t_data(builtin_profile(selector)) == pytest.approx(
        want_us * US, rel=1e-12)


@pytest.mark.parametrize("selector,want_us", sorted(T_ACK_PAPER_US.items()))
def test_t_ack_paper_matches_term_sums(selector, want_us):
    got = t_ack(builtin_profile(selector), Fidelity.PAPER)
    assert got == pytest.approx(want_us * US, rel=1e-12)


@pytest.mark.parametrize("selector,want_us",
                         sorted(T_ACK_STANDARDS_US.items()))
def test_t_ack_standards_matches_term_sums(selector, want_us):
    got = t_ack(builtin_profile(selector), Fidelity.STANDARDS)
    assert got == pytest.approx(want_us * US, rel=1e-12)


def test_round_number_oracles():
    b11 = builtin_profile("802.11b@11")
    assert t_data(b11) == pytest.approx(2155.6363636363637 * US, rel=1e-12)
    assert t_ack(b11, Fidelity.PAPER) == pytest.approx(508.0 * US, rel=1e-12)
    assert t_ack(b11, Fidelity.STANDARDS) == pytest.approx(
        553.8181818181819 * US, rel=1e-12)
    rts, ack = collision_durations(b11)
    assert rts == pytest.approx(636.0 * US, rel=1e-12)
    assert ack == pytest.approx(609.8181818181819 * US, rel=1e-12)
    b55 = builtin_profile("802.11b@5.5")
    assert t_ack(b55, Fidelity.PAPER) == pytest.approx(572.0 * US, rel=1e-12)
    b2 = builtin_profile("802.11b@2")
    assert t_data(b2) == pytest.approx(7176.0 * US, rel=1e-12)
    assert t_ack(b2, Fidelity.PAPER) == pytest.approx(796.0 * US, rel=1e-12)
    g54 = builtin_profile("802.11g@54")
    assert t_data(g54) == pytest.approx(429.2592592592593 * US, rel=1e-12)
    assert t_ack(g54, Fidelity.PAPER) == pytest.approx(
        91.03703703703704 * US, rel=1e-12)


def test_frame_airtime_examples():
    b11 = builtin_profile("802.11b@11")
    assert frame_airtime(20, 2e6, b11) == pytest.approx(272 * US, rel=1e-12)
    assert frame_airtime(1534, 11e6, b11) == pytest.approx(
        (192 + 8 * 1534 / 11) * US, rel=1e-12)
    g = builtin_profile("802.11g@54")
    assert frame_airtime(14, 6e6, g) == pytest.approx(
        (20 + 8 * 14 / 6) * US, rel=1e-12)


def test_frame_airtime_is_affine_in_bytes():
    profile = builtin_profile("802.11b@11")
    for rate in (2e6, 11e6):
        a1 = frame_airtime(100, rate, profile)
        a2 = frame_airtime(200, rate, profile)
        a3 = frame_airtime(300, rate, profile)
        assert a2 - a1 == pytest.approx(8 * 100 / rate, rel=1e-12)
        assert a3 - a2 == pytest.approx(a2 - a1, rel=1e-12)


def test_collision_ordering_flips_with_data_rate():
    # long RTS at the slow control rate vs a TCP-ACK frame at the data
    # rate: the longer one depends on how fast the data rate is
    for selector, rts_longer in [("802.11b@11", True), ("802.11b@5.5", False),
                                 ("802.11b@2", False), ("802.11g@54", True),
                                 ("802.11g@12", False)]:
        rts, ack = collision_durations(builtin_profile(selector))
        assert (rts > ack) == rts_longer, selector


def test_exchange_durations_bundle():
    for selector in ("802.11b@11", "802.11g@54"):
        profile = builtin_profile(selector)
        for fidelity in Fidelity:
            d = exchange_durations(profile, fidelity)
            assert d.t_data_s == t_data(profile)
            assert d.t_ack_s == t_ack(profile, fidelity)
            assert (d.t_colli_rts_s, d.t_colli_tcpack_s) == \
                collision_durations(profile)
            assert d.t_data_s > d.t_ack_s


def test_fidelity_matters_iff_rates_differ():
    same = builtin_profile("802.11b@2")  # data rate equals control rate
    assert t_ack(same, Fidelity.PAPER) == t_ack(same, Fidelity.STANDARDS)
    for selector in ("802.11b@11", "802.11b@5.5", "802.11g@54",
                     "802.11g@12"):
        profile = builtin_profile(selector)
        assert t_ack(profile, Fidelity.PAPER) != t_ack(profile,
                                                       Fidelity.STANDARDS)
    # the slow-rate MAC-ACK of standards mode is never shorter
    for selector in ("802.11b@11", "802.11g@54"):
        profile = builtin_profile(selector)
        assert t_ack(profile, Fidelity.STANDARDS) > t_ack(profile,
                                                          Fidelity.PAPER)


def test_tcp_ack_frame_size():
    profile = builtin_profile("802.11b@11")
    assert tcp_ack_frame_bytes(profile) == 74  # MAC + IP + TCP headers + 20
    assert profile.tcp_segment_bits == 8 * 1460


def test_retry_stages():
    assert builtin_profile("802.11b@11").retry_stages == 5    # 32 -> 1024
    assert builtin_profile("802.11g@54").retry_stages == 6    # 16 -> 1024


def test_builtin_profile_selectors():
    assert builtin_profile(Standard.B11) is builtin_profile("802.11b@11")
    with pytest.raises(ValueError, match="802.11b@11"):
        builtin_profile("802.11n@600")
    names = {builtin_profile(s).name for s in Standard}
    assert len(names) == len(Standard)


def test_custom_profile_overrides():
    base = builtin_profile("802.11b@11")
    slow = custom_profile(base, data_rate_bps=5.5e6, name="custom")
    assert slow.data_rate_bps == 5.5e6
    assert slow.control_rate_bps == base.control_rate_bps
    assert t_data(slow) > t_data(base)


def test_profile_validation():
    base = builtin_profile("802.11b@11")
    with pytest.raises(ValueError):
        custom_profile(base, data_rate_bps=-1.0)
    with pytest.raises(ValueError):
        custom_profile(base, data_rate_bps=1e6)  # below control rate
    with pytest.raises(ValueError):
        custom_profile(base, cw_min=30)  # not one below a power of two
    with pytest.raises(ValueError):
        custom_profile(base, cw_min=1023, cw_max=31)
    with pytest.raises(ValueError):
        custom_profile(base, slot_time_s=0.0)
    with pytest.raises(ValueError):
        frame_airtime(0, 2e6, base)
    with pytest.raises(ValueError):
        frame_airtime(20, 0.0, base)


def test_exchange_durations_type_validation():
    with pytest.raises(ValueError):
        ExchangeDurations(t_data_s=1e-3, t_ack_s=2e-3,
                          t_colli_rts_s=1e-3, t_colli_tcpack_s=1e-3)
    with pytest.raises(ValueError):
        ExchangeDurations(t_data_s=1e-3, t_ack_s=0.0,
                          t_colli_rts_s=1e-3, t_colli_tcpack_s=1e-3)


def test_profiles_are_frozen():
    profile = builtin_profile("802.11b@11")
    with pytest.raises(dataclasses.FrozenInstanceError):
        profile.data_rate_bps = 1e6
