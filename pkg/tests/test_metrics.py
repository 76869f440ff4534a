import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skybeam.channel import LinkSample
from skybeam.handover import HandoverEvent
from skybeam.metrics import (
    TrajectoryMetrics,
    ecdf,
    handover_rate,
    outage_cost,
    ping_pong_count,
    read_ecdf_csv,
    read_handovers_csv,
    read_metrics_csv,
    summarize_trajectory,
    write_ecdf_csv,
    write_handovers_csv,
    write_metrics_csv,
)


def ho(t, frm, to, delta=3.0):
    return HandoverEvent(t=t, from_sector=frm, to_sector=to, trigger_rx_delta_db=delta)


SNR_SERIES = st.lists(st.floats(-40.0, 60.0), min_size=1, max_size=120)


class TestOutageCost:
    def test_all_below(self):
        assert outage_cost([-10.0, -9.0, -7.0], threshold_db=-6.0) == 1.0

    def test_none_below(self):
        assert outage_cost([0.0, 5.0, 12.0], threshold_db=-6.0) == 0.0

    def test_fraction(self):
        snr = [-10.0, -8.0, -7.0] + [3.0] * 9
        assert outage_cost(snr, threshold_db=-6.0) == pytest.approx(0.25)

    def test_strict_inequality_at_boundary(self):
        assert outage_cost([-6.0, -6.0, 0.0, 0.0], threshold_db=-6.0) == 0.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            outage_cost([], threshold_db=-6.0)

    def test_accepts_link_samples(self):
        samples = [
            LinkSample(t=0.1, serving_sector_id=1, snr_db=s, rx_power_dbm=-70.0, los=True, misalignment_deg=0.0)
            for s in (-10.0, 4.0)
        ]
        assert outage_cost(samples, threshold_db=-6.0) == pytest.approx(0.5)

    def test_infinite_thresholds(self):
        assert outage_cost([1.0, 2.0], threshold_db=-math.inf) == 0.0
        assert outage_cost([1.0, 2.0], threshold_db=math.inf) == 1.0

    @settings(max_examples=60)
    @given(snr=SNR_SERIES, t1=st.floats(-20, 20), t2=st.floats(-20, 20))
    def test_monotone_in_threshold(self, snr, t1, t2):
        lo, hi = min(t1, t2), max(t1, t2)
        assert outage_cost(snr, lo) <= outage_cost(snr, hi)

    @settings(max_examples=60)
    @given(snr=SNR_SERIES, thr=st.floats(-20, 20))
    def test_matches_naive_recomputation(self, snr, thr):
        naive = sum(1 for s in snr if s < thr) / len(snr)
        assert outage_cost(snr, thr) == pytest.approx(naive)


class TestHandoverRate:
    def test_empty_log(self):
        assert handover_rate([], 120.0) == 0.0

    def test_three_in_two_minutes(self):
        log = [ho(10.0, 1, 2), ho(50.0, 2, 3), ho(90.0, 3, 1)]
        assert handover_rate(log, 120.0) == pytest.approx(1.5)

    def test_short_flight_normalization(self):
        log = [ho(10.0, 1, 2), ho(40.0, 2, 1)]
        assert handover_rate(log, 90.0) == pytest.approx(2.0 * 60.0 / 90.0)

    def test_zero_duration_rejected(self):
        with pytest.raises(ValueError):
            handover_rate([], 0.0)


class TestPingPong:
    def test_bounce_within_window(self):
        log = [ho(10.0, 1, 2), ho(10.6, 2, 1)]
        assert ping_pong_count(log, window_s=1.0) == 1

    def test_bounce_outside_window(self):
        log = [ho(10.0, 1, 2), ho(12.0, 2, 1)]
        assert ping_pong_count(log, window_s=1.0) == 0

    def test_forward_chain_not_counted(self):
        log = [ho(10.0, 1, 2), ho(10.5, 2, 3), ho(10.9, 3, 4)]
        assert ping_pong_count(log, window_s=1.0) == 0

    def test_triple_bounce(self):
        log = [ho(10.0, 1, 2), ho(10.4, 2, 1), ho(10.8, 1, 2)]
        assert ping_pong_count(log, window_s=1.0) == 2

    def test_boundary_inclusive(self):
        log = [ho(10.0, 1, 2), ho(11.0, 2, 1)]
        assert ping_pong_count(log, window_s=1.0) == 1


class TestEcdf:
    def test_single_value(self):
        assert ecdf([3.5]) == [(3.5, 1.0)]

    def test_duplicates_collapse(self):
        got = ecdf([1.0, 2.0, 2.0, 4.0])
        assert got == [(1.0, 0.25), (2.0, 0.75), (4.0, 1.0)]

    def test_permutation_invariant(self):
        assert ecdf([4.0, 2.0, 1.0, 2.0]) == ecdf([1.0, 2.0, 2.0, 4.0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ecdf([])

    @settings(max_examples=60)
    @given(values=st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=200))
    def test_steps_well_formed(self, values):
        steps = ecdf(values)
        vs = [v for v, _ in steps]
        fs = [f for _, f in steps]
        assert vs == sorted(vs)
        assert len(set(vs)) == len(vs)
        assert all(b > a for a, b in zip(fs, fs[1:]))
        assert fs[-1] == pytest.approx(1.0)

    @settings(max_examples=60)
    @given(values=st.lists(st.floats(-100, 100), min_size=1, max_size=50))
    def test_fraction_matches_count(self, values):
        for v, f in ecdf(values):
            assert f == pytest.approx(sum(1 for x in values if x <= v) / len(values))


class TestSummarize:
    def test_fields(self):
        snr = [-10.0, 0.0, 5.0, 7.0]
        log = [ho(10.0, 1, 2), ho(10.5, 2, 1)]
        m = summarize_trajectory(3, snr, log, 120.0, outage_threshold_db=-6.0)
        assert m.trajectory_id == 3
        assert m.outage_cost == pytest.approx(0.25)
        assert m.handovers_per_min == pytest.approx(1.0)
        assert m.ping_pongs == 1
        assert m.realized_duration_s == 120.0
        assert m.min_snr_db == -10.0
        assert m.mean_snr_db == pytest.approx(0.5)
        assert m.max_snr_db == 7.0


class TestCsvRoundTrips:
    def metrics_rows(self):
        return [
            TrajectoryMetrics(1, 0.25, 1.5, 1, 120.0, -11.3, 2.7182818, 19.1),
            TrajectoryMetrics(2, 0.0, 0.0, 0, 87.3333333, -3.0, 8.0, 20.0),
        ]

    def test_metrics(self, tmp_path):
        path = str(tmp_path / "m.csv")
        rows = self.metrics_rows()
        write_metrics_csv(rows, path)
        assert read_metrics_csv(path) == rows

    def test_handovers(self, tmp_path):
        path = str(tmp_path / "h.csv")
        rows = [(1, ho(10.123456789, 1, 2, 4.25)), (2, ho(55.5, 3, 1, 3.0001))]
        write_handovers_csv(rows, path)
        assert read_handovers_csv(path) == rows

    def test_ecdf(self, tmp_path):
        path = str(tmp_path / "e.csv")
        steps = ecdf([0.1, 0.1, 0.5, 2.0 / 3.0])
        write_ecdf_csv(steps, path)
        assert read_ecdf_csv(path) == steps

    def test_float_repr_is_lossless(self, tmp_path):
        path = str(tmp_path / "f.csv")
        value = 0.1 + 0.2  # 0.30000000000000004
        write_ecdf_csv([(value, 1.0)], path)
        assert read_ecdf_csv(path)[0][0] == value

    def test_metrics_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("nope\n")
        from skybeam.errors import ParseError

        with pytest.raises(ParseError, match="bad.csv:1"):
            read_metrics_csv(str(path))
