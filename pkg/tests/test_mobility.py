import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skybeam.errors import ParseError
from skybeam.mobility import (
    Trajectory,
    generate_trajectories,
    positions_at,
    read_trajectories_csv,
    start_margin_m,
    step,
    truncated_duration,
    write_trajectories_csv,
)
from skybeam.terrain import Position, make_flat_grid

AREA = (-2000.0, -2000.0, 2000.0, 2000.0)
GRID = make_flat_grid(AREA, 0.0)


def north_traj(**kw):
    base = dict(
        id=1, start=Position(0.0, 0.0, 40.0), heading_deg=0.0,
        speed_mps=14.0, altitude_agl_m=40.0, duration_s=120.0,
    )
    base.update(kw)
    return Trajectory(**base)


class TestStep:
    def test_t0_is_start(self):
        st0 = step(north_traj(), 0.0)
        assert (st0.position.x, st0.position.y, st0.position.z) == (0.0, 0.0, 40.0)

    def test_north_heading_moves_north(self):
        s = step(north_traj(), 10.0)
        assert s.position.x == pytest.approx(0.0)
        assert s.position.y == pytest.approx(140.0)
        assert s.position.z == pytest.approx(40.0)

    def test_east_heading(self):
        s = step(north_traj(heading_deg=90.0), 10.0)
        assert s.position.x == pytest.approx(140.0)
        assert s.position.y == pytest.approx(0.0, abs=1e-9)

    def test_path_length(self):
        # 120 s at 14 m/s covers 1680 m
        a = step(north_traj(), 0.0).position
        b = step(north_traj(), 120.0).position
        assert math.hypot(b.x - a.x, b.y - a.y) == pytest.approx(1680.0)

    def test_small_steps_evenly_spaced(self):
        traj = north_traj(heading_deg=37.0)
        pts = [step(traj, 0.1 * i).position for i in range(5)]
        for a, b in zip(pts, pts[1:]):
            assert math.hypot(b.x - a.x, b.y - a.y) == pytest.approx(1.4)

    def test_t_out_of_range(self):
        with pytest.raises(ValueError):
            step(north_traj(), -0.5)
        with pytest.raises(ValueError):
            step(north_traj(), 120.5)

    def test_velocity_is_ground_velocity(self):
        s = step(north_traj(heading_deg=90.0), 3.0)
        assert s.velocity == pytest.approx((14.0, 0.0, 0.0), abs=1e-9)

    @settings(max_examples=60)
    @given(
        heading=st.floats(0, 360),
        speed=st.floats(0.5, 40.0),
        t=st.floats(0, 120),
    )
    def test_collinear_with_start_and_heading(self, heading, speed, t):
        traj = north_traj(heading_deg=heading, speed_mps=speed)
        s = step(traj, t)
        dx, dy = s.position.x, s.position.y
        h = math.radians(heading % 360.0)
        cross = dx * math.cos(h) - dy * math.sin(h)
        assert abs(cross) <= 1e-9 * max(1.0, speed * t)
        assert math.hypot(dx, dy) == pytest.approx(speed * t, abs=1e-9)


class TestPositionsAt:
    def test_matches_scalar_step(self):
        traj = north_traj(heading_deg=203.0)
        ts = np.arange(0.0, 120.0 + 1e-9, 0.1)
        pts = positions_at(traj, ts)
        for idx in (0, 1, 7, 599, 1200):
            s = step(traj, float(ts[idx]))
            assert pts[idx] == pytest.approx((s.position.x, s.position.y, s.position.z))

    def test_terrain_following_tracks_ground(self):
        grid = make_flat_grid(AREA, 55.0)
        traj = north_traj(start=Position(0.0, 0.0, 95.0), altitude_mode="terrain")
        pts = positions_at(traj, np.array([0.0, 50.0]), grid)
        assert np.all(pts[:, 2] == pytest.approx(95.0))

    def test_terrain_mode_requires_grid(self):
        traj = north_traj(altitude_mode="terrain")
        with pytest.raises(ValueError):
            positions_at(traj, np.array([0.0]))


class TestGeneration:
    def test_seeded_and_deterministic(self):
        a = generate_trajectories(11, 20, AREA, GRID)
        b = generate_trajectories(11, 20, AREA, GRID)
        assert a == b

    def test_different_seeds_differ(self):
        a = generate_trajectories(1, 5, AREA, GRID)
        b = generate_trajectories(2, 5, AREA, GRID)
        assert a != b

    def test_count_and_ids(self):
        trajs = generate_trajectories(3, 17, AREA, GRID)
        assert [t.id for t in trajs] == list(range(1, 18))

    def test_altitude_above_flat_ground(self):
        grid = make_flat_grid(AREA, 30.0)
        trajs = generate_trajectories(5, 10, AREA, grid, altitude_agl_m=40.0)
        for t in trajs:
            assert t.start.z == pytest.approx(70.0)

    def test_starts_respect_margin(self):
        # 14 m/s * 120 s / 2 = 840 m margin inside a 4 km box
        margin, clipped = start_margin_m(AREA, 14.0, 120.0)
        assert margin == pytest.approx(840.0)
        assert not clipped
        trajs = generate_trajectories(9, 300, AREA, GRID)
        for t in trajs:
            assert -2000.0 + 840.0 <= t.start.x <= 2000.0 - 840.0
            assert -2000.0 + 840.0 <= t.start.y <= 2000.0 - 840.0

    def test_margin_clips_when_area_small(self):
        small = (-100.0, -100.0, 100.0, 100.0)
        margin, clipped = start_margin_m(small, 14.0, 120.0)
        assert margin == 0.0
        assert clipped
        grid = make_flat_grid(small, 0.0)
        trajs = generate_trajectories(4, 50, small, grid)
        for t in trajs:
            assert -100.0 <= t.start.x <= 100.0

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            generate_trajectories(1, 0, AREA, GRID)
        with pytest.raises(ValueError):
            generate_trajectories(1, 5, (0.0, 0.0, 0.0, 100.0), GRID)


class TestTruncation:
    def test_inside_path_keeps_full_duration(self):
        assert truncated_duration(north_traj(), AREA) == pytest.approx(120.0)

    def test_northbound_exit(self):
        # start 100 m south of the top edge, 14 m/s north -> exits at 100/14
        traj = north_traj(start=Position(0.0, 1900.0, 40.0))
        assert truncated_duration(traj, AREA) == pytest.approx(100.0 / 14.0)

    def test_diagonal_exit_uses_first_crossing(self):
        traj = north_traj(start=Position(1950.0, 1900.0, 40.0), heading_deg=45.0)
        vx = 14.0 * math.sin(math.radians(45.0))
        assert truncated_duration(traj, AREA) == pytest.approx(50.0 / vx)

    def test_start_on_edge_moving_out_is_zero(self):
        traj = north_traj(start=Position(0.0, 2000.0, 40.0))
        assert truncated_duration(traj, AREA) == pytest.approx(0.0)


class TestCsvRoundTrip:
    def test_round_trip(self, tmp_path):
        trajs = generate_trajectories(21, 25, AREA, GRID)
        path = tmp_path / "paths.csv"
        write_trajectories_csv(trajs, str(path))
        back = read_trajectories_csv(str(path), GRID)
        assert len(back) == len(trajs)
        for a, b in zip(trajs, back):
            assert b.id == a.id
            assert b.start.x == a.start.x  # str(float) round trip is exact
            assert b.start.y == a.start.y
            assert b.heading_deg == a.heading_deg
            assert b.speed_mps == a.speed_mps
            assert b.duration_s == a.duration_s

    def test_missing_file(self):
        with pytest.raises(ParseError, match="ghost.csv"):
            read_trajectories_csv("ghost.csv", GRID)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("id,x,y\n1,0,0\n")
        with pytest.raises(ParseError, match="bad.csv:1"):
            read_trajectories_csv(str(path), GRID)

    def test_bad_row_named_by_line(self, tmp_path):
        path = tmp_path / "row.csv"
        path.write_text(
            "id,start_x,start_y,heading_deg,speed,altitude_agl,duration\n"
            "1,0.0,0.0,0.0,14.0,40.0,120.0\n"
            "2,0.0,oops,0.0,14.0,40.0,120.0\n"
        )
        with pytest.raises(ParseError, match="row.csv:3"):
            read_trajectories_csv(str(path), GRID)


class TestTrajectoryValidation:
    def test_rejects_zero_speed(self):
        with pytest.raises(ValueError):
            north_traj(speed_mps=0.0)

    def test_rejects_zero_duration(self):
        with pytest.raises(ValueError):
            north_traj(duration_s=0.0)

    def test_rejects_unknown_altitude_mode(self):
        with pytest.raises(ValueError):
            north_traj(altitude_mode="ballistic")

    def test_heading_wrapped(self):
        assert north_traj(heading_deg=-90.0).heading_deg == pytest.approx(270.0)
