import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skybeam.errors import BoundsError, GeometryError, InvalidPositionError, ParseError
from skybeam.terrain import (
    DEFAULT_AREA,
    Position,
    TerrainGrid,
    angles_to,
    distance,
    elevation_at,
    elevation_many,
    line_of_sight,
    load_terrain,
    make_flat_grid,
    write_terrain_csv,
)

AREA = (-100.0, -100.0, 100.0, 100.0)


def ridge_grid():
    # flat 0 except a 50 m wall along the x=10 column
    heights = np.zeros((3, 3))
    heights[:, 1] = 50.0
    return TerrainGrid(0.0, 0.0, 10.0, heights)


class TestElevation:
    def test_flat_grid_constant(self):
        grid = make_flat_grid(AREA, 30.0)
        for x, y in [(0, 0), (-99, 73), (100, -100), (12.3, -45.6)]:
            assert elevation_at(grid, x, y) == pytest.approx(30.0)

    def test_node_query_returns_stored_height(self):
        heights = np.arange(9, dtype=float).reshape(3, 3)
        grid = TerrainGrid(0.0, 0.0, 10.0, heights)
        assert elevation_at(grid, 10.0, 20.0) == heights[2, 1]
        assert elevation_at(grid, 0.0, 0.0) == heights[0, 0]

    def test_midpoint_interpolates_linearly(self):
        heights = np.array([[10.0, 20.0], [10.0, 20.0]])
        grid = TerrainGrid(0.0, 0.0, 10.0, heights)
        assert elevation_at(grid, 5.0, 0.0) == pytest.approx(15.0)

    def test_out_of_bounds_raises_and_names_point(self):
        grid = make_flat_grid(AREA, 0.0)
        with pytest.raises(BoundsError, match="150"):
            elevation_at(grid, 150.0, 0.0)

    def test_vectorized_matches_scalar(self):
        heights = np.array([[0.0, 4.0, 1.0], [2.0, 8.0, 3.0], [5.0, 7.0, 6.0]])
        grid = TerrainGrid(-10.0, -10.0, 10.0, heights)
        xs = np.array([-3.0, 0.0, 7.5])
        ys = np.array([2.0, -10.0, 9.9])
        many = elevation_many(grid, xs, ys)
        for i in range(3):
            assert many[i] == pytest.approx(elevation_at(grid, xs[i], ys[i]))

    @given(
        x=st.floats(-9.99, 9.99),
        y=st.floats(-9.99, 9.99),
        seed=st.integers(0, 2**31 - 1),
    )
    def test_elevation_bounded_by_surrounding_nodes(self, x, y, seed):
        rng = np.random.default_rng(seed)
        heights = rng.uniform(-5.0, 45.0, (3, 3))
        grid = TerrainGrid(-10.0, -10.0, 10.0, heights)
        c = min(int((x + 10.0) / 10.0), 1)
        r = min(int((y + 10.0) / 10.0), 1)
        block = heights[r : r + 2, c : c + 2]
        v = elevation_at(grid, x, y)
        assert block.min() - 1e-9 <= v <= block.max() + 1e-9


class TestAngles:
    def test_directly_above_is_zenith(self):
        d = angles_to(Position(0, 0, 0), Position(0, 0, 50))
        assert d.theta_deg == pytest.approx(0.0)

    def test_due_north_same_altitude(self):
        d = angles_to(Position(0, 0, 10), Position(0, 100, 10))
        assert d.theta_deg == pytest.approx(90.0)
        assert d.phi_deg == pytest.approx(0.0)

    def test_east_is_phi_90(self):
        d = angles_to(Position(0, 0, 0), Position(100, 0, 0))
        assert d.phi_deg == pytest.approx(90.0)

    def test_45_degree_climb(self):
        d = angles_to(Position(0, 0, 0), Position(100, 0, 100))
        assert d.theta_deg == pytest.approx(45.0)

    def test_coincident_points_raise(self):
        with pytest.raises(GeometryError):
            angles_to(Position(1, 2, 3), Position(1, 2, 3))

    @given(
        ax=st.floats(-500, 500), ay=st.floats(-500, 500), az=st.floats(0, 300),
        bx=st.floats(-500, 500), by=st.floats(-500, 500), bz=st.floats(0, 300),
    )
    def test_theta_reciprocity(self, ax, ay, az, bx, by, bz):
        a, b = Position(ax, ay, az), Position(bx, by, bz)
        if distance(a, b) < 1e-6:
            return
        fwd = angles_to(a, b).theta_deg
        back = angles_to(b, a).theta_deg
        assert fwd + back == pytest.approx(180.0, abs=1e-9)


class TestLineOfSight:
    def test_flat_terrain_always_clear(self):
        grid = make_flat_grid(AREA, 0.0)
        a = Position(-90, -90, 1.0)
        b = Position(90, 90, 0.5)
        assert line_of_sight(grid, a, b) is True

    def test_ridge_blocks(self):
        grid = ridge_grid()
        a = Position(0, 10, 5.0)
        b = Position(20, 10, 5.0)
        assert line_of_sight(grid, a, b, step_m=1.0) is False

    def test_over_the_ridge_is_clear(self):
        grid = ridge_grid()
        a = Position(0, 10, 60.0)
        b = Position(20, 10, 60.0)
        assert line_of_sight(grid, a, b, step_m=1.0) is True

    def test_adjacent_endpoints_no_interior_samples(self):
        # endpoints straddle the wall crest closer together than the step, so
        # the blocked midpoint is never sampled
        grid = ridge_grid()
        a = Position(9.0, 10, 49.0)
        b = Position(11.0, 10, 49.0)
        assert line_of_sight(grid, a, b, step_m=5.0) is True
        assert line_of_sight(grid, a, b, step_m=0.5) is False

    def test_endpoint_below_ground_raises(self):
        grid = ridge_grid()
        with pytest.raises(InvalidPositionError):
            line_of_sight(grid, Position(0, 10, -1.0), Position(20, 10, 5.0))

    @given(
        ax=st.floats(1, 28), ay=st.floats(1, 28), az=st.floats(0.5, 80),
        bx=st.floats(1, 28), by=st.floats(1, 28), bz=st.floats(0.5, 80),
        seed=st.integers(0, 2**31 - 1),
    )
    def test_symmetry(self, ax, ay, az, bx, by, bz, seed):
        rng = np.random.default_rng(seed)
        grid = TerrainGrid(0.0, 0.0, 10.0, rng.uniform(0.0, 40.0, (4, 4)))
        a = Position(ax, ay, elevation_at(grid, ax, ay) + az)
        b = Position(bx, by, elevation_at(grid, bx, by) + bz)
        assert line_of_sight(grid, a, b, 2.0) == line_of_sight(grid, b, a, 2.0)


class TestLoaders:
    def test_flat_source(self):
        grid = load_terrain("flat:30", AREA)
        assert grid.is_flat
        assert elevation_at(grid, 0, 0) == 30.0
        assert grid.bounds == AREA

    def test_flat_source_default_area(self):
        grid = load_terrain("flat:0")
        assert grid.bounds == DEFAULT_AREA

    def test_bad_flat_height(self):
        with pytest.raises(ParseError):
            load_terrain("flat:tall")

    def test_csv_round_trip(self, tmp_path):
        heights = np.array([[0.0, 4.5, 1.25], [2.0, 8.0, 3.0]])
        grid = TerrainGrid(-10.0, 5.0, 12.5, heights)
        path = str(tmp_path / "t.csv")
        write_terrain_csv(grid, path)
        loaded = load_terrain(path)
        assert loaded.origin_x == grid.origin_x
        assert loaded.origin_y == grid.origin_y
        assert loaded.cell_size == grid.cell_size
        assert np.array_equal(loaded.heights, grid.heights)

    def test_missing_file_error_names_path(self, tmp_path):
        path = str(tmp_path / "nope.csv")
        with pytest.raises(ParseError, match="nope.csv"):
            load_terrain(path)

    def test_bad_header_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("just,three,cols\n")
        with pytest.raises(ParseError, match=r"bad.csv:1"):
            load_terrain(str(path))

    def test_wrong_column_count_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("0,0,10,2,2\n1,2\n3\n")
        with pytest.raises(ParseError, match=r"bad.csv:3"):
            load_terrain(str(path))


class TestGridValidation:
    def test_single_node_rejected(self):
        with pytest.raises(ValueError):
            TerrainGrid(0, 0, 10, np.zeros((1, 1)))

    def test_nonpositive_cell_rejected(self):
        with pytest.raises(ValueError):
            TerrainGrid(0, 0, 0.0, np.zeros((2, 2)))

    def test_nonfinite_height_rejected(self):
        heights = np.zeros((2, 2))
        heights[0, 0] = math.nan
        with pytest.raises(ValueError):
            TerrainGrid(0, 0, 10, heights)

    def test_heights_are_frozen(self):
        grid = make_flat_grid(AREA, 1.0)
        with pytest.raises(ValueError):
            grid.heights[0, 0] = 99.0
