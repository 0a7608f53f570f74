import json
import math

import numpy as np
import pytest

from micropush.bench import (
    ExperimentGrid,
    ParseError,
    bundled_freeform_path,
    cell_seed,
    gen_circle,
    initial_world,
    load_path,
    resample_arc_length,
    run_grid,
    run_trial,
    write_report,
)
from micropush.metrics import Trajectory, TrajectoryRole
from micropush.sim import PlantConfig


def closed_perimeter(traj):
    pts = traj.as_array()
    closed = np.vstack([pts, pts[:1]])
    return float(np.sum(np.linalg.norm(np.diff(closed, axis=0), axis=1)))


class TestGenCircle:
    def test_100_nodes_538(self):
        t = gen_circle((0.0, 0.0), 538.0, 100)
        pts = t.as_array()
        chords = np.linalg.norm(np.diff(np.vstack([pts, pts[:1]]), axis=0), axis=1)
        assert chords == pytest.approx(np.full(100, 5.38), abs=1e-9)
        assert closed_perimeter(t) == pytest.approx(538.0, abs=1e-6)

    def test_square_in_unit_circle(self):
        t = gen_circle((0.0, 0.0), 4.0 * math.sqrt(2.0), 4)
        radii = np.linalg.norm(t.as_array(), axis=1)
        assert radii == pytest.approx(np.ones(4))

    def test_perimeter_invariant(self):
        for n, length in ((3, 10.0), (7, 123.4), (250, 1000.0)):
            assert closed_perimeter(gen_circle((5.0, -2.0), length, n)) == pytest.approx(length, abs=1e-6)

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            gen_circle((0, 0), 100.0, 2)


class TestLoadPath:
    def test_two_node_file(self, tmp_path):
        p = tmp_path / "line.txt"
        p.write_text("0 0\n100 0\n")
        t = load_path(p)
        assert len(t) == 2
        assert t.length() == pytest.approx(100.0)

    def test_comments_and_blank_lines(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("# header\n\n0 0  # start\n10 0\n")
        assert len(load_path(p)) == 2

    def test_bundled_freeform(self):
        t = load_path(bundled_freeform_path())
        assert len(t) == 100
        assert t.length() == pytest.approx(530.0, abs=0.1)

    def test_resampled_nodes_uniform(self, tmp_path):
        p = tmp_path / "line.txt"
        p.write_text("0 0\n100 0\n")
        t = load_path(p, resample_to=11)
        assert len(t) == 11
        xs = [n[0] for n in t.nodes]
        assert xs == pytest.approx(list(np.linspace(0, 100, 11)))

    def test_empty_file_rejected(self, tmp_path):
        p = tmp_path / "empty.txt"
        p.write_text("")
        with pytest.raises(ParseError):
            load_path(p)

    def test_parse_error_carries_line_number(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("0 0\noops\n")
        with pytest.raises(ParseError, match=":2:"):
            load_path(p)

    def test_non_numeric_rejected(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("0 0\n1 x\n")
        with pytest.raises(ParseError, match=":2:"):
            load_path(p)


class TestResampleArcLength:
    def test_preserves_endpoints(self):
        out = resample_arc_length([(0.0, 0.0), (10.0, 0.0), (10.0, 10.0)], 21)
        assert out[0] == pytest.approx((0.0, 0.0))
        assert out[-1] == pytest.approx((10.0, 10.0))
        steps = [math.dist(a, b) for a, b in zip(out, out[1:])]
        assert steps == pytest.approx([1.0] * 20)


class TestSeeding:
    def test_cell_seed_stable(self):
        assert cell_seed(0, 5.0, 9.0, 2) == cell_seed(0, 5.0, 9.0, 2)
        assert cell_seed(0, 5.0, 9.0, 2) != cell_seed(0, 5.0, 9.0, 3)
        assert cell_seed(0, 5.0, 9.0, 2) != cell_seed(1, 5.0, 9.0, 2)


class TestInitialWorld:
    def test_object_at_node0_robot_inward(self):
        traj = gen_circle((300.0, 300.0), 538.0, 100)
        w = initial_world(traj)
        assert w.object == pytest.approx(traj.nodes[0])
        # robot sits 20 um from node 0, toward the circle center
        assert math.dist(w.robot, w.object) == pytest.approx(20.0)
        assert math.dist(w.robot, (300.0, 300.0)) < math.dist(w.object, (300.0, 300.0))


@pytest.fixture(scope="module")
def small_report():
    grid = ExperimentGrid(widths=(5.0, 15.0), freqs=(9.0, 15.0), trials=2, seed_base=7)
    return grid, run_grid(grid, PlantConfig(noise_std=0.5))


class TestRunGrid:
    def test_trial_count(self, small_report):
        grid, report = small_report
        assert len(report.results) == 2 * 2 * 2

    def test_deterministic_csv(self, small_report):
        grid, report = small_report
        report2 = run_grid(grid, PlantConfig(noise_std=0.5))
        assert report.to_csv() == report2.to_csv()

    def test_csv_schema(self, small_report):
        _, report = small_report
        lines = report.to_csv().strip().split("\n")
        assert lines[0] == "corridor_width_um,freq_hz,trial,mae_um,completion_s,chatter"
        assert len(lines) == 1 + 8

    def test_higher_freq_completes_faster(self, small_report):
        _, report = small_report
        slow = report.cell_stats(15.0, 9.0)["completion_mean"]
        fast = report.cell_stats(15.0, 15.0)["completion_mean"]
        assert fast < slow

    def test_json_round_trip(self, small_report, tmp_path):
        _, report = small_report
        paths = write_report(report, tmp_path)
        data = json.loads(paths["json"].read_text())
        assert data["trials"] == 2
        assert len(data["cells"]) == 4
        assert {c["name"] for c in data["trend_checks"]} == {n for n, _ in report.trend_checks()}
        assert paths["csv"].read_text() == report.to_csv()
        assert paths["summary"].read_text() == report.summary_table()

    def test_summary_rows(self, small_report):
        _, report = small_report
        lines = report.summary_table().strip().split("\n")
        data_rows = [l for l in lines[1:] if not l.startswith("[")]
        assert len(data_rows) == 4


class TestRunTrial:
    def test_timeout_flagged_not_fatal(self):
        traj = gen_circle((300.0, 300.0), 538.0, 100)
        r = run_trial(10.0, 3.0, 0, traj, PlantConfig(), timeout_s=1.0)
        assert r.timed_out
        assert math.isnan(r.completion_s)
        assert r.mae_um >= 0.0

    def test_result_config_snapshot(self):
        traj = gen_circle((300.0, 300.0), 538.0, 100)
        r = run_trial(5.0, 15.0, 1, traj, PlantConfig(noise_std=0.5), seed_base=3)
        assert r.config["corridor_width_um"] == 5.0
        assert r.config["freq_hz"] == 15.0
        assert r.config["seed"] == cell_seed(3, 5.0, 15.0, 1)
