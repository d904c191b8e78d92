"""End-to-end tests for the qmotion command line tool.

Every test drives the real console entry point in a subprocess
(`python -m qmotion ...`), so argument parsing, exit codes, and the
stdout/stderr split are exercised exactly as a shell user sees them.
Levels come from small synthetic .qmlevel files over a single well so the
physics stays cheap at the default simulation grid.
"""
from __future__ import annotations

import dataclasses
import json
import os
import signal
import subprocess
import sys
import urllib.request
from pathlib import Path

import numpy as np
import pytest

from qmotion.core import SimConfig
from qmotion.core.potential import TweezerSpec
from qmotion.levels.catalog import (
    CATALOG_ORDER,
    read_path_csv,
    reference_path,
    write_path_csv,
)
from qmotion.levels.format import serialize_level
from qmotion.levels.model import Level, StaticWell
from qmotion.paths.model import path_from_arrays
from qmotion.service import GameStore

FAST = SimConfig(grid_points=128, dt=1e-3)
GRID_POINTS = SimConfig().grid_points  # the CLI always scores at the default grid


def run_cli(*args: str, env: dict | None = None) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "qmotion", *args],
        capture_output=True,
        text=True,
        env=env,
        timeout=120,
    )


def clean_env(**extra: str) -> dict:
    env = {k: v for k, v in os.environ.items() if k != "QM_DATA_DIR"}
    env.update(extra)
    return env


def probe_level() -> Level:
    return Level(
        id="probe",
        title="probe",
        duration_max=0.08,
        tweezer=TweezerSpec(sigma=0.1, depth_max=120.0),
        static_wells=(StaticWell(center=0.0, depth=80.0, width=0.1),),
        initial_trap=0,
        target_trap=0,
        star_thresholds=(0.85, 0.95, 0.99),
    )


def play_csv(t, x0, amplitude) -> str:
    return write_path_csv(
        path_from_arrays(
            np.asarray(t, dtype=float),
            np.asarray(x0, dtype=float),
            np.asarray(amplitude, dtype=float),
        )
    )


@pytest.fixture(scope="module")
def work(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("cli")
    (root / "probe.qmlevel").write_text(serialize_level(probe_level()), "utf-8")
    # leave the atom alone in its well: fidelity ~1 at minimal time penalty
    (root / "hold.csv").write_text(play_csv([0.0, 0.02], [0.0, 0.0], [0.0, 0.0]), "utf-8")
    # a full-duration drag to the bound slams the atom into the grid edge
    # at t ~ 0.067 on the default grid (probed once, frozen)
    (root / "slam.csv").write_text(
        play_csv([0.0, 0.08], [0.0, 0.75], [120.0, 120.0]), "utf-8"
    )
    (root / "bad_play.csv").write_text("time,position\n0.0,0.0\n", "utf-8")
    # a short prefix of a real catalog reference path, for the built-in id route
    ref = reference_path("tutorial_1")
    keep = [i for i, s in enumerate(ref.samples) if s.t <= 0.05]
    (root / "ref_prefix.csv").write_text(
        play_csv(
            [ref.samples[i].t for i in keep],
            [ref.samples[i].x0 for i in keep],
            [ref.samples[i].amplitude for i in keep],
        ),
        "utf-8",
    )
    return root


class TestScore:
    def test_hold_play_scores_three_stars(self, work):
        result = run_cli("score", str(work / "probe.qmlevel"), str(work / "hold.csv"))
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["level_id"] == "probe"
        assert report["fidelity"] > 0.99
        assert report["total_score"] == 950
        assert report["stars"] == 3
        assert report["died"] is False

    def test_builtin_level_id(self, work):
        result = run_cli("score", "tutorial_1", str(work / "ref_prefix.csv"))
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["level_id"] == "tutorial_1"
        assert 0.0 <= report["fidelity"] <= 1.0

    def test_unknown_level_exits_2(self, work):
        result = run_cli("score", "no_such_level", str(work / "hold.csv"))
        assert result.returncode == 2
        assert "no such level" in result.stderr
        assert result.stdout == ""

    def test_malformed_play_exits_2(self, work):
        result = run_cli("score", str(work / "probe.qmlevel"), str(work / "bad_play.csv"))
        assert result.returncode == 2
        assert "bad_play.csv" in result.stderr

    def test_edge_leak_reports_death(self, work):
        result = run_cli("score", str(work / "probe.qmlevel"), str(work / "slam.csv"))
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["died"] is True
        assert report["total_score"] == 0
        assert report["stars"] == 0
        assert report["fidelity"] == 0.0
        assert 0.0 < report["time_used"] < 0.08

    def test_density_trace_row_count(self, work, tmp_path):
        out = tmp_path / "dens.csv"
        result = run_cli(
            "score",
            str(work / "probe.qmlevel"),
            str(work / "hold.csv"),
            "--density-trace",
            str(out),
        )
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        lines = out.read_text("utf-8").splitlines()
        assert lines[0] == "t,x,density"
        assert len(lines) == 1 + len(report["feedback_trace"]) * GRID_POINTS
        first = lines[1].split(",")
        assert float(first[0]) == 0.0
        assert float(first[2]) >= 0.0


class TestOptimize:
    def test_local_is_deterministic(self, work, tmp_path):
        outputs = []
        for tag in ("a", "b"):
            trace = tmp_path / f"trace_{tag}.csv"
            best = tmp_path / f"best_{tag}.csv"
            result = run_cli(
                "optimize",
                str(work / "probe.qmlevel"),
                "--family", "local",
                "--budget", "12",
                "--seed-play", str(work / "hold.csv"),
                "--trace-out", str(trace),
                "--play-out", str(best),
            )
            assert result.returncode == 0, result.stderr
            outputs.append(
                (result.stdout, trace.read_text("utf-8"), best.read_text("utf-8"))
            )
        assert outputs[0] == outputs[1]
        summary = json.loads(outputs[0][0])
        assert summary["family"] == "local"
        assert summary["evaluations_used"] == 12

    def test_local_seed_count_usage_error(self, work, tmp_path):
        no_seed = run_cli(
            "optimize", str(work / "probe.qmlevel"), "--family", "local",
            "--budget", "5",
        )
        assert no_seed.returncode == 2
        assert "exactly one" in no_seed.stderr
        two_seeds = run_cli(
            "optimize", str(work / "probe.qmlevel"), "--family", "local",
            "--budget", "5",
            "--seed-play", str(work / "hold.csv"),
            "--seed-play", str(work / "hold.csv"),
        )
        assert two_seeds.returncode == 2

    def test_hybrid_requires_seed(self, work):
        result = run_cli(
            "optimize", str(work / "probe.qmlevel"), "--family", "hybrid",
            "--budget", "5",
        )
        assert result.returncode == 2
        assert "at least one" in result.stderr

    def test_stochastic_budget_one(self, work, tmp_path):
        trace = tmp_path / "trace.csv"
        best = tmp_path / "best.csv"
        result = run_cli(
            "optimize",
            str(work / "probe.qmlevel"),
            "--family", "stochastic",
            "--budget", "1",
            "--rng", "3",
            "--trace-out", str(trace),
            "--play-out", str(best),
        )
        assert result.returncode == 0, result.stderr
        summary = json.loads(result.stdout)
        assert summary["evaluations_used"] == 1
        lines = trace.read_text("utf-8").splitlines()
        assert lines[0] == "eval_index,candidate_score,best_score"
        assert len(lines) == 2
        # the exported best play parses back as a valid control path
        exported = read_path_csv(best.read_text("utf-8"))
        assert exported.duration <= 0.08

    def test_out_of_bounds_seed_exits_2(self, work, tmp_path):
        seed = tmp_path / "wild.csv"
        seed.write_text(play_csv([0.0, 0.02], [0.0, 0.9], [40.0, 40.0]), "utf-8")
        result = run_cli(
            "optimize", str(work / "probe.qmlevel"), "--family", "local",
            "--budget", "5", "--seed-play", str(seed),
        )
        assert result.returncode == 2
        assert "error:" in result.stderr


class TestCompare:
    @staticmethod
    def trace_text(rows: list[tuple[int, int, int]]) -> str:
        lines = ["eval_index,candidate_score,best_score"]
        lines += [f"{i},{c},{b}" for i, c, b in rows]
        return "\n".join(lines) + "\n"

    def test_reports_crossover(self, tmp_path):
        trace = tmp_path / "run.csv"
        trace.write_text(
            self.trace_text([(1, 100, 100), (2, 450, 450), (3, 200, 450)]), "utf-8"
        )
        players = tmp_path / "players.csv"
        players.write_text("play_index,score\n1,300\n2,400\n", "utf-8")
        result = run_cli(
            "compare", "--runs", str(trace), "--players", str(players),
            "--level", "probe",
        )
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["level_id"] == "probe"
        assert report["n_evaluations"] == 3
        assert report["run_curves"] == [[100, 450, 450]]
        assert report["player_curves"] == [[300, 400, 400]]
        assert report["crossover"] == [[2]]

    def test_player_stays_ahead(self, tmp_path):
        trace = tmp_path / "run.csv"
        trace.write_text(self.trace_text([(1, 100, 100), (2, 150, 150)]), "utf-8")
        players = tmp_path / "players.csv"
        players.write_text("play_index,score\n1,900\n", "utf-8")
        result = run_cli("compare", "--runs", str(trace), "--players", str(players))
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["crossover"] == [["none within budget"]]

    def test_missing_trace_exits_2(self, tmp_path):
        players = tmp_path / "players.csv"
        players.write_text("play_index,score\n1,100\n", "utf-8")
        result = run_cli(
            "compare", "--runs", str(tmp_path / "absent.csv"),
            "--players", str(players),
        )
        assert result.returncode == 2
        assert "no such trace file" in result.stderr

    def test_bad_player_header_exits_2(self, tmp_path):
        trace = tmp_path / "run.csv"
        trace.write_text(self.trace_text([(1, 100, 100)]), "utf-8")
        players = tmp_path / "players.csv"
        players.write_text("round,points\n1,100\n", "utf-8")
        result = run_cli("compare", "--runs", str(trace), "--players", str(players))
        assert result.returncode == 2
        assert "play_index,score" in result.stderr


def start_server(data_dir: Path) -> tuple[subprocess.Popen, str]:
    proc = subprocess.Popen(
        [sys.executable, "-m", "qmotion", "serve", "--addr", "127.0.0.1:0",
         "--data-dir", str(data_dir)],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        text=True,
        env=clean_env(),
    )
    line = proc.stderr.readline()
    assert "serving on" in line, line
    address = line.split("serving on ")[1].split(",")[0]
    return proc, f"http://{address}"


def stop_server(proc: subprocess.Popen) -> int:
    proc.send_signal(signal.SIGTERM)
    try:
        proc.wait(timeout=10)
    finally:
        if proc.poll() is None:
            proc.kill()
    return proc.returncode


def get_json(url: str) -> dict:
    with urllib.request.urlopen(url, timeout=10) as response:
        return json.loads(response.read())


def post_json(url: str, payload: dict) -> dict:
    request = urllib.request.Request(
        url,
        data=json.dumps(payload).encode(),
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(request, timeout=30) as response:
        return json.loads(response.read())


class TestServe:
    def test_serve_round_trip_and_restart(self, work, tmp_path):
        data_dir = tmp_path / "data"
        proc, base = start_server(data_dir)
        try:
            assert get_json(f"{base}/v1/health") == {"status": "ok"}
            user = post_json(
                f"{base}/v1/users",
                {"name": "cli_tester", "origin": "unknown", "rng_seed": 0},
            )
            ref = read_path_csv((work / "ref_prefix.csv").read_text("utf-8"))
            submit = post_json(
                f"{base}/v1/plays",
                {
                    "user_id": user["user_id"],
                    "level_id": "tutorial_1",
                    "path": {
                        "t": [s.t for s in ref.samples],
                        "x0": [s.x0 for s in ref.samples],
                        "amplitude": [s.amplitude for s in ref.samples],
                        "origin": "human",
                    },
                },
            )
            assert submit["play_id"] == "p1"
            board = get_json(f"{base}/v1/leaderboards/tutorial_1")
        finally:
            assert stop_server(proc) == 0
        assert (data_dir / "users.jsonl").exists()
        assert (data_dir / "plays.log").exists()

        proc, base = start_server(data_dir)
        try:
            again = get_json(f"{base}/v1/leaderboards/tutorial_1")
            assert again == board
            profile = get_json(f"{base}/v1/users/{user['user_id']}")
            assert profile["name"] == "cli_tester"
        finally:
            assert stop_server(proc) == 0

    def test_serve_without_data_dir_exits_2(self):
        result = run_cli("serve", env=clean_env())
        assert result.returncode == 2
        assert "data-dir" in result.stderr

    def test_bad_addr_exits_2(self, tmp_path):
        result = run_cli(
            "serve", "--addr", "nonsense", "--data-dir", str(tmp_path),
            env=clean_env(),
        )
        assert result.returncode == 2
        assert "HOST:PORT" in result.stderr


class TestMetrics:
    def test_empty_dir_reports_zeros_and_writes_nothing(self, tmp_path):
        data_dir = tmp_path / "empty"
        result = run_cli("metrics", "--data-dir", str(data_dir))
        assert result.returncode == 0, result.stderr
        metrics = json.loads(result.stdout)
        assert metrics["registered_users"] == 0
        assert metrics["total_plays"] == 0
        assert metrics["retention_curve"] == []
        # a read-only command must not seed the data directory with files
        assert list(data_dir.iterdir()) == []

    def test_counts_store_and_is_deterministic(self, tmp_path):
        data_dir = tmp_path / "data"
        day = 1_700_000_000.0
        # cheap stand-ins for the real levels; the metrics command only reads
        # back the stored reports, so the catalog swap never shows
        catalog = {
            level_id: dataclasses.replace(probe_level(), id=level_id)
            for level_id in CATALOG_ORDER
        }
        store = GameStore(data_dir, sim_config=FAST, catalog=catalog)
        try:
            player = store.register_user("ada", "online_media", 0, at=day)
            idle = store.register_user("bob", "unknown", 1, at=day)
            hold = path_from_arrays(
                np.array([0.0, 0.02]), np.array([0.0, 0.0]), np.array([0.0, 0.0])
            )
            store.submit_play(player.user_id, "tutorial_1", hold, at=day)
            store.submit_play(player.user_id, "tutorial_1", hold, at=day + 3600)
        finally:
            store.close()

        first = run_cli("metrics", "--data-dir", str(data_dir))
        assert first.returncode == 0, first.stderr
        metrics = json.loads(first.stdout)
        assert metrics["registered_users"] == 2
        assert metrics["total_plays"] == 2
        assert metrics["tried_ratio"]["tutorial_1"] == 0.5
        assert metrics["completed_ratio"]["tutorial_1"] == 1.0
        assert metrics["active_days"][player.user_id] == 1
        assert metrics["active_days"][idle.user_id] == 0
        assert metrics["plays_per_active_day"]["online_media"] == 2.0
        assert metrics["plays_per_active_day"]["unknown"] == 0.0
        assert metrics["retention_curve"] == [1]

        second = run_cli("metrics", "--data-dir", str(data_dir))
        assert second.stdout == first.stdout

    def test_data_dir_env_fallback(self, tmp_path):
        result = run_cli(
            "metrics", env=clean_env(QM_DATA_DIR=str(tmp_path / "via_env"))
        )
        assert result.returncode == 0, result.stderr
        assert json.loads(result.stdout)["registered_users"] == 0

    def test_missing_data_dir_exits_2(self):
        result = run_cli("metrics", env=clean_env())
        assert result.returncode == 2
        assert "data-dir" in result.stderr
