"""Command line entry point.

Subcommands:

    score <level-file> <play-file> [--density-trace out.csv]
    optimize <level-file> --family F --budget N [--seed-play f.csv ...]
             [--rng S] [--trace-out t.csv] [--play-out p.csv]
    compare --runs a.csv b.csv ... --players p.csv ... [--level ID]
    serve [--addr HOST:PORT] [--data-dir DIR]
    metrics [--data-dir DIR]

Conventions: machine-readable output (JSON or CSV) goes to stdout or the
named files; prose goes to stderr. Exit status 0 on success, 1 on internal
error, 2 on input or usage error. Level arguments accept either a .qmlevel
file path or a built-in level id; play files are t,x0,amplitude CSV. Player
history files for `compare` are play_index,score CSV. --data-dir falls back
to the QM_DATA_DIR environment variable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import signal
import sys
import threading
from pathlib import Path

from .core import EdgeLeakError, SimConfig, WaveFunction
from .core.evolve import step_stream
from .levels.catalog import CATALOG_ORDER, load_level, read_path_csv, write_path_csv
from .levels.format import LevelFormatError, parse_level
from .levels.model import Level, LevelValidationError, ScoreReport
from .levels.scoring import PlayValidationError, score_play
from .levels.states import initial_state, landscape_at
from .paths.model import ControlPath
from .optimize import (
    convergence_report_from_curves,
    hybrid_optimize,
    local_optimize,
    read_trace_csv,
    stochastic_optimize,
    trace_csv,
)
from .optimize.model import OptimizerConfig
from .service import ApiServer, GameStore, edge_loss_report, engagement_metrics


class InputError(Exception):
    """Bad file or argument content; maps to exit status 2."""


def _load_level_arg(argument: str) -> Level:
    path = Path(argument)
    if path.exists():
        try:
            return parse_level(path.read_text(encoding="utf-8"))
        except (LevelFormatError, LevelValidationError) as err:
            raise InputError(f"{argument}: {err}") from err
    if argument in CATALOG_ORDER:
        return load_level(argument)
    raise InputError(f"{argument}: no such level file or built-in level id")


def _load_play_arg(argument: str) -> ControlPath:
    path = Path(argument)
    if not path.exists():
        raise InputError(f"{argument}: no such play file")
    try:
        return read_path_csv(path.read_text(encoding="utf-8"))
    except ValueError as err:
        raise InputError(f"{argument}: {err}") from err


def _scored_report(level: Level, play: ControlPath, config: SimConfig) -> ScoreReport:
    try:
        return score_play(level, play, config)
    except EdgeLeakError as err:
        return edge_loss_report(err)


def _write_density_trace(
    out_path: str, level: Level, play: ControlPath, config: SimConfig, samples: int
) -> None:
    """|psi(x,t)|^2 at the scored instants, long form: one row per (t, x)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["t", "x", "density"])
    grid = config.x
    collected = 0
    try:
        stream = step_stream(
            initial_state(level, config),
            landscape_at(level, play, config),
            play.duration,
            config,
        )
        for t, amplitudes in stream:
            density = WaveFunction(amplitudes, config).density()
            for x, d in zip(grid, density):
                writer.writerow([repr(float(t)), repr(float(x)), repr(float(d))])
            collected += 1
            if collected >= samples:
                break
    except EdgeLeakError:
        pass  # the scored report already reflects the lost play
    Path(out_path).write_text(buffer.getvalue(), encoding="utf-8")


def cmd_score(args: argparse.Namespace) -> int:
    level = _load_level_arg(args.level)
    play = _load_play_arg(args.play)
    config = SimConfig()
    try:
        report = _scored_report(level, play, config)
    except PlayValidationError as err:
        raise InputError(str(err)) from err
    if args.density_trace:
        _write_density_trace(
            args.density_trace, level, play, config, len(report.feedback_trace)
        )
        print(f"density trace written to {args.density_trace}", file=sys.stderr)
    report_dict = report.to_dict()
    report_dict["level_id"] = level.id
    print(json.dumps(report_dict))
    return 0


def cmd_optimize(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    level = _load_level_arg(args.level)
    seeds = [_load_play_arg(f) for f in args.seed_play]
    if args.family == "local" and len(seeds) != 1:
        parser.error("--family local needs exactly one --seed-play")
    if args.family == "hybrid" and not seeds:
        parser.error("--family hybrid needs at least one --seed-play")
    config = OptimizerConfig(
        family=args.family, evaluation_budget=args.budget, rng_seed=args.rng
    )
    try:
        if args.family == "local":
            run = local_optimize(level, seeds[0], config)
        elif args.family == "stochastic":
            run = stochastic_optimize(level, config, init_paths=seeds or None)
        else:
            run = hybrid_optimize(level, seeds, config)
    except (PlayValidationError, ValueError) as err:
        raise InputError(str(err)) from err
    Path(args.trace_out).write_text(trace_csv(run), encoding="utf-8")
    Path(args.play_out).write_text(write_path_csv(run.best_path), encoding="utf-8")
    print(
        f"trace written to {args.trace_out}, best play to {args.play_out}",
        file=sys.stderr,
    )
    print(
        json.dumps(
            {
                "level_id": run.level_id,
                "family": run.config.family,
                "evaluations_used": run.evaluations_used,
                "best_score": run.best_score,
                "best_fidelity": run.best_fidelity,
                "best_duration": run.best_path.duration,
            }
        )
    )
    return 0


def _read_player_csv(argument: str) -> list[int]:
    path = Path(argument)
    if not path.exists():
        raise InputError(f"{argument}: no such player history file")
    reader = csv.reader(io.StringIO(path.read_text(encoding="utf-8")))
    header = next(reader, None)
    if header != ["play_index", "score"]:
        raise InputError(f"{argument}: expected header play_index,score, got {header}")
    scores = []
    for row in reader:
        if not row:
            continue
        try:
            scores.append(int(row[1]))
        except (IndexError, ValueError) as err:
            raise InputError(f"{argument}: bad row {row}: {err}") from err
    return scores


def cmd_compare(args: argparse.Namespace) -> int:
    machine_curves = []
    for run_file in args.runs:
        path = Path(run_file)
        if not path.exists():
            raise InputError(f"{run_file}: no such trace file")
        try:
            trace = read_trace_csv(path.read_text(encoding="utf-8"))
        except ValueError as err:
            raise InputError(f"{run_file}: {err}") from err
        machine_curves.append([entry.best_score for entry in trace])
    players = [_read_player_csv(f) for f in args.players]
    try:
        report = convergence_report_from_curves(
            machine_curves, players, level_id=args.level
        )
    except ValueError as err:
        raise InputError(str(err)) from err
    print(json.dumps(report.to_dict()))
    return 0


def _data_dir(args: argparse.Namespace, parser: argparse.ArgumentParser) -> Path:
    value = args.data_dir or os.environ.get("QM_DATA_DIR")
    if not value:
        parser.error("--data-dir is required (or set QM_DATA_DIR)")
    return Path(value)


def cmd_serve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    data_dir = _data_dir(args, parser)
    host, _, port_text = args.addr.rpartition(":")
    if not host or not port_text.isdigit():
        parser.error(f"--addr must look like HOST:PORT, got {args.addr!r}")
    store = GameStore(data_dir)
    server = ApiServer(store, (host, int(port_text)), verbose=args.verbose)
    stop = threading.Event()

    def handle_signal(signum, frame):
        stop.set()

    signal.signal(signal.SIGTERM, handle_signal)
    signal.signal(signal.SIGINT, handle_signal)
    worker = threading.Thread(target=server.serve_forever, daemon=True)
    worker.start()
    print(f"serving on {server.address}, data in {data_dir}", file=sys.stderr)
    stop.wait()
    print("shutting down", file=sys.stderr)
    server.shutdown()
    server.server_close()
    store.close()
    return 0


def cmd_metrics(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    data_dir = _data_dir(args, parser)
    store = GameStore(data_dir)
    try:
        print(json.dumps(engagement_metrics(store.users(), store.plays()).to_dict()))
    finally:
        store.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmotion", description="Quantum control game toolkit"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    score = commands.add_parser("score", help="score a play file against a level")
    score.add_argument("level", help=".qmlevel file or built-in level id")
    score.add_argument("play", help="t,x0,amplitude CSV play file")
    score.add_argument(
        "--density-trace", metavar="FILE", help="write |psi|^2 samples as CSV"
    )

    optimize = commands.add_parser("optimize", help="run an optimizer on a level")
    optimize.add_argument("level", help=".qmlevel file or built-in level id")
    optimize.add_argument(
        "--family", required=True, choices=("local", "stochastic", "hybrid")
    )
    optimize.add_argument("--budget", required=True, type=int, metavar="N")
    optimize.add_argument(
        "--seed-play",
        action="append",
        default=[],
        metavar="FILE",
        help="seed play CSV (repeatable)",
    )
    optimize.add_argument("--rng", type=int, default=0, metavar="S")
    optimize.add_argument("--trace-out", default="trace.csv", metavar="FILE")
    optimize.add_argument("--play-out", default="best_play.csv", metavar="FILE")

    compare = commands.add_parser(
        "compare", help="machine-vs-player convergence report"
    )
    compare.add_argument("--runs", nargs="+", required=True, metavar="TRACE_CSV")
    compare.add_argument("--players", nargs="+", required=True, metavar="PLAYER_CSV")
    compare.add_argument("--level", default="unknown", metavar="ID")

    serve = commands.add_parser("serve", help="run the game API server")
    serve.add_argument("--addr", default="127.0.0.1:8000", metavar="HOST:PORT")
    serve.add_argument("--data-dir", metavar="DIR")
    serve.add_argument("--verbose", action="store_true", help="log requests to stderr")

    metrics = commands.add_parser("metrics", help="print engagement metrics JSON")
    metrics.add_argument("--data-dir", metavar="DIR")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "score":
            return cmd_score(args)
        if args.command == "optimize":
            return cmd_optimize(args, parser)
        if args.command == "compare":
            return cmd_compare(args)
        if args.command == "serve":
            return cmd_serve(args, parser)
        return cmd_metrics(args, parser)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # pragma: no cover - defensive
        print(f"internal error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
