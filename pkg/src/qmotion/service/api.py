"""HTTP+JSON API over a GameStore, versioned under /v1.

Built on the standard library's threading HTTP server: the store serializes
mutations internally, handlers are thin JSON adapters around it. Endpoints:

    GET  /v1/health
    GET  /v1/levels
    GET  /v1/levels/{id}
    POST /v1/users                        {name, origin, rng_seed?}
    GET  /v1/users/{id}
    POST /v1/plays                        {user_id, level_id, path, at?}
    GET  /v1/plays/{id}/replay
    GET  /v1/leaderboards/{level}?around={user}&window={k}
    GET  /v1/metrics
    POST /v1/preview                      {level_id, path}  (score, don't store)

A path travels as {"t": [...], "x0": [...], "amplitude": [...], "origin": s}.
Replay and preview responses carry density frames sampled from the evolution
so a client can render the play without its own solver.
"""
from __future__ import annotations

import json
import re
import secrets
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

import numpy as np

from ..core import EdgeLeakError, SimConfig, WaveFunction
from ..core.evolve import step_stream
from ..levels.model import Level
from ..levels.scoring import PlayValidationError
from ..levels.states import initial_state, landscape_at, static_landscape, target_state
from ..paths.model import ControlPath, path_from_arrays
from .metrics import engagement_metrics
from .model import ConflictError, NotFoundError, ProgressionError
from .store import GameStore

MAX_BODY_BYTES = 4 * 1024 * 1024
REPLAY_FRAMES = 120


def path_to_json(path: ControlPath) -> dict:
    return {
        "t": [s.t for s in path.samples],
        "x0": [s.x0 for s in path.samples],
        "amplitude": [s.amplitude for s in path.samples],
        "origin": path.origin,
    }


def path_from_json(data: dict) -> ControlPath:
    try:
        t = np.asarray(data["t"], dtype=float)
        x0 = np.asarray(data["x0"], dtype=float)
        amplitude = np.asarray(data["amplitude"], dtype=float)
    except (TypeError, KeyError) as err:
        raise ValueError(f"path needs numeric t/x0/amplitude arrays: {err}") from err
    if not (t.ndim == x0.ndim == amplitude.ndim == 1) or not (
        len(t) == len(x0) == len(amplitude)
    ):
        raise ValueError("path arrays t/x0/amplitude must be 1-D and equal length")
    return path_from_arrays(t, x0, amplitude, origin=data.get("origin", "human"))


def _rounded(values: np.ndarray) -> list[float]:
    return [round(float(v), 6) for v in values]


def trap_to_json(trap) -> dict:
    if isinstance(trap, int):
        return {"kind": "well", "index": trap}
    return {"kind": "tweezer", "x0": trap.x0, "amplitude": trap.amplitude}


def level_summary(level: Level) -> dict:
    return {
        "id": level.id,
        "title": level.title,
        "duration_max": level.duration_max,
        "skill_tags": sorted(level.skill_tags),
        "star_thresholds": list(level.star_thresholds),
        "max_points": level.max_points,
        "display_mode": level.display_mode,
    }


def level_detail(level: Level, config: SimConfig) -> dict:
    detail = level_summary(level)
    detail.update(
        {
            "tweezer": {
                "sigma": level.tweezer.sigma,
                "depth_max": level.tweezer.depth_max,
                "x_min": level.tweezer.x_min,
                "x_max": level.tweezer.x_max,
            },
            "static_wells": [
                {"center": w.center, "depth": w.depth, "width": w.width}
                for w in level.static_wells
            ],
            "initial_trap": trap_to_json(level.initial_trap),
            "target_trap": trap_to_json(level.target_trap),
            "death_zones": [
                {"x_lo": z.x_lo, "x_hi": z.x_hi} for z in level.death_zones
            ],
            "bonus_pickups": [
                {"x": p.x, "radius": p.radius, "points": p.points}
                for p in level.bonus_pickups
            ],
            "time_penalty_weight": level.time_penalty_weight,
            "x": _rounded(config.x),
            "static_potential": _rounded(static_landscape(level, config).values),
            "initial_density": _rounded(initial_state(level, config).density()),
            "target_density": _rounded(target_state(level, config).density()),
        }
    )
    return detail


def replay_frames(
    level: Level,
    path: ControlPath,
    config: SimConfig,
    until: float | None = None,
    max_frames: int = REPLAY_FRAMES,
) -> dict:
    """Density frames of the evolution, for rendering a stored or previewed play."""
    duration = path.duration if until is None else min(until, path.duration)
    steps = max(1, int(round(duration / config.dt)))
    stride = max(1, -(-steps // max_frames))
    times: list[float] = []
    densities: list[list[float]] = []
    truncated = False
    potential_at = landscape_at(level, path, config)
    start = initial_state(level, config)
    try:
        for t, amplitudes in step_stream(start, potential_at, duration, config, stride):
            times.append(t)
            densities.append(_rounded(WaveFunction(amplitudes, config).density()))
    except EdgeLeakError:
        truncated = True
    x0, amplitude = path.interpolate(np.asarray(times))
    return {
        "t": times,
        "density": densities,
        "x0": _rounded(x0),
        "amplitude": _rounded(amplitude),
        "truncated": truncated,
    }


class ApiServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, store: GameStore, addr: tuple[str, int] = ("127.0.0.1", 0), verbose: bool = False):
        super().__init__(addr, ApiHandler)
        self.store = store
        self.verbose = verbose
        self._detail_cache: dict[str, dict] = {}

    @property
    def address(self) -> str:
        host, port = self.server_address[:2]
        return f"{host}:{port}"

    def level_detail(self, level: Level) -> dict:
        cached = self._detail_cache.get(level.id)
        if cached is None:
            cached = level_detail(level, self.store.sim_config)
            self._detail_cache[level.id] = cached
        return cached


class ApiHandler(BaseHTTPRequestHandler):
    server: ApiServer
    protocol_version = "HTTP/1.1"

    ROUTES = (
        ("GET", re.compile(r"^/v1/health$"), "health"),
        ("GET", re.compile(r"^/v1/levels$"), "list_levels"),
        ("GET", re.compile(r"^/v1/levels/(?P<level_id>[a-z0-9_]+)$"), "get_level"),
        ("POST", re.compile(r"^/v1/users$"), "create_user"),
        ("GET", re.compile(r"^/v1/users/(?P<user_id>[A-Za-z0-9_]+)$"), "get_user"),
        ("POST", re.compile(r"^/v1/plays$"), "create_play"),
        ("GET", re.compile(r"^/v1/plays/(?P<play_id>[A-Za-z0-9_]+)/replay$"), "get_replay"),
        ("GET", re.compile(r"^/v1/leaderboards/(?P<level_id>[a-z0-9_]+)$"), "get_leaderboard"),
        ("GET", re.compile(r"^/v1/metrics$"), "get_metrics"),
        ("POST", re.compile(r"^/v1/preview$"), "preview"),
    )

    def log_message(self, format: str, *args) -> None:  # noqa: A002
        if self.server.verbose:
            super().log_message(format, *args)

    # -- plumbing ----------------------------------------------------------

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length > MAX_BODY_BYTES:
            raise ValueError(f"request body too large ({length} bytes)")
        raw = self.rfile.read(length)
        data = json.loads(raw) if raw else {}
        if not isinstance(data, dict):
            raise ValueError("request body must be a JSON object")
        return data

    def _dispatch(self, method: str) -> None:
        url = urlsplit(self.path)
        for route_method, pattern, name in self.ROUTES:
            if route_method != method:
                continue
            match = pattern.match(url.path)
            if match is None:
                continue
            query = {k: v[-1] for k, v in parse_qs(url.query).items()}
            try:
                status, payload = getattr(self, name)(query=query, **match.groupdict())
            except NotFoundError as err:
                status, payload = 404, {"error": str(err)}
            except ConflictError as err:
                status, payload = 409, {"error": str(err)}
            except ProgressionError as err:
                status, payload = 403, {
                    "error": str(err),
                    "level_id": err.level_id,
                    "missing": err.missing,
                }
            except (PlayValidationError, ValueError, KeyError, json.JSONDecodeError) as err:
                reason = (
                    f"missing field {err}" if isinstance(err, KeyError) else str(err)
                )
                status, payload = 400, {"error": reason}
            self._send(status, payload)
            return
        self._send(404, {"error": f"no route for {method} {url.path}"})

    def do_GET(self) -> None:  # noqa: N802
        self._dispatch("GET")

    def do_POST(self) -> None:  # noqa: N802
        self._dispatch("POST")

    # -- handlers ----------------------------------------------------------

    def health(self, query: dict) -> tuple[int, dict]:
        return 200, {"status": "ok"}

    def list_levels(self, query: dict) -> tuple[int, dict]:
        store = self.server.store
        return 200, {
            "levels": [level_summary(store.catalog[i]) for i in store.catalog]
        }

    def get_level(self, query: dict, level_id: str) -> tuple[int, dict]:
        store = self.server.store
        if level_id not in store.catalog:
            raise NotFoundError(f"unknown level {level_id!r}")
        return 200, self.server.level_detail(store.catalog[level_id])

    def create_user(self, query: dict) -> tuple[int, dict]:
        body = self._body()
        seed = body.get("rng_seed")
        if seed is None:
            seed = secrets.randbits(32)
        profile = self.server.store.register_user(
            str(body["name"]), str(body["origin"]), int(seed), at=body.get("at")
        )
        return 201, profile.to_dict()

    def get_user(self, query: dict, user_id: str) -> tuple[int, dict]:
        return 200, self.server.store.user(user_id).to_dict()

    def create_play(self, query: dict) -> tuple[int, dict]:
        body = self._body()
        path = path_from_json(body["path"])
        result = self.server.store.submit_play(
            str(body["user_id"]),
            str(body["level_id"]),
            path,
            at=body.get("at"),
            client_version=body.get("client_version"),
        )
        return 201, result.to_dict()

    def get_replay(self, query: dict, play_id: str) -> tuple[int, dict]:
        store = self.server.store
        record = store.play(play_id)
        level = store.catalog[record.level_id]
        frames = replay_frames(
            level, record.path, store.sim_config, until=record.score.time_used
        )
        return 200, {
            "play_id": play_id,
            "level_id": record.level_id,
            "user_id": record.user_id,
            "timestamp": record.timestamp,
            "client_version": record.client_version,
            "path": path_to_json(record.path),
            "report": record.score.to_dict(),
            "frames": frames,
        }

    def get_leaderboard(self, query: dict, level_id: str) -> tuple[int, dict]:
        window = int(query.get("window", 10))
        entries = self.server.store.leaderboard(
            level_id, around_user=query.get("around"), window=window
        )
        return 200, {"level_id": level_id, "entries": [e.to_dict() for e in entries]}

    def get_metrics(self, query: dict) -> tuple[int, dict]:
        store = self.server.store
        return 200, engagement_metrics(store.users(), store.plays()).to_dict()

    def preview(self, query: dict) -> tuple[int, dict]:
        body = self._body()
        store = self.server.store
        level_id = str(body["level_id"])
        if level_id not in store.catalog:
            raise NotFoundError(f"unknown level {level_id!r}")
        level = store.catalog[level_id]
        path = path_from_json(body["path"])
        report = store.score(level, path)
        frames = replay_frames(level, path, store.sim_config, until=report.time_used)
        return 200, {"level_id": level_id, "report": report.to_dict(), "frames": frames}
