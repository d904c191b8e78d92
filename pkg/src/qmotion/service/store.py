"""Append-only game store: registrations, play log, and derived state.

Two files live in the data directory:

    users.jsonl   one JSON object per registration, append-only
    plays.log     length-prefixed binary play records, append-only

Everything else — unlocks, badges, leaderboards, personal bests — is derived
state, rebuilt by replaying the two logs through the same code path that
handles live submissions. That makes the audit invariants structural: a
stored play IS the record of what happened, and any derived answer can be
recomputed from scratch and compared.
"""
from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..core import EdgeLeakError, SimConfig
from ..levels.catalog import load_catalog
from ..levels.model import Level, ScoreReport
from ..levels.scoring import score_play
from ..paths.model import ControlPath
from ..paths.record import PlayRecord, append_play, iter_plays
from .model import (
    EXPERIMENT_CELLS,
    Badge,
    ConflictError,
    ExperimentCell,
    LeaderboardEntry,
    NotFoundError,
    ProgressionError,
    UserProfile,
)
from .progression import missing_prerequisite, new_badges, unlocked_levels

USERS_FILE = "users.jsonl"
PLAYS_FILE = "plays.log"


@dataclass
class _Standing:
    """One user's record on one level."""

    best_score: int
    achieved_at: float  # when best_score was first reached
    max_stars: int
    best_fidelity: float
    play_count: int


@dataclass
class _UserState:
    profile: UserProfile
    completed: set[str] = field(default_factory=set)
    three_starred_tags: set[str] = field(default_factory=set)
    play_count: int = 0


@dataclass(frozen=True)
class SubmitResult:
    play_id: str
    report: ScoreReport
    personal_best: bool
    new_unlocks: tuple[str, ...]
    new_badges: tuple[Badge, ...]

    def to_dict(self) -> dict:
        return {
            "play_id": self.play_id,
            "report": self.report.to_dict(),
            "personal_best": self.personal_best,
            "new_unlocks": list(self.new_unlocks),
            "new_badges": [b.to_dict() for b in self.new_badges],
        }


def edge_loss_report(err: EdgeLeakError) -> ScoreReport:
    """A play that pushed the atom off the playfield: dead, zero, no zone."""
    return ScoreReport(
        fidelity=0.0,
        time_used=err.t,
        time_penalty_fraction=0.0,
        bonus_points=0,
        total_score=0,
        stars=0,
        died=True,
        death_time=err.t,
        death_zone=None,
        feedback_trace=(0.0,),
    )


class GameStore:
    def __init__(
        self,
        data_dir: str | Path,
        sim_config: SimConfig | None = None,
        catalog: dict[str, Level] | None = None,
    ):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.sim_config = sim_config if sim_config is not None else SimConfig()
        self.catalog = catalog if catalog is not None else load_catalog()
        self._lock = threading.RLock()
        self._users: dict[str, _UserState] = {}
        self._names: set[str] = set()
        self._plays: list[PlayRecord] = []
        # level id -> user id -> standing; insertion order is play order
        self._standings: dict[str, dict[str, _Standing]] = {}

        self._replay_users()
        self._replay_plays()
        # append handles open lazily so read-only use touches no files
        self._plays_out = None
        self._users_out = None

    # -- persistence ------------------------------------------------------

    def _replay_users(self) -> None:
        path = self.data_dir / USERS_FILE
        if not path.exists():
            return
        with path.open(encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                row = json.loads(line)
                cell = ExperimentCell(**row["cell"])
                profile = UserProfile(
                    user_id=row["user_id"],
                    name=row["name"],
                    registered_at=row["registered_at"],
                    recruitment_origin=row["origin"],
                    experiment_cell=cell,
                )
                profile.unlocked = unlocked_levels(cell, set())
                self._users[profile.user_id] = _UserState(profile)
                self._names.add(profile.name)

    def _replay_plays(self) -> None:
        path = self.data_dir / PLAYS_FILE
        if not path.exists():
            return
        with path.open("rb") as fh:
            for record in iter_plays(fh):
                self._apply(record)

    def _plays_sink(self):
        if self._plays_out is None:
            self._plays_out = open(self.data_dir / PLAYS_FILE, "ab")
        return self._plays_out

    def _users_sink(self):
        if self._users_out is None:
            self._users_out = open(self.data_dir / USERS_FILE, "a", encoding="utf-8")
        return self._users_out

    def flush(self) -> None:
        with self._lock:
            if self._plays_out is not None:
                self._plays_out.flush()
            if self._users_out is not None:
                self._users_out.flush()

    def close(self) -> None:
        with self._lock:
            self.flush()
            if self._plays_out is not None:
                self._plays_out.close()
                self._plays_out = None
            if self._users_out is not None:
                self._users_out.close()
                self._users_out = None

    def __enter__(self) -> "GameStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- registration ------------------------------------------------------

    def register_user(
        self, name: str, origin: str, rng_seed: int, at: float | None = None
    ) -> UserProfile:
        with self._lock:
            if name in self._names:
                raise ConflictError(f"user name {name!r} is already registered")
            cell = EXPERIMENT_CELLS[int(np.random.default_rng(rng_seed).integers(0, 4))]
            profile = UserProfile(
                user_id=f"u{len(self._users) + 1:06d}",
                name=name,
                registered_at=time.time() if at is None else at,
                recruitment_origin=origin,
                experiment_cell=cell,
            )
            profile.unlocked = unlocked_levels(cell, set())
            sink = self._users_sink()
            sink.write(
                json.dumps(
                    {
                        "user_id": profile.user_id,
                        "name": profile.name,
                        "registered_at": profile.registered_at,
                        "origin": profile.recruitment_origin,
                        "cell": cell.to_dict(),
                    },
                    sort_keys=True,
                )
                + "\n"
            )
            sink.flush()
            self._users[profile.user_id] = _UserState(profile)
            self._names.add(name)
            return profile

    # -- submission --------------------------------------------------------

    def score(self, level: Level, path: ControlPath) -> ScoreReport:
        """Score a path for a level, treating an edge escape as a death."""
        try:
            return score_play(level, path, self.sim_config)
        except EdgeLeakError as err:
            return edge_loss_report(err)

    def submit_play(
        self,
        user_id: str,
        level_id: str,
        path: ControlPath,
        at: float | None = None,
        client_version: str | None = None,
    ) -> SubmitResult:
        with self._lock:
            state = self._require_user(user_id)
            level = self._require_level(level_id)
            cell = state.profile.experiment_cell
            if cell.levels_mode == "locked" and level_id not in state.profile.unlocked:
                raise ProgressionError(
                    level_id, missing_prerequisite(level_id, state.completed)
                )
            report = self.score(level, path)
            record = PlayRecord(
                level_id=level_id,
                user_id=user_id,
                path=path,
                score=report,
                timestamp=time.time() if at is None else at,
                **({"client_version": client_version} if client_version else {}),
            )
            sink = self._plays_sink()
            append_play(sink, record)
            sink.flush()
            personal_best, unlocks, badges = self._apply(record)
            return SubmitResult(
                play_id=f"p{len(self._plays)}",
                report=report,
                personal_best=personal_best,
                new_unlocks=unlocks,
                new_badges=badges,
            )

    def _apply(self, record: PlayRecord) -> tuple[bool, tuple[str, ...], tuple[Badge, ...]]:
        """Fold one play record into derived state (used live and on replay)."""
        state = self._require_user(record.user_id)
        level = self._require_level(record.level_id)
        report = record.score
        self._plays.append(record)
        state.play_count += 1

        per_level = self._standings.setdefault(record.level_id, {})
        standing = per_level.get(record.user_id)
        personal_best = standing is None or report.total_score > standing.best_score
        if standing is None:
            per_level[record.user_id] = _Standing(
                best_score=report.total_score,
                achieved_at=record.timestamp,
                max_stars=report.stars,
                best_fidelity=report.fidelity,
                play_count=1,
            )
        else:
            standing.play_count += 1
            standing.max_stars = max(standing.max_stars, report.stars)
            standing.best_fidelity = max(standing.best_fidelity, report.fidelity)
            if personal_best:
                standing.best_score = report.total_score
                standing.achieved_at = record.timestamp

        if report.stars >= 1:
            state.completed.add(record.level_id)
        if report.stars == 3:
            state.three_starred_tags.update(level.skill_tags)

        before = set(state.profile.unlocked)
        state.profile.unlocked |= unlocked_levels(
            state.profile.experiment_cell, state.completed
        )
        unlocks = tuple(sorted(state.profile.unlocked - before))

        earned = new_badges(
            state.profile.experiment_cell,
            {b.badge_id for b in state.profile.badges},
            state.completed,
            state.three_starred_tags,
            state.play_count,
            record.timestamp,
        )
        state.profile.badges.extend(earned)
        return personal_best, unlocks, tuple(earned)

    # -- queries -----------------------------------------------------------

    def _require_user(self, user_id: str) -> _UserState:
        try:
            return self._users[user_id]
        except KeyError:
            raise NotFoundError(f"unknown user {user_id!r}") from None

    def _require_level(self, level_id: str) -> Level:
        try:
            return self.catalog[level_id]
        except KeyError:
            raise NotFoundError(f"unknown level {level_id!r}") from None

    def user(self, user_id: str) -> UserProfile:
        with self._lock:
            return self._require_user(user_id).profile

    def users(self) -> list[UserProfile]:
        with self._lock:
            return [state.profile for state in self._users.values()]

    def plays(self) -> list[PlayRecord]:
        with self._lock:
            return list(self._plays)

    def play(self, play_id: str) -> PlayRecord:
        with self._lock:
            if play_id.startswith("p"):
                try:
                    index = int(play_id[1:], 10)
                except ValueError:
                    index = 0
                if 1 <= index <= len(self._plays):
                    return self._plays[index - 1]
            raise NotFoundError(f"unknown play {play_id!r}")

    def _ordered_standings(
        self, standings: dict[str, _Standing], level_id: str
    ) -> list[LeaderboardEntry]:
        rows = sorted(
            standings.items(), key=lambda kv: (-kv[1].best_score, kv[1].achieved_at, kv[0])
        )
        return [
            LeaderboardEntry(
                level_id=level_id,
                user_id=user_id,
                best_score=standing.best_score,
                play_count=standing.play_count,
                rank=i + 1,
            )
            for i, (user_id, standing) in enumerate(rows)
        ]

    def leaderboard(
        self, level_id: str, around_user: str | None = None, window: int = 10
    ) -> list[LeaderboardEntry]:
        """Top `window` entries, or the `window` ranks centered on a user."""
        if window < 1:
            raise ValueError(f"window must be >= 1, got {window}")
        with self._lock:
            self._require_level(level_id)
            entries = self._ordered_standings(self._standings.get(level_id, {}), level_id)
            if around_user is None:
                return entries[:window]
            self._require_user(around_user)
            rank = next((e.rank for e in entries if e.user_id == around_user), None)
            if rank is None:
                raise NotFoundError(
                    f"user {around_user!r} has no plays on level {level_id!r}"
                )
            lo = rank - (window - 1) // 2
            hi = lo + window - 1
            if lo < 1:
                lo, hi = 1, min(len(entries), window)
            if hi > len(entries):
                hi = len(entries)
                lo = max(1, hi - window + 1)
            return entries[lo - 1 : hi]

    # -- audit -------------------------------------------------------------

    def rescore_mismatches(self) -> list[tuple[int, int, int]]:
        """Re-run physics on every stored play; list any score disagreements.

        Returns (play index, stored total, recomputed total) triples — empty
        when the store is consistent.
        """
        with self._lock:
            plays = list(self._plays)
        mismatches = []
        for i, record in enumerate(plays):
            fresh = self.score(self.catalog[record.level_id], record.path)
            if (
                fresh.total_score != record.score.total_score
                or fresh.stars != record.score.stars
                or fresh.fidelity != record.score.fidelity
            ):
                mismatches.append((i + 1, record.score.total_score, fresh.total_score))
        return mismatches

    def brute_force_leaderboard(self, level_id: str) -> list[LeaderboardEntry]:
        """Recompute a leaderboard from the raw play list, ignoring all
        incremental state. Must agree with leaderboard() at every moment."""
        with self._lock:
            self._require_level(level_id)
            standings: dict[str, _Standing] = {}
            for record in self._plays:
                if record.level_id != level_id:
                    continue
                standing = standings.get(record.user_id)
                if standing is None:
                    standings[record.user_id] = _Standing(
                        best_score=record.score.total_score,
                        achieved_at=record.timestamp,
                        max_stars=record.score.stars,
                        best_fidelity=record.score.fidelity,
                        play_count=1,
                    )
                else:
                    standing.play_count += 1
                    if record.score.total_score > standing.best_score:
                        standing.best_score = record.score.total_score
                        standing.achieved_at = record.timestamp
            return self._ordered_standings(standings, level_id)
