"""Engagement metrics aggregated from the registration and play logs.

Definitions (all ratios in [0, 1]):

* tried ratio       — users with at least one play on the level / registrants
* completed ratio   — users with >= 1 star on the level / users who tried it
* tutorial completion rate — users who completed every tutorial / registrants
* active day        — a UTC calendar date on which a user made >= 1 play
* plays per active day — per recruitment origin: total plays by that origin's
                      users / their total active days
* retention curve   — entry n (1-based) counts users with >= n active days
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

from ..levels.catalog import CATALOG_ORDER, TUTORIAL_LEVELS
from ..paths.record import PlayRecord
from .model import RECRUITMENT_ORIGINS, UserProfile


def _utc_date(timestamp: float) -> str:
    return datetime.fromtimestamp(timestamp, tz=timezone.utc).date().isoformat()


@dataclass(frozen=True)
class EngagementMetrics:
    registered_users: int
    total_plays: int
    tried_ratio: dict[str, float]
    completed_ratio: dict[str, float]
    tutorial_completion_rate: float
    active_days: dict[str, int]
    plays_per_active_day: dict[str, float]
    retention_curve: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "registered_users": self.registered_users,
            "total_plays": self.total_plays,
            "tried_ratio": dict(self.tried_ratio),
            "completed_ratio": dict(self.completed_ratio),
            "tutorial_completion_rate": self.tutorial_completion_rate,
            "active_days": dict(self.active_days),
            "plays_per_active_day": dict(self.plays_per_active_day),
            "retention_curve": list(self.retention_curve),
        }


def engagement_metrics(
    users: list[UserProfile], plays: list[PlayRecord]
) -> EngagementMetrics:
    registrants = len(users)
    origin_of = {u.user_id: u.recruitment_origin for u in users}

    tried: dict[str, set[str]] = {level_id: set() for level_id in CATALOG_ORDER}
    completed: dict[str, set[str]] = {level_id: set() for level_id in CATALOG_ORDER}
    days_of: dict[str, set[str]] = {u.user_id: set() for u in users}
    plays_of: dict[str, int] = {u.user_id: 0 for u in users}

    for record in plays:
        tried.setdefault(record.level_id, set()).add(record.user_id)
        if record.score.stars >= 1:
            completed.setdefault(record.level_id, set()).add(record.user_id)
        days_of.setdefault(record.user_id, set()).add(_utc_date(record.timestamp))
        plays_of[record.user_id] = plays_of.get(record.user_id, 0) + 1

    tried_ratio = {
        level_id: len(tried[level_id]) / registrants if registrants else 0.0
        for level_id in CATALOG_ORDER
    }
    completed_ratio = {
        level_id: len(completed[level_id]) / len(tried[level_id])
        if tried[level_id]
        else 0.0
        for level_id in CATALOG_ORDER
    }

    finished_tutorial = {
        user_id
        for user_id in days_of
        if all(user_id in completed[t] for t in TUTORIAL_LEVELS)
    }
    tutorial_completion_rate = (
        len(finished_tutorial) / registrants if registrants else 0.0
    )

    active_days = {user_id: len(days) for user_id, days in sorted(days_of.items())}

    plays_per_active_day = {}
    for origin in RECRUITMENT_ORIGINS:
        members = [u.user_id for u in users if u.recruitment_origin == origin]
        day_total = sum(active_days.get(m, 0) for m in members)
        play_total = sum(plays_of.get(m, 0) for m in members)
        plays_per_active_day[origin] = play_total / day_total if day_total else 0.0

    max_days = max(active_days.values(), default=0)
    retention_curve = tuple(
        sum(1 for n in active_days.values() if n >= threshold)
        for threshold in range(1, max_days + 1)
    )

    return EngagementMetrics(
        registered_users=registrants,
        total_plays=len(plays),
        tried_ratio=tried_ratio,
        completed_ratio=completed_ratio,
        tutorial_completion_rate=tutorial_completion_rate,
        active_days=active_days,
        plays_per_active_day=plays_per_active_day,
        retention_curve=retention_curve,
    )
