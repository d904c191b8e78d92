"""Unlock tree and badge rules, as pure functions of a player's record."""
from __future__ import annotations

from ..levels.catalog import (
    LAB_BACHELORS,
    LAB_MASTERS,
    LAB_SKILLS,
    SCIENTIFIC_LEVELS,
    TUTORIAL_LEVELS,
)
from .model import Badge, ExperimentCell

PLAY_COUNT_BADGES = (50, 100, 350, 1000)

PARTIAL_SCIENTIFIC = SCIENTIFIC_LEVELS[0]
FULL_SCIENTIFIC = SCIENTIFIC_LEVELS[1]

ALL_LEVELS = (
    tuple(TUTORIAL_LEVELS)
    + tuple(lv for lab in LAB_BACHELORS.values() for lv in lab)
    + tuple(lv for lab in LAB_MASTERS.values() for lv in lab)
    + tuple(SCIENTIFIC_LEVELS)
)


def unlocked_levels(cell: ExperimentCell, completed: set[str]) -> set[str]:
    """Levels a player may submit to, given which ones they have completed.

    `completed` = levels finished at one star or better. In the open cell the
    whole catalog is available from the start; in the locked cell the tree
    is: tutorials in sequence, the three skill labs' Bachelor levels after
    the last tutorial, each lab's Master levels plus the first scientific
    level after all of that lab's Bachelors, and the second scientific level
    after all six Masters.
    """
    if cell.levels_mode == "open":
        return set(ALL_LEVELS)

    unlocked = {TUTORIAL_LEVELS[0]}
    for earlier, later in zip(TUTORIAL_LEVELS, TUTORIAL_LEVELS[1:]):
        if earlier in completed:
            unlocked.add(later)
        else:
            break
    if TUTORIAL_LEVELS[-1] in completed:
        for bachelors in LAB_BACHELORS.values():
            unlocked.update(bachelors)
    for lab, bachelors in LAB_BACHELORS.items():
        if all(lv in completed for lv in bachelors):
            unlocked.update(LAB_MASTERS[lab])
            unlocked.add(PARTIAL_SCIENTIFIC)
    all_masters = [lv for lab in LAB_MASTERS.values() for lv in lab]
    if all(lv in completed for lv in all_masters):
        unlocked.add(FULL_SCIENTIFIC)
    return unlocked


def missing_prerequisite(level_id: str, completed: set[str]) -> str:
    """One not-yet-completed level that gates `level_id`."""
    if level_id in TUTORIAL_LEVELS:
        index = TUTORIAL_LEVELS.index(level_id)
        for earlier in TUTORIAL_LEVELS[:index]:
            if earlier not in completed:
                return earlier
        return TUTORIAL_LEVELS[index - 1] if index else TUTORIAL_LEVELS[0]
    # everything past the tutorials needs the tutorial arc first
    for lv in TUTORIAL_LEVELS:
        if lv not in completed:
            return lv
    for lab, bachelors in LAB_BACHELORS.items():
        if level_id in LAB_MASTERS[lab]:
            for lv in bachelors:
                if lv not in completed:
                    return lv
    if level_id == PARTIAL_SCIENTIFIC:
        for lv in LAB_BACHELORS[_closest_lab(completed)]:
            if lv not in completed:
                return lv
    if level_id == FULL_SCIENTIFIC:
        for masters in LAB_MASTERS.values():
            for lv in masters:
                if lv not in completed:
                    return lv
    return TUTORIAL_LEVELS[-1]


def _closest_lab(completed: set[str]) -> str:
    """The lab nearest to a full Bachelor sweep (for error messages)."""
    def remaining(lab: str) -> int:
        return sum(1 for lv in LAB_BACHELORS[lab] if lv not in completed)

    return min(LAB_BACHELORS, key=lambda lab: (remaining(lab), lab))


def new_badges(
    cell: ExperimentCell,
    already: set[str],
    completed: set[str],
    three_starred_tags: set[str],
    play_count: int,
    at: float,
) -> list[Badge]:
    """Badges earned as of this moment that the player does not hold yet.

    Returns nothing at all when the player's cell has badges off; unlock
    progression is unaffected either way.
    """
    if cell.badges_mode != "on":
        return []
    earned: list[Badge] = []

    def award(badge_id: str, title: str, kind: str, criterion: str) -> None:
        if badge_id not in already:
            earned.append(Badge(badge_id, title, kind, criterion, at))

    for lab, bachelors in LAB_BACHELORS.items():
        if all(lv in completed for lv in bachelors):
            award(
                f"bachelor_{lab}",
                f"{lab.capitalize()} Bachelor",
                "performance",
                f"complete all {lab} Bachelor levels",
            )
        if all(lv in completed for lv in LAB_MASTERS[lab]):
            award(
                f"master_{lab}",
                f"{lab.capitalize()} Master",
                "performance",
                f"complete all {lab} Master levels",
            )
    for tag in sorted(three_starred_tags):
        award(
            f"skill_{tag}",
            f"{tag.capitalize()} Virtuoso",
            "performance",
            f"finish a {tag} level with three stars",
        )
    for threshold in PLAY_COUNT_BADGES:
        if play_count >= threshold:
            award(
                f"plays_{threshold}",
                f"Quantum Frenzy {threshold}",
                "engagement",
                f"play {threshold} games",
            )
    return earned
