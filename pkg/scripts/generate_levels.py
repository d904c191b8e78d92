"""Regenerate the shipped level files and reference paths from the authored catalog.

Run from the repository root after changing qmotion.levels.catalog:

    python3 scripts/generate_levels.py
"""
from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from qmotion.core import SimConfig
from qmotion.levels.catalog import author_levels, author_reference, level_text, write_path_csv


def main() -> None:
    data_dir = pathlib.Path(__file__).resolve().parent.parent / "src" / "qmotion" / "levels" / "data"
    paths_dir = data_dir / "paths"
    data_dir.mkdir(parents=True, exist_ok=True)
    paths_dir.mkdir(parents=True, exist_ok=True)
    config = SimConfig()
    for level_id, level in author_levels().items():
        (data_dir / f"{level_id}.qmlevel").write_text(level_text(level), encoding="utf-8")
        path = author_reference(level, config)
        (paths_dir / f"{level_id}.csv").write_text(write_path_csv(path), encoding="utf-8")
        print(f"wrote {level_id} ({len(path.samples)} path samples)")


if __name__ == "__main__":
    main()
