"""Binary serialization for played levels (.qmplay files and play logs).

Layout (all integers little-endian):

    byte 0          format version (currently 1)
    3 sections      each prefixed with a u32 byte length, in order:

    META   u16-len utf-8 level_id | u16-len utf-8 user_id |
           u16-len utf-8 client_version | f64 timestamp | u8 origin
    PATH   u32 sample count | per sample: f64 t, f64 x0, f64 amplitude
    SCORE  f64 fidelity | f64 time_used | f64 time_penalty_fraction |
           i32 bonus_points | i32 total_score | u8 stars | u8 died |
           f64 death_time (nan if none) | i32 death_zone (-1 if none) |
           u32 feedback count | per entry: f64 fidelity

A batch (play log) is the concatenation of u32-length-prefixed records,
so a log file can be appended to without rewriting.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import TYPE_CHECKING, BinaryIO, Iterator

from ..core.potential import ControlSample
from .model import PATH_ORIGINS, ControlPath

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, used for hints only
    from ..levels.model import ScoreReport

FORMAT_VERSION = 1
DEFAULT_CLIENT_VERSION = "qmotion/0.1"

_ORIGIN_CODES = {name: code for code, name in enumerate(PATH_ORIGINS)}
_ORIGIN_NAMES = dict(enumerate(PATH_ORIGINS))


class PlayFormatError(ValueError):
    """The byte stream does not parse as a play record."""


class UnsupportedVersionError(PlayFormatError):
    """The record declares a format version this reader does not speak."""


@dataclass(frozen=True)
class PlayRecord:
    """One complete play: who played which level, the path, and the score."""

    level_id: str
    user_id: str
    path: ControlPath
    score: "ScoreReport"
    timestamp: float
    client_version: str = DEFAULT_CLIENT_VERSION


class _Reader:
    """Cursor over a byte buffer that raises PlayFormatError on truncation."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise PlayFormatError(
                f"truncated record: wanted {n} bytes at offset {self.pos}, "
                f"have {len(self.data) - self.pos}"
            )
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def text(self) -> str:
        (length,) = self.unpack("<H")
        raw = self.take(length)
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as err:
            raise PlayFormatError(f"invalid utf-8 in string field: {err}") from err

    @property
    def exhausted(self) -> bool:
        return self.pos == len(self.data)


def _encode_meta(record: PlayRecord) -> bytes:
    parts = []
    for value in (record.level_id, record.user_id, record.client_version):
        raw = value.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise ValueError(f"string field too long to encode ({len(raw)} bytes)")
        parts.append(struct.pack("<H", len(raw)) + raw)
    parts.append(struct.pack("<d", record.timestamp))
    parts.append(struct.pack("<B", _ORIGIN_CODES[record.path.origin]))
    return b"".join(parts)


def _encode_path(path: ControlPath) -> bytes:
    parts = [struct.pack("<I", len(path.samples))]
    for s in path.samples:
        parts.append(struct.pack("<ddd", s.t, s.x0, s.amplitude))
    return b"".join(parts)


def _encode_score(score: "ScoreReport") -> bytes:
    death_time = math.nan if score.death_time is None else score.death_time
    death_zone = -1 if score.death_zone is None else score.death_zone
    head = struct.pack(
        "<dddiiBBdi",
        score.fidelity,
        score.time_used,
        score.time_penalty_fraction,
        score.bonus_points,
        score.total_score,
        score.stars,
        1 if score.died else 0,
        death_time,
        death_zone,
    )
    trace = struct.pack("<I", len(score.feedback_trace))
    trace += struct.pack(f"<{len(score.feedback_trace)}d", *score.feedback_trace)
    return head + trace


def encode_play(record: PlayRecord) -> bytes:
    sections = (_encode_meta(record), _encode_path(record.path), _encode_score(record.score))
    out = [struct.pack("<B", FORMAT_VERSION)]
    for section in sections:
        out.append(struct.pack("<I", len(section)))
        out.append(section)
    return b"".join(out)


def _decode_meta(section: bytes) -> tuple[str, str, str, float, str]:
    r = _Reader(section)
    level_id = r.text()
    user_id = r.text()
    client_version = r.text()
    (timestamp,) = r.unpack("<d")
    (origin_code,) = r.unpack("<B")
    if origin_code not in _ORIGIN_NAMES:
        raise PlayFormatError(f"unknown path origin code {origin_code}")
    if not r.exhausted:
        raise PlayFormatError(f"{len(r.data) - r.pos} trailing bytes in meta section")
    return level_id, user_id, client_version, timestamp, _ORIGIN_NAMES[origin_code]


def _decode_path(section: bytes, origin: str) -> ControlPath:
    r = _Reader(section)
    (count,) = r.unpack("<I")
    samples = []
    for _ in range(count):
        t, x0, amplitude = r.unpack("<ddd")
        samples.append(ControlSample(t=t, x0=x0, amplitude=amplitude))
    if not r.exhausted:
        raise PlayFormatError(f"{len(r.data) - r.pos} trailing bytes in path section")
    try:
        return ControlPath(samples=tuple(samples), origin=origin)
    except ValueError as err:
        raise PlayFormatError(f"stored path is invalid: {err}") from err


def _decode_score(section: bytes) -> "ScoreReport":
    from ..levels.model import ScoreReport

    r = _Reader(section)
    (
        fidelity,
        time_used,
        time_penalty_fraction,
        bonus_points,
        total_score,
        stars,
        died_flag,
        death_time,
        death_zone,
    ) = r.unpack("<dddiiBBdi")
    (trace_len,) = r.unpack("<I")
    trace = r.unpack(f"<{trace_len}d")
    if not r.exhausted:
        raise PlayFormatError(f"{len(r.data) - r.pos} trailing bytes in score section")
    try:
        return ScoreReport(
            fidelity=fidelity,
            time_used=time_used,
            time_penalty_fraction=time_penalty_fraction,
            bonus_points=bonus_points,
            total_score=total_score,
            stars=stars,
            died=bool(died_flag),
            death_time=None if math.isnan(death_time) else death_time,
            death_zone=None if death_zone < 0 else death_zone,
            feedback_trace=trace,
        )
    except ValueError as err:
        raise PlayFormatError(f"stored score is invalid: {err}") from err


def decode_play(data: bytes) -> PlayRecord:
    r = _Reader(data)
    (version,) = r.unpack("<B")
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"format version {version} (reader speaks {FORMAT_VERSION})")
    sections = []
    for _ in range(3):
        (length,) = r.unpack("<I")
        sections.append(r.take(length))
    if not r.exhausted:
        raise PlayFormatError(f"{len(r.data) - r.pos} trailing bytes after score section")
    level_id, user_id, client_version, timestamp, origin = _decode_meta(sections[0])
    path = _decode_path(sections[1], origin)
    score = _decode_score(sections[2])
    return PlayRecord(
        level_id=level_id,
        user_id=user_id,
        path=path,
        score=score,
        timestamp=timestamp,
        client_version=client_version,
    )


def append_play(stream: BinaryIO, record: PlayRecord) -> None:
    """Append one length-prefixed record to an open binary stream."""
    payload = encode_play(record)
    stream.write(struct.pack("<I", len(payload)))
    stream.write(payload)


def iter_plays(stream: BinaryIO) -> Iterator[PlayRecord]:
    """Yield records from a stream of length-prefixed plays until EOF."""
    while True:
        prefix = stream.read(4)
        if not prefix:
            return
        if len(prefix) < 4:
            raise PlayFormatError("truncated batch: partial length prefix at end of stream")
        (length,) = struct.unpack("<I", prefix)
        payload = stream.read(length)
        if len(payload) < length:
            raise PlayFormatError(
                f"truncated batch: record claims {length} bytes, stream had {len(payload)}"
            )
        yield decode_play(payload)
