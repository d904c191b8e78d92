"""Tweezer control paths: the model, editing operations, and serialization."""
from .edit import move_point, resample, smooth, stretch_time
from .model import PATH_ORIGINS, ControlPath, path_from_arrays
from .record import (
    DEFAULT_CLIENT_VERSION,
    FORMAT_VERSION,
    PlayFormatError,
    PlayRecord,
    UnsupportedVersionError,
    append_play,
    decode_play,
    encode_play,
    iter_plays,
)

__all__ = [
    "PATH_ORIGINS",
    "ControlPath",
    "path_from_arrays",
    "move_point",
    "resample",
    "smooth",
    "stretch_time",
    "DEFAULT_CLIENT_VERSION",
    "FORMAT_VERSION",
    "PlayFormatError",
    "PlayRecord",
    "UnsupportedVersionError",
    "append_play",
    "decode_play",
    "encode_play",
    "iter_plays",
]
