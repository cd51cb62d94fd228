"""Fan interchange format.

A fan is one JSON object:

    {"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]}

Ray entries whose magnitude exceeds 2**53 are written as decimal strings so
the files survive tools that parse JSON numbers as doubles; both forms are
accepted on input. Unknown fields are rejected.
"""

from __future__ import annotations

import json
from typing import Any, IO, Union

from .fans import Fan, FanError

SAFE_INT = 2 ** 53

_FIELDS = {"rank", "rays", "max_cones"}


class FormatError(ValueError):
    """Malformed interchange document."""


def _encode_entry(x: int) -> Union[int, str]:
    return x if abs(x) <= SAFE_INT else str(x)


def _decode_entry(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise FormatError(f"{where}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            raise FormatError(f"{where}: {x!r} is not a decimal integer") from None
    raise FormatError(f"{where}: expected an integer or decimal string, got {type(x).__name__}")


def fan_to_dict(fan: Fan) -> dict:
    return {
        "rank": fan.rank,
        "rays": [[_encode_entry(x) for x in r] for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }


def fan_from_dict(doc: Any) -> Fan:
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    unknown = set(doc) - _FIELDS
    if unknown:
        raise FormatError(f"unknown fields: {', '.join(sorted(unknown))}")
    missing = _FIELDS - set(doc)
    if missing:
        raise FormatError(f"missing fields: {', '.join(sorted(missing))}")
    rank = _decode_entry(doc["rank"], "rank")
    if rank < 0:
        raise FormatError("rank must be nonnegative")
    rays_doc = doc["rays"]
    cones_doc = doc["max_cones"]
    if not isinstance(rays_doc, list) or any(not isinstance(r, list) for r in rays_doc):
        raise FormatError("rays must be an array of arrays")
    if not isinstance(cones_doc, list) or any(not isinstance(c, list) for c in cones_doc):
        raise FormatError("max_cones must be an array of arrays")
    rays = [tuple(_decode_entry(x, f"rays[{i}]") for x in r) for i, r in enumerate(rays_doc)]
    cones = [tuple(_decode_entry(x, f"max_cones[{i}]") for x in c) for i, c in enumerate(cones_doc)]
    try:
        return Fan(rank, tuple(rays), tuple(cones))
    except FanError as exc:
        raise FormatError(str(exc)) from exc


def dump_fan(fan: Fan, fp: IO[str]) -> None:
    json.dump(fan_to_dict(fan), fp, indent=None, separators=(",", ":"), sort_keys=True)
    fp.write("\n")


def dumps_fan(fan: Fan) -> str:
    return json.dumps(fan_to_dict(fan), separators=(",", ":"), sort_keys=True)


def load_fan(fp: IO[str]) -> Fan:
    try:
        doc = json.load(fp)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return fan_from_dict(doc)


def loads_fan(text: str) -> Fan:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return fan_from_dict(doc)
