# src/utils.py - Fan file reading, writing and hashing

import hashlib
import json
from pathlib import Path
from typing import Dict, Union

from fan import Fan
from lattice import ToricError

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

FORMAT_VERSION = 1
REQUIRED_FIELDS = {"dim": int, "rays": list, "max_cones": list}


class FanFileError(ToricError):
    """Malformed fan file; the message carries the source and, for syntax errors, line context"""


def validate_schema_or_raise(source: str, payload) -> None:
    """Validate that a decoded fan file has the required fields with the right shapes"""
    if not isinstance(payload, dict):
        raise FanFileError(f"{source}: top level must be an object with fields {sorted(REQUIRED_FIELDS)}")
    missing = [k for k in REQUIRED_FIELDS if k not in payload]
    if missing:
        raise FanFileError(f"{source}: missing required fields {missing}; available fields: {sorted(payload)}")
    for key, kind in REQUIRED_FIELDS.items():
        if not isinstance(payload[key], kind) or isinstance(payload[key], bool):
            raise FanFileError(f"{source}: field '{key}' must be of type {kind.__name__}")
    version = payload.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise FanFileError(f"{source}: unsupported format_version {version!r} (expected {FORMAT_VERSION})")
    for name in ("rays", "max_cones"):
        for i, row in enumerate(payload[name]):
            if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
                raise FanFileError(f"{source}: {name}[{i}] must be an array of integers")


def parse_fan_text(text: str, source: str = "<string>") -> Fan:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        lines = text.splitlines()
        context = lines[e.lineno - 1] if 0 < e.lineno <= len(lines) else ""
        raise FanFileError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}\n    {context}")
    validate_schema_or_raise(source, payload)
    return Fan.from_lists(payload["dim"], payload["rays"], payload["max_cones"])


def load_fan(path: Union[str, Path]) -> Fan:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FanFileError(f"{path}: cannot read fan file ({e.strerror})")
    return parse_fan_text(text, str(path))


def dump_fan(fan: Fan, sort_cones: bool = False) -> str:
    """Canonical text of a fan file: one ray and one cone per line, trailing newline"""
    max_cones = [c.ray_indices for c in fan.max_cones]
    if sort_cones:
        max_cones.sort()
    rays = ",\n".join("    " + json.dumps(list(r)) for r in fan.rays)
    cones = ",\n".join("    " + json.dumps(list(c)) for c in max_cones)
    return (
        "{\n"
        f'  "format_version": {FORMAT_VERSION},\n'
        f'  "dim": {fan.dim},\n'
        f'  "rays": [\n{rays}\n  ],\n'
        f'  "max_cones": [\n{cones}\n  ]\n'
        "}\n"
    )


def fan_digest(fan: Fan) -> str:
    """SHA-256 of the fan text with maximal cones in sorted order"""
    return hashlib.sha256(dump_fan(fan, sort_cones=True).encode("utf-8")).hexdigest()


def save_fan(fan: Fan, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_fan(fan), encoding="utf-8")
    return path


def check_data_status(data_dir: Path = DATA_DIR) -> Dict[str, str]:
    """Check which fan files are available in the data directory"""
    status = {}
    if not data_dir.exists():
        return status
    for path in sorted(data_dir.glob("*.json")):
        try:
            fan = load_fan(path)
            status[path.name] = f"✅ d={fan.dim}, {fan.n_rays} rays, {len(fan.max_cones)} cones"
        except FanFileError as e:
            status[path.name] = f"❌ Error: {e}"
    return status
