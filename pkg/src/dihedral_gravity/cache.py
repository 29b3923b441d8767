"""Optional on-disk cache for nbc bases and pivot columns.

Disabled unless a directory is configured, either with ``set_cache_dir`` or
through the ``DIHEDRAL_GRAVITY_CACHE`` environment variable.  Entries are
small JSON files written atomically (temp file, then rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "DIHEDRAL_GRAVITY_CACHE"
_dir: Path | None = None
_configured = False


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _dir, _configured
    _dir = Path(path) if path else None
    _configured = True


def cache_dir() -> Path | None:
    if _configured:
        return _dir
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def load(key: str):
    d = cache_dir()
    if d is None:
        return None
    path = d / f"{key}.json"
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError):
        return None


def store(key: str, value) -> None:
    d = cache_dir()
    if d is None:
        return
    d.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=f".{key}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(value, fh, sort_keys=True)
        os.replace(tmp, d / f"{key}.json")
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
