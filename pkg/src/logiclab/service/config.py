"""Service configuration: JSON file with environment-variable overrides.

Every key can be overridden by LOGICLAB_<KEY> (upper-cased), e.g.
LOGICLAB_STORE_PATH or LOGICLAB_TIMEZONE.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

_KEYS = {
    "listen_host": str,
    "listen_port": int,
    "store_path": str,
    "blob_dir": str,
    "timezone": str,
    "max_horizon_ns": int,
    "max_deltas_per_instant": int,
    "static_dir": str,
}


@dataclass(frozen=True)
class ServiceConfig:
    listen_host: str = "127.0.0.1"
    listen_port: int = 8080
    store_path: str = "logiclab.sqlite3"
    blob_dir: str = "blobs"
    timezone: str = "UTC"
    max_horizon_ns: int = 10_000_000_000  # ten simulated seconds
    max_deltas_per_instant: int = 1000
    static_dir: str = ""  # serve the browser UI from here when set


def load_config(path: Optional[str] = None, env=os.environ) -> ServiceConfig:
    values = {}
    if path is not None:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        unknown = sorted(set(doc) - set(_KEYS))
        if unknown:
            raise ValueError(f"config: unknown key {unknown[0]!r}")
        values.update(doc)
    for key, typ in _KEYS.items():
        raw = env.get(f"LOGICLAB_{key.upper()}")
        if raw is not None:
            values[key] = typ(raw)
    return ServiceConfig(**{k: _KEYS[k](v) for k, v in values.items()})
