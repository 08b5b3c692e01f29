"""On-disk cache for computed moments.

Walk enumeration cost grows fast with the order, so computed MomentPoly
results are persisted as JSON keyed by (model, order, code version).  The
code version is a content hash of the enumerator and averager sources:
after any algorithm change old entries are silently ignored rather than
served stale.  Writes are atomic (write to a temp file, then rename).
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from pathlib import Path

from . import averager as _averager
from . import walks as _walks
from .polyalg import MomentPoly

__all__ = [
    "cache_dir",
    "code_version",
    "cache_key",
    "load",
    "store",
    "cached_moment",
]

ENV_VAR = "SRBM_CACHE_DIR"
_DEFAULT = Path.home() / ".cache" / "srbm"


def cache_dir(override=None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else _DEFAULT


def code_version() -> str:
    h = hashlib.sha256()
    for mod in (_walks, _averager):
        h.update(Path(mod.__file__).read_bytes())
    return h.hexdigest()[:16]


def cache_key(model, order) -> str:
    return f"{model}-{order}-{code_version()}"


def _path(model, order, directory) -> Path:
    return cache_dir(directory) / (cache_key(model, order) + ".json")


def load(model, order, directory=None):
    """Return the cached MomentPoly, or None on miss or unreadable entry."""
    path = _path(model, order, directory)
    try:
        payload = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if payload.get("key") != cache_key(model, order):
        return None
    return MomentPoly.from_json(payload["moment"])


def store(model, order, poly: MomentPoly, directory=None) -> Path:
    path = _path(model, order, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "key": cache_key(model, order),
        "model": model,
        "order": order,
        "created_at": time.time(),
        "moment": poly.to_json(),
    }
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cached_moment(model, order, directory=None, bypass=False) -> MomentPoly:
    """Moment with read-through caching; ``bypass`` skips both read and write."""
    if model == "diag-block":
        def compute():
            return _averager.diag_block_moment(order)
    else:
        def compute():
            return _averager.moment(model, order)
    if bypass:
        return compute()
    hit = load(model, order, directory)
    if hit is not None:
        return hit
    poly = compute()
    store(model, order, poly, directory)
    return poly
