"""Versioned JSON cache of rendered invariants.

Keys are ``name|kind|hash(params)``; values are canonical renderings.  A hit
from another tool version is treated as a miss.  During check runs a
fraction of hits is recomputed and compared byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import tempfile

from . import __version__

CACHE_FORMAT = "twistalex-cache"
RECHECK_FRACTION = 0.10


class CacheIncoherent(RuntimeError):
    pass


def default_path():
    env = os.environ.get("TWISTALEX_CACHE")
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return os.path.join(base, "twistalex", "cache.json")


def cache_key(name, kind, params=None):
    blob = json.dumps(params or {}, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(blob.encode()).hexdigest()[:16]
    return f"{name}|{kind}|{digest}"


class InvariantCache:
    def __init__(self, path=None, seed=0, recheck=RECHECK_FRACTION):
        self.path = path or default_path()
        self.entries = {}
        self.recheck = recheck
        self._rng = random.Random(seed)
        self.hits = self.misses = self.rechecked = 0
        self._load()

    def _load(self):
        try:
            with open(self.path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return
        if data.get("format") != CACHE_FORMAT or data.get("version") != __version__:
            return
        self.entries = {
            k: v for k, v in data.get("entries", {}).items() if v.get("version") == __version__
        }

    def save(self):
        os.makedirs(os.path.dirname(os.path.abspath(self.path)), exist_ok=True)
        data = {"format": CACHE_FORMAT, "version": __version__, "entries": self.entries}
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(self.path)))
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, self.path)

    def clear(self):
        self.entries = {}
        if os.path.exists(self.path):
            os.remove(self.path)

    def get(self, name, kind, params=None):
        entry = self.entries.get(cache_key(name, kind, params))
        return entry["result"] if entry else None

    def put(self, name, kind, params, result):
        self.entries[cache_key(name, kind, params)] = {
            "result": result,
            "version": __version__,
        }

    def get_or_compute(self, name, kind, params, compute):
        """``compute()`` returns the canonical rendering.  Hits are
        recomputed with probability ``recheck`` and must match exactly."""
        cached = self.get(name, kind, params)
        if cached is None:
            self.misses += 1
            result = compute()
            self.put(name, kind, params, result)
            return result
        self.hits += 1
        if self._rng.random() < self.recheck:
            self.rechecked += 1
            fresh = compute()
            if fresh != cached:
                raise CacheIncoherent(f"{name} {kind}: cached {cached!r} != recomputed {fresh!r}")
        return cached

    def summary(self):
        kinds = {}
        for key in self.entries:
            kind = key.split("|")[1]
            kinds[kind] = kinds.get(kind, 0) + 1
        return kinds
