"""On-disk cache of K-type subspaces.

Entries are keyed by ``(a, b, alpha, beta)`` and carry a SHA-256 digest of
their payload.  Anything that fails to parse or verify is recomputed and
rewritten, so deleting the cache only costs time.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .ktypes import KTypeSubspace, ktype_subspace
from .shapes import PartitionPair

log = logging.getLogger(__name__)

CACHE_ENV = "MINKTYPE_CACHE_DIR"
CACHE_FORMAT = "minktype-subspace"
CACHE_VERSION = 1


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "minktype"


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def cache_key(pair: PartitionPair) -> dict:
    return {
        "a": pair.shape.a,
        "b": pair.shape.b,
        "alpha": list(pair.alpha.parts),
        "beta": list(pair.beta.parts),
    }


def cache_filename(pair: PartitionPair) -> str:
    al = "-".join(map(str, pair.alpha.parts)) or "0"
    be = "-".join(map(str, pair.beta.parts)) or "0"
    return f"v{CACHE_VERSION}_U{pair.shape.a}x{pair.shape.b}_a{al}_b{be}.json"


class SubspaceCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.hits = 0
        self.misses = 0

    def path_for(self, pair: PartitionPair) -> Path:
        return self.directory / cache_filename(pair)

    def load(self, pair: PartitionPair) -> KTypeSubspace | None:
        path = self.path_for(pair)
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
            if entry.get("format") != CACHE_FORMAT or entry.get("version") != CACHE_VERSION:
                raise ValueError("format/version mismatch")
            if entry.get("key") != cache_key(pair):
                raise ValueError("key mismatch")
            payload = entry["payload"]
            digest = hashlib.sha256(canonical_dumps(payload).encode()).hexdigest()
            if digest != entry.get("sha256"):
                raise ValueError("checksum mismatch")
            sub = KTypeSubspace.from_json(payload)
            if sub.pair != pair:
                raise ValueError("payload pair differs from key")
            return sub
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            log.warning("discarding cache entry %s: %s", path, exc)
            return None

    def store(self, sub: KTypeSubspace) -> Path:
        payload = sub.to_json()
        entry = {
            "format": CACHE_FORMAT,
            "version": CACHE_VERSION,
            "key": cache_key(sub.pair),
            "sha256": hashlib.sha256(canonical_dumps(payload).encode()).hexdigest(),
            "payload": payload,
        }
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(sub.pair)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(canonical_dumps(entry))
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path

    def get(self, pair: PartitionPair) -> KTypeSubspace:
        sub = self.load(pair)
        if sub is not None:
            self.hits += 1
            return sub
        self.misses += 1
        sub = ktype_subspace(pair)
        self.store(sub)
        return sub
