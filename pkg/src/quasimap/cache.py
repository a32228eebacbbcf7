"""Append-only on-disk cache of exact correlator values.

One NDJSON file per model under the directory named by QUASIMAP_CACHE_DIR
(no caching to disk when unset).  Values are canonical 'p/q' strings, so
cached entries are exact.  Corrupt lines are skipped with a warning.
"""

import json
import os
import threading
import warnings

from .rational import parse_rat, rat_str

_lock = threading.Lock()
_memory = {}
_loaded_files = set()


def cache_dir():
    return os.environ.get("QUASIMAP_CACHE_DIR") or None


def _file_for(model_key):
    d = cache_dir()
    if not d:
        return None
    os.makedirs(d, exist_ok=True)
    return os.path.join(d, model_key + ".ndjson")


def _load(model_key):
    path = _file_for(model_key)
    if path is None or path in _loaded_files:
        return
    _loaded_files.add(path)
    if not os.path.exists(path):
        return
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                _memory[(model_key, rec["key"])] = parse_rat(rec["value"])
            except (ValueError, KeyError):
                warnings.warn("skipping corrupt cache line in %s" % path)


def get(model_key, key):
    with _lock:
        _load(model_key)
        return _memory.get((model_key, key))


def put(model_key, key, value):
    with _lock:
        if (model_key, key) in _memory:
            return
        _memory[(model_key, key)] = value
        path = _file_for(model_key)
        if path is not None:
            with open(path, "a") as fh:
                fh.write(json.dumps({"key": key, "value": rat_str(value)}) + "\n")


def clear_memory():
    """Drop the in-process cache (used by tests)."""
    with _lock:
        _memory.clear()
        _loaded_files.clear()
