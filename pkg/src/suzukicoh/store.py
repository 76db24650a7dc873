"""Deterministic serialization and the operator-matrix cache.

Matrices serialize to CSV (row-major bitmask integers) and to a JSON
envelope {m, operator, twist, dim, entries}.  The cache directory is
keyed by (m, modulus, operator); entries carry a content hash of
(m, modulus, basis order) so a stale or corrupted file is detected and
silently recomputed.  Resolution order for the directory: explicit
--cache flag, then $SUZUKICOH_CACHE, then no caching.
"""

from __future__ import annotations

import hashlib
import json
import os

import numpy as np

from .linalg import SemilinearOp

CACHE_ENV = "SUZUKICOH_CACHE"


def dumps_json(obj):
    """Canonical JSON: sorted keys, no whitespace drift."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def matrix_to_csv(op):
    lines = [",".join(str(int(x)) for x in row) for row in op.matrix]
    return "\n".join(lines) + "\n"


def matrix_envelope(params, name, op):
    return {
        "m": params.m,
        "modulus": params.field.modulus,
        "operator": name,
        "twist": op.twist,
        "dim": op.dim,
        "entries": [[int(x) for x in row] for row in op.matrix],
    }


def matrix_from_envelope(field, env):
    mat = np.array(env["entries"], dtype=np.uint16)
    return SemilinearOp(field, mat, env["twist"])


def basis_hash(params, tuples):
    payload = dumps_json({"m": params.m, "modulus": params.field.modulus, "basis": [list(t) for t in tuples]})
    return hashlib.sha256(payload.encode()).hexdigest()


def cache_dir_from(flag=None):
    if flag:
        return flag
    return os.environ.get(CACHE_ENV) or None


def _cache_path(cache_dir, params, name):
    fname = "m%d_mod%d_%s.json" % (params.m, params.field.modulus, name)
    return os.path.join(cache_dir, fname)


def load_cached_operator(cache_dir, params, name, tuples):
    """None on miss, stale hash, or corruption (caller recomputes)."""
    path = _cache_path(cache_dir, params, name)
    try:
        with open(path, "r", encoding="ascii") as fh:
            env = json.load(fh)
        if env.get("content_hash") != basis_hash(params, tuples):
            return None
        op = matrix_from_envelope(params.field, env)
        if op.dim != 2 * params.genus:
            return None
        return op
    except (OSError, ValueError, KeyError):
        return None


def store_operator(cache_dir, params, name, tuples, op):
    os.makedirs(cache_dir, exist_ok=True)
    env = matrix_envelope(params, name, op)
    env["content_hash"] = basis_hash(params, tuples)
    path = _cache_path(cache_dir, params, name)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(dumps_json(env))
    os.replace(tmp, path)
