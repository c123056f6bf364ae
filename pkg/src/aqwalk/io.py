"""Atomic CSV/JSON writers and the run manifest.

Numbers are serialized with 17 significant digits so every emitted file
re-parses to the exact in-memory float64 values.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from datetime import datetime, timezone

__all__ = [
    "format_number",
    "write_rows_atomic",
    "write_json_atomic",
    "sha256_file",
    "write_manifest",
]


def format_number(value) -> str:
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return format(float(value), ".17g")


def _atomic_write(path: str, data: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_rows_atomic(path: str, header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_number(v) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")
    return path


def write_json_atomic(path: str, payload) -> str:
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(directory: str, name: str, parameters: dict, files: list[str], version: str) -> str:
    manifest = {
        "name": name,
        "created": datetime.now(timezone.utc).isoformat(),
        "version": version,
        "parameters": parameters,
        "parameters_sha256": hashlib.sha256(
            json.dumps(parameters, sort_keys=True, default=str).encode()
        ).hexdigest(),
        "outputs": {os.path.basename(f): sha256_file(f) for f in sorted(files)},
    }
    path = os.path.join(directory, "manifest.json")
    return write_json_atomic(path, manifest)
