"""Append-only JSON-lines store of computed constants."""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Iterator, Optional

import platformdirs

from .constants import ENGINE_VERSION, ConstantResult, Kind
from .residues import WeightSet

ENV_VAR = "WZSUM_CACHE_DIR"
FILENAME = "constants.jsonl"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(platformdirs.user_data_dir("wzsum"))


def _key(kind: Kind, n: int, A: WeightSet, B: WeightSet) -> tuple:
    return (kind.value, n, A.spec, B.spec)


class ResultCache:
    """One file, one JSON object per line; the last matching line wins."""

    def __init__(self, directory: Optional[os.PathLike] = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self._lock = threading.Lock()

    @property
    def path(self) -> Path:
        return self.directory / FILENAME

    def _records(self) -> Iterator[dict]:
        if not self.path.exists():
            return
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    yield json.loads(line)
                except json.JSONDecodeError:
                    continue

    def get(self, kind: Kind, n: int, A: WeightSet, B: WeightSet) -> Optional[ConstantResult]:
        key = _key(kind, n, A, B)
        found = None
        for rec in self._records():
            if rec.get("engine_version") != ENGINE_VERSION:
                continue
            if (rec.get("kind"), rec.get("n"), rec.get("A"), rec.get("B")) == key:
                found = rec
        return ConstantResult.from_dict(found) if found else None

    def put(self, result: ConstantResult) -> None:
        line = json.dumps(result.to_dict(), sort_keys=True)
        with self._lock:
            self.directory.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def entries(self) -> list[ConstantResult]:
        latest: dict[tuple, dict] = {}
        for rec in self._records():
            if rec.get("engine_version") != ENGINE_VERSION:
                continue
            latest[(rec["kind"], rec["n"], rec["A"], rec["B"])] = rec
        return [ConstantResult.from_dict(latest[k]) for k in sorted(latest)]

    def clear(self) -> int:
        with self._lock:
            count = sum(1 for _ in self._records())
            if self.path.exists():
                self.path.unlink()
        return count
