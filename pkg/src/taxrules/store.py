"""Content-addressed flat-file artifact store.

Artifact ids are hashes of (kind, body), so uploading the same bytes twice
returns the same id. Writes go through a temp file and an atomic rename, so
readers never observe partial payloads. Run records live next to the
artifacts as small JSON files.
"""
from __future__ import annotations

import hashlib
import json
import os
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional


class NotFoundError(KeyError):
    pass


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(f".{path.name}.{uuid.uuid4().hex}.tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


class ArtifactStore:
    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.objects = self.root / "objects"
        self.runs = self.root / "runs"
        self.objects.mkdir(parents=True, exist_ok=True)
        self.runs.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def artifact_id(kind: str, body: str) -> str:
        digest = hashlib.sha256()
        digest.update(kind.encode("utf-8"))
        digest.update(b"\x00")
        digest.update(body.encode("utf-8"))
        return digest.hexdigest()[:32]

    def put(self, kind: str, name: str, body: str) -> dict:
        artifact_id = self.artifact_id(kind, body)
        meta_path = self.objects / f"{artifact_id}.meta.json"
        if meta_path.exists():
            return json.loads(meta_path.read_text("utf-8"))
        meta = {"id": artifact_id, "kind": kind, "name": name, "created_at": _now()}
        _atomic_write(self.objects / f"{artifact_id}.payload", body.encode("utf-8"))
        _atomic_write(meta_path, json.dumps(meta, ensure_ascii=False).encode("utf-8"))
        return meta

    def meta(self, artifact_id: str) -> dict:
        path = self.objects / f"{artifact_id}.meta.json"
        if not path.exists():
            raise NotFoundError(f"artifact {artifact_id} not found")
        return json.loads(path.read_text("utf-8"))

    def body(self, artifact_id: str) -> str:
        path = self.objects / f"{artifact_id}.payload"
        if not path.exists():
            raise NotFoundError(f"artifact {artifact_id} not found")
        return path.read_text("utf-8")

    def new_run_id(self) -> str:
        return uuid.uuid4().hex[:16]

    def put_run(self, record: dict) -> None:
        _atomic_write(
            self.runs / f"{record['id']}.json",
            json.dumps(record, ensure_ascii=False).encode("utf-8"),
        )

    def run(self, run_id: str) -> dict:
        path = self.runs / f"{run_id}.json"
        if not path.exists():
            raise NotFoundError(f"run {run_id} not found")
        return json.loads(path.read_text("utf-8"))
