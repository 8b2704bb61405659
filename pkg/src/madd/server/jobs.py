"""In-process job queue with a bounded worker pool."""

from __future__ import annotations

import threading
import traceback
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

QUEUED = "queued"
RUNNING = "running"
DONE = "done"
FAILED = "failed"

_FORWARD = {QUEUED: (RUNNING,), RUNNING: (DONE, FAILED), DONE: (), FAILED: ()}


@dataclass
class Job:
    id: str
    kind: str  # generate | train_case | build_corpus | fetch
    status: str = QUEUED
    progress: str = ""
    result: Any = None
    error: str = ""

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "status": self.status,
            "progress": self.progress,
            "result": self.result,
            "error": self.error,
        }


class JobStore:
    def __init__(self, workers: int = 2):
        if workers < 1:
            raise ValueError("worker count must be >= 1")
        self._jobs: dict[str, Job] = {}
        self._lock = threading.Lock()
        self._pool = ThreadPoolExecutor(max_workers=workers)

    def _transition(self, job: Job, status: str) -> None:
        with self._lock:
            if status not in _FORWARD[job.status]:
                raise ValueError(f"illegal transition {job.status} -> {status}")
            job.status = status

    def submit(self, kind: str, fn: Callable[[], Any]) -> Job:
        job = Job(id=uuid.uuid4().hex, kind=kind)
        with self._lock:
            self._jobs[job.id] = job

        def run():
            self._transition(job, RUNNING)
            try:
                job.result = fn()
                self._transition(job, DONE)
            except Exception as exc:
                job.error = f"{exc}\n{traceback.format_exc()}"
                self._transition(job, FAILED)

        self._pool.submit(run)
        return job

    def get(self, job_id: str) -> Job | None:
        with self._lock:
            return self._jobs.get(job_id)

    def shutdown(self) -> None:
        self._pool.shutdown(wait=True)
