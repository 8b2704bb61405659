"""HTTP service and CLI."""

from .app import AppState, build_state, create_app
from .config import ServiceConfig, load_config
from .jobs import DONE, FAILED, QUEUED, RUNNING, Job, JobStore

__all__ = [
    "AppState",
    "build_state",
    "create_app",
    "ServiceConfig",
    "load_config",
    "Job",
    "JobStore",
    "QUEUED",
    "RUNNING",
    "DONE",
    "FAILED",
]
