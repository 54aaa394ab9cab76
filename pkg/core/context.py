import json
import logging
import math
import sys
from typing import TYPE_CHECKING, Any

import numpy as np

from .models import Failure, RunConfig
from .utils import ConduitError, UsageError

if TYPE_CHECKING:
    from .app import Conduit

__all__ = ("Context", "dump_report", "jsonable", "ledger_stats")

log = logging.getLogger(__name__)


def jsonable(value: Any) -> Any:
    """Plain JSON types only: numpy scalars unwrapped, infinities spelled "inf"."""
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, (set, frozenset)):
        return [jsonable(item) for item in sorted(value)]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    return value


def dump_report(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"


def ledger_stats(snapshots: list[dict]) -> dict:
    """Mean, median, min and max of each ledger column over a batch of runs."""
    stats = {}
    for column in ("exact_queries", "modeled_queries", "controlled_u", "bit_reads"):
        values = np.array([snapshot[column] for snapshot in snapshots], dtype=float)
        stats[column] = (
            {
                "mean": float(values.mean()),
                "median": float(np.median(values)),
                "min": float(values.min()),
                "max": float(values.max()),
            }
            if values.size
            else {}
        )
    return stats


class Context:
    """State of one command invocation; renders its report and picks the exit code."""

    def __init__(self, app: "Conduit", config: RunConfig) -> None:
        self.app = app
        self.config = config
        self.report: dict | None = None

    @property
    def constants(self):
        return self.config.constants

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.config.seed)

    def trial_rngs(self) -> list[np.random.Generator]:
        """One independent generator per trial, spawned from --seed."""
        children = np.random.SeedSequence(self.config.seed).spawn(self.config.trials)
        return [np.random.default_rng(child) for child in children]

    def _emit(self, report: dict) -> None:
        self.report = report
        text = dump_report(report)
        if self.config.out:
            with open(self.config.out, "w", encoding="utf-8") as file:
                file.write(text)
            log.info("Wrote %s report to %s", report["kind"], self.config.out)
        else:
            sys.stdout.write(text)

    def _base(self, kind: str) -> dict:
        return {"kind": kind, "config": self.config.as_dict()}

    def success(self, kind: str, **payload: Any) -> int:
        self._emit({**self._base(kind), "status": "ok", **payload})
        return 0

    def failure(self, kind: str, failure: Failure, **payload: Any) -> int:
        self._emit(
            {
                **self._base(kind),
                "status": "failure",
                "reason": failure.reason,
                "ledger": failure.ledger,
                **payload,
            }
        )
        return 2

    def exception(self, error: ConduitError) -> int:
        self._emit(
            {
                **self._base("error"),
                "status": "error",
                "error": error.__class__.__name__,
                "message": str(error),
                "usage": isinstance(error, UsageError),
            }
        )
        return 1
