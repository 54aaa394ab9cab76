from dataclasses import asdict, dataclass, field, fields, replace
from os import getenv
from typing import Any

from .utils import UsageError

__all__ = ("Constants", "Failure", "RunConfig", "LENGTH_SOURCES")

LENGTH_SOURCES = ("truth", "estimate")


@dataclass(frozen=True)
class Constants:
    c_minus: float = 2.0
    c_pd: float = 1.0
    c_we: float = 1.0
    c_iqae: float = 10.0
    expansion_threshold: float = 0.2
    inject_failures: bool = True
    length_source: str = "truth"

    @classmethod
    def from_env(cls) -> "Constants":
        """Defaults, overridden by any `CONDUIT_<NAME>` environment variable."""
        changes = {
            item.name: raw
            for item in fields(cls)
            if (raw := getenv(f"CONDUIT_{item.name.upper()}")) is not None
        }
        return cls().override(**changes)

    def override(self, **changes: Any) -> "Constants":
        known = {item.name: item.type for item in fields(self)}
        if unknown := sorted(set(changes) - set(known)):
            raise UsageError(
                f"Unknown constant `{unknown[0]}`; choose from {', '.join(sorted(known))}."
            )
        cast = {}
        for name, value in changes.items():
            default = getattr(self, name)
            if isinstance(default, bool):
                cast[name] = (
                    value
                    if isinstance(value, bool)
                    else str(value).lower() in ("1", "true", "yes", "on")
                )
            elif isinstance(default, float):
                cast[name] = float(value)
            else:
                cast[name] = str(value)
        updated = replace(self, **cast)
        if updated.length_source not in LENGTH_SOURCES:
            raise UsageError(
                f"length_source must be one of {', '.join(LENGTH_SOURCES)}."
            )
        if min(updated.c_minus, updated.c_pd, updated.c_we, updated.c_iqae) <= 0:
            raise UsageError("Cost and bound constants must be positive.")
        return updated


@dataclass(frozen=True)
class Failure:
    """An algorithm's "Return failure", with the ledger at the time it happened."""

    reason: str
    ledger: dict = field(default_factory=dict)


@dataclass
class RunConfig:
    command: str
    graph: str | None = None
    family: str | None = None
    params: dict[str, Any] = field(default_factory=dict)
    p: float | None = None
    eps: float | None = None
    delta: float | None = None
    trials: int = 1
    seed: int | None = None
    out: str | None = None
    mode: str = "general"
    r_bound: float | None = None
    g_bound: float | None = None
    grid: dict[str, list] = field(default_factory=dict)
    algorithm: str = "sample-edge"
    max_n: int = 7
    constants: Constants = field(default_factory=Constants)

    def validate(self, *, randomized: bool, needs_graph: bool = True) -> None:
        if randomized and self.seed is None:
            raise UsageError(f"`{self.command}` is randomized and needs --seed.")
        for name in ("p", "eps", "delta"):
            if (value := getattr(self, name)) is not None and not 0 < value < 1:
                raise UsageError(f"--{name} must lie strictly between 0 and 1.")
        if self.trials < 1:
            raise UsageError("--trials must be at least 1.")
        if needs_graph and (self.graph is None) == (self.family is None):
            raise UsageError("Give exactly one of --graph or --family.")

    def as_dict(self) -> dict:
        return asdict(self)
