import math
from typing import Any, Iterable, Literal

__all__ = (
    "s",
    "list_items",
    "log2",
    "parse_value",
    "KeyValue",
    "ConduitError",
    "ConstructionError",
    "QueryIndexError",
    "SizeGuardError",
    "DisconnectedError",
    "NotAOneInput",
    "IllPosedError",
    "NumericalError",
    "UnsupportedCaseError",
    "PreconditionError",
    "UsageError",
)


# functions
def s(data) -> Literal["", "s"]:
    if hasattr(data, "__len__"):
        data = len(data)
    return "s" if data != 1 else ""


def list_items(items) -> str:
    items = [str(item) for item in items]
    return (
        f"{', '.join(items[:-1])} and {items[-1]}"
        if len(items) > 1
        else items[0]
    )


def log2(value: float) -> float:
    """Base-2 logarithm, the base every unlabelled log in the algorithms uses."""
    return math.log2(value) if value > 0 else -math.inf


# converters
def parse_value(text: str) -> Any:
    """Turn a command line literal into an int, float, bool, list or string."""
    if "," in text:
        return [parse_value(part) for part in text.split(",") if part]
    lowered = text.lower()
    if lowered in ("true", "yes", "on"):
        return True
    if lowered in ("false", "no", "off"):
        return False
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


class KeyValue:
    """argparse type for `NAME=VALUE` pairs."""

    def __call__(self, text: str) -> tuple[str, Any]:
        name, sep, value = text.partition("=")
        if not sep or not name:
            raise UsageError(f"Expected NAME=VALUE, got `{text}`.")
        return name.strip().lower(), parse_value(value.strip())


# exceptions
class ConduitError(Exception):
    """Base class for every error raised by this project."""


class ConstructionError(ConduitError):
    pass


class QueryIndexError(ConduitError):
    def __init__(self, index: int, m: int) -> None:
        super().__init__(f"Bit index {index} is outside the input range [0, {m}).")


class SizeGuardError(ConduitError):
    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(
            f"{what} is limited to {limit} vertices, the graph has {size}."
        )


class DisconnectedError(ConduitError):
    def __init__(self, a: int, b: int) -> None:
        super().__init__(f"Vertices {a} and {b} are not connected in G(x).")


class NotAOneInput(ConduitError):
    def __init__(self, residual: float) -> None:
        super().__init__(
            f"The target is not reachable from H(x) (residual {residual:.3e}); "
            "the input is not a 1-input."
        )


class IllPosedError(ConduitError):
    pass


class NumericalError(ConduitError):
    pass


class UnsupportedCaseError(ConduitError):
    pass


class PreconditionError(ConduitError):
    pass


class UsageError(ConduitError):
    def __init__(self, message: str, *, missing: Iterable[str] = ()) -> None:
        if missing := list(missing):
            message += f" Missing value{s(missing)}: {list_items(missing)}."
        super().__init__(message)
