"""Family names as used on the command line, and the graph source of a run."""
from dataclasses import dataclass
from typing import Any, Callable, Mapping

from core import Constants, RunConfig, UsageError, load_graph_json

from .expanders import gen_expander_bridge
from .instance import FamilyInstance, flow_truth
from .lower_bound import gen_lower_bound_family
from .paths import gen_parallel_paths, gen_path, gen_unique_path_clutter
from .series_parallel import gen_series_parallel

__all__ = ("FamilySpec", "FAMILIES", "make_family", "resolve_instance", "load_instance")


@dataclass(frozen=True)
class FamilySpec:
    build: Callable[[dict, Constants], FamilyInstance]
    required: tuple[str, ...]
    optional: tuple[str, ...] = ()


def _as_list(value: Any) -> list:
    return value if isinstance(value, list) else [value]


def _sigma(value: Any, ell: int) -> str:
    # K=V parsing turns a bit string like 011 into the integer 11
    return str(value).zfill(ell)


FAMILIES: dict[str, FamilySpec] = {
    "path": FamilySpec(
        lambda p, c: gen_path(p["l"], p.get("n"), parent=p.get("parent", "realized")),
        ("l",),
        ("n", "parent"),
    ),
    "parallel-paths": FamilySpec(
        lambda p, c: gen_parallel_paths(
            _as_list(p["lengths"]), parent=p.get("parent", "realized")
        ),
        ("lengths",),
        ("parent",),
    ),
    "unique-path-clutter": FamilySpec(
        lambda p, c: gen_unique_path_clutter(
            p["l"], p["n"], p["seed"], density=p.get("density", 0.5)
        ),
        ("l", "n", "seed"),
        ("density",),
    ),
    "lower-bound": FamilySpec(
        lambda p, c: gen_lower_bound_family(
            p["ell"],
            p["l"],
            _sigma(p["sigma_star"], p["ell"]),
            parent=p.get("parent", "realized"),
        ),
        ("ell", "l", "sigma_star"),
        ("parent",),
    ),
    "expander-bridge": FamilySpec(
        lambda p, c: gen_expander_bridge(
            p["n"], p["d"], p["seed"], threshold=p.get("threshold", c.expansion_threshold)
        ),
        ("n", "d", "seed"),
        ("threshold",),
    ),
    "series-parallel": FamilySpec(
        lambda p, c: gen_series_parallel(p["seed"], p["leaves"]),
        ("seed", "leaves"),
    ),
}


def make_family(
    name: str, params: Mapping[str, Any], constants: Constants = Constants()
) -> FamilyInstance:
    """Build a family instance from lower-case parameter names."""
    try:
        spec = FAMILIES[name]
    except KeyError:
        raise UsageError(
            f"Unknown family `{name}`; choose from {', '.join(sorted(FAMILIES))}."
        ) from None
    params = dict(params)
    if missing := [key for key in spec.required if key not in params]:
        raise UsageError(f"Family `{name}` is missing parameters.", missing=missing)
    if unknown := sorted(set(params) - set(spec.required) - set(spec.optional)):
        raise UsageError(f"Family `{name}` does not take `{unknown[0]}`.")
    return spec.build(params, constants)


def load_instance(path: str) -> FamilyInstance:
    document = load_graph_json(path)
    instance = FamilyInstance(
        "file",
        document.graph,
        document.assoc,
        document.x,
        document.free_ones,
        document.free_zeros,
        params={"path": path},
    )
    instance.truth.update(flow_truth(instance.view()))
    return instance


def resolve_instance(config: RunConfig, **overrides: Any) -> FamilyInstance:
    """The instance named by --graph or by --family/--params.

    `overrides` replace individual --params. Families that take a seed fall
    back to the run's --seed.
    """
    if config.graph is not None:
        return load_instance(config.graph)
    if config.family is None:
        raise UsageError("Give exactly one of --graph or --family.")
    params = {**config.params, **overrides}
    spec = FAMILIES.get(config.family)
    if spec is not None and "seed" in spec.required and "seed" not in params:
        if config.seed is None:
            raise UsageError(f"Family `{config.family}` needs a seed.", missing=["seed"])
        params["seed"] = config.seed
    return make_family(config.family, params, config.constants)
