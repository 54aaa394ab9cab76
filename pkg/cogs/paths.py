import logging

from algorithms import general_path_finder, single_path_finder
from core import Cog, Context, Failure, canonical, command, is_walkable_path
from families import resolve_instance

log = logging.getLogger(__name__)

DEFAULT_P = 0.05


class Paths(Cog):
    """st-path finding."""

    @command("find-path", randomized=True)
    def find_path(self, ctx: Context) -> int:
        """Find an st-path of G(x); --mode single assumes it is the only one."""
        instance = resolve_instance(ctx.config)
        p = ctx.config.p or DEFAULT_P
        oracle = instance.oracle()
        graph, s, t = instance.graph, instance.s, instance.t
        if ctx.config.mode == "single":
            result = single_path_finder(
                oracle, p, graph, s, t, ctx.rng(), constants=ctx.constants
            )
        else:
            result = general_path_finder(
                oracle, graph, s, t, p, ctx.rng(), constants=ctx.constants
            )
        if isinstance(result, Failure):
            return ctx.failure("find-path", result, mode=ctx.config.mode, p=p)

        valid = is_walkable_path(instance.view(), s, t, result)
        if not valid:
            log.warning("find-path returned edges that do not form an st-path")
        edges = sorted(result) if isinstance(result, frozenset) else list(result)
        payload = {"mode": ctx.config.mode, "p": p, "path": edges, "valid": valid}
        if instance.truth.get("unique_path"):
            found = sorted(list(canonical(u, v)) for u, v in edges)
            payload["matches_truth"] = found == instance.truth["path"]
        return ctx.success("find-path", ledger=oracle.ledger.snapshot(), **payload)


def setup(app):
    app.add_cog(Paths(app))
