import logging

from algorithms import check_cut_promise, cutset_finder
from core import Cog, Context, UsageError, canonical, command
from families import resolve_instance

log = logging.getLogger(__name__)


class Cuts(Cog):
    """Cut-set finding under a resistance and flow promise."""

    @command("find-cutset", randomized=True)
    def find_cutset(self, ctx: Context) -> int:
        """Collect sampled edges until every high-flow st-cut is covered."""
        config = ctx.config
        if config.r_bound is None or config.g_bound is None:
            missing = [
                flag
                for flag, value in (("--r-bound", config.r_bound), ("--g-bound", config.g_bound))
                if value is None
            ]
            raise UsageError("find-cutset needs both bounds.", missing=missing)
        instance = resolve_instance(config)
        oracle = instance.oracle()
        promise = check_cut_promise(oracle, instance.graph, config.r_bound, config.g_bound)
        if not (promise["resistance_ok"] and promise["cut_ok"]):
            log.warning("The bounds violate the cut promise on this instance: %s", promise)
        result = cutset_finder(
            oracle,
            instance.graph,
            instance.s,
            instance.t,
            config.r_bound,
            config.g_bound,
            ctx.rng(),
            constants=ctx.constants,
        )
        payload = {
            "edges": sorted(result.edges),
            "rounds": result.rounds,
            "failed_rounds": result.failures,
            "promise": promise,
            "ledger": oracle.ledger.snapshot(),
        }
        if "cut" in instance.truth:
            cut = {canonical(*edge) for edge in instance.truth["cut"]}
            payload["contains_cut"] = cut <= result.edges
        return ctx.success("find-cutset", **payload)


def setup(app):
    app.add_cog(Cuts(app))
