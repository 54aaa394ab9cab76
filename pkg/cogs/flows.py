from core import Cog, Context, command
from families import resolve_instance
from flows import effective_resistance, flow_report


class Flows(Cog):
    """Ground-truth electrical quantities and instance generation."""

    @command()
    def flow(self, ctx: Context) -> int:
        """The optimal unit st-flow θ*, R_{s,t} and the sampling distribution q."""
        instance = resolve_instance(ctx.config)
        return ctx.success(
            "flow",
            n=instance.graph.n,
            s=instance.s,
            t=instance.t,
            **flow_report(instance.view()),
        )

    @command()
    def resistance(self, ctx: Context) -> int:
        """Effective resistance R_{s,t} of G(x)."""
        instance = resolve_instance(ctx.config)
        return ctx.success(
            "resistance",
            s=instance.s,
            t=instance.t,
            R=effective_resistance(instance.view(), instance.s, instance.t),
        )

    @command()
    def generate(self, ctx: Context) -> int:
        """Write a family instance as graph JSON with its truth block."""
        return ctx.success("generate", instance=resolve_instance(ctx.config).to_json())


def setup(app):
    app.add_cog(Flows(app))
