from core import Cog, Context, command


class Help(Cog):
    @command("help", needs_graph=False)
    def help_command(self, ctx: Context) -> int:
        """List the commands, grouped by category."""
        categories = {}
        for name, cog in sorted(self.app.cogs.items()):
            commands = {
                spec.name: {"description": spec.description, "randomized": spec.randomized}
                for spec, callback in self.app.commands.values()
                if getattr(callback, "__self__", None) is cog
            }
            if commands and name != "Help":
                categories[name] = {"description": cog.__doc__, "commands": commands}
        return ctx.success("help", categories=categories)


def setup(app):
    app.add_cog(Help(app))
