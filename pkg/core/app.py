import importlib
import logging
import pkgutil
from argparse import ArgumentParser
from dataclasses import dataclass
from typing import Callable, Sequence

from .context import Context
from .models import Constants, RunConfig
from .utils import ConduitError, KeyValue, UsageError

__all__ = ("Conduit", "command", "CommandSpec")

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandSpec:
    name: str
    randomized: bool
    needs_graph: bool
    description: str | None


def command(
    name: str | None = None, *, randomized: bool = False, needs_graph: bool = True
):
    """Mark a cog method as a command; the method receives a Context and returns an exit code."""

    def decorator(func: Callable) -> Callable:
        func.__command__ = CommandSpec(
            name or func.__name__.replace("_", "-"), randomized, needs_graph, func.__doc__
        )
        return func

    return decorator


class _Parser(ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{message[0].upper()}{message[1:]}.")


class Conduit:
    def __init__(self, constants: Constants | None = None) -> None:
        self.constants = constants or Constants.from_env()
        self.cogs: dict[str, object] = {}
        self.commands: dict[str, tuple[CommandSpec, Callable[[Context], int]]] = {}

    def add_cog(self, cog) -> None:
        self.cogs[type(cog).__name__] = cog
        for attribute in dir(type(cog)):
            spec = getattr(getattr(type(cog), attribute), "__command__", None)
            if spec is None:
                continue
            if spec.name in self.commands:
                raise ConduitError(f"Command `{spec.name}` is registered twice.")
            self.commands[spec.name] = (spec, getattr(cog, attribute))

    def load_extension(self, name: str) -> None:
        module = importlib.import_module(name)
        if hasattr(module, "setup"):
            module.setup(self)
            log.debug("Loaded extension %s", name)
        elif hasattr(module, "__path__"):
            for info in pkgutil.iter_modules(module.__path__):
                self.load_extension(f"{name}.{info.name}")

    def load_extensions(self, *names: str) -> None:
        for name in names:
            self.load_extension(name)

    def build_parser(self) -> ArgumentParser:
        parser = _Parser(prog="conduit", add_help=False)
        parser.add_argument("command", choices=sorted(self.commands))
        source = parser.add_mutually_exclusive_group()
        source.add_argument("--graph", help="graph JSON file")
        source.add_argument("--family", help="graph family name")
        parser.add_argument(
            "--params", nargs="*", type=KeyValue(), default=[], metavar="K=V"
        )
        parser.add_argument("--p", type=float)
        parser.add_argument("--eps", type=float)
        parser.add_argument("--delta", type=float)
        parser.add_argument("--trials", type=int, default=1)
        parser.add_argument("--seed", type=int)
        parser.add_argument("--out")
        parser.add_argument("--mode", choices=("single", "general"), default="general")
        parser.add_argument("--r-bound", type=float)
        parser.add_argument("--g-bound", type=float)
        parser.add_argument(
            "--grid", nargs="*", type=KeyValue(), default=[], metavar="K=V,V"
        )
        parser.add_argument("--algorithm", default="sample-edge")
        parser.add_argument("--max-n", type=int, default=7)
        parser.add_argument(
            "--override", action="append", type=KeyValue(), default=[], metavar="NAME=VALUE"
        )
        return parser

    def make_config(self, argv: Sequence[str]) -> RunConfig:
        args = self.build_parser().parse_args(list(argv))
        grid = {
            name: value if isinstance(value, list) else [value]
            for name, value in args.grid
        }
        return RunConfig(
            command=args.command,
            graph=args.graph,
            family=args.family,
            params=dict(args.params),
            p=args.p,
            eps=args.eps,
            delta=args.delta,
            trials=args.trials,
            seed=args.seed,
            out=args.out,
            mode=args.mode,
            r_bound=args.r_bound,
            g_bound=args.g_bound,
            grid=grid,
            algorithm=args.algorithm,
            max_n=args.max_n,
            constants=self.constants.override(**dict(args.override)),
        )

    def on_command_error(self, ctx: Context, error: ConduitError) -> int:
        if isinstance(error, UsageError):
            log.info("Usage error: %s", error)
        else:
            log.warning("%s: %s", error.__class__.__name__, error)
        return ctx.exception(error)

    def invoke(self, config: RunConfig) -> int:
        ctx = Context(self, config)
        try:
            spec, callback = self.commands[config.command]
            config.validate(randomized=spec.randomized, needs_graph=spec.needs_graph)
            log.info("Running %s", config.command)
            return callback(ctx)
        except ConduitError as error:
            return self.on_command_error(ctx, error)
        except Exception:
            log.exception("Unhandled error in %s", config.command)
            raise

    def run(self, argv: Sequence[str], cogs: Sequence[str] | None = None) -> int:
        self.load_extensions(*cogs or ("cogs",))
        try:
            config = self.make_config(argv)
        except ConduitError as error:
            fallback = RunConfig(command=argv[0] if argv else "", constants=self.constants)
            return self.on_command_error(Context(self, fallback), error)
        return self.invoke(config)
