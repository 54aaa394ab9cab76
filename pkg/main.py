import logging
import sys
from argparse import ArgumentParser

from dotenv import load_dotenv

from core import Conduit

if __name__ == "__main__":
    parser = ArgumentParser(prog="conduit", add_help=False)
    parser.add_argument(
        "-d",
        "--debug",
        action="store_true",
        help="log at debug level",
    )
    parser.add_argument(
        "--cog",
        dest="cogs",
        action="append",
        metavar="MODULE",
        help="load only this extension (repeatable), e.g. cogs.flows",
    )
    args, rest = parser.parse_known_args()

    load_dotenv(".env")

    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG if args.debug else logging.INFO)
    handler = logging.FileHandler(filename="conduit.log", encoding="utf-8", mode="w")
    handler.formatter = logging.Formatter(
        "[%(asctime)s %(levelname)s] %(name)s: %(message)s",
        "%d/%m/%y %H:%M:%S",
    )
    logger.addHandler(handler)

    sys.exit(Conduit().run(rest, cogs=args.cogs))
