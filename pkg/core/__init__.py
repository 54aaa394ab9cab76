from .app import Conduit, command
from .context import Context, dump_report, ledger_stats
from .graph import (
    DirectedEdge,
    Edge,
    EdgeAssociation,
    Graph,
    GraphDocument,
    SubgraphView,
    build_graph,
    canonical,
    classical_st_connected,
    dump_graph_json,
    enumerate_st_paths,
    is_walkable_path,
    load_graph_json,
    remove_edges,
    remove_vertex,
    subgraph,
)
from .models import LENGTH_SOURCES, Constants, Failure, RunConfig
from .oracle import InputOracle, LedgerEntry, QueryLedger, oracle_query
from .utils import (
    ConduitError,
    ConstructionError,
    DisconnectedError,
    IllPosedError,
    KeyValue,
    NotAOneInput,
    NumericalError,
    PreconditionError,
    QueryIndexError,
    SizeGuardError,
    UnsupportedCaseError,
    UsageError,
    list_items,
    log2,
    parse_value,
    s,
)

__all__ = (
    "Cog",
    "Conduit",
    "ConduitError",
    "Constants",
    "ConstructionError",
    "Context",
    "DirectedEdge",
    "DisconnectedError",
    "Edge",
    "EdgeAssociation",
    "Failure",
    "Graph",
    "GraphDocument",
    "IllPosedError",
    "InputOracle",
    "KeyValue",
    "LENGTH_SOURCES",
    "LedgerEntry",
    "NotAOneInput",
    "NumericalError",
    "PreconditionError",
    "QueryIndexError",
    "QueryLedger",
    "RunConfig",
    "SizeGuardError",
    "SubgraphView",
    "UnsupportedCaseError",
    "UsageError",
    "build_graph",
    "canonical",
    "classical_st_connected",
    "command",
    "dump_graph_json",
    "dump_report",
    "enumerate_st_paths",
    "is_walkable_path",
    "ledger_stats",
    "list_items",
    "load_graph_json",
    "log2",
    "oracle_query",
    "parse_value",
    "remove_edges",
    "remove_vertex",
    "s",
    "subgraph",
)


class Cog:
    """Base class for all cogs"""

    def __init__(self, app: Conduit) -> None:
        self.app = app
