from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .graph import EdgeAssociation, Graph, SubgraphView, subgraph
from .utils import ConstructionError, PreconditionError, QueryIndexError

__all__ = ("LedgerEntry", "QueryLedger", "InputOracle", "oracle_query")


@dataclass
class LedgerEntry:
    exact: int = 0
    modeled: float = 0.0
    controlled_u: int = 0
    bit_reads: int = 0


class QueryLedger:
    """Oracle-call accounting, split by subroutine name.

    Exact queries come from simulated circuits (two per controlled-U, one per
    direct bit read); modeled queries are analytic costs charged by the
    subroutines whose circuits are not simulated. Totals are always derived
    from the breakdown.
    """

    def __init__(self) -> None:
        self.breakdown: dict[str, LedgerEntry] = {}

    def _entry(self, name: str) -> LedgerEntry:
        return self.breakdown.setdefault(name, LedgerEntry())

    def charge_read(self, name: str, count: int = 1) -> None:
        if count < 0:
            raise PreconditionError("Ledger charges cannot be negative.")
        entry = self._entry(name)
        entry.exact += count
        entry.bit_reads += count

    def charge_unitary(self, name: str, applications: int) -> None:
        """Each controlled application of U(P, x, α) uses O_x twice."""
        if applications < 0:
            raise PreconditionError("Ledger charges cannot be negative.")
        entry = self._entry(name)
        entry.exact += 2 * applications
        entry.controlled_u += applications

    def charge_modeled(self, name: str, amount: float) -> None:
        if amount < 0:
            raise PreconditionError("Ledger charges cannot be negative.")
        self._entry(name).modeled += amount

    @property
    def exact_queries(self) -> int:
        return sum(entry.exact for entry in self.breakdown.values())

    @property
    def modeled_queries(self) -> float:
        return sum(entry.modeled for entry in self.breakdown.values())

    @property
    def controlled_u(self) -> int:
        return sum(entry.controlled_u for entry in self.breakdown.values())

    @property
    def bit_reads(self) -> int:
        return sum(entry.bit_reads for entry in self.breakdown.values())

    @property
    def total(self) -> float:
        return self.exact_queries + self.modeled_queries

    def snapshot(self) -> dict:
        return {
            "exact_queries": self.exact_queries,
            "modeled_queries": self.modeled_queries,
            "controlled_u": self.controlled_u,
            "bit_reads": self.bit_reads,
            "breakdown": {
                name: asdict(entry) for name, entry in sorted(self.breakdown.items())
            },
        }


class InputOracle:
    """O_x for a hidden bit string x.

    Algorithms read bits through `query`, which charges the ledger. Bits in
    `free_ones` / `free_zeros` answer without charge; they stand for edges the
    caller knows to be always present or never present.
    """

    def __init__(
        self,
        x: Sequence[int],
        assoc: EdgeAssociation,
        ledger: QueryLedger | None = None,
        *,
        free_ones: Iterable[int] = (),
        free_zeros: Iterable[int] = (),
    ) -> None:
        if len(x) != assoc.m:
            raise ConstructionError(
                f"The input has {len(x)} bits but the association expects {assoc.m}."
            )
        if any(bit not in (0, 1) for bit in x):
            raise ConstructionError("Inputs must be bit strings.")
        self._x = tuple(int(bit) for bit in x)
        self.assoc = assoc
        self.ledger = ledger or QueryLedger()
        self.free_ones = frozenset(free_ones)
        self.free_zeros = frozenset(free_zeros)
        if any(self._x[i] != 1 for i in self.free_ones) or any(
            self._x[i] != 0 for i in self.free_zeros
        ):
            raise ConstructionError("Free bits disagree with the input string.")

    @property
    def m(self) -> int:
        return self.assoc.m

    def query(self, i: int, charge_to: str) -> int:
        if not 0 <= i < self.m:
            raise QueryIndexError(i, self.m)
        if i in self.free_ones:
            return 1
        if i in self.free_zeros:
            return 0
        self.ledger.charge_read(charge_to)
        return self._x[i]

    def query_edge(self, u: int, v: int, charge_to: str) -> int:
        return self.query(self.assoc.bit_of(u, v), charge_to)

    def snapshot(self) -> tuple[int, ...]:
        """The full input, for simulators and ground-truth helpers only."""
        return self._x

    def view(self, graph: Graph) -> SubgraphView:
        return subgraph(graph, self.assoc, self._x)

    def fork(self) -> "InputOracle":
        """Same input, fresh ledger."""
        return InputOracle(
            self._x,
            self.assoc,
            free_ones=self.free_ones,
            free_zeros=self.free_zeros,
        )


def oracle_query(oracle: InputOracle, i: int, charge_to: str) -> int:
    return oracle.query(i, charge_to)
