"""Generic span programs over Boolean inputs."""
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from core import ConstructionError

__all__ = ("SpanProgram", "WitnessBounds", "projector_Hx", "available_indices")


@dataclass(frozen=True, eq=False)
class SpanProgram:
    """(H, 𝒱, τ, A) with H = ⊕_j H_j ⊕ H_true ⊕ H_false.

    H is presented in a fixed orthonormal basis. `input_spaces[j]` holds the
    basis indices of (H_{j,0}, H_{j,1}); `true_indices` and `false_indices`
    hold those of H_true and H_false. `labels` names every basis vector.
    """

    A: np.ndarray
    tau: np.ndarray
    input_spaces: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    true_indices: tuple[int, ...] = ()
    false_indices: tuple[int, ...] = ()
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        dim_v, dim_h = self.A.shape
        if self.tau.shape != (dim_v,):
            raise ConstructionError(
                f"The target has shape {self.tau.shape}, expected ({dim_v},)."
            )
        owned = [
            index
            for spaces in self.input_spaces
            for part in spaces
            for index in part
        ]
        owned += [*self.true_indices, *self.false_indices]
        if sorted(set(owned)) != list(range(dim_h)):
            raise ConstructionError(
                "The input, true and false spaces must cover every basis vector of H."
            )
        if self.labels and len(self.labels) != dim_h:
            raise ConstructionError("Every basis vector needs exactly one label.")

    @property
    def m(self) -> int:
        return len(self.input_spaces)

    @property
    def dim_H(self) -> int:
        return self.A.shape[1]

    @property
    def dim_V(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class WitnessBounds:
    W_plus: float
    W_minus_tilde: float


def available_indices(program: SpanProgram, x: Sequence[int]) -> tuple[int, ...]:
    """Basis indices spanning H(x) = ⊕_j H_{j,x_j} ⊕ H_true."""
    if len(x) != program.m:
        raise ConstructionError(
            f"The program reads {program.m} bits, the input has {len(x)}."
        )
    chosen = [index for j, bit in enumerate(x) for index in program.input_spaces[j][bit]]
    return tuple(sorted({*chosen, *program.true_indices}))


def projector_Hx(program: SpanProgram, x: Sequence[int]) -> np.ndarray:
    """Π_{H(x)} as a diagonal 0/1 matrix."""
    diagonal = np.zeros(program.dim_H)
    diagonal[list(available_indices(program, x))] = 1.0
    return np.diag(diagonal)
