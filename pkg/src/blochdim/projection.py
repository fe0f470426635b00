"""Bloch projection of quantum states onto generator expectation values,
purity diagnostics, and the density-matrix round trip.

For a dimension-n basis the projection sends a state to the real vector of
generator expectations (length n²−1).  Pure qubit states land on the unit
sphere; mixed qubit states land strictly inside it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidAlgebraElementError, NotAStateError
from .linalg import DensityMatrix, GeneratorBasis, PureState

__all__ = ["BlochVector", "bloch_project", "bloch_norm", "purity", "reconstruct_density"]

# Expectation values of Hermitian generators are real; residues above this
# signal a broken basis, not round-off.
_IMAG_RESIDUE_TOL = 1e-12


@dataclass(frozen=True)
class BlochVector:
    """Real expectation-value vector of length n²−1 for Hilbert dimension n."""

    n: int
    components: np.ndarray

    def __post_init__(self):
        comp = np.array(np.asarray(self.components, dtype=float))
        if comp.shape != (self.n * self.n - 1,):
            raise DimensionMismatchError(
                f"expected {self.n * self.n - 1} components, got {comp.shape}"
            )
        comp.setflags(write=False)
        object.__setattr__(self, "components", comp)


def bloch_project(state: PureState | DensityMatrix, basis: GeneratorBasis) -> BlochVector:
    """Project a pure state or density matrix: component a = <T_a>."""
    if state.n != basis.n:
        raise DimensionMismatchError(
            f"state dimension {state.n} != basis dimension {basis.n}"
        )
    if isinstance(state, PureState):
        z = state.amplitudes
        raw = np.einsum("i,aij,j->a", z.conj(), basis.generators, z)
    else:
        raw = np.einsum("aij,ji->a", basis.generators, state.matrix)
    residue = np.max(np.abs(raw.imag))
    if residue > _IMAG_RESIDUE_TOL:
        raise InvalidAlgebraElementError(
            f"expectation values have imaginary residue {residue!r} > 1e-12"
        )
    return BlochVector(basis.n, raw.real)


def bloch_norm(v: BlochVector) -> float:
    """Euclidean norm of the component vector."""
    return float(np.linalg.norm(v.components))


def purity(rho: DensityMatrix) -> float:
    """tr(rho²), in [1/n, 1]; equals 1 exactly for pure states."""
    return float(np.trace(rho.matrix @ rho.matrix).real)


def reconstruct_density(v: BlochVector, basis: GeneratorBasis) -> DensityMatrix:
    """Inverse of the projection: rho = I/n + (1/2) sum_a v_a T_a.

    Raises NotAStateError when the vector lies outside the state body
    (an eigenvalue below −1e−8); out-of-body inputs are never clamped.
    """
    if v.n != basis.n:
        raise DimensionMismatchError(f"vector dimension {v.n} != basis dimension {basis.n}")
    n = basis.n
    m = np.eye(n, dtype=complex) / n + 0.5 * np.einsum(
        "a,aij->ij", v.components, basis.generators
    )
    if np.linalg.eigvalsh(m).min() < -1e-8:
        raise NotAStateError("vector lies outside the state body")
    return DensityMatrix(m, psd_atol=1e-8)
