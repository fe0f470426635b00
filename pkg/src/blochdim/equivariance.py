"""Adjoint rotations induced by special unitaries, and residual checks for
equivariance, the group homomorphism property, and the 2:1 covering.

Conventions: rotations act on column vectors, so projecting U|psi> equals
R(U) applied to the projection of |psi>.  The trace-extraction formula below
is the transpose of the row-vector convention sometimes used for the same
map; the two agree after transposition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidAlgebraElementError,
    NotSpecialUnitaryError,
)
from .linalg import GeneratorBasis, PureState, pauli_basis
from .projection import bloch_project

__all__ = [
    "Rotation",
    "adjoint_rotation",
    "equivariance_residual",
    "covering_check",
    "homomorphism_residual",
]

_SO_TOL = 1e-10


@dataclass(frozen=True)
class Rotation:
    """Real orthogonal matrix with determinant +1 acting on the emergent space."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(np.asarray(self.matrix, dtype=float))
        d = m.shape[0]
        if m.ndim != 2 or m.shape != (d, d):
            raise ValueError(f"rotation matrix must be square, got {m.shape}")
        if np.max(np.abs(m.T @ m - np.eye(d))) > _SO_TOL:
            raise ValueError("matrix is not orthogonal within 1e-10")
        if abs(np.linalg.det(m) - 1.0) > _SO_TOL:
            raise ValueError("matrix determinant is not +1 within 1e-10")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def d(self) -> int:
        return self.matrix.shape[0]


def adjoint_rotation(u: np.ndarray, basis: GeneratorBasis) -> Rotation:
    """Rotation R(U) with R_ij = (1/2) tr(T_i U T_j U†).

    Column convention: the projection of U|psi> is R(U) times the projection
    of |psi>.  For n=2 this realizes the double covering onto SO(3).
    """
    u = np.asarray(u, dtype=complex)
    n = basis.n
    if u.shape != (n, n):
        raise DimensionMismatchError(f"unitary shape {u.shape} != basis dimension {n}")
    if np.max(np.abs(u.conj().T @ u - np.eye(n))) > 1e-10:
        raise NotSpecialUnitaryError("input is not unitary within 1e-10")
    if abs(np.linalg.det(u) - 1.0) > 1e-10:
        raise NotSpecialUnitaryError("input determinant is not 1 within 1e-10")
    conjugated = np.einsum("ij,ajk,lk->ail", u, basis.generators, u.conj())
    r = 0.5 * np.einsum("aij,bji->ab", basis.generators, conjugated)
    if np.max(np.abs(r.imag)) > 1e-10:
        raise InvalidAlgebraElementError(
            f"adjoint matrix has imaginary residue {np.max(np.abs(r.imag))!r}"
        )
    return Rotation(r.real)


def equivariance_residual(u: np.ndarray, psi: PureState, basis: GeneratorBasis) -> float:
    """Euclidean norm of the defect between projecting U|psi> and rotating
    the projection of |psi>; at most 1e-10 for all valid inputs."""
    r = adjoint_rotation(u, basis)
    rotated = PureState(np.asarray(u, dtype=complex) @ psi.amplitudes)
    lhs = bloch_project(rotated, basis).components
    rhs = r.matrix @ bloch_project(psi, basis).components
    return float(np.linalg.norm(lhs - rhs))


def covering_check(u: np.ndarray) -> tuple[Rotation, Rotation]:
    """Return (R(U), R(−U)) for U in SU(2); the two coincide within 1e-12."""
    basis = pauli_basis()
    return adjoint_rotation(u, basis), adjoint_rotation(-np.asarray(u), basis)


def homomorphism_residual(u1: np.ndarray, u2: np.ndarray, basis: GeneratorBasis) -> float:
    """Frobenius norm of R(U1 U2) − R(U1) R(U2); at most 1e-10."""
    r12 = adjoint_rotation(np.asarray(u1) @ np.asarray(u2), basis)
    r1 = adjoint_rotation(u1, basis)
    r2 = adjoint_rotation(u2, basis)
    return float(np.linalg.norm(r12.matrix - r1.matrix @ r2.matrix))
