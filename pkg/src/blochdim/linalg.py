"""Dense small-matrix complex linear algebra: generator bases, Haar sampling,
the Killing form, and numerical rank/kernel primitives.

All public types are immutable after construction and safe to share across
threads; all operations are pure functions.  Randomness is always drawn from
an explicitly passed ``numpy.random.Generator`` (PCG64 via
``numpy.random.default_rng``), whose bit streams are stable across runs for a
fixed seed.  Concurrent callers should derive independent streams with
``default_rng([seed, task_index])``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidAlgebraElementError,
    InvalidDimensionError,
    NotAStateError,
)

__all__ = [
    "GeneratorBasis",
    "PureState",
    "DensityMatrix",
    "is_hermitian",
    "is_unitary",
    "is_traceless",
    "pauli_basis",
    "gell_mann_basis",
    "haar_pure_state",
    "haar_special_unitary",
    "killing_form",
    "numerical_rank",
    "kernel_dimension",
]

DEFAULT_RANK_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


def is_hermitian(m: np.ndarray, tol: float = 1e-12) -> bool:
    """True if the square matrix equals its conjugate transpose within tol."""
    return m.shape[0] == m.shape[1] and bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_unitary(m: np.ndarray, tol: float = 1e-12) -> bool:
    """True if m†m = I within tol (entrywise)."""
    if m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def is_traceless(m: np.ndarray, tol: float = 1e-12) -> bool:
    """True if the trace vanishes within tol."""
    return m.shape[0] == m.shape[1] and bool(abs(np.trace(m)) <= tol)


@dataclass(frozen=True)
class PureState:
    """Normalized state vector in C^n."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(np.asarray(self.amplitudes, dtype=complex))
        if amps.ndim != 1 or amps.size == 0:
            raise NotAStateError("amplitudes must be a non-empty 1-d vector")
        if abs(np.vdot(amps, amps).real - 1.0) > 1e-12:
            raise NotAStateError(
                f"squared amplitudes sum to {np.vdot(amps, amps).real!r}, not 1"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return self.amplitudes.shape[0]

    def density(self) -> "DensityMatrix":
        """Rank-one density matrix |psi><psi|."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on C^n.

    ``psd_atol`` is the tolerated negative-eigenvalue slack; the default is
    the type invariant (−1e−10).  Callers knowingly constructing from rounded
    data may pass a looser value.
    """

    matrix: np.ndarray
    psd_atol: float = 1e-10

    def __post_init__(self):
        m = _frozen(np.asarray(self.matrix, dtype=complex))
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotAStateError("density matrix must be square")
        if not is_hermitian(m, 1e-12):
            raise NotAStateError("density matrix is not Hermitian within 1e-12")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise NotAStateError(f"trace is {np.trace(m).real!r}, not 1")
        if np.linalg.eigvalsh(m).min() < -self.psd_atol:
            raise NotAStateError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class GeneratorBasis:
    """Ordered basis of the n²−1 traceless Hermitian generators of su(n),
    normalized to tr(T_a T_b) = 2 δ_ab (Pauli convention at n=2)."""

    n: int
    generators: np.ndarray = field(repr=False)

    def __post_init__(self):
        gens = _frozen(np.asarray(self.generators, dtype=complex))
        n = self.n
        if gens.shape != (n * n - 1, n, n):
            raise InvalidDimensionError(
                f"expected {n * n - 1} generators of shape {n}x{n}, got {gens.shape}"
            )
        for g in gens:
            if not is_hermitian(g, 1e-12) or not is_traceless(g, 1e-12):
                raise InvalidAlgebraElementError(
                    "generators must be Hermitian and traceless within 1e-12"
                )
        gram = np.einsum("aij,bji->ab", gens, gens)
        if np.max(np.abs(gram - 2.0 * np.eye(n * n - 1))) > 1e-12:
            raise InvalidAlgebraElementError(
                "generator Gram matrix deviates from 2*I by more than 1e-12"
            )
        object.__setattr__(self, "generators", gens)

    @property
    def count(self) -> int:
        return self.generators.shape[0]


_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def pauli_basis() -> GeneratorBasis:
    """The Pauli matrices (sigma_x, sigma_y, sigma_z), in that order."""
    return GeneratorBasis(2, _PAULI)


def gell_mann_basis(n: int) -> GeneratorBasis:
    """Generalized Gell-Mann basis of su(n): symmetric pair matrices, then
    antisymmetric pair matrices, then diagonal matrices.

    Reduces exactly to the Pauli order (x, y, z) at n=2.
    """
    if n < 2:
        raise InvalidDimensionError(f"generator basis needs dimension >= 2, got {n}")
    gens = []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = 1.0
            m[k, j] = 1.0
            gens.append(m)
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            gens.append(m)
    for l in range(1, n):
        diag = np.zeros(n, dtype=complex)
        diag[:l] = 1.0
        diag[l] = -float(l)
        gens.append(np.sqrt(2.0 / (l * (l + 1))) * np.diag(diag))
    return GeneratorBasis(n, np.array(gens))


def haar_pure_state(n: int, rng: np.random.Generator) -> PureState:
    """Pure state drawn from the unitarily invariant (Fubini-Study) measure:
    2n independent standard Gaussians as real/imaginary parts, normalized."""
    if n < 1:
        raise InvalidDimensionError(f"state dimension must be >= 1, got {n}")
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(z / np.linalg.norm(z))


def haar_special_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed special unitary: QR of a Ginibre matrix with the
    standard phase correction, then the global phase fixed so det = 1."""
    if n < 2:
        raise InvalidDimensionError(f"unitary dimension must be >= 2, got {n}")
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    det = np.linalg.det(q)
    return q * det ** (-1.0 / n)


def killing_form(x: np.ndarray, y: np.ndarray, n: int) -> float:
    """Killing form kappa(x, y) = 2n tr(xy) of su(n).

    Inputs must be anti-Hermitian and traceless within 1e-10 (multiply
    Hermitian generators by 1j first).  For the normalized generator basis,
    kappa(i T_a, i T_b) = -4n delta_ab; at n=2 this is the -8 delta_ij anchor.
    """
    for m in (x, y):
        m = np.asarray(m)
        if m.shape != (n, n):
            raise InvalidAlgebraElementError(f"expected a {n}x{n} matrix, got {m.shape}")
        if np.max(np.abs(m + m.conj().T)) > 1e-10 or abs(np.trace(m)) > 1e-10:
            raise InvalidAlgebraElementError(
                "Killing form inputs must be anti-Hermitian and traceless within 1e-10"
            )
    value = 2.0 * n * np.trace(np.asarray(x) @ np.asarray(y))
    if abs(value.imag) > 1e-12:
        raise InvalidAlgebraElementError(
            f"Killing form has imaginary residue {value.imag!r}"
        )
    return float(value.real)


def numerical_rank(m: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values above tol times the largest singular value.

    The zero matrix (and the empty matrix) has rank 0.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    m = np.asarray(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def kernel_dimension(m: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> int:
    """Dimension of the (right) null space: columns minus numerical rank."""
    m = np.asarray(m)
    return int(m.shape[1]) - numerical_rank(m, tol)
