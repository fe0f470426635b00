"""Why only dimension-2 state spaces project onto a full sphere: for C^N the
smallest equivariant target has dimension N²−1, while the pure-state image
is a manifold of real dimension 2(N−1).  The two coincide on the sphere
count only at N=2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError
from .linalg import gell_mann_basis, haar_pure_state, numerical_rank
from .projection import bloch_project

__all__ = [
    "ExclusionReport",
    "min_equivariant_dimension",
    "image_tangent_rank",
    "pure_norm_constant",
    "exclusion_report",
]

# Central differences with this step put finite-difference noise near 1e-9,
# far below the O(1) tangent singular values; the rank cut sits between.
_FD_STEP = 1e-6
_FD_RANK_TOL = 1e-7


@dataclass(frozen=True)
class ExclusionReport:
    n: int
    generator_count: int
    image_tangent_rank: int
    sphere_dim: int
    pure_norm: float
    is_directional_only: bool


def min_equivariant_dimension(n: int) -> int:
    """Smallest target dimension admitting an equivariant non-degenerate
    projection of C^n states: the generator count n²−1."""
    if n < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {n}")
    return n * n - 1


def image_tangent_rank(
    n: int,
    samples: int = 10,
    rng: np.random.Generator | None = None,
    tol: float = _FD_RANK_TOL,
) -> int:
    """Rank of the projection's Jacobian at Haar-random base points.

    The map is evaluated on raw amplitude coordinates (2n real parameters)
    with explicit normalization, so the global-phase and scale directions
    fall into the kernel and the rank reported is the dimension of the
    pure-state image manifold: 2(n−1) for generic states.
    """
    if n < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {n}")
    if samples < 1:
        raise ValueError("need at least one sample point")
    if rng is None:
        rng = np.random.default_rng(0)
    generators = gell_mann_basis(n).generators

    def bloch_of_coords(x: np.ndarray) -> np.ndarray:
        z = x[:n] + 1j * x[n:]
        raw = np.einsum("i,aij,j->a", z.conj(), generators, z).real
        return raw / np.vdot(z, z).real

    best = 0
    for _ in range(samples):
        psi = haar_pure_state(n, rng)
        x0 = np.concatenate([psi.amplitudes.real, psi.amplitudes.imag])
        jac = np.empty((n * n - 1, 2 * n))
        for c in range(2 * n):
            step = np.zeros(2 * n)
            step[c] = _FD_STEP
            jac[:, c] = (bloch_of_coords(x0 + step) - bloch_of_coords(x0 - step)) / (
                2.0 * _FD_STEP
            )
        best = max(best, numerical_rank(jac, tol))
    return best


def pure_norm_constant(
    n: int, samples: int = 100, rng: np.random.Generator | None = None
) -> float:
    """Max deviation of the pure-state projection norm from sqrt(2(n−1)/n)
    over Haar samples; below 1e-10 for all n."""
    if n < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {n}")
    if rng is None:
        rng = np.random.default_rng(0)
    basis = gell_mann_basis(n)
    expected = np.sqrt(2.0 * (n - 1) / n)
    worst = 0.0
    for _ in range(samples):
        v = bloch_project(haar_pure_state(n, rng), basis)
        worst = max(worst, abs(float(np.linalg.norm(v.components)) - expected))
    return worst


def exclusion_report(n: int, rng: np.random.Generator | None = None) -> ExclusionReport:
    """Assemble the dimension-counting evidence for one Hilbert dimension.

    ``is_directional_only`` holds when the pure-state image fills the full
    sphere S^(n²−2) inside the generator space, which happens only at n=2.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    rank = image_tangent_rank(n, samples=10, rng=rng)
    sphere_dim = n * n - 2
    return ExclusionReport(
        n=n,
        generator_count=min_equivariant_dimension(n),
        image_tangent_rank=rank,
        sphere_dim=sphere_dim,
        pure_norm=float(np.sqrt(2.0 * (n - 1) / n)),
        is_directional_only=(rank == sphere_dim),
    )
