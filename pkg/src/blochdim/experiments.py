"""Seeded experiment drivers: sphere-coverage data, saturation across
valences, and the one-shot property suite.

Reproducibility contract: every row is generated from a generator derived as
``default_rng([seed, stream, *indices])``, so records are bit-identical for
identical (experiment, parameters, seed) regardless of scheduling, and each
trial owns an independent stream.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .equivariance import (
    adjoint_rotation,
    covering_check,
    equivariance_residual,
    homomorphism_residual,
)
from .exclusion import exclusion_report, image_tangent_rank, pure_norm_constant
from .graphs import (
    ambient_dimension,
    apply_global_gauge,
    assign_random_states,
    counterfactual_dimension,
    star_graph,
    vertex_configuration,
)
from .invariant_sector import invariant_dimension_formula, invariant_dimension_numeric
from .linalg import (
    DensityMatrix,
    GeneratorBasis,
    gell_mann_basis,
    haar_pure_state,
    haar_special_unitary,
    killing_form,
    numerical_rank,
    pauli_basis,
)
from .projection import BlochVector, bloch_norm, bloch_project, purity, reconstruct_density

__all__ = [
    "ExperimentRecord",
    "run_bloch_coverage",
    "run_saturation",
    "run_property_suite",
]

# Stream identifiers for per-experiment RNG derivation.
_STREAM_COVERAGE = 1
_STREAM_SATURATION = 2
_STREAM_SUITE = 3

# Metadata keys excluded from serialized bytes (volatile across runs).
VOLATILE_METADATA_KEYS = ("created_at",)


@dataclass(frozen=True)
class ExperimentRecord:
    """One experiment's output: flat rows plus enough metadata to rerun it.

    ``extra_tables`` maps table name to (columns, rows) for side outputs that
    do not fit the main schema (e.g. per-valence vector dumps).
    """

    experiment: str
    seed: int
    parameters: dict
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    metadata: dict
    extra_tables: dict = field(default_factory=dict)


def _row_rng(seed: int, stream: int, *indices: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream, *indices])


def _base_metadata() -> dict:
    return {
        "build": f"blochdim {__version__} / numpy {np.__version__}",
        "rng": "numpy PCG64, default_rng([seed, stream, *indices])",
        "created_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _pair_mixture(rng: np.random.Generator, low: float = 0.0, high: float = 1.0) -> DensityMatrix:
    """Convex combination of two Haar qubit states with uniform weight."""
    p = rng.uniform(low, high)
    rho1 = haar_pure_state(2, rng).density().matrix
    rho2 = haar_pure_state(2, rng).density().matrix
    return DensityMatrix(p * rho1 + (1.0 - p) * rho2)


def run_bloch_coverage(
    n_states: int = 200, mixed_fraction: float = 0.5, seed: int = 0
) -> ExperimentRecord:
    """Project random qubit states and record their coordinates and norms.

    Pure states are Haar; mixed states are pair mixtures with uniform(0,1)
    weight.  Coverage diagnostics (per-axis mean and second moment over the
    pure rows) are stored in the record metadata.
    """
    if n_states < 1:
        raise ValueError("need at least one state")
    if not 0.0 <= mixed_fraction <= 1.0:
        raise ValueError("mixed_fraction must lie in [0, 1]")
    basis = pauli_basis()
    n_mixed = int(round(n_states * mixed_fraction))
    n_pure = n_states - n_mixed
    rows = []
    pure_components = []
    for i in range(n_states):
        rng = _row_rng(seed, _STREAM_COVERAGE, i)
        if i < n_pure:
            kind = "pure"
            rho = haar_pure_state(2, rng).density()
        else:
            kind = "mixed"
            rho = _pair_mixture(rng)
        v = bloch_project(rho, basis)
        if kind == "pure":
            pure_components.append(v.components)
        x, y, z = (float(c) for c in v.components)
        rows.append((kind, x, y, z, bloch_norm(v), purity(rho)))
    metadata = _base_metadata()
    metadata["mixed_ensemble"] = (
        "p*|psi1><psi1| + (1-p)*|psi2><psi2|, psi_i Haar, p ~ uniform(0,1)"
    )
    if pure_components:
        stacked = np.array(pure_components)
        metadata["pure_axis_mean"] = [float(m) for m in stacked.mean(axis=0)]
        metadata["pure_axis_second_moment"] = [float(m) for m in (stacked**2).mean(axis=0)]
    return ExperimentRecord(
        experiment="bloch_coverage",
        seed=seed,
        parameters={"n_states": n_states, "mixed_fraction": mixed_fraction},
        columns=("kind", "n_x", "n_y", "n_z", "norm", "purity"),
        rows=tuple(rows),
        metadata=metadata,
    )


def run_saturation(
    valences: tuple[int, ...] = (4, 6, 8, 10), trials: int = 100, seed: int = 0
) -> ExperimentRecord:
    """Measure the spanned dimension at star-graph centers, with and without
    the shared frame, across valences.

    The raw Bloch vectors of the final trial per valence are kept in
    ``extra_tables["vectors_k{K}"]`` for plotting.
    """
    valences = tuple(sorted(set(int(k) for k in valences)))
    if not valences or min(valences) < 1:
        raise ValueError("valences must be a non-empty list of positive integers")
    if trials < 1:
        raise ValueError("need at least one trial")
    rows = []
    extra_tables = {}
    for k in valences:
        g = star_graph(k)
        for trial in range(trials):
            rng = _row_rng(seed, _STREAM_SATURATION, k, trial)
            a = assign_random_states(g, rng)
            config = vertex_configuration(a, 0)
            ambient = ambient_dimension(config)
            counterfactual = counterfactual_dimension(a, 0, rng)
            rows.append((k, trial, ambient, counterfactual))
            if trial == trials - 1:
                vec_rows = tuple(
                    (edge, *(float(c) for c in bv.components))
                    for edge, bv in enumerate(config.bloch_vectors)
                )
                extra_tables[f"vectors_k{k}"] = (("edge", "n_x", "n_y", "n_z"), vec_rows)
    return ExperimentRecord(
        experiment="saturation",
        seed=seed,
        parameters={"valences": list(valences), "trials": trials},
        columns=("k", "trial", "ambient_rank", "counterfactual_rank"),
        rows=tuple(rows),
        metadata=_base_metadata(),
        extra_tables=extra_tables,
    )


# ---------------------------------------------------------------------------
# Property suite
# ---------------------------------------------------------------------------


def _prop_pure_norm(rng):
    basis = pauli_basis()
    worst = 0.0
    n = 10_000
    for _ in range(n):
        v = bloch_project(haar_pure_state(2, rng), basis)
        worst = max(worst, abs(bloch_norm(v) - 1.0))
    return n, worst, worst < 1e-12


def _prop_mixed_norm(rng):
    basis = pauli_basis()
    worst = 0.0
    n = 1_000
    for _ in range(n):
        rho = _pair_mixture(rng, 0.05, 0.95)
        worst = max(worst, bloch_norm(bloch_project(rho, basis)))
    return n, worst, worst < 1.0 - 1e-6


def _prop_equivariance(rng):
    basis = pauli_basis()
    worst = 0.0
    n = 1_000
    for _ in range(n):
        u = haar_special_unitary(2, rng)
        psi = haar_pure_state(2, rng)
        worst = max(worst, equivariance_residual(u, psi, basis))
    return n, worst, worst < 1e-10


def _prop_so3_membership(rng):
    basis = pauli_basis()
    worst = 0.0
    n = 1_000
    for _ in range(n):
        r = adjoint_rotation(haar_special_unitary(2, rng), basis).matrix
        worst = max(
            worst,
            float(np.linalg.norm(r.T @ r - np.eye(3))),
            abs(float(np.linalg.det(r)) - 1.0),
        )
    return n, worst, worst < 1e-10


def _prop_homomorphism(rng):
    basis = pauli_basis()
    worst = 0.0
    n = 1_000
    for _ in range(n):
        worst = max(
            worst,
            homomorphism_residual(
                haar_special_unitary(2, rng), haar_special_unitary(2, rng), basis
            ),
        )
    return n, worst, worst < 1e-10


def _prop_covering(rng):
    worst = 0.0
    n = 1_000
    for _ in range(n):
        r_plus, r_minus = covering_check(haar_special_unitary(2, rng))
        worst = max(worst, float(np.max(np.abs(r_plus.matrix - r_minus.matrix))))
    return n, worst, worst < 1e-12


def _prop_killing_diag(rng):
    sigma = pauli_basis().generators
    worst = 0.0
    for i in range(3):
        for j in range(3):
            expected = -8.0 if i == j else 0.0
            value = killing_form(1j * sigma[i], 1j * sigma[j], 2)
            worst = max(worst, abs(value - expected))
    return 9, worst, worst < 1e-12


def _prop_killing_su3(rng):
    gens = gell_mann_basis(3).generators
    worst = 0.0
    for a in range(8):
        for b in range(8):
            expected = -12.0 if a == b else 0.0
            worst = max(worst, abs(killing_form(1j * gens[a], 1j * gens[b], 3) - expected))
    return 64, worst, worst < 1e-10


def _prop_gell_mann_gram(rng):
    worst = 0.0
    count = 0
    for n in (2, 3, 4, 5):
        gens = gell_mann_basis(n).generators
        gram = np.einsum("aij,bji->ab", gens, gens).real
        worst = max(worst, float(np.max(np.abs(gram - 2.0 * np.eye(n * n - 1)))))
        count += gens.shape[0] ** 2
    return count, worst, worst < 1e-12


def _prop_haar_moments(rng):
    n = 10_000
    z_values = np.empty(n)
    for i in range(n):
        z_values[i] = bloch_project(haar_pure_state(2, rng), pauli_basis()).components[2]
    mean = z_values.mean()
    se_mean = z_values.std(ddof=1) / np.sqrt(n)
    m2 = (z_values**2).mean()
    se_m2 = (z_values**2).std(ddof=1) / np.sqrt(n)
    score = max(abs(mean) / se_mean, abs(m2 - 1.0 / 3.0) / se_m2)
    return n, float(score), score < 4.0


def _prop_rank_invariance(rng):
    worst = 0
    n = 20
    for _ in range(n):
        m = rng.standard_normal((8, 4))
        rank = numerical_rank(m, 1e-10)
        perm = rng.permutation(8)
        q, _ = np.linalg.qr(rng.standard_normal((8, 8)))
        if numerical_rank(m[perm], 1e-10) != rank or numerical_rank(q @ m, 1e-10) != rank:
            worst += 1
    return n, float(worst), worst == 0


def _prop_purity_identity(rng):
    worst = 0.0
    n = 200
    basis = pauli_basis()
    for _ in range(n):
        rho = _pair_mixture(rng)
        lhs = purity(rho)
        rhs = (1.0 + bloch_norm(bloch_project(rho, basis)) ** 2) / 2.0
        worst = max(worst, abs(lhs - rhs))
    return n, worst, worst < 1e-10


def _prop_roundtrip(rng):
    worst = 0.0
    n = 200
    basis = pauli_basis()
    for _ in range(n):
        direction = rng.standard_normal(3)
        direction /= np.linalg.norm(direction)
        v = BlochVector(2, rng.uniform(0.0, 1.0) * direction)
        back = bloch_project(reconstruct_density(v, basis), basis)
        worst = max(worst, float(np.max(np.abs(back.components - v.components))))
    return n, worst, worst < 1e-10


def _prop_linearity(rng):
    worst = 0.0
    n = 200
    basis = pauli_basis()
    for _ in range(n):
        rho1 = _pair_mixture(rng)
        rho2 = _pair_mixture(rng)
        p = rng.uniform()
        combined = DensityMatrix(p * rho1.matrix + (1.0 - p) * rho2.matrix)
        lhs = bloch_project(combined, basis).components
        rhs = p * bloch_project(rho1, basis).components + (1.0 - p) * bloch_project(
            rho2, basis
        ).components
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return n, worst, worst < 1e-12


def _prop_gauge_coherence(rng):
    worst = 0.0
    n = 50
    g = star_graph(6)
    for _ in range(n):
        a = assign_random_states(g, rng)
        u = haar_special_unitary(2, rng)
        r = adjoint_rotation(u, a.frame).matrix
        before = vertex_configuration(a, 0).matrix()
        after = vertex_configuration(apply_global_gauge(a, u), 0).matrix()
        worst = max(worst, float(np.max(np.abs(after - before @ r.T))))
        dots_before = before @ before.T
        dots_after = after @ after.T
        worst = max(worst, float(np.max(np.abs(dots_after - dots_before))))
    return n, worst, worst < 1e-10


def _prop_metric_compatibility(rng):
    worst = 0.0
    n = 200
    basis = pauli_basis()
    for _ in range(n):
        r = adjoint_rotation(haar_special_unitary(2, rng), basis).matrix
        v = rng.standard_normal(3)
        worst = max(worst, abs(float(np.linalg.norm(r @ v)) - float(np.linalg.norm(v))))
    return n, worst, worst < 1e-10


def _su2_from_axis_angle(axis: np.ndarray, angle: float) -> np.ndarray:
    sigma = pauli_basis().generators
    n_dot_sigma = np.einsum("a,aij->ij", axis, sigma)
    return np.cos(angle / 2.0) * np.eye(2) - 1j * np.sin(angle / 2.0) * n_dot_sigma


def _rodrigues(axis: np.ndarray, angle: float) -> np.ndarray:
    k = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


def _prop_surjectivity(rng):
    basis = pauli_basis()
    worst = 0.0
    count = 0
    for _ in range(24):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        for angle in np.linspace(0.0, 2.0 * np.pi, 13):
            u = _su2_from_axis_angle(axis, angle)
            r = adjoint_rotation(u, basis).matrix
            worst = max(worst, float(np.max(np.abs(r - _rodrigues(axis, angle)))))
            count += 1
    return count, worst, worst < 1e-8


def _make_invariant_prop(k):
    def prop(rng):
        report = invariant_dimension_numeric(k)
        residual = float(abs(report.formula_dim - report.numeric_dim))
        return 1, residual, report.formula_dim == report.numeric_dim

    return prop


def _make_saturation_prop(k):
    def prop(rng):
        trials = 100
        g = star_graph(k)
        worst = 0.0
        ok = True
        for _ in range(trials):
            a = assign_random_states(g, rng)
            rank = ambient_dimension(vertex_configuration(a, 0))
            worst = max(worst, float(abs(rank - 3)))
            ok = ok and rank == 3
        return trials, worst, ok

    return prop


def _make_counterfactual_prop(k):
    def prop(rng):
        trials = 10
        g = star_graph(k)
        worst = 0.0
        ok = True
        for _ in range(trials):
            a = assign_random_states(g, rng)
            rank = counterfactual_dimension(a, 0, rng)
            worst = max(worst, float(abs(rank - 3 * k)))
            ok = ok and rank == 3 * k
        return trials, worst, ok

    return prop


def _make_exclusion_prop(n):
    def prop(rng):
        report = exclusion_report(n, rng)
        expected_rank = 2 * (n - 1)
        ok = (
            report.generator_count == n * n - 1
            and report.image_tangent_rank == expected_rank
            and report.is_directional_only == (n == 2)
        )
        residual = float(abs(report.image_tangent_rank - expected_rank))
        return 10, residual, ok

    return prop


def _make_pure_norm_constant_prop(n):
    def prop(rng):
        deviation = pure_norm_constant(n, samples=100, rng=rng)
        return 100, deviation, deviation < 1e-10

    return prop


def _suite_properties():
    props = [
        ("pure_norm_unit", _prop_pure_norm),
        ("mixed_norm_strict", _prop_mixed_norm),
        ("equivariance", _prop_equivariance),
        ("so3_membership", _prop_so3_membership),
        ("homomorphism", _prop_homomorphism),
        ("covering_2to1", _prop_covering),
        ("killing_diag_minus8", _prop_killing_diag),
        ("killing_su3_minus12", _prop_killing_su3),
        ("gell_mann_gram", _prop_gell_mann_gram),
        ("haar_axis_moments", _prop_haar_moments),
        ("rank_invariance", _prop_rank_invariance),
        ("purity_norm_identity", _prop_purity_identity),
        ("roundtrip_project_reconstruct", _prop_roundtrip),
        ("projection_linearity", _prop_linearity),
        ("gauge_coherence", _prop_gauge_coherence),
        ("metric_compatibility", _prop_metric_compatibility),
        ("surjectivity_so3_grid", _prop_surjectivity),
    ]
    props += [(f"invariant_dim_k{k}", _make_invariant_prop(k)) for k in range(1, 11)]
    props += [(f"saturation_k{k}", _make_saturation_prop(k)) for k in (4, 6, 8, 10)]
    props += [(f"counterfactual_k{k}", _make_counterfactual_prop(k)) for k in (1, 2, 4, 6)]
    props += [(f"exclusion_n{n}", _make_exclusion_prop(n)) for n in (2, 3, 4, 5, 6)]
    props += [(f"pure_norm_constant_n{n}", _make_pure_norm_constant_prop(n)) for n in (3, 4)]
    return props


def run_property_suite(seed: int = 0) -> ExperimentRecord:
    """Run every module invariant once and report one row per property.

    Failures are reported in the rows (and in metadata["all_passed"]), never
    raised mid-run.
    """
    rows = []
    for index, (name, prop) in enumerate(_suite_properties()):
        rng = _row_rng(seed, _STREAM_SUITE, index)
        samples, residual, passed = prop(rng)
        rows.append((name, int(samples), float(residual), bool(passed)))
    metadata = _base_metadata()
    metadata["all_passed"] = all(row[3] for row in rows)
    return ExperimentRecord(
        experiment="property_suite",
        seed=seed,
        parameters={},
        columns=("property", "samples", "residual", "pass"),
        rows=tuple(rows),
        metadata=metadata,
    )
