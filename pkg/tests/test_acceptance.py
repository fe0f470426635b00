"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run as ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; the whole gate completes in well under two minutes on one machine.
"""

import csv
import time

import numpy as np

from blochdim.cli import main
from blochdim.equivariance import (
    adjoint_rotation,
    covering_check,
    equivariance_residual,
    homomorphism_residual,
)
from blochdim.exclusion import exclusion_report
from blochdim.experiments import run_bloch_coverage, run_saturation
from blochdim.invariant_sector import invariant_dimension_numeric
from blochdim.linalg import (
    DensityMatrix,
    haar_pure_state,
    haar_special_unitary,
    killing_form,
    pauli_basis,
)
from blochdim.projection import bloch_norm, bloch_project


def report(criterion, ok):
    print(f"{'PASS' if ok else 'FAIL'}: {criterion}")
    assert ok, criterion


def test_pure_norm_law():
    rng = np.random.default_rng(100)
    basis = pauli_basis()
    worst = 0.0
    for _ in range(10_000):
        norm = bloch_norm(bloch_project(haar_pure_state(2, rng), basis))
        worst = max(worst, abs(norm - 1.0))
    report("pure-norm law: 1e4 Haar qubit norms = 1 within 1e-12", worst < 1e-12)


def test_mixed_norm_law():
    rng = np.random.default_rng(101)
    basis = pauli_basis()
    worst = 0.0
    for _ in range(1_000):
        p = rng.uniform(0.05, 0.95)
        rho = DensityMatrix(
            p * haar_pure_state(2, rng).density().matrix
            + (1.0 - p) * haar_pure_state(2, rng).density().matrix
        )
        worst = max(worst, bloch_norm(bloch_project(rho, basis)))
    report("mixed-norm law: 1e3 two-point mixtures < 1 - 1e-6", worst < 1.0 - 1e-6)


def test_equivariance():
    rng = np.random.default_rng(102)
    basis = pauli_basis()
    worst = 0.0
    for _ in range(1_000):
        u = haar_special_unitary(2, rng)
        psi = haar_pure_state(2, rng)
        worst = max(worst, equivariance_residual(u, psi, basis))
    report("equivariance: 1e3 random (U, psi) residuals < 1e-10", worst < 1e-10)


def test_so3_homomorphism_covering():
    rng = np.random.default_rng(103)
    basis = pauli_basis()
    worst_orth = worst_det = worst_hom = worst_cov = 0.0
    for _ in range(1_000):
        u1 = haar_special_unitary(2, rng)
        u2 = haar_special_unitary(2, rng)
        r = adjoint_rotation(u1, basis).matrix
        worst_orth = max(worst_orth, float(np.linalg.norm(r.T @ r - np.eye(3))))
        worst_det = max(worst_det, abs(float(np.linalg.det(r)) - 1.0))
        worst_hom = max(worst_hom, homomorphism_residual(u1, u2, basis))
        r_plus, r_minus = covering_check(u1)
        worst_cov = max(worst_cov, float(np.linalg.norm(r_plus.matrix - r_minus.matrix)))
    ok = max(worst_orth, worst_det, worst_hom, worst_cov) < 1e-10
    report("SO(3) membership + homomorphism + 2:1 covering < 1e-10 (1e3 samples)", ok)


def test_killing_form_anchor():
    sigma = pauli_basis().generators
    worst = 0.0
    for i in range(3):
        for j in range(3):
            value = killing_form(1j * sigma[i], 1j * sigma[j], 2)
            worst = max(worst, abs(value - (-8.0 if i == j else 0.0)))
    report("Killing form: kappa(i sigma_i, i sigma_j) = -8 delta_ij within 1e-12", worst < 1e-12)


def test_invariant_sector():
    expected = (0, 1, 0, 2, 0, 5, 0, 14, 0, 42)
    start = time.monotonic()
    results = []
    for k in range(1, 11):
        rep = invariant_dimension_numeric(k)
        results.append((rep.formula_dim, rep.numeric_dim))
    elapsed = time.monotonic() - start
    ok = (
        all(f == n == expected[k - 1] for k, (f, n) in enumerate(results, start=1))
        and elapsed < 60.0
    )
    report(
        f"invariant sector: formula = kernel = {expected} for k=1..10 in {elapsed:.1f}s",
        ok,
    )


def test_saturation_and_counterfactual():
    record = run_saturation(valences=(4, 6, 8, 10), trials=100, seed=104)
    ambient_ok = all(row[2] == 3 for row in record.rows)
    counterfactual_ok = all(row[3] == 3 * row[0] for row in record.rows)
    report(
        "saturation: ambient rank 3 and counterfactual rank 3k, k in {4,6,8,10}, 100 trials",
        ambient_ok and counterfactual_ok,
    )


def test_sun_exclusion():
    reports = {n: exclusion_report(n, np.random.default_rng([105, n])) for n in (2, 3, 4)}
    counts_ok = [reports[n].generator_count for n in (2, 3, 4)] == [3, 8, 15]
    ranks_ok = [reports[n].image_tangent_rank for n in (2, 3, 4)] == [2, 4, 6]
    flags_ok = [reports[n].is_directional_only for n in (2, 3, 4)] == [True, False, False]
    report(
        "SU(N) exclusion: generator counts (3,8,15), tangent ranks (2,4,6), "
        "directional-only at N=2 alone",
        counts_ok and ranks_ok and flags_ok,
    )


def test_fig1_data_reproduction(tmp_path):
    out = tmp_path / "fig1"
    code = main(
        ["bloch-coverage", "--n-states", "200", "--seed", "106", "--out-dir", str(out)]
    )
    with open(out / "bloch_coverage.csv", newline="") as handle:
        rows = list(csv.reader(handle))[1:]
    pure_norms = [float(r[4]) for r in rows if r[0] == "pure"]
    rows_ok = code == 0 and len(rows) == 200
    norms_ok = bool(pure_norms) and all(abs(x - 1.0) < 1e-12 for x in pure_norms)

    moments = run_bloch_coverage(n_states=10_000, mixed_fraction=0.0, seed=107)
    mean = moments.metadata["pure_axis_mean"]
    second = moments.metadata["pure_axis_second_moment"]
    se_mean = np.sqrt(1.0 / 3.0) / 100.0
    se_second = 0.3 / 100.0
    moments_ok = all(abs(m) < 4.0 * se_mean for m in mean) and all(
        abs(s - 1.0 / 3.0) < 4.0 * se_second for s in second
    )
    report(
        "fig-1 data: 200 rows, pure norms = 1 within 1e-12, axis moments pass at 1e4",
        rows_ok and norms_ok and moments_ok,
    )


def test_determinism(tmp_path):
    out1, out2 = tmp_path / "run1", tmp_path / "run2"
    args = ["bloch-coverage", "--n-states", "120", "--seed", "108"]
    assert main(args + ["--out-dir", str(out1)]) == 0
    assert main(args + ["--out-dir", str(out2)]) == 0
    same = (out1 / "bloch_coverage.csv").read_bytes() == (
        out2 / "bloch_coverage.csv"
    ).read_bytes()
    report("determinism: identical seeds produce byte-identical CSV", same)
