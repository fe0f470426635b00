"""Command-line interface: runs experiments and checks, serializes records.

Exit codes: 0 success, 1 property/check failure, 2 usage or I/O error.
Every run writes a ``meta.json`` with the fully resolved configuration.

CSV schemas (RFC-4180, '.' decimal, floats at 17 significant digits):
  bloch_coverage.csv  kind, n_x, n_y, n_z, norm, purity
  saturation.csv      k, trial, ambient_rank, counterfactual_rank
  vectors_k{K}.csv    edge, n_x, n_y, n_z
  verify.csv          property, samples, residual, pass
  invariant_dim.csv   k, formula_dim, numeric_dim, max_residual
  sun_scan.csv        n, generator_count, image_tangent_rank, sphere_dim,
                      pure_norm, directional_only
  covering_check.csv  sample, orthogonality_defect, det_defect, covering_defect
  killing_form.csv    i, j, value, expected, defect
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .equivariance import adjoint_rotation, covering_check
from .exclusion import exclusion_report
from .experiments import (
    VOLATILE_METADATA_KEYS,
    ExperimentRecord,
    run_bloch_coverage,
    run_property_suite,
    run_saturation,
)
from .graphs import (
    ambient_dimension,
    assign_random_states,
    counterfactual_dimension,
    parse_graph_spec,
    vertex_configuration,
)
from .invariant_sector import invariant_dimension_numeric
from .linalg import gell_mann_basis, haar_special_unitary, killing_form, pauli_basis

__all__ = ["main", "entry_point", "serialize_record"]


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def serialize_record(record: ExperimentRecord, fmt: str) -> bytes:
    """Serialize a record to CSV or JSON bytes.

    Both formats are deterministic for identical (experiment, parameters,
    seed): volatile metadata keys (timestamps) are excluded.  CSV carries
    header plus data rows; JSON carries one object with keys in the fixed
    order experiment, seed, parameters, columns, rows, metadata.
    """
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(record.columns)
        for row in record.rows:
            writer.writerow([_format_cell(cell) for cell in row])
        return out.getvalue().encode("utf-8")
    if fmt == "json":
        payload = {
            "experiment": record.experiment,
            "seed": record.seed,
            "parameters": record.parameters,
            "columns": list(record.columns),
            "rows": [list(row) for row in record.rows],
            "metadata": {
                key: value
                for key, value in record.metadata.items()
                if key not in VOLATILE_METADATA_KEYS
            },
        }
        return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _serialize_table(columns, rows, fmt: str) -> bytes:
    record = ExperimentRecord(
        experiment="table",
        seed=0,
        parameters={},
        columns=tuple(columns),
        rows=tuple(rows),
        metadata={},
    )
    return serialize_record(record, fmt)


def _write_outputs(args, record: ExperimentRecord, basename: str) -> list[str]:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = args.format
    written = []
    main_name = f"{basename}.{ext}"
    (out_dir / main_name).write_bytes(serialize_record(record, args.format))
    written.append(main_name)
    for table_name, (columns, rows) in sorted(record.extra_tables.items()):
        name = f"{table_name}.{ext}"
        (out_dir / name).write_bytes(_serialize_table(columns, rows, args.format))
        written.append(name)
    meta = {
        "command": args.command,
        "seed": record.seed,
        "parameters": record.parameters,
        "format": args.format,
        "out_dir": str(out_dir),
        "outputs": written,
        "package_version": __version__,
        "numpy_version": np.__version__,
        "metadata": record.metadata,
    }
    (out_dir / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    return written


def _cmd_bloch_coverage(args) -> int:
    record = run_bloch_coverage(
        n_states=args.n_states, mixed_fraction=args.mixed_fraction, seed=args.seed
    )
    _write_outputs(args, record, "bloch_coverage")
    return 0


def _cmd_saturation(args) -> int:
    if args.graph is not None:
        graph = parse_graph_spec(args.graph)
        center = max(range(graph.vertex_count), key=graph.valence)
        k = graph.valence(center)
        rows = []
        vec_rows = ()
        for trial in range(args.trials):
            rng = np.random.default_rng([args.seed, 2, k, trial])
            assignment = assign_random_states(graph, rng)
            config = vertex_configuration(assignment, center)
            rows.append(
                (
                    k,
                    trial,
                    ambient_dimension(config),
                    counterfactual_dimension(assignment, center, rng),
                )
            )
            if trial == args.trials - 1:
                vec_rows = tuple(
                    (edge, *(float(c) for c in bv.components))
                    for edge, bv in enumerate(config.bloch_vectors)
                )
        record = ExperimentRecord(
            experiment="saturation",
            seed=args.seed,
            parameters={"graph": args.graph, "trials": args.trials, "vertex": center},
            columns=("k", "trial", "ambient_rank", "counterfactual_rank"),
            rows=tuple(rows),
            metadata={"build": f"blochdim {__version__} / numpy {np.__version__}"},
            extra_tables={f"vectors_k{k}": (("edge", "n_x", "n_y", "n_z"), vec_rows)},
        )
    else:
        record = run_saturation(
            valences=tuple(args.valences), trials=args.trials, seed=args.seed
        )
    _write_outputs(args, record, "saturation")
    return 0


def _cmd_invariant_dim(args) -> int:
    rows = []
    ok = True
    for k in args.k:
        report = invariant_dimension_numeric(k, tol=args.tol)
        rows.append((report.k, report.formula_dim, report.numeric_dim, report.max_residual))
        ok = ok and report.formula_dim == report.numeric_dim
    record = ExperimentRecord(
        experiment="invariant_dim",
        seed=args.seed,
        parameters={"k": list(args.k), "tol": args.tol},
        columns=("k", "formula_dim", "numeric_dim", "max_residual"),
        rows=tuple(rows),
        metadata={"all_passed": ok},
    )
    _write_outputs(args, record, "invariant_dim")
    return 0 if ok else 1


def _cmd_sun_scan(args) -> int:
    rows = []
    ok = True
    for n in args.n:
        rng = np.random.default_rng([args.seed, 4, n])
        report = exclusion_report(n, rng)
        rows.append(
            (
                report.n,
                report.generator_count,
                report.image_tangent_rank,
                report.sphere_dim,
                report.pure_norm,
                report.is_directional_only,
            )
        )
        ok = ok and report.is_directional_only == (n == 2)
    record = ExperimentRecord(
        experiment="sun_scan",
        seed=args.seed,
        parameters={"n": list(args.n)},
        columns=(
            "n",
            "generator_count",
            "image_tangent_rank",
            "sphere_dim",
            "pure_norm",
            "directional_only",
        ),
        rows=tuple(rows),
        metadata={"all_passed": ok},
    )
    _write_outputs(args, record, "sun_scan")
    return 0 if ok else 1


def _cmd_covering_check(args) -> int:
    rows = []
    ok = True
    for sample in range(args.samples):
        rng = np.random.default_rng([args.seed, 5, sample])
        u = haar_special_unitary(2, rng)
        r_plus, r_minus = covering_check(u)
        orth = float(np.linalg.norm(r_plus.matrix.T @ r_plus.matrix - np.eye(3)))
        det = abs(float(np.linalg.det(r_plus.matrix)) - 1.0)
        cover = float(np.max(np.abs(r_plus.matrix - r_minus.matrix)))
        rows.append((sample, orth, det, cover))
        ok = ok and orth < 1e-10 and det < 1e-10 and cover < 1e-12
    record = ExperimentRecord(
        experiment="covering_check",
        seed=args.seed,
        parameters={"samples": args.samples},
        columns=("sample", "orthogonality_defect", "det_defect", "covering_defect"),
        rows=tuple(rows),
        metadata={"all_passed": ok},
    )
    _write_outputs(args, record, "covering_check")
    return 0 if ok else 1


def _cmd_killing_form(args) -> int:
    basis = pauli_basis() if args.n == 2 else gell_mann_basis(args.n)
    rows = []
    ok = True
    for i in range(basis.count):
        for j in range(basis.count):
            expected = -4.0 * args.n if i == j else 0.0
            value = killing_form(
                1j * basis.generators[i], 1j * basis.generators[j], args.n
            )
            defect = abs(value - expected)
            rows.append((i, j, value, expected, defect))
            ok = ok and defect < 1e-10
    record = ExperimentRecord(
        experiment="killing_form",
        seed=args.seed,
        parameters={"n": args.n},
        columns=("i", "j", "value", "expected", "defect"),
        rows=tuple(rows),
        metadata={"all_passed": ok},
    )
    _write_outputs(args, record, "killing_form")
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    record = run_property_suite(seed=args.seed)
    _write_outputs(args, record, "verify")
    for name, samples, residual, passed in record.rows:
        status = "PASS" if passed else "FAIL"
        print(f"{status} {name} (samples={samples}, residual={residual:.3e})")
    return 0 if record.metadata["all_passed"] else 1


def _cmd_version(args) -> int:
    print(f"blochdim {__version__}")
    return 0


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochdim",
        description="Bloch-projection geometry experiments and checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=42, help="master RNG seed")
        p.add_argument("--out-dir", default="out", help="output directory")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("bloch-coverage", help="project random qubit states")
    add_common(p)
    p.add_argument("--n-states", type=int, default=200)
    p.add_argument("--mixed-fraction", type=float, default=0.5)
    p.set_defaults(func=_cmd_bloch_coverage)

    p = sub.add_parser("saturation", help="spanned dimension across valences")
    add_common(p)
    p.add_argument("--valences", type=_int_list, default=[4, 6, 8, 10])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument(
        "--graph",
        default=None,
        help="graph spec like 'kind=star,k=6' (overrides --valences; "
        "measures at the highest-valence vertex)",
    )
    p.set_defaults(func=_cmd_saturation)

    p = sub.add_parser("invariant-dim", help="invariant-sector dimensions")
    add_common(p)
    p.add_argument("--k", type=_int_list, default=list(range(1, 11)))
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=_cmd_invariant_dim)

    p = sub.add_parser("sun-scan", help="higher-dimension exclusion counts")
    add_common(p)
    p.add_argument("--n", type=_int_list, default=[2, 3, 4])
    p.set_defaults(func=_cmd_sun_scan)

    p = sub.add_parser("covering-check", help="2:1 covering defects on samples")
    add_common(p)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=_cmd_covering_check)

    p = sub.add_parser("killing-form", help="Killing-form Gram matrix")
    add_common(p)
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=_cmd_killing_form)

    p = sub.add_parser("verify", help="run the full property suite")
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("version", help="print the package version")
    p.set_defaults(func=_cmd_version)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    raise SystemExit(main())
