"""Numerical verification of Bloch-projection geometry.

Constructive pieces: generator bases and Haar sampling, the Bloch projection
and its density round-trip, adjoint rotations realizing the SU(2)->SO(3)
covering, the Killing form, graph assignments with a shared gauge frame,
invariant-sector dimensions, higher-dimension exclusion counts, and seeded
experiment drivers behind a CLI.
"""

__version__ = "0.1.0"

from .errors import (
    BlochDimError,
    DimensionMismatchError,
    InvalidAlgebraElementError,
    InvalidDimensionError,
    NotAStateError,
    NotSpecialUnitaryError,
    ResourceLimitError,
)
from .linalg import (
    DensityMatrix,
    GeneratorBasis,
    PureState,
    gell_mann_basis,
    haar_pure_state,
    haar_special_unitary,
    is_hermitian,
    is_traceless,
    is_unitary,
    kernel_dimension,
    killing_form,
    numerical_rank,
    pauli_basis,
)
from .projection import BlochVector, bloch_norm, bloch_project, purity, reconstruct_density
from .equivariance import (
    Rotation,
    adjoint_rotation,
    covering_check,
    equivariance_residual,
    homomorphism_residual,
)
from .graphs import (
    Graph,
    GraphAssignment,
    VertexConfiguration,
    ambient_dimension,
    apply_global_gauge,
    assign_random_states,
    complete_graph,
    counterfactual_dimension,
    cycle_graph,
    parse_graph_spec,
    path_graph,
    star_graph,
    vertex_configuration,
)
from .invariant_sector import (
    K_MAX,
    InvariantSectorReport,
    catalan,
    invariant_dimension_formula,
    invariant_dimension_numeric,
    total_spin_operators,
)
from .exclusion import (
    ExclusionReport,
    exclusion_report,
    image_tangent_rank,
    min_equivariant_dimension,
    pure_norm_constant,
)
from .experiments import (
    ExperimentRecord,
    run_bloch_coverage,
    run_property_suite,
    run_saturation,
)
