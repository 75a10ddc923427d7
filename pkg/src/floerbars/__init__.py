"""Exact persistence barcodes for action-filtered complexes over Z/2."""

from .barcodes import (
    Bar,
    GradedBarcode,
    MatchingCertificate,
    contract_path,
    same_component,
    shift_barcode,
    sigma_infinity,
    truncate,
    validate_barcode,
    verify_delta_matching,
)
from .bottleneck import (
    bottleneck_distance,
    bottleneck_matching,
    quotient_distance,
    quotient_distance_with_shift,
    shift_candidates,
)
from .complexes import (
    FilteredComplex,
    FilteredMap,
    Generator,
    chain_action,
    dual,
    gamma_diam,
    gamma_fund,
    persistence_barcode,
    poincare_dual,
    reduce_pairs,
    selectors,
    spectrum,
    sublevel,
    tensor,
    total_cohomology_rank,
    validate_complex,
    verify_filtered_map,
)
from .errors import (
    FloerbarsError,
    PreconditionError,
    RangeError,
    RankError,
    SchemaError,
    StructuralError,
    UndefinedValueError,
)
from .exact import INF
from .floer import (
    SimplicialFunction,
    StabilityReport,
    TwistComplexSpec,
    Verdict,
    circle_model,
    cycle_graph,
    distinguish_powers,
    lower_star_barcode,
    lower_star_complex,
    octahedron,
    sphere_self_complex,
    stability_check,
    twist_complex,
    twist_total,
    validate_simplicial,
    validate_twist_spec,
)
from .persistence import (
    DegreePart,
    InterleavingCertificate,
    PersistenceModule,
    PiecewiseMap,
    canonical_interleaving,
    decompose,
    interleaving_distance,
    interleaving_from_matching,
    interval_basis,
    realize,
    refine,
    shift_module,
    validate_module,
    verify_interleaving,
    zero_module,
)

__version__ = "0.1.0"
