"""Exact arithmetic for spectra of plane curve singularities.

The package computes singularity spectra and spectral pairs from
decorated resolution graphs, decomposes any such spectrum into an integer
combination of basic types through a cut-and-paste calculus, realizes the
merging ring on those types, and verifies a family of spectral
inequalities (pairing bounds, genus bounds, lattice-point bounds for
Newton-non-degenerate germs) in exact rational arithmetic.
"""

from .basictypes import (
    BasicType,
    ChainType,
    TypeCombo,
    alpha_max,
    basic_spectrum,
    basic_type,
    chain_delta_mu,
    chain_type,
    check_generator_relation,
    combo_spectrum,
    ordinary_spectrum,
    ring_product,
    tensor_power,
)
from .bounds import (
    GiventalReport,
    bracket,
    durfee_curve_check,
    givental_check,
    givental_condition,
    givental_r,
    merge_sequences,
    stabilization_count,
)
from .errors import (
    AmbiguousMultiplicityError,
    ComboError,
    CurveSpecError,
    DecompositionError,
    DiagramError,
    ExpressionError,
    GraphStructureError,
    GraphValidationError,
    NonIntegralSpectrumError,
)
from .formulas import (
    DCoefficient,
    SppWitness,
    d_coefficients,
    find_spectral_pair_counterexample,
    forget_weights,
    spectral_pairs_from_graph,
    spectrum_from_graph,
)
from .newton import (
    NewtonDiagram,
    diagram,
    diagram_from_dict,
    diagram_to_dict,
    durfee_newton_check,
    gauge,
    load_diagram,
    newton_mu,
    newton_window_count,
)
from .recombine import (
    Detachment,
    RelationResidual,
    SwapInstance,
    basis_kernel,
    basis_rank,
    candidate_types,
    decompose_chain,
    decompose_graph,
    decompose_graph_to_basic,
    recover_multiplicity,
    spectrum_to_basic,
    swap_at_divisor,
    swap_graphs,
    tangential_identity_check,
)
from .resolution import (
    FamilyData,
    GcdData,
    ResolutionGraph,
    Vertex,
    build_basic,
    build_chain,
    build_ordinary,
    classify_family,
    gcd_data,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    merge_generic,
    parent_map,
    validate,
)
from .spectrum import (
    Rational,
    SpectralPairCombo,
    SpectrumCombo,
    as_rational,
    combine,
    format_rational,
    is_symmetric,
    total_mass,
    window_count,
)

__version__ = "0.1.0"
