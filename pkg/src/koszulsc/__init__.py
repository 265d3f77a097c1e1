"""Exact invariants of finite simplicial complexes: weight modules over the
polynomial ring, multigraded Hilbert series, Betti tables, and resonance
decompositions, all over the rationals."""

from .complexes import (
    SimplicialComplex,
    SquareFreeDegree,
    complete_graph,
    cycle_complex,
    flag_completion,
    from_facets,
    full_simplex,
    link,
    missing_faces,
    parse_complex,
    path_complex,
    restriction,
    simplex_boundary,
    skeleton_complete_degree,
    tetrahedron_minus_face,
    two_disjoint_edges,
)
from .errors import ComplexError, ConsistencyError, GuardError, OracleError
from .exactlin import Rational, RationalMatrix, homology, kernel_basis, rank
from .homology import ReducedHomologyProfile, all_subset_homology, reduced_homology
from .koszul import (
    BettiTable,
    ChenRanks,
    HilbertSeriesMulti,
    SquareFreeModule,
    StrandComplex,
    betti_table,
    build_strand,
    chen_ranks,
    hilbert_series_combinatorial,
    hilbert_series_from_module,
    koszul_module,
    koszul_strand_piece,
    pair_module_hilbert,
    presentation_matrix,
    regularity_bounds_check,
    specialize_single,
    tor_stanley_reisner,
    verify_duality,
)
from .resonance import (
    CoordinateSubspaceArrangement,
    SquareFreeMonomialIdeal,
    annihilator,
    cohen_macaulay_check,
    delta_a_cohomology,
    fixed_degree_resonance_check,
    hochster_check,
    jump_resonance,
    propagation_check,
    support_resonance,
    union_consistency_check,
)

__version__ = "0.1.0"
