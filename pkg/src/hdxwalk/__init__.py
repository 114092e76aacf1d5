"""High-order random walks on pure simplicial complexes.

Builds complexes with exact degree bookkeeping, certifies skeleton and
colorful expansion constants by exhaustive search (rationals throughout),
runs and verifies the degree-weighted walk on every dimension, and checks
the whole chain of mixing inequalities on concrete instances.
"""

__version__ = "0.1.0"

from .cascade import (
    FatCascade,
    FullLevels,
    container,
    expanding_faces,
    fat_cascade,
    full_levels,
)
from .certify import (
    Caps,
    ExpansionCertificate,
    alpha_threshold,
    bipartiteness_ratio,
    build_certificate,
    colorful_epsilon,
    conductance,
    mu_vs_spectrum,
    skeleton_alpha,
    stronger_mu,
    theorem_epsilon,
    theorem_mu,
    theorem_mu_from_alpha,
    verify_bipartiteness_lemma,
    verify_conductance_lemma,
    verify_proof_trace,
)
from .complexes import (
    Cochain,
    SimplicialComplex,
    build_complex,
    chain_joint_prob,
    link_norm_at,
    localize,
    norm,
    read_cplx,
    validate_complex,
    write_cplx,
)
from .generate import (
    check_partite_regular,
    complete_complex,
    complete_multipartite_complex,
    ramanujan_q0,
    random_lm_complex,
    skeleton_mixing_check,
)
from .spectral import (
    Spectrum,
    SymMatrix,
    cheeger_check,
    normalized_adjacency,
    spectrum,
    trevisan_check,
)
from .walk import (
    Distribution,
    IGraph,
    build_igraph,
    lazy_igraph,
    one_step_counts,
    simulate_walk,
    stationary,
    transition_row,
    transition_step,
    verify_mixing_bound,
)
