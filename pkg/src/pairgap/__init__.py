"""Exact finite-size pairing spectra via block diagonalization.

The public surface: model construction (:mod:`pairgap.model`), full-space
Hamiltonian tools and a dense eigensolver (:mod:`pairgap.fullspace`), the
single-excitation block and its secular-equation solver
(:mod:`pairgap.subspace`), gap extraction by both routes
(:mod:`pairgap.gap`), and parameter sweeps (:mod:`pairgap.sweeps`).
"""

from .fullspace import (
    BlockReport,
    LemmaReport,
    apply_full_hamiltonian,
    block_report,
    build_full_hamiltonian,
    dense_eigenvalues,
    extract_block,
    h_diagonal,
    occupied_count,
    occupied_levels,
    verify_lemma,
)
from .gap import (
    CouplingEstimate,
    GapResult,
    estimate_coupling,
    excitation_energy,
    gap_from_levels,
    gap_from_spectrum,
    solve_gap_equation,
)
from .model import (
    ModelParams,
    PairingModel,
    Spectrum,
    epsilon,
    make_model,
    params_from_config,
    rescale,
)
from .subspace import (
    DegenerateLevels,
    Sub1Matrix,
    build_sub1,
    sub1_eigenvalues,
    sub1_eigenvalues_secular,
)
from .sweeps import (
    CriticalB,
    SweepRecord,
    SweepSpec,
    find_critical_b,
    preset,
    records_to_csv,
    records_to_json,
    relative_error,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BlockReport",
    "CouplingEstimate",
    "CriticalB",
    "DegenerateLevels",
    "GapResult",
    "LemmaReport",
    "ModelParams",
    "PairingModel",
    "Spectrum",
    "Sub1Matrix",
    "SweepRecord",
    "SweepSpec",
    "apply_full_hamiltonian",
    "block_report",
    "build_full_hamiltonian",
    "build_sub1",
    "dense_eigenvalues",
    "epsilon",
    "estimate_coupling",
    "excitation_energy",
    "extract_block",
    "find_critical_b",
    "gap_from_levels",
    "gap_from_spectrum",
    "h_diagonal",
    "make_model",
    "occupied_count",
    "occupied_levels",
    "params_from_config",
    "preset",
    "records_to_csv",
    "records_to_json",
    "relative_error",
    "rescale",
    "run_sweep",
    "solve_gap_equation",
    "sub1_eigenvalues",
    "sub1_eigenvalues_secular",
    "verify_lemma",
]
