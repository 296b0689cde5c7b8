"""Closed-form quantum communication cost of classical stationary processes.

Build or load a unifilar hidden Markov machine, derive its quantum
pairwise-merger machine, and read quantum compression costs off the spectrum
of small fixed-size matrices at any codeword length, including infinity.
"""

from .asymptotics import (AsymptoticModel, asymptotic_model, decay_ratio_check,
                          delta_entropy_first_order, delta_gram,
                          delta_lambda_first_order)
from .costs import (CqCurve, GramMatrices, OverlapMatrix, cq, cq_curve,
                    density_matrix, gram_matrices, overlaps_asymptotic,
                    overlaps_iterative, overlaps_spectral, von_neumann_entropy)
from .errors import (CapacityError, DefectiveSpectrumError,
                     DegenerateSpectrumError, QcostError, ReducibleError,
                     SaturatedError, StructureError)
from .machines import (EpsilonMachine, ValidationReport, is_counifilar,
                       statistical_complexity, stationary_distribution,
                       validate, word_probability)
from .oracle import (SignalEnsemble, cq_naive, enumerate_l_merges,
                     overlap_matrix, signal_states)
from .qpmm import SINK, Qpmm, build_qpmm, cryptic_order, depth, to_dot
from .serialize import (load_machine, machine_from_dict, machine_to_dict,
                        save_machine)
from .spectral import (DominantStructure, SpectralData, decompose,
                       dominant_structure)
from .zoo import ZooDescriptor, biased_coins, golden_mean, lollipop

__version__ = "0.1.0"

__all__ = [
    "AsymptoticModel", "CapacityError", "CqCurve", "DefectiveSpectrumError",
    "DegenerateSpectrumError", "DominantStructure", "EpsilonMachine",
    "GramMatrices", "OverlapMatrix", "QcostError", "Qpmm", "ReducibleError",
    "SINK", "SaturatedError", "SignalEnsemble", "SpectralData",
    "StructureError", "ValidationReport", "ZooDescriptor", "asymptotic_model",
    "biased_coins", "build_qpmm", "cq", "cq_curve", "cq_naive",
    "cryptic_order", "decay_ratio_check", "decompose", "density_matrix",
    "delta_entropy_first_order", "delta_gram", "delta_lambda_first_order",
    "depth", "dominant_structure", "enumerate_l_merges", "golden_mean",
    "gram_matrices", "is_counifilar", "load_machine", "lollipop",
    "machine_from_dict", "machine_to_dict", "overlap_matrix",
    "overlaps_asymptotic", "overlaps_iterative", "overlaps_spectral",
    "save_machine", "signal_states", "statistical_complexity",
    "stationary_distribution", "to_dot", "validate", "von_neumann_entropy",
    "word_probability",
]
