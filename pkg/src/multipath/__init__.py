"""multipath: simulator and metrics for quantum-controlled d-path
delayed-choice interferometry.

Subpackage map:

* ``qcore``          complex linear algebra and quantum-state containers
* ``bsgen``          balanced d-mode splitters and the phase screen
* ``delayed_choice`` the source -> interferometer -> eraser pipeline
* ``mesh``           triangular MZI-mesh compilation and path blocking
* ``metrics``        duality, coherence, randomness and Bell quantities
* ``sorkin``         higher-order-interference (kappa) tests
* ``sweeps``         vectorized grid evaluations
* ``acceptance``     the self-check suite behind ``multipath verify``
"""

from .bsgen import (BSKind, BeamsplitterSpec, PhaseArray, balanced_splitter,
                    fourier, hadamard, linear_ramp, phase_operator, wrap_angle)
from .delayed_choice import (ControlSetting, CountsRecord, Herald,
                             InterferometerConfig, PortDistribution, PortMode,
                             classical_distribution, eraser_state,
                             heralded_intensities, joint_state,
                             quantum_distribution, sample_counts,
                             simulate_full, single_path_probabilities,
                             wave_particle_states)
from .mesh import (MZIMesh, MZINode, block_paths, compile_unitary, evaluate,
                   fix_global_phase, frobenius_distance_mod_phase,
                   mesh_from_json, mesh_to_json)
from .metrics import (Compensation, DualityReport, DualitySource, FringeScan,
                      chsh_optimal_angles, chsh_value, classical_fidelity,
                      coherence_from_interference, compensation_phase,
                      correlator, distinguishability, duality_report,
                      find_prime_maximum, fringe_curve, incoherent_term,
                      l1_coherence, measurement_state, min_entropy,
                      pearson_distance, projection_fringe, tsallis_consistency,
                      visibility_from_fringe)
from .qcore import (DensityMatrix, StateVector, Unitary, apply, bell_state,
                    partial_trace, state_fidelity, tensor, werner_state)
from .sorkin import (SorkinReport, SorkinRun, fourth_order_term, kappa,
                     kappa_batch, required_openings, run_openings,
                     second_order_term)
from .sweeps import (classical_quantum_pearson, duality_sweep,
                     transition_distributions, transition_surface)

__version__ = "0.1.0"
