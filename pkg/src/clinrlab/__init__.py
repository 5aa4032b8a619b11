"""Stabilizer-circuit lab for teleported-Clifford noise reduction.

Layers, bottom to top: Pauli/tableau algebra, circuit IR with native-gate
lowering and stim-format exchange, a counter-seeded Pauli-frame batch
simulator plus a dense statevector oracle, layered scheduling with a
trapped-ion chain noise model, graph-state recompilation, the encoded
Trotter block, the teleported-Clifford gadget with stabilizer verification,
and the experiment harness (metrics, sweeps, dataset export, CLI).
"""

from .circuit import Circuit, Gate
from .pauli import (CliffordMap, PauliString, canonical_generators,
                    decompose_into_group, same_stabilizer_group)
from .tableau import Tableau
from .framesim import ShotBatch, run_batch
from .statevec import OracleRun, run_oracle, statevector_of
from .trotter import PauliRotation, pauli_exp_ladder
from .lower import lower_to_native
from .stim_io import export_stim, parse_stim
from .schedule import LayeredCircuit, schedule_layers
from .noise import (NoiseModel, PairErrorTable, QubitMapping, attach_noise,
                    optimize_mapping, synth_pair_table)
from .graphstate import (Graph, GraphCompilation, extract_graph,
                         search_compilations, verify_compilation)
from .trotter import physical_trotter_circuit
from .gse import (GSE_BLOCK, DecodedShot, decode, encoded_block_circuit,
                  ideal_distribution, prep_circuit)
from .clinr import (CHECK_PAIRS, ClinrCircuit, ClinrResult, ResourceSpec,
                    VerificationPlan, bell_clifford_resource, clinr_circuit,
                    feedforward_frame, interpret_batch, postselect)
from .experiment import (DATASET_SCHEMA, HARDWARE_REFERENCES,
                         ExperimentConfig, ExperimentRecord, DatasetRow,
                         bias_significance, block_resource, dataset_csv,
                         default_graph_prep, enumerate_stabilizers,
                         export_dataset, measure_p_fail, pair_sweep_configs,
                         random_plan_configs, run_experiment,
                         schedule_comparison_configs, sweep, sweep_csv,
                         tempo1_model, tvd, tvd_decomposition, tvd_stderr)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
