"""Compile Boolean functions and permutations to quantum circuits and run hidden-shift instances."""

from .boolfn import (Cube, Esop, NotBent, Permutation, Spectrum, TruthTable, dual, hwb, invert,
                     is_bent, mm_construct, mm_dual, parse_expression, pprm, shift, walsh_hadamard)
from .circuit import Circuit, Gate, GateKind, GateStats, compute_uncompute, dagger, simplify, stats
from .hiddenshift import HiddenShiftInstance, build_generic, build_mm, recover_shift
from .interchange import export_qasm, parse_circuit, print_circuit
from .mapping import AncillaRequired, map_to_clifford_t, toffoli_network
from .sim import (Histogram, NoiseConfig, StateVector, build_unitary, extract_permutation,
                  extract_phase_function, measure_all, run, run_noisy, sample_shots, unitary_equiv)
from .synth import dbs, esop_synth, permutation_oracle, phase_oracle, tbs

__version__ = "0.1.0"
