"""Circuit synthesis for unitary transforms built from generalized Kronecker
products: wavelets, the DFT and Fourier transforms over finite groups."""

from .circuit import (
    Circuit, CircuitError, IndexPermutation, Multiplexed, PhasePair, PredicatePhase, RegisterLayout,
    SingleUnitary, ValueControlled, gate_count, simulate,
)
from .group_ft import (
    GroupFtResult, apply_phase_correction, synth_cyclic_ft, synth_en_ft, synth_group_ft,
    synth_metacyclic_ft, synth_product_ft, synth_quaternion_ft, verify,
)
from .groups import (
    ConstraintError, FiniteGroup, check_adapted, fourier_oracle, irreps, make_cyclic, make_en,
    make_metacyclic, make_product, make_quaternionic, parse_group_spec, standard_encoding,
)
from .serialize import deserialize, serialize
from .tensor import LEFT, RIGHT, equal_up_to_diag_phase, gkron, is_unitary, kron, shuffle_matrix
from .transforms import (
    synth_d4_scaling, synth_dft, synth_direct_sum, synth_gkron, synth_haar, synth_shuffle,
    synth_walsh, synth_wavelet,
)

__version__ = "0.1.0"
