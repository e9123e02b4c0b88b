"""Spin entanglement generated dynamically in elastic two-particle scattering.

Two spin-1/2 particles enter in a separable spin state, a rotationally
invariant (or, per partial wave, central-force) S-matrix multiplies the
singlet and triplet channels by different phases, and the out-state may be
entangled.  The package provides the SU(2) machinery, the two-spin state
algebra, entanglement measures, the S-matrix, the partial-wave layer and a CLI.
"""

__version__ = "0.1.0"

from .entanglement import (
    EntanglementReport,
    ReducedDensity,
    closed_form_entanglement,
    closed_form_x,
    entanglement_entropy,
    reduced_density,
    schmidt_coefficients,
    von_neumann_entropy,
)
from .errors import ChannelError, InputError, RangeError, SpinScatterError, TableFormatError
from .partial_wave import (
    ChannelBlockS,
    GalileanInvariants,
    PartialWaveLabels,
    PhaseShiftTable,
    apply_central_smatrix,
    couple_orbital_spin,
    fermion_channel_allowed,
    internal_energy,
    load_phase_table,
    lookup_phase,
    validate_block_s,
)
from .spin_smatrix import SpinPhasePair, apply_spin_smatrix, maximal_out_state, smatrix_as_operator
from .spin_states import (
    Basis,
    SingleSpinState,
    TwoSpinState,
    in_state_from_angle,
    magic_basis,
    product_state,
    rotate,
    to_coupled,
    to_product,
)
from .su2 import AngularMomentum, Rotation, cgc, wigner_D, wigner_d_small

__all__ = [
    "__version__",
    "EntanglementReport",
    "ReducedDensity",
    "closed_form_entanglement",
    "closed_form_x",
    "entanglement_entropy",
    "reduced_density",
    "schmidt_coefficients",
    "von_neumann_entropy",
    "ChannelError",
    "InputError",
    "RangeError",
    "SpinScatterError",
    "TableFormatError",
    "ChannelBlockS",
    "GalileanInvariants",
    "PartialWaveLabels",
    "PhaseShiftTable",
    "apply_central_smatrix",
    "couple_orbital_spin",
    "fermion_channel_allowed",
    "internal_energy",
    "load_phase_table",
    "lookup_phase",
    "validate_block_s",
    "SpinPhasePair",
    "apply_spin_smatrix",
    "maximal_out_state",
    "smatrix_as_operator",
    "Basis",
    "SingleSpinState",
    "TwoSpinState",
    "in_state_from_angle",
    "magic_basis",
    "product_state",
    "rotate",
    "to_coupled",
    "to_product",
    "AngularMomentum",
    "Rotation",
    "cgc",
    "wigner_D",
    "wigner_d_small",
]
