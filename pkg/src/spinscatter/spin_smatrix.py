"""Rotationally invariant S-matrix for two spin-1/2 particles.

Invariance under simultaneous rotation of both spins forces the S-matrix to
be diagonal in the singlet/triplet basis, ``<s' chi'|S|s chi> =
delta_{s's} delta_{chi'chi} exp(2 i delta_s)``.  It is stored as the pair of
half-phases and applied channel-wise; the 4x4 product-basis matrix is only
materialized on request.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .spin_states import (
    CG4,
    Basis,
    TwoSpinState,
    require_normalized,
    to_basis,
)


@dataclass(frozen=True)
class SpinPhasePair:
    """Singlet and triplet half-phases (radians).

    Only ``exp(2 i delta)`` enters, so phases differing by pi are equivalent;
    they are stored as given.
    """

    delta0: float
    delta1: float

    def __post_init__(self):
        for name in ("delta0", "delta1"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InputError(f"{name} must be finite, got {v!r}")
        object.__setattr__(self, "delta0", float(self.delta0))
        object.__setattr__(self, "delta1", float(self.delta1))

    @property
    def difference(self) -> float:
        """``delta0 - delta1``."""
        return self.delta0 - self.delta1

    def channel_factors(self) -> np.ndarray:
        """``exp(2 i delta_s)`` in the coupled ordering (00, 1-1, 10, 11)."""
        e0 = np.exp(2j * self.delta0)
        e1 = np.exp(2j * self.delta1)
        return np.array([e0, e1, e1, e1])

    def shifted(self, offset: float) -> "SpinPhasePair":
        return SpinPhasePair(self.delta0 + offset, self.delta1 + offset)


def _as_phases(phases) -> SpinPhasePair:
    if isinstance(phases, SpinPhasePair):
        return phases
    try:
        d0, d1 = phases
    except (TypeError, ValueError) as exc:
        raise InputError(f"expected SpinPhasePair or (delta0, delta1), got {phases!r}") from exc
    return SpinPhasePair(d0, d1)


def apply_spin_smatrix(state: TwoSpinState, phases) -> TwoSpinState:
    """Scatter ``state``; the result comes back in the caller's basis."""
    phases = _as_phases(phases)
    require_normalized(state)
    coupled = to_basis(state, Basis.COUPLED)
    out = TwoSpinState(Basis.COUPLED, phases.channel_factors() * coupled.amplitudes)
    return to_basis(out, state.basis)


def smatrix_as_operator(phases) -> np.ndarray:
    """4x4 product-basis matrix ``CG4^T diag(exp 2i delta_s) CG4``."""
    phases = _as_phases(phases)
    return CG4.T @ np.diag(phases.channel_factors()) @ CG4


def maximal_out_state(delta1: float = 0.0) -> TwoSpinState:
    """Out-state for ``theta = pi/2`` and ``2 (delta0 - delta1) = +pi/2``.

    Equals ``exp(2 i delta1)/sqrt2 (|10> + i|00>)``, an equal-weight
    triplet/singlet superposition with one full bit of entanglement.
    Returned in the coupled basis.
    """
    from .spin_states import in_state_from_angle

    phases = SpinPhasePair(delta1 + math.pi / 4.0, delta1)
    return to_basis(apply_spin_smatrix(in_state_from_angle(math.pi / 2.0), phases), Basis.COUPLED)
