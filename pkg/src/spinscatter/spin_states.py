"""Pure states of two spin-1/2 particles.

Amplitude orderings (fixed everywhere in the package):

* ``Basis.PRODUCT``: ``(|++>, |+->, |-+>, |-->)``
* ``Basis.COUPLED``: ``(|00>, |1 -1>, |1 0>, |1 1>)`` labelled ``|s chi>``

Global phases are kept as-is; relative channel phases carry physics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .su2 import Rotation, _cgc_twice, wigner_D_matrix

NORM_TOL = 1e-12

PRODUCT_LABELS = ("++", "+-", "-+", "--")
COUPLED_LABELS = ("00", "1-1", "10", "11")

# doubled (m1, m2) and (s, chi) for the orderings above
_PRODUCT_TWICE = ((1, 1), (1, -1), (-1, 1), (-1, -1))
_COUPLED_TWICE = ((0, 0), (2, -2), (2, 0), (2, 2))


class Basis(enum.Enum):
    PRODUCT = "product"
    COUPLED = "coupled"


def _as_amplitudes(values, size: int) -> np.ndarray:
    arr = np.array(values, dtype=complex).reshape(-1)
    if arr.shape != (size,):
        raise InputError(f"expected {size} amplitudes, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise InputError("amplitudes must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SingleSpinState:
    """Normalized spin-1/2 state with amplitudes ``(+, -)``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _as_amplitudes(self.amplitudes, 2)
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise InputError(f"single-spin state is not normalized (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_polarization(cls, polar: float, azimuth: float = 0.0) -> "SingleSpinState":
        """Spin pointing along the unit vector with the given polar/azimuthal angles."""
        return cls([math.cos(polar / 2), complex(math.cos(azimuth), math.sin(azimuth)) * math.sin(polar / 2)])

    @classmethod
    def normalized(cls, values) -> "SingleSpinState":
        arr = np.asarray(values, dtype=complex)
        n = np.linalg.norm(arr)
        if n == 0:
            raise InputError("cannot normalize the zero vector")
        return cls(arr / n)


@dataclass(frozen=True, eq=False)
class TwoSpinState:
    """Four complex amplitudes of a two-spin state, tagged with their basis."""

    basis: Basis
    amplitudes: np.ndarray = field(repr=True)

    def __post_init__(self):
        if not isinstance(self.basis, Basis):
            raise InputError(f"basis must be a Basis member, got {self.basis!r}")
        object.__setattr__(self, "amplitudes", _as_amplitudes(self.amplitudes, 4))

    @classmethod
    def product(cls, amplitudes) -> "TwoSpinState":
        return cls(Basis.PRODUCT, amplitudes)

    @classmethod
    def coupled(cls, amplitudes) -> "TwoSpinState":
        return cls(Basis.COUPLED, amplitudes)

    @property
    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_squared - 1.0) <= tol

    def amplitude(self, label: str) -> complex:
        labels = PRODUCT_LABELS if self.basis is Basis.PRODUCT else COUPLED_LABELS
        if label not in labels:
            raise InputError(f"unknown {self.basis.value} label {label!r}; expected one of {labels}")
        return complex(self.amplitudes[labels.index(label)])

    def as_matrix(self) -> np.ndarray:
        """Product-basis amplitudes as the 2x2 matrix ``c[chi1, chi2]``."""
        require_basis(self, Basis.PRODUCT)
        return self.amplitudes.reshape(2, 2)

    def allclose(self, other: "TwoSpinState", atol: float = 1e-12) -> bool:
        if self.basis is not other.basis:
            other = to_basis(other, self.basis)
        return bool(np.allclose(self.amplitudes, other.amplitudes, rtol=0, atol=atol))


def require_basis(state: TwoSpinState, basis: Basis) -> None:
    if not isinstance(state, TwoSpinState):
        raise InputError(f"expected a TwoSpinState, got {type(state).__name__}")
    if state.basis is not basis:
        raise InputError(f"state is in the {state.basis.value} basis; {basis.value} required")


def require_normalized(state: TwoSpinState, tol: float = NORM_TOL) -> None:
    if not state.is_normalized(tol):
        raise InputError(f"state is not normalized (norm^2 = {state.norm_squared!r})")


def _build_cg4() -> np.ndarray:
    mat = np.empty((4, 4))
    for r, (ts, tchi) in enumerate(_COUPLED_TWICE):
        for c, (tm1, tm2) in enumerate(_PRODUCT_TWICE):
            mat[r, c] = _cgc_twice(1, tm1, 1, tm2, ts, tchi)
    mat.setflags(write=False)
    return mat


#: Real orthogonal matrix with ``CG4[coupled, product] = <s chi | chi1 chi2>``.
CG4 = _build_cg4()


def to_coupled(state: TwoSpinState) -> TwoSpinState:
    """Re-express a product-basis state in the singlet/triplet basis."""
    require_basis(state, Basis.PRODUCT)
    return TwoSpinState(Basis.COUPLED, CG4 @ state.amplitudes)


def to_product(state: TwoSpinState) -> TwoSpinState:
    """Inverse of :func:`to_coupled`."""
    require_basis(state, Basis.COUPLED)
    return TwoSpinState(Basis.PRODUCT, CG4.T @ state.amplitudes)


def to_basis(state: TwoSpinState, basis: Basis) -> TwoSpinState:
    if state.basis is basis:
        return state
    return to_coupled(state) if basis is Basis.COUPLED else to_product(state)


def product_state(a: SingleSpinState, b: SingleSpinState) -> TwoSpinState:
    """``|a> (x) |b>`` with amplitudes ``c[chi1, chi2] = a[chi1] * b[chi2]``."""
    for name, s in (("a", a), ("b", b)):
        if not isinstance(s, SingleSpinState):
            raise InputError(f"{name} must be a SingleSpinState, got {type(s).__name__}")
    return TwoSpinState(Basis.PRODUCT, np.kron(a.amplitudes, b.amplitudes))


def in_state_from_angle(theta: float) -> TwoSpinState:
    """Canonical separable in-state ``cos(theta)|++> + sin(theta)|+->``.

    ``theta`` is the angle between the two polarization directions, with the
    first spin along +z.  Any separable pure state can be rotated to this form.
    """
    theta = float(theta)
    if not (0.0 <= theta < math.pi):
        raise InputError(f"theta must lie in [0, pi), got {theta!r}")
    return TwoSpinState(Basis.PRODUCT, [math.cos(theta), math.sin(theta), 0.0, 0.0])


def magic_basis() -> dict[str, TwoSpinState]:
    """The four maximally entangled kets EPR+, EPR-, Bell+, Bell- (product basis)."""
    h = 1.0 / math.sqrt(2.0)
    return {
        "EPR+": TwoSpinState.product([0, h, h, 0]),
        "EPR-": TwoSpinState.product([0, h, -h, 0]),
        "Bell+": TwoSpinState.product([h, 0, 0, h]),
        "Bell-": TwoSpinState.product([h, 0, 0, -h]),
    }


def phased_maximal_state(kind: str, sign: int, phase: float = 0.0) -> TwoSpinState:
    """Maximally entangled ``e^{i phase}/sqrt2 (|+-> +- i|-+>)`` (kind ``"E"``)
    or ``e^{i phase}/sqrt2 (|++> +- i|-->)`` (kind ``"B"``).

    ``phase`` is a free overall phase, unrelated to the in-state angle.
    """
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign!r}")
    pre = complex(math.cos(phase), math.sin(phase)) / math.sqrt(2.0)
    if kind == "E":
        amps = [0, pre, sign * 1j * pre, 0]
    elif kind == "B":
        amps = [pre, 0, 0, sign * 1j * pre]
    else:
        raise InputError(f"kind must be 'E' or 'B', got {kind!r}")
    return TwoSpinState.product(amps)


def two_spin_rotation(r: Rotation) -> np.ndarray:
    """``D^{1/2}(r) (x) D^{1/2}(r)`` acting on product-basis amplitudes."""
    d = wigner_D_matrix(0.5, r)
    return np.kron(d, d)



def coupled_rotation(r: Rotation) -> np.ndarray:
    """``D^0 (+) D^1`` in the coupled-basis ordering ``(00, 1-1, 10, 11)``."""
    d1 = wigner_D_matrix(1, r)[::-1, ::-1]  # reorder m = 1,0,-1 -> -1,0,1
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = 1.0
    out[1:, 1:] = d1
    return out


def rotate(state: TwoSpinState, r: Rotation) -> TwoSpinState:
    """Rotate both spins by the same rotation."""
    require_basis(state, Basis.PRODUCT)
    return TwoSpinState(Basis.PRODUCT, two_spin_rotation(r) @ state.amplitudes)


def random_product_state(rng: np.random.Generator) -> TwoSpinState:
    """Haar-random separable state (used by checks and tests)."""
    return product_state(random_single_spin(rng), random_single_spin(rng))


def random_single_spin(rng: np.random.Generator) -> SingleSpinState:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return SingleSpinState.normalized(v)


def random_two_spin_state(rng: np.random.Generator) -> TwoSpinState:
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return TwoSpinState.product(v / np.linalg.norm(v))
