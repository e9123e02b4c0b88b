"""Entanglement of pure two-qubit states.

All entropies are in bits.  For a 2x2 reduced density matrix the eigenvalues
come straight from the trace and determinant, which keeps the pure and
maximally mixed end points exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .spin_states import Basis, TwoSpinState, require_basis, require_normalized

TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    """Single-particle density matrix left after tracing out the partner."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise InputError(f"reduced density must be 2x2, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InputError("reduced density has non-finite entries")
        if np.max(np.abs(m - m.conj().T)) > TOL:
            raise InputError("reduced density is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TOL:
            raise InputError(f"reduced density trace is {np.trace(m).real!r}, expected 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        lo, _ = self.eigenvalues()
        if lo < -TOL:
            raise InputError(f"reduced density is not positive semidefinite (eigenvalue {lo!r})")

    def eigenvalues(self) -> tuple[float, float]:
        """``(smaller, larger)`` eigenvalues, unclamped."""
        m = self.matrix
        tr = float(m[0, 0].real + m[1, 1].real)
        det = float((m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real)
        disc = math.sqrt(max(tr * tr - 4.0 * det, 0.0))
        hi = 0.5 * (tr + disc)
        # det / hi avoids cancellation for nearly pure states
        lo = det / hi if hi > 0 else 0.5 * (tr - disc)
        return min(lo, hi), max(lo, hi)


@dataclass(frozen=True)
class EntanglementReport:
    """Schmidt data and entropy of entanglement of a pure two-spin state.

    ``schmidt`` is ``(lambda_plus, lambda_minus)``; ``eigenvalues`` are the
    reduced-density eigenvalues ``((1+x)/2, (1-x)/2)`` and ``x`` their difference.
    """

    schmidt: tuple[float, float]
    eigenvalues: tuple[float, float]
    entropy_bits: float

    @property
    def x(self) -> float:
        return self.eigenvalues[0] - self.eigenvalues[1]

    def as_dict(self) -> dict:
        return {
            "schmidt": list(self.schmidt),
            "eigenvalues": list(self.eigenvalues),
            "x": self.x,
            "entropy_bits": self.entropy_bits,
        }


def reduced_density(state: TwoSpinState, keep: int = 1) -> ReducedDensity:
    """Partial trace of ``|psi><psi|`` over the particle not kept."""
    require_basis(state, Basis.PRODUCT)
    require_normalized(state)
    c = state.as_matrix()
    if keep == 1:
        rho = c @ c.conj().T
    elif keep == 2:
        rho = c.T @ c.conj()
    else:
        raise InputError(f"keep must be 1 or 2, got {keep!r}")
    # exact Hermitian symmetrization removes roundoff in the off-diagonals
    rho = 0.5 * (rho + rho.conj().T)
    return ReducedDensity(rho)


def _clamp(p: float) -> float:
    if -TOL <= p < 0.0:
        return 0.0
    if 1.0 < p <= 1.0 + TOL:
        return 1.0
    return p


def binary_entropy(p: float) -> float:
    """Shannon entropy in bits of the distribution ``(p, 1-p)`` with 0 log 0 = 0."""
    total = 0.0
    for e in (p, 1.0 - p):
        if e > 0.0:
            total -= e * math.log2(e)
    return total


def von_neumann_entropy(rho: ReducedDensity) -> float:
    """``-tr(rho log2 rho)``."""
    if not isinstance(rho, ReducedDensity):
        rho = ReducedDensity(rho)
    total = 0.0
    for e in rho.eigenvalues():
        e = _clamp(e)
        if e < 0.0:
            raise InputError(f"negative eigenvalue {e!r} in density matrix")
        if e > 0.0:
            total -= e * math.log2(e)
    return total


def entanglement_entropy(state: TwoSpinState) -> EntanglementReport:
    """Entropy of entanglement ``S(rho_1)`` together with the Schmidt data.

    Coupled-basis states are converted first.  ``S(rho_1)`` and ``S(rho_2)``
    are both evaluated and must agree to 1e-10.
    """
    from .spin_states import to_product

    if state.basis is Basis.COUPLED:
        state = to_product(state)
    rho1 = reduced_density(state, 1)
    rho2 = reduced_density(state, 2)
    s1 = von_neumann_entropy(rho1)
    s2 = von_neumann_entropy(rho2)
    if abs(s1 - s2) > 1e-10:
        raise ArithmeticError(f"marginal entropies disagree: {s1!r} vs {s2!r}")
    lo, hi = (_clamp(e) for e in rho1.eigenvalues())
    lo, hi = max(lo, 0.0), min(hi, 1.0)
    return EntanglementReport(
        schmidt=(math.sqrt(hi), math.sqrt(lo)),
        eigenvalues=(hi, lo),
        entropy_bits=min(max(s1, 0.0), 1.0),
    )


def closed_form_x(theta: float, delta0: float, delta1: float) -> float:
    """``x = sqrt(1 - sin^4(theta) sin^2(2 (delta0 - delta1)))``."""
    return math.sqrt(1.0 - _closed_form_eps(theta, delta0, delta1))


def _closed_form_eps(theta, delta0, delta1) -> float:
    st = math.sin(theta)
    sd = math.sin(2.0 * (delta0 - delta1))
    return min(st ** 4 * sd * sd, 1.0)


def closed_form_entanglement(theta: float, delta0: float, delta1: float) -> float:
    """Entanglement (bits) generated from the separable in-state at angle ``theta``
    by a rotationally invariant S-matrix with channel phases ``delta0, delta1``:

        E = 1 - 1/2 log2((1+x)^(1+x) (1-x)^(1-x))
    """
    for v in (theta, delta0, delta1):
        if not math.isfinite(v):
            raise InputError(f"non-finite argument {v!r}")
    eps = _closed_form_eps(theta, delta0, delta1)
    x = math.sqrt(1.0 - eps)
    one_minus_x = eps / (1.0 + x)  # 1 - x without cancellation
    one_plus_x = 1.0 + x
    acc = one_plus_x * math.log2(one_plus_x)
    if one_minus_x > 0.0:
        acc += one_minus_x * math.log2(one_minus_x)
    return min(max(1.0 - 0.5 * acc, 0.0), 1.0)


def schmidt_coefficients(theta: float, delta0: float, delta1: float) -> tuple[float, float]:
    """Closed-form ``lambda_pm = sqrt((1 +- x) / 2)``."""
    eps = _closed_form_eps(theta, delta0, delta1)
    x = math.sqrt(1.0 - eps)
    return math.sqrt((1.0 + x) / 2.0), math.sqrt(eps / (1.0 + x) / 2.0)
