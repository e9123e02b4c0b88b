"""Self-check suite behind ``spinscatter check``.

Each check returns a :class:`CheckResult`; the suite is deterministic (fixed
seed) and finishes in a few seconds.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entanglement import closed_form_entanglement, entanglement_entropy
from .partial_wave import (
    PartialWaveLabels,
    PhaseShiftTable,
    apply_central_smatrix,
    channel_phases,
    couple_orbital_spin,
)
from .spin_smatrix import SpinPhasePair, apply_spin_smatrix, smatrix_as_operator
from .spin_states import (
    CG4,
    in_state_from_angle,
    product_state,
    random_single_spin,
    two_spin_rotation,
)
from .su2 import Rotation, cgc_matrix, wigner_D_matrix, wigner_d_matrix


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34} worst={self.worst:.3e}  tol={self.tol:.0e}  ({self.seconds:.2f}s)"


def random_rotation(rng: np.random.Generator) -> Rotation:
    return Rotation(*rng.uniform(-2 * math.pi, 2 * math.pi, size=3))


def check_cg_orthogonality(rng=None) -> float:
    worst = 0.0
    for tj1 in range(0, 5):
        for tj2 in range(0, 5):
            c, _, _ = cgc_matrix(tj1 / 2, tj2 / 2)
            n = c.shape[0]
            worst = max(worst, np.max(np.abs(c @ c.T - np.eye(n))), np.max(np.abs(c.T @ c - np.eye(n))))
    return float(worst)


def check_wigner_unitarity(rng) -> float:
    worst = 0.0
    for _ in range(100):
        r = random_rotation(rng)
        for tj in range(0, 9):
            d = wigner_D_matrix(tj / 2, r)
            worst = max(worst, np.max(np.abs(d @ d.conj().T - np.eye(tj + 1))))
    return float(worst)


def check_small_d_composition(rng) -> float:
    worst = 0.0
    for _ in range(20):
        b1, b2 = rng.uniform(-math.pi, math.pi, size=2)
        for tj in range(0, 9):
            lhs = wigner_d_matrix(tj / 2, b1) @ wigner_d_matrix(tj / 2, b2)
            worst = max(worst, np.max(np.abs(lhs - wigner_d_matrix(tj / 2, b1 + b2))))
    return float(worst)


def check_smatrix_unitarity(rng) -> float:
    worst = 0.0
    for _ in range(100):
        s = smatrix_as_operator(rng.uniform(-math.pi, math.pi, size=2))
        worst = max(worst, np.max(np.abs(s @ s.conj().T - np.eye(4))))
    return float(worst)


def check_rotational_invariance(rng) -> float:
    worst = 0.0
    for _ in range(100):
        s = smatrix_as_operator(rng.uniform(-math.pi, math.pi, size=2))
        u = two_spin_rotation(random_rotation(rng))
        worst = max(worst, np.max(np.abs(u @ s @ u.conj().T - s)))
    return float(worst)


def check_basis_change(rng=None) -> float:
    return float(max(np.max(np.abs(CG4 @ CG4.T - np.eye(4))), np.max(np.abs(CG4.T @ CG4 - np.eye(4)))))


def check_closed_form_oracle(rng=None, n: int = 64) -> float:
    worst = 0.0
    grid = np.arange(n) * (math.pi / n)
    for theta in grid:
        state = in_state_from_angle(theta)
        for dd in grid:
            pipe = entanglement_entropy(apply_spin_smatrix(state, SpinPhasePair(dd, 0.0))).entropy_bits
            worst = max(worst, abs(pipe - closed_form_entanglement(theta, dd, 0.0)))
    return float(worst)


def check_reduction_theorem(rng, l_max: int = 4, n_q: int = 20, n_states: int = 50) -> float:
    q_grid = np.linspace(0.0, 5.0, 41)
    funcs = {}
    for l in range(l_max + 1):
        a0, a1 = rng.uniform(-2, 2, size=2)
        funcs[(l, 0)] = lambda q, a=a0, l=l: a * math.atan(q) / (1 + l)
        funcs[(l, 1)] = lambda q, a=a1, l=l: a * math.sin(q) / (1 + l)
    table = PhaseShiftTable.from_functions(funcs, q_grid)
    worst = 0.0
    for l in range(l_max + 1):
        for q in rng.uniform(0.0, 5.0, size=n_q):
            labels = PartialWaveLabels(q=float(q), l=l, m=int(rng.integers(-l, l + 1)))
            phases = channel_phases(table, l, q)
            for _ in range(n_states):
                a, b = random_single_spin(rng), random_single_spin(rng)
                got = apply_central_smatrix(a, b, labels, table).spin.amplitudes
                ref = apply_spin_smatrix(product_state(a, b), phases).amplitudes
                worst = max(worst, np.max(np.abs(got - ref)))
    return float(worst)


def check_coupling_orthogonality(rng=None) -> float:
    worst = 0.0
    for l in range(5):
        for s in (0, 0.5, 1):
            m = couple_orbital_spin(l, s).matrix
            worst = max(worst, np.max(np.abs(m @ m.T - np.eye(m.shape[0]))))
    return float(worst)


CHECKS: list[tuple[str, Callable, float]] = [
    ("cgc orthogonality/completeness", check_cg_orthogonality, 1e-12),
    ("coupled basis change orthogonal", check_basis_change, 1e-12),
    ("wigner D unitarity", check_wigner_unitarity, 1e-12),
    ("small-d composition", check_small_d_composition, 1e-12),
    ("S-matrix unitarity", check_smatrix_unitarity, 1e-12),
    ("rotational invariance", check_rotational_invariance, 1e-12),
    ("closed form vs pipeline", check_closed_form_oracle, 1e-10),
    ("reduction theorem", check_reduction_theorem, 1e-12),
    ("orbital-spin coupling orthogonal", check_coupling_orthogonality, 1e-12),
]


def run_checks(seed: int = 20061) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for name, fn, tol in CHECKS:
        t0 = time.perf_counter()
        worst = fn(rng)
        results.append(CheckResult(name, worst < tol, worst, tol, time.perf_counter() - t0))
    return results
