"""Partial-wave layer for two equal-mass spin-1/2 particles.

States are handled fiber by fiber: a fiber is a fixed set of labels
``(p, q, l, m)`` (total momentum, relative momentum magnitude, orbital
angular momentum and its projection).  A central-force S-matrix never mixes
fibers, so within one fiber only the 4-dimensional spin part evolves.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import ChannelError, InputError, RangeError, TableFormatError
from .spin_states import Basis, SingleSpinState, TwoSpinState
from .su2 import AngularMomentum, _cgc_twice, check_pair, format_half, twice

UNITARITY_TOL = 1e-10
TABLE_HEADER = ("l", "s", "q", "delta")


# --- Galilean labels -------------------------------------------------------

@dataclass(frozen=True)
class GalileanInvariants:
    """Invariant labels ``{M, W, s}`` of an irreducible Galilean representation."""

    mass: float
    internal_energy: float
    spin: AngularMomentum

    def __post_init__(self):
        if not self.mass > 0:
            raise InputError(f"mass must be positive, got {self.mass!r}")
        object.__setattr__(self, "spin", AngularMomentum.of(self.spin))


def internal_energy(q: float, m0: float, w1: float = 0.0, w2: float = 0.0) -> float:
    """``W(q) = W1 + W2 + q^2 / (2 m0)`` for two particles of mass ``m0``."""
    if not m0 > 0:
        raise InputError(f"single-particle mass must be positive, got {m0!r}")
    if not q >= 0:
        raise InputError(f"relative momentum must be non-negative, got {q!r}")
    return w1 + w2 + q * q / (2.0 * m0)


def pair_invariants(q: float, s, m1: float, m2: float | None = None,
                    w1: float = 0.0, w2: float = 0.0) -> GalileanInvariants:
    """Invariants of the two-particle channel with total spin ``s`` at relative momentum ``q``.

    Only equal masses are supported.
    """
    if m2 is not None and m1 != m2:
        raise InputError(f"unequal masses are not supported (m1={m1!r}, m2={m2!r})")
    return GalileanInvariants(2.0 * m1, internal_energy(q, m1, w1, w2), AngularMomentum.of(s))


@dataclass(frozen=True)
class PartialWaveLabels:
    """Fiber labels ``(p, q, l, m)`` of ``|p chi1 chi2 (q l m)>``."""

    p: tuple[float, float, float] = (0.0, 0.0, 0.0)
    q: float = 0.0
    l: int = 0
    m: int = 0

    def __post_init__(self):
        p = tuple(float(c) for c in self.p)
        if len(p) != 3 or not all(math.isfinite(c) for c in p):
            raise InputError(f"p must be a finite 3-vector, got {self.p!r}")
        object.__setattr__(self, "p", p)
        if not (math.isfinite(self.q) and self.q >= 0):
            raise InputError(f"q must be finite and non-negative, got {self.q!r}")
        tl, tm = twice(self.l), twice(self.m)
        if tl % 2:
            raise InputError(f"orbital l must be an integer, got {self.l!r}")
        check_pair(tl, tm)
        object.__setattr__(self, "l", tl // 2)
        object.__setattr__(self, "m", tm // 2)


def degeneracy_labels(l_max: int) -> Iterable[tuple[int, int]]:
    """Enumerate the ``(l, m)`` labels distinguishing repeated copies of one
    two-particle representation, for ``l = 0..l_max``."""
    for l in range(l_max + 1):
        for m in range(l, -l - 1, -1):
            yield l, m


# --- orbital-spin coupling -------------------------------------------------

@dataclass(frozen=True, eq=False)
class CouplingTransform:
    """Orthogonal matrix taking ``(m, chi)`` amplitudes to ``(j, j3)`` amplitudes.

    Labels are doubled integers.  Rows: ``(2j, 2j3)`` with j ascending and j3
    descending.  Columns: ``(2m, 2chi)`` with both descending, m major.
    """

    twice_l: int
    twice_s: int
    matrix: np.ndarray
    rows: tuple[tuple[int, int], ...]
    cols: tuple[tuple[int, int], ...]

    def row_index(self, j, j3) -> int:
        return self.rows.index((twice(j), twice(j3)))

    def col_index(self, m, chi) -> int:
        return self.cols.index((twice(m), twice(chi)))


def couple_orbital_spin(l, s) -> CouplingTransform:
    """Build ``<j j3 | l m; s chi>`` as a real orthogonal matrix."""
    tl, ts = twice(l), twice(s)
    if tl % 2:
        raise InputError(f"orbital l must be an integer, got {format_half(tl)}")
    check_pair(tl, tl)
    check_pair(ts, ts)
    cols = tuple((tm, tc) for tm in range(tl, -tl - 1, -2) for tc in range(ts, -ts - 1, -2))
    rows = tuple((tj, tj3) for tj in range(abs(tl - ts), tl + ts + 1, 2)
                 for tj3 in range(tj, -tj - 1, -2))
    mat = np.zeros((len(rows), len(cols)))
    for r, (tj, tj3) in enumerate(rows):
        for c, (tm, tc) in enumerate(cols):
            if tm + tc == tj3:
                mat[r, c] = _cgc_twice(tl, tm, ts, tc, tj, tj3)
    mat.setflags(write=False)
    return CouplingTransform(tl, ts, mat, rows, cols)


# --- phase-shift tables ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class PhaseShiftTable:
    """Sampled phase shifts ``delta_{ls}(q)`` per channel, linearly interpolated.

    ``channels`` maps ``(l, s)`` to ``(q_grid, delta)`` arrays.  Lookups
    outside a channel's sampled range raise :class:`RangeError`.
    """

    channels: Mapping[tuple[int, int], tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)

    def __post_init__(self):
        frozen = {}
        for key, (qs, ds) in self.channels.items():
            l, s = _channel_key(*key)
            qs = np.array(qs, dtype=float)
            ds = np.array(ds, dtype=float)
            if qs.ndim != 1 or qs.shape != ds.shape or qs.size == 0:
                raise InputError(f"channel {(l, s)}: q and delta must be equal-length 1-D arrays")
            if not (np.all(np.isfinite(qs)) and np.all(np.isfinite(ds))):
                raise InputError(f"channel {(l, s)}: non-finite sample")
            if np.any(qs < 0):
                raise InputError(f"channel {(l, s)}: negative relative momentum")
            if np.any(np.diff(qs) <= 0):
                raise InputError(f"channel {(l, s)}: q grid must be strictly ascending")
            qs.setflags(write=False)
            ds.setflags(write=False)
            frozen[(l, s)] = (qs, ds)
        object.__setattr__(self, "channels", frozen)

    @classmethod
    def from_functions(cls, funcs: Mapping[tuple[int, int], callable], q_grid) -> "PhaseShiftTable":
        q_grid = np.asarray(q_grid, dtype=float)
        return cls({key: (q_grid, np.array([f(q) for q in q_grid], dtype=float))
                    for key, f in funcs.items()})

    def q_range(self, l: int, s: int) -> tuple[float, float]:
        qs, _ = self._channel(l, s)
        return float(qs[0]), float(qs[-1])

    def _channel(self, l, s):
        key = _channel_key(l, s)
        try:
            return self.channels[key]
        except KeyError:
            raise ChannelError(f"channel (l={key[0]}, s={key[1]}) not present in phase-shift table; "
                               f"available: {sorted(self.channels)}") from None

    def lookup(self, l: int, s: int, q: float) -> float:
        return lookup_phase(self, l, s, q)

    def rows(self) -> list[tuple[int, int, float, float]]:
        out = []
        for (l, s), (qs, ds) in sorted(self.channels.items()):
            out.extend((l, s, float(q), float(d)) for q, d in zip(qs, ds))
        return out

    def save(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(TABLE_HEADER)
            for l, s, q, d in self.rows():
                w.writerow((l, s, repr(q), repr(d)))

    @classmethod
    def load(cls, path) -> "PhaseShiftTable":
        return load_phase_table(path)


def _channel_key(l, s) -> tuple[int, int]:
    if isinstance(l, bool) or isinstance(s, bool):
        raise InputError("channel labels must be integers")
    try:
        li, si = int(l), int(s)
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid channel labels {(l, s)!r}") from exc
    if li != l or si != s or li < 0 or si not in (0, 1):
        raise InputError(f"invalid channel (l={l!r}, s={s!r}); need integer l >= 0 and s in {{0, 1}}")
    return li, si


def lookup_phase(table: PhaseShiftTable, l: int, s: int, q: float) -> float:
    """Linearly interpolated ``delta_{ls}(q)``; no extrapolation."""
    qs, ds = table._channel(l, s)
    q = float(q)
    if not (qs[0] <= q <= qs[-1]):
        raise RangeError(f"q={q!r} outside sampled range [{qs[0]!r}, {qs[-1]!r}] "
                         f"of channel (l={l}, s={s})")
    i = int(np.searchsorted(qs, q, side="left"))
    if qs[i] == q:
        return float(ds[i])
    q0, q1 = qs[i - 1], qs[i]
    t = (q - q0) / (q1 - q0)
    return float(ds[i - 1] + t * (ds[i] - ds[i - 1]))


def load_phase_table(path) -> PhaseShiftTable:
    """Read the ``l,s,q,delta`` CSV format; errors carry the offending line number."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableFormatError(f"cannot read file: {exc.strerror or exc}", path=path) from exc
    except UnicodeDecodeError as exc:
        raise TableFormatError("file is not valid UTF-8", path=path) from exc
    return parse_phase_table(text.splitlines(), source=path)


def parse_phase_table(lines: Iterable[str], source=None) -> PhaseShiftTable:
    samples: dict[tuple[int, int], tuple[list[float], list[float]]] = {}
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if not header_seen:
            if tuple(fields) != TABLE_HEADER:
                raise TableFormatError(f"expected header {','.join(TABLE_HEADER)!r}, got {line!r}",
                                       path=source, line=lineno)
            header_seen = True
            continue
        if len(fields) != 4:
            raise TableFormatError(f"expected 4 comma-separated fields, got {len(fields)}",
                                   path=source, line=lineno)
        try:
            l, s = int(fields[0]), int(fields[1])
        except ValueError:
            raise TableFormatError(f"l and s must be integers, got {fields[0]!r}, {fields[1]!r}",
                                   path=source, line=lineno) from None
        if l < 0 or s not in (0, 1):
            raise TableFormatError(f"invalid channel l={l}, s={s} (need l >= 0, s in {{0,1}})",
                                   path=source, line=lineno)
        try:
            q, d = float(fields[2]), float(fields[3])
        except ValueError:
            raise TableFormatError(f"q and delta must be decimals, got {fields[2]!r}, {fields[3]!r}",
                                   path=source, line=lineno) from None
        if not (math.isfinite(q) and math.isfinite(d)):
            raise TableFormatError("q and delta must be finite", path=source, line=lineno)
        if q < 0:
            raise TableFormatError(f"q must be non-negative, got {q!r}", path=source, line=lineno)
        qs, ds = samples.setdefault((l, s), ([], []))
        if qs and q <= qs[-1]:
            raise TableFormatError(f"q={q!r} not strictly ascending in channel (l={l}, s={s}) "
                                   f"(previous q={qs[-1]!r})", path=source, line=lineno)
        qs.append(q)
        ds.append(d)
    if not header_seen:
        raise TableFormatError("empty file: missing header", path=source, line=1)
    return PhaseShiftTable({k: v for k, v in samples.items()})


# --- central-force scattering ----------------------------------------------

_SPIN_TWICE = (1, -1)


def _channel_projector(ts: int) -> np.ndarray:
    """``P_s[(chi1', chi2'), (chi1, chi2)] = sum_chi <s chi|chi1' chi2'> <s chi|chi1 chi2>``."""
    pairs = [(t1, t2) for t1 in _SPIN_TWICE for t2 in _SPIN_TWICE]
    proj = np.zeros((4, 4))
    for o, (u1, u2) in enumerate(pairs):
        for i, (t1, t2) in enumerate(pairs):
            proj[o, i] = sum(_cgc_twice(1, u1, 1, u2, ts, tchi) * _cgc_twice(1, t1, 1, t2, ts, tchi)
                             for tchi in range(ts, -ts - 1, -2))
    proj.setflags(write=False)
    return proj


# singlet (2s = 0) and triplet (2s = 2) projectors on the product spin basis
_PROJECTORS = {0: _channel_projector(0), 2: _channel_projector(2)}


@dataclass(frozen=True)
class FiberState:
    """Spin part of a state restricted to one fiber ``(p, q, l, m)``."""

    labels: PartialWaveLabels
    spin: TwoSpinState


def apply_central_smatrix(a: SingleSpinState, b: SingleSpinState,
                          labels: PartialWaveLabels, table: PhaseShiftTable) -> FiberState:
    """Scatter the spin-unentangled in-state ``sum a_chi1 b_chi2 |p chi1 chi2 (q l m)>``.

    Evaluates ``sum_{s chi} <s chi|chi1' chi2'> <s chi|chi1 chi2> exp(2i delta_ls(q))
    a_chi1 b_chi2`` term by term.  The fiber labels are unchanged.
    """
    for name, v in (("a", a), ("b", b)):
        if not isinstance(v, SingleSpinState):
            raise InputError(f"{name} must be a SingleSpinState, got {type(v).__name__}")
    if not isinstance(labels, PartialWaveLabels):
        raise InputError("labels must be PartialWaveLabels")
    amps = np.kron(a.amplitudes, b.amplitudes)
    out = np.zeros(4, dtype=complex)
    for ts, proj in _PROJECTORS.items():
        out += np.exp(2j * lookup_phase(table, labels.l, ts // 2, labels.q)) * (proj @ amps)
    return FiberState(labels, TwoSpinState(Basis.PRODUCT, out))


def channel_phases(table: PhaseShiftTable, l: int, q: float) -> tuple[float, float]:
    """``(delta_l0(q), delta_l1(q))``."""
    return lookup_phase(table, l, 0, q), lookup_phase(table, l, 1, q)


def fermion_channel_allowed(l, s) -> bool:
    """Whether channel ``(l, s)`` survives antisymmetrization for identical spin-1/2 fermions.

    Exchange multiplies the orbital part by ``(-1)^l`` and the spin part by
    ``(-1)^(s+1)``; the product must be -1, i.e. ``l + s`` even.
    """
    tl, ts = twice(l), twice(s)
    if tl < 0 or tl % 2:
        raise InputError(f"l must be a non-negative integer, got {l!r}")
    if ts not in (0, 2):
        raise InputError(f"s must be 0 or 1 for two spin-1/2 particles, got {s!r}")
    return ((tl + ts) // 2) % 2 == 0


def allowed_channels(l_max: int, identical_fermions: bool = False) -> list[tuple[int, int]]:
    chans = [(l, s) for l in range(l_max + 1) for s in (0, 1)]
    if identical_fermions:
        chans = [c for c in chans if fermion_channel_allowed(*c)]
    return chans


# --- general reduced S-matrix blocks ---------------------------------------

@dataclass(frozen=True, eq=False)
class ChannelBlockS:
    """Reduced S-matrix ``S^j_{l's', ls}(q)`` over the channels coupled at fixed ``j``.

    ``channels`` holds ``(l, s)`` pairs (l integer, s in {0, 1}); ``j`` may be
    any valid angular momentum.  Consistency is checked by :func:`validate_block_s`,
    not at construction.
    """

    j: AngularMomentum
    q: float
    channels: tuple[tuple[int, int], ...]
    block: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "j", AngularMomentum.of(self.j))
        object.__setattr__(self, "channels", tuple(tuple(c) for c in self.channels))
        object.__setattr__(self, "block", np.array(self.block, dtype=complex))


@dataclass(frozen=True)
class Violation:
    kind: str  # "shape", "labels", "unitarity", "non-central"
    message: str


@dataclass(frozen=True)
class BlockValidation:
    violations: tuple[Violation, ...]
    central: bool  # block is diagonal over its channels

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_block_s(block: ChannelBlockS, require_central: bool = False,
                     tol: float = UNITARITY_TOL) -> BlockValidation:
    """Check a reduced S-matrix block; problems are returned, never raised.

    A mixing block is still valid; it is reported with ``central=False``,
    and only counts as a violation when ``require_central`` is set.
    """
    found: list[Violation] = []
    mat = np.asarray(block.block)
    n = len(block.channels)
    if mat.ndim != 2 or mat.shape != (n, n):
        found.append(Violation("shape", f"block shape {mat.shape} does not match {n} channels"))
        return BlockValidation(tuple(found), central=False)
    if len(set(block.channels)) != n:
        found.append(Violation("labels", f"duplicate channels in {block.channels}"))
    tj = block.j.twice_j
    for ch in block.channels:
        try:
            l, s = _channel_key(*ch)
        except (InputError, TypeError, ValueError):
            found.append(Violation("labels", f"malformed channel {ch!r}"))
            continue
        if not abs(2 * l - 2 * s) <= tj <= 2 * (l + s):
            found.append(Violation("labels", f"channel (l={l}, s={s}) cannot couple to j={block.j}"))
        elif (2 * (l + s) - tj) % 2:
            found.append(Violation("labels", f"channel (l={l}, s={s}) has wrong parity for j={block.j}"))
    if not np.all(np.isfinite(mat)):
        found.append(Violation("unitarity", "block has non-finite entries"))
        return BlockValidation(tuple(found), central=False)
    dev = float(np.max(np.abs(mat @ mat.conj().T - np.eye(n)))) if n else 0.0
    if dev > tol:
        found.append(Violation("unitarity", f"max |S S^dagger - 1| = {dev:.3e} exceeds {tol:.0e}"))
    off = mat - np.diag(np.diag(mat))
    central = bool(np.max(np.abs(off), initial=0.0) <= tol)
    if require_central and not central:
        found.append(Violation("non-central", "block mixes channels (off-diagonal entries present)"))
    return BlockValidation(tuple(found), central=central)


def central_block(table: PhaseShiftTable, j, q: float, channels=None) -> ChannelBlockS:
    """Diagonal block ``diag(exp 2i delta_ls(q))`` over the channels compatible with ``j``.

    By default every table channel that can couple to ``j`` is included.
    """
    tj = twice(j)
    if channels is None:
        channels = [(l, s) for (l, s) in sorted(table.channels)
                    if abs(2 * l - 2 * s) <= tj <= 2 * (l + s) and (2 * (l + s) - tj) % 2 == 0]
    phases = [lookup_phase(table, l, s, q) for l, s in channels]
    return ChannelBlockS(AngularMomentum(tj), q, tuple(channels), np.diag(np.exp(2j * np.array(phases))))


def central_operator_fiber(l: int, delta_l0: float, delta_l1: float) -> np.ndarray:
    """Central-force S-matrix on the ``(2l+1) * 4``-dimensional space of one
    ``(p, q, l)`` shell, in the basis ``|m> (x) |chi1 chi2>`` (m descending,
    product spin ordering)."""
    from .spin_smatrix import smatrix_as_operator

    return np.kron(np.eye(2 * l + 1), smatrix_as_operator((delta_l0, delta_l1)))


def total_j_transform(l: int) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Orthogonal map from ``|m> (x) |chi1 chi2>`` to ``|(l s) j j3>`` over both s = 0, 1.

    Returns the matrix and the row labels ``(s, 2j, 2j3)``.
    """
    from .spin_states import CG4, _COUPLED_TWICE

    dim = 2 * l + 1
    # first: spins to |s chi>, ordering (00, 1-1, 10, 11)
    spin = np.kron(np.eye(dim), CG4)
    rows: list[tuple[int, int, int]] = []
    blocks = []
    for s in (0, 1):
        ct = couple_orbital_spin(l, s)
        # select columns (m, chi) of the |m>|s chi> space for this s
        sel = np.zeros((len(ct.cols), 4 * dim))
        for c, (tm, tchi) in enumerate(ct.cols):
            mi = (2 * l - tm) // 2
            si = _COUPLED_TWICE.index((2 * s, tchi))
            sel[c, 4 * mi + si] = 1.0
        blocks.append(ct.matrix @ sel)
        rows.extend((s, tj, tj3) for tj, tj3 in ct.rows)
    return np.vstack(blocks) @ spin, rows
