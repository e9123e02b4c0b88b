"""SU(2) representation machinery.

Angular momenta are handled internally as doubled integers (``2j``, ``2m``) so
that half-integer bookkeeping is exact.  Public functions accept ordinary
numbers (``0.5``, ``Fraction(1, 2)``, ``"1/2"``) or :class:`AngularMomentum`
instances and convert them on entry.

Conventions
-----------
* Clebsch-Gordan coefficients use the Condon-Shortley phase, so all of them
  are real and ``<j1+j2, j1+j2 | j1 j1; j2 j2> = +1``.
* Rotations use Euler angles in the z-y-z convention,
  ``U(alpha, beta, gamma) = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz)``,
  so that ``D^j_{m'm} = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma)``.
* Matrix realizations index magnetic quantum numbers in descending order,
  ``m = j, j-1, ..., -j``.  For spin 1/2 this is (+, -).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .errors import InputError

#: Largest angular momentum (as 2j) accepted by :func:`cgc` and :func:`wigner_d_small`.
MAX_TWICE_J = 40

# Every factorial argument appearing in the Racah sum or the small-d formula is
# bounded by j1 + j2 + j + 1 <= 3 * 20 + 1.
_FACTORIALS = tuple(math.factorial(n) for n in range(3 * MAX_TWICE_J // 2 + 2))


@dataclass(frozen=True, order=True)
class AngularMomentum:
    """An angular-momentum quantum number stored as ``twice_j = 2j``."""

    twice_j: int

    def __post_init__(self):
        if not isinstance(self.twice_j, (int, np.integer)) or isinstance(self.twice_j, bool):
            raise InputError(f"twice_j must be an integer, got {self.twice_j!r}")
        if self.twice_j < 0:
            raise InputError(f"angular momentum must be non-negative, got 2j={self.twice_j}")
        object.__setattr__(self, "twice_j", int(self.twice_j))

    @classmethod
    def of(cls, value) -> "AngularMomentum":
        if isinstance(value, cls):
            return value
        return cls(twice(value))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_j, 2)

    @property
    def dim(self) -> int:
        return self.twice_j + 1

    @property
    def is_integer(self) -> bool:
        return self.twice_j % 2 == 0

    def components(self) -> list[int]:
        """Valid ``2m`` values in descending order."""
        return list(range(self.twice_j, -self.twice_j - 1, -2))

    def __str__(self):
        return format_half(self.twice_j)


@dataclass(frozen=True)
class Rotation:
    """A rotation given by z-y-z Euler angles in radians."""

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InputError(f"Euler angle {name} must be finite, got {v!r}")

    @classmethod
    def identity(cls) -> "Rotation":
        return cls(0.0, 0.0, 0.0)


def twice(value) -> int:
    """Return ``2 * value`` as an exact int, rejecting anything not a multiple of 1/2."""
    if isinstance(value, AngularMomentum):
        return value.twice_j
    if isinstance(value, bool):
        raise InputError(f"not an angular-momentum value: {value!r}")
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse angular-momentum value {value!r}") from exc
    if isinstance(value, (int, np.integer)):
        return 2 * int(value)
    if isinstance(value, Fraction):
        doubled = 2 * value
        if doubled.denominator != 1:
            raise InputError(f"{value} is not a multiple of 1/2")
        return int(doubled)
    if isinstance(value, Real):
        doubled = 2.0 * float(value)
        if not math.isfinite(doubled) or doubled != round(doubled):
            raise InputError(f"{value!r} is not a multiple of 1/2")
        return int(round(doubled))
    raise InputError(f"not an angular-momentum value: {value!r}")


def format_half(twice_value: int) -> str:
    """Render a doubled quantum number as ``"3/2"``, ``"-1"``, ``"0"``."""
    if twice_value % 2 == 0:
        return str(twice_value // 2)
    return f"{twice_value}/2"


def check_pair(tj: int, tm: int) -> None:
    """Validate a doubled (j, m) pair."""
    if tj < 0:
        raise InputError(f"j must be non-negative, got {format_half(tj)}")
    if abs(tm) > tj:
        raise InputError(f"|m| exceeds j: j={format_half(tj)}, m={format_half(tm)}")
    if (tj - tm) % 2:
        raise InputError(f"j and m must both be integer or both half-integer: "
                         f"j={format_half(tj)}, m={format_half(tm)}")
    if tj > MAX_TWICE_J:
        raise InputError(f"j={format_half(tj)} exceeds the supported maximum {format_half(MAX_TWICE_J)}")


def _fact(twice_n: int) -> int:
    # argument is a doubled quantity that must represent a non-negative integer
    return _FACTORIALS[twice_n // 2]


def cgc(j1, m1, j2, m2, j, m) -> float:
    """Clebsch-Gordan coefficient ``<j m | j1 m1; j2 m2>`` (Condon-Shortley).

    Evaluated with the Racah closed form.  The sum and the square-root
    prefactor are accumulated exactly as rationals, so the only rounding is
    the final conversion to float.

    >>> cgc(0.5, 0.5, 0.5, -0.5, 0, 0)  # doctest: +ELLIPSIS
    0.7071067811865...
    """
    tj1, tm1, tj2, tm2, tj, tm = (twice(x) for x in (j1, m1, j2, m2, j, m))
    check_pair(tj1, tm1)
    check_pair(tj2, tm2)
    check_pair(tj, tm)
    return _cgc_twice(tj1, tm1, tj2, tm2, tj, tm)


def _cgc_twice(tj1, tm1, tj2, tm2, tj, tm) -> float:
    if tm != tm1 + tm2:
        return 0.0
    if not abs(tj1 - tj2) <= tj <= tj1 + tj2 or (tj1 + tj2 + tj) % 2:
        return 0.0

    a = tj1 + tj2 - tj
    b = tj1 - tj2 + tj
    c = -tj1 + tj2 + tj
    pref = Fraction(
        (tj + 1) * _fact(a) * _fact(b) * _fact(c)
        * _fact(tj1 + tm1) * _fact(tj1 - tm1)
        * _fact(tj2 + tm2) * _fact(tj2 - tm2)
        * _fact(tj + tm) * _fact(tj - tm),
        _fact(tj1 + tj2 + tj + 2),
    )

    # k runs over integers keeping every factorial argument non-negative
    k_min = max(0, (tj2 - tj - tm1) // 2, (tj1 - tj + tm2) // 2)
    k_max = min(a // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        tk = 2 * k
        den = (_fact(tk) * _fact(a - tk) * _fact(tj1 - tm1 - tk) * _fact(tj2 + tm2 - tk)
               * _fact(tj - tj2 + tm1 + tk) * _fact(tj - tj1 - tm2 + tk))
        total += Fraction(-1 if k % 2 else 1, den)

    if total == 0:
        return 0.0
    sign = 1.0 if total > 0 else -1.0
    return sign * math.sqrt(pref * total * total)


def cgc_matrix(j1, j2) -> tuple[np.ndarray, list[tuple[int, int]], list[tuple[int, int]]]:
    """Full change-of-basis matrix between ``|j1 m1; j2 m2>`` and ``|j m>``.

    Returns ``(C, rows, cols)`` with ``C[r, c] = <j m | j1 m1; j2 m2>``; rows
    are doubled ``(j, m)`` labels (j ascending, m descending) and columns are
    doubled ``(m1, m2)`` labels (both descending, m1 major).
    """
    tj1, tj2 = twice(j1), twice(j2)
    check_pair(tj1, tj1)
    check_pair(tj2, tj2)
    cols = [(a, b) for a in range(tj1, -tj1 - 1, -2) for b in range(tj2, -tj2 - 1, -2)]
    rows = [(tj, tm) for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2)
            for tm in range(tj, -tj - 1, -2)]
    mat = np.zeros((len(rows), len(cols)))
    for r, (tj, tm) in enumerate(rows):
        for c, (tm1, tm2) in enumerate(cols):
            mat[r, c] = _cgc_twice(tj1, tm1, tj2, tm2, tj, tm)
    return mat, rows, cols


def wigner_d_small(j, m_prime, m, beta: float) -> float:
    """Wigner small-d element ``d^j_{m'm}(beta) = <j m'| exp(-i beta Jy) |j m>``."""
    tj, tmp, tm = twice(j), twice(m_prime), twice(m)
    check_pair(tj, tmp)
    check_pair(tj, tm)
    return _small_d_twice(tj, tmp, tm, float(beta))


def _small_d_twice(tj, tmp, tm, beta) -> float:
    c = math.cos(beta / 2.0)
    s = math.sin(beta / 2.0)
    # the integer j+-m style combinations below are halved doubled values
    jpm, jmm = (tj + tm) // 2, (tj - tm) // 2
    jpmp, jmmp = (tj + tmp) // 2, (tj - tmp) // 2
    mmp = (tm - tmp) // 2  # m - m'
    root = math.sqrt(_FACTORIALS[jpmp] * _FACTORIALS[jmmp] * _FACTORIALS[jpm] * _FACTORIALS[jmm])
    total = 0.0
    for k in range(max(0, mmp), min(jpm, jmmp) + 1):
        den = _FACTORIALS[jpm - k] * _FACTORIALS[k] * _FACTORIALS[jmmp - k] * _FACTORIALS[k - mmp]
        sign = -1.0 if (k - mmp) % 2 else 1.0
        total += sign * c ** (jpm + jmmp - 2 * k) * s ** (2 * k - mmp) / den
    return root * total


def wigner_D(j, m_prime, m, r: Rotation) -> complex:
    """Wigner D element ``D^j_{m'm}(r) = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma)``."""
    tj, tmp, tm = twice(j), twice(m_prime), twice(m)
    check_pair(tj, tmp)
    check_pair(tj, tm)
    return _big_d_twice(tj, tmp, tm, r)


def _big_d_twice(tj, tmp, tm, r: Rotation) -> complex:
    phase = -0.5 * (tmp * r.alpha + tm * r.gamma)
    return complex(math.cos(phase), math.sin(phase)) * _small_d_twice(tj, tmp, tm, r.beta)


def wigner_d_matrix(j, beta: float) -> np.ndarray:
    """Real ``(2j+1) x (2j+1)`` small-d matrix, rows/cols ordered m = j..-j."""
    tj = twice(j)
    check_pair(tj, tj)
    ms = range(tj, -tj - 1, -2)
    return np.array([[_small_d_twice(tj, a, b, float(beta)) for b in ms] for a in ms])


def wigner_D_matrix(j, r: Rotation) -> np.ndarray:
    """Complex ``(2j+1) x (2j+1)`` D-matrix, rows/cols ordered m = j..-j."""
    tj = twice(j)
    check_pair(tj, tj)
    ms = range(tj, -tj - 1, -2)
    return np.array([[_big_d_twice(tj, a, b, r) for b in ms] for a in ms], dtype=complex)
