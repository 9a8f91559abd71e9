"""Initial two-party states: X-form two-qubit states and a one-parameter
family of two-qutrit pure states.

The X-state is parametrised by the three diagonal correlation coefficients
(c11, c22, c33) of its Bloch decomposition

    rho = (I (x) I + sum_i c_ii sigma_i (x) sigma_i) / 4,

which fills the diagonal (B1, B3, B3, B1) and the two anti-diagonals:
B2 = (c11 - c22)/4 couples |00><11|, B4 = (c11 + c22)/4 couples |01><10|.
The singlet is (-1, -1, -1); Werner states with singlet fidelity x are
(-x, -x, -x).
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotPositive, UnknownPreset
from .tensor import DensityMatrix

_X_PSD_TOL = 1e-10


@dataclass(frozen=True)
class XStateSpec:
    """Diagonal correlation coefficients of an X-form two-qubit state."""

    c11: float
    c22: float
    c33: float

    def __post_init__(self):
        for name in ("c11", "c22", "c33"):
            v = getattr(self, name)
            if not np.isfinite(v) or abs(v) > 1.0 + 1e-12:
                raise ValueError(f"{name}={v} outside [-1, 1]")

    def coefficients(self) -> tuple[float, float, float, float]:
        """(B1, B2, B3, B4): populations and anti-diagonal couplings."""
        b1 = 0.25 * (1.0 + self.c33)
        b2 = 0.25 * (self.c11 - self.c22)
        b3 = 0.25 * (1.0 - self.c33)
        b4 = 0.25 * (self.c11 + self.c22)
        return b1, b2, b3, b4

    def eigenvalues(self) -> tuple[float, float, float, float]:
        """Spectrum {B1 +/- B2, B3 +/- B4} of the X-state."""
        b1, b2, b3, b4 = self.coefficients()
        return b1 + b2, b1 - b2, b3 + b4, b3 - b4


def make_x_state(spec: XStateSpec) -> DensityMatrix:
    """Assemble the 4x4 X-state for ``spec``.

    Raises :class:`NotPositive` when the coefficient triple does not
    describe a physical state (any eigenvalue below -1e-10).
    """
    b1, b2, b3, b4 = spec.coefficients()
    lo = min(spec.eigenvalues())
    if lo < -_X_PSD_TOL:
        raise NotPositive(
            f"X-state spec {spec} has eigenvalue {lo:.3e} < 0"
        )
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = m[3, 3] = b1
    m[1, 1] = m[2, 2] = b3
    m[0, 3] = m[3, 0] = b2
    m[1, 2] = m[2, 1] = b4
    return DensityMatrix(m, (2, 2))


def singlet() -> DensityMatrix:
    """Two-qubit singlet (|01> - |10>)/sqrt(2) as an X-state."""
    return make_x_state(XStateSpec(-1.0, -1.0, -1.0))


def werner(x: float) -> DensityMatrix:
    """Werner-type X-state (-x, -x, -x) with singlet weight ``x``."""
    return make_x_state(XStateSpec(-x, -x, -x))


@dataclass(frozen=True)
class QutritStateSpec:
    """Pure two-qutrit state (|00> + |11> + gamma |22>) / sqrt(2 + gamma^2)."""

    gamma: float

    def __post_init__(self):
        if not np.isfinite(self.gamma):
            raise ValueError(f"gamma={self.gamma} is not finite")

    def amplitudes(self) -> np.ndarray:
        n = np.sqrt(2.0 + self.gamma * self.gamma)
        return np.array([1.0, 1.0, self.gamma], dtype=np.complex128) / n


def make_qutrit_state(spec: QutritStateSpec) -> DensityMatrix:
    """Assemble the 9x9 density matrix of the gamma-family pure state."""
    amp = spec.amplitudes()
    ket = np.zeros(9, dtype=np.complex128)
    for i in range(3):
        ket[4 * i] = amp[i]  # |ii> sits at index 3*i + i
    return DensityMatrix(np.outer(ket, ket.conj()), (3, 3))


def parse_state_preset(text: str) -> DensityMatrix:
    """Build a state from a preset string.

    Accepted forms:

    * ``singlet``                          two-qubit maximally entangled
    * ``werner:<x>``                       Werner-type, e.g. ``werner:0.7``
    * ``x:<c11>,<c22>,<c33>``              raw X-state coefficients
    * ``qutrit:<gamma>``                   two-qutrit gamma family
    """
    name, _, arg = text.strip().partition(":")
    name = name.strip().lower()
    try:
        if name == "singlet":
            if arg:
                raise UnknownPreset(f"'singlet' takes no argument, got {text!r}")
            return singlet()
        if name == "werner":
            return werner(float(arg))
        if name == "x":
            parts = [float(p) for p in arg.split(",")]
            if len(parts) != 3:
                raise UnknownPreset(f"'x:' needs three coefficients, got {text!r}")
            return make_x_state(XStateSpec(*parts))
        if name == "qutrit":
            return make_qutrit_state(QutritStateSpec(float(arg)))
    except (ValueError, TypeError) as exc:
        raise UnknownPreset(f"cannot parse state preset {text!r}: {exc}") from exc
    raise UnknownPreset(f"unknown state preset {text!r}")
