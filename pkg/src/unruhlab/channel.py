"""Fermionic Unruh channel seen by a uniformly accelerated party.

A single Minkowski fermion mode restricted to the accelerated observer's
Rindler wedge becomes a noisy channel.  For a qubit (vacuum / one-particle)
the Minkowski basis dresses as

    |0> -> cos r |0>_I |0>_II + sin r |1>_I |1>_II
    |1> -> |1>_I |0>_II

and for a qutrit (vacuum / spin-up U / spin-down D) as

    |0> -> cos^2 r |0,0> + e^{i phi} sin r cos r (|U,D> + |D,U>)
           + e^{2 i phi} sin^2 r |D,P>
    |U> -> cos r |U,0> + e^{i phi} sin r |P,U>
    |D> -> cos r |D,0> - e^{i phi} sin r |P,D>

where kets are |region I, region II> and P is the doubly occupied pair
state.  Tracing out region II yields the Kraus maps implemented here.  The
qutrit output space is 4-dimensional (the pair level becomes reachable);
all downstream processing keeps that enlarged factor.

The Rindler angle r encodes the proper acceleration a through
tan r = exp(-pi omega c / a), so r runs over [0, pi/4] with r -> pi/4 the
infinite-acceleration limit.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadPhysicalParam, DimMismatch
from .tensor import DensityMatrix, kron

R_MAX = np.pi / 4
_R_TOL = 1e-12
COMPLETENESS_TOL = 1e-12

# Region-I ladder ordering shared with the rest of the package.
LEVEL_VACUUM, LEVEL_UP, LEVEL_DOWN, LEVEL_PAIR = 0, 1, 2, 3


def r_from_acceleration(a: float, omega: float, c: float = 1.0) -> float:
    """Rindler angle r = arctan(exp(-pi omega c / a)).

    ``a`` is the proper acceleration, ``omega`` the mode frequency and
    ``c`` the speed of light (1 in natural units).  All must be positive
    and finite, except that a = +inf is allowed and maps to r = pi/4.
    """
    if not np.isfinite(omega) or omega <= 0.0:
        raise BadPhysicalParam(f"omega must be positive and finite, got {omega}")
    if not np.isfinite(c) or c <= 0.0:
        raise BadPhysicalParam(f"c must be positive and finite, got {c}")
    if np.isinf(a) and a > 0:
        return R_MAX
    if not np.isfinite(a) or a <= 0.0:
        raise BadPhysicalParam(f"acceleration must be positive, got {a}")
    return float(np.arctan(np.exp(-np.pi * omega * c / a)))


@dataclass(frozen=True)
class AccelerationSpec:
    """Rindler angle r in [0, pi/4] plus the Unruh mode phase phi."""

    r: float
    phi: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.r) or self.r < -_R_TOL or self.r > R_MAX + _R_TOL:
            raise BadPhysicalParam(f"r={self.r} outside [0, pi/4]")
        if not np.isfinite(self.phi):
            raise BadPhysicalParam(f"phi={self.phi} is not finite")
        object.__setattr__(self, "r", float(min(max(self.r, 0.0), R_MAX)))
        object.__setattr__(self, "phi", float(self.phi))


@dataclass(frozen=True)
class ChannelKraus:
    """Kraus decomposition of one party's acceleration channel."""

    in_dim: int
    out_dim: int
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.kraus)
        for k in ops:
            if k.shape != (self.out_dim, self.in_dim):
                raise DimMismatch(
                    f"Kraus block {k.shape} vs ({self.out_dim}, {self.in_dim})"
                )
        comp = sum(k.conj().T @ k for k in ops)
        defect = np.max(np.abs(comp - np.eye(self.in_dim)))
        if defect > COMPLETENESS_TOL:
            raise DimMismatch(f"Kraus completeness defect {defect:.3e}")
        object.__setattr__(self, "kraus", ops)

    def completeness_defect(self) -> float:
        comp = sum(k.conj().T @ k for k in self.kraus)
        return float(np.max(np.abs(comp - np.eye(self.in_dim))))


def qubit_channel(spec: AccelerationSpec) -> ChannelKraus:
    """Two-outcome Kraus pair {diag(cos r, 1), sin r |1><0|}."""
    c, s = np.cos(spec.r), np.sin(spec.r)
    k0 = np.diag([c, 1.0]).astype(np.complex128)
    k1 = np.zeros((2, 2), dtype=np.complex128)
    k1[1, 0] = s
    return ChannelKraus(2, 2, (k0, k1))


def qutrit_channel(spec: AccelerationSpec) -> ChannelKraus:
    """Four-outcome Kraus family of the accelerated qutrit, 3 -> 4 dim.

    Outcome index is the region-II level traced over: vacuum, U, D, pair.
    """
    c, s = np.cos(spec.r), np.sin(spec.r)
    ph = np.exp(1j * spec.phi)
    k_vac = np.zeros((4, 3), dtype=np.complex128)
    k_vac[LEVEL_VACUUM, 0] = c * c
    k_vac[LEVEL_UP, 1] = c
    k_vac[LEVEL_DOWN, 2] = c
    k_up = np.zeros((4, 3), dtype=np.complex128)
    k_up[LEVEL_DOWN, 0] = ph * s * c
    k_up[LEVEL_PAIR, 1] = ph * s
    k_down = np.zeros((4, 3), dtype=np.complex128)
    k_down[LEVEL_UP, 0] = ph * s * c
    k_down[LEVEL_PAIR, 2] = -ph * s
    k_pair = np.zeros((4, 3), dtype=np.complex128)
    k_pair[LEVEL_DOWN, 0] = ph * ph * s * s
    return ChannelKraus(3, 4, (k_vac, k_up, k_down, k_pair))


def channel_for_dim(dim: int, spec: AccelerationSpec) -> ChannelKraus:
    if dim == 2:
        return qubit_channel(spec)
    if dim == 3:
        return qutrit_channel(spec)
    raise DimMismatch(f"no acceleration channel for local dimension {dim}")


def accelerate(rho: DensityMatrix, party: int, channel: ChannelKraus) -> DensityMatrix:
    """Apply the acceleration channel to one tensor factor of ``rho``.

    Trace-preserving: no renormalisation happens here.  The output dims
    equal the input dims with ``dims[party]`` replaced by the channel's
    output dimension.
    """
    if party < 0 or party >= len(rho.dims):
        raise DimMismatch(f"party {party} out of range for dims {rho.dims}")
    if rho.dims[party] != channel.in_dim:
        raise DimMismatch(
            f"party {party} has dimension {rho.dims[party]}, channel wants {channel.in_dim}"
        )
    eyes = [np.eye(d, dtype=np.complex128) for d in rho.dims]
    out = None
    for k in channel.kraus:
        factors = list(eyes)
        factors[party] = k
        full = kron(*factors)
        term = full @ rho.matrix @ full.conj().T
        out = term if out is None else out + term
    new_dims = tuple(
        channel.out_dim if i == party else d for i, d in enumerate(rho.dims)
    )
    return DensityMatrix(out, new_dims)
