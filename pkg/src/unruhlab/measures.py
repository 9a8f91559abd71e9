"""Entanglement and information measures of the protocol's final states.

Negativity comes in two flavours: the raw sum of negative partial-transpose
eigenvalues, and the normalised form (trace norm - 1)/(d_min - 1) which
equals 1 on a maximally entangled pair of equal-dimension parties.  For the
accelerated 4 x 3 qutrit output d_min = 3, so the pre-acceleration
maximally entangled state keeps value 1.

Local information is the Shannon entropy of a party's populations; the
coherent information is offered both in the standard form S(rho_b) -
S(rho_ab) and in the published sign convention sum_i mu_i log2 mu_i =
-S(rho_ab), which is non-positive and vanishes only on pure states.
"""

from dataclasses import dataclass

import numpy as np

from .closedform import PRINTED_NORM, TRACE_NORM, QubitCoefficients
from .errors import NegativeDiscriminant
from .tensor import (DensityMatrix, hermitian_eigenvalues, partial_trace,
                     partial_transpose, shannon_entropy, von_neumann_entropy)

STANDARD = "standard"
LITERAL = "literal"

_NEG_CLAMP = 1e-12


def negativity(rho: DensityMatrix, transpose_party: int = 0
               ) -> tuple[float, float]:
    """(raw, normalised) negativity of a bipartite state.

    Raw is the absolute sum of negative eigenvalues of the partial
    transpose; normalised divides twice that by d_min - 1.  Both are
    clamped at zero from below.  The choice of transposed party does not
    affect the spectrum.
    """
    lam = hermitian_eigenvalues(partial_transpose(rho, transpose_party))
    raw = float(-lam[lam < 0.0].sum())
    if raw < _NEG_CLAMP:
        raw = max(raw, 0.0)
    d_min = min(rho.dims)
    return raw, 2.0 * raw / (d_min - 1)


def local_information(rho: DensityMatrix, party: int) -> float:
    """Shannon entropy in bits of one party's populations."""
    reduced = partial_trace(rho, party)
    return shannon_entropy(reduced.matrix.diagonal().real)


def coherent_information(rho: DensityMatrix, variant: str = STANDARD) -> float:
    """Coherent information of the accelerated party, in bits.

    ``standard``: S(rho_b) - S(rho_ab) with b the inertial party (index 1).
    ``literal``: sum_i mu_i log2 mu_i over the joint spectrum, i.e. the
    negated joint entropy, following the published sign convention.
    """
    s_ab = von_neumann_entropy(rho)
    if variant == LITERAL:
        return -s_ab
    if variant == STANDARD:
        return von_neumann_entropy(partial_trace(rho, 1)) - s_ab
    raise ValueError(f"variant must be {STANDARD!r} or {LITERAL!r}, got {variant!r}")


def x_state_spectrum(coeffs: QubitCoefficients,
                     normalization: str = TRACE_NORM
                     ) -> tuple[float, float, float, float]:
    """Eigenvalues of the final X-form qubit state from its coefficients.

    Returns (mu1, mu2, mu3, mu4): the outer-block pair from
    {b1, b7, b2 b8} and the inner-block pair from {b3, b5, b4 b6}, each
    larger root first, divided by the requested normalisation.  A negative
    discriminant cannot arise from coefficients computed by this package
    (b8 = b2, b6 = b4) and raises :class:`NegativeDiscriminant` when fed
    inconsistent hand-built values.
    """
    n = {TRACE_NORM: coeffs.normalization,
         PRINTED_NORM: coeffs.printed_normalization}[normalization]
    out = []
    for pop1, pop2, off1, off2 in ((coeffs.b1, coeffs.b7, coeffs.b2, coeffs.b8),
                                   (coeffs.b3, coeffs.b5, coeffs.b4, coeffs.b6)):
        disc = (pop1 - pop2) ** 2 + 4.0 * off1 * off2
        if disc < -1e-14 * max(1.0, pop1 + pop2) ** 2:
            raise NegativeDiscriminant(f"discriminant {disc} < 0")
        root = np.sqrt(max(disc, 0.0))
        out.append((pop1 + pop2 + root) / (2.0 * n))
        out.append((pop1 + pop2 - root) / (2.0 * n))
    return tuple(out)


@dataclass(frozen=True)
class MeasuresReport:
    """All scalar measures of one protocol run."""

    negativity_raw: float
    entanglement_normalized: float
    info_accelerated_bits: float
    info_inertial_bits: float
    coherent_info_standard_bits: float
    coherent_info_literal_bits: float
    success_probability: float

    def __post_init__(self):
        if not 0.0 <= self.entanglement_normalized <= 1.0 + 1e-9:
            raise ValueError(
                f"normalised entanglement {self.entanglement_normalized} outside [0, 1]"
            )
        if not 0.0 < self.success_probability <= 1.0 + 1e-12:
            raise ValueError(
                f"success probability {self.success_probability} outside (0, 1]"
            )


def compute_report(rho: DensityMatrix, success_probability: float
                   ) -> MeasuresReport:
    """Evaluate every measure on a final state."""
    raw, norm = negativity(rho, 0)
    s_ab = von_neumann_entropy(rho)
    marg_a = partial_trace(rho, 0)
    marg_b = partial_trace(rho, 1)
    return MeasuresReport(
        negativity_raw=raw,
        entanglement_normalized=norm,
        info_accelerated_bits=shannon_entropy(marg_a.matrix.diagonal().real),
        info_inertial_bits=shannon_entropy(marg_b.matrix.diagonal().real),
        coherent_info_standard_bits=von_neumann_entropy(marg_b) - s_ab,
        coherent_info_literal_bits=-s_ab,
        success_probability=success_probability,
    )
