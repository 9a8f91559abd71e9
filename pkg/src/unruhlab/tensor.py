"""Dense tensor-product linear algebra for small multipartite systems.

Everything here works on explicit ``numpy`` arrays; the systems treated by
this package never exceed dimension 16, so dense algorithms are both exact
enough and fast enough.  Matrices are complex128 throughout.

Conventions
-----------
* Subsystem 0 is the leftmost (slowest-varying) tensor factor.
* Eigenvalues are always returned in ascending order.
* Entropies are in bits (logarithm base 2).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSubsystem, NonHermitian, NotPositive, NotSquare

# Tolerances shared by the validation paths below.
HERMITICITY_TOL = 1e-8      # max |M - M^dag| entry allowed before symmetrising
STATE_HERMITICITY_TOL = 1e-10
STATE_TRACE_TOL = 1e-10
STATE_EIGENVALUE_TOL = 1e-10
ENTROPY_EIGENVALUE_FLOOR = 1e-15


def _as_complex_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    return a


def kron(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices, leftmost factor slowest."""
    if not factors:
        raise ValueError("kron() needs at least one factor")
    out = np.asarray(factors[0], dtype=np.complex128)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=np.complex128))
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density operator on a tensor product of small subsystems.

    Parameters
    ----------
    matrix:
        Square complex matrix of dimension ``prod(dims)``.
    dims:
        Local dimension of each tensor factor, leftmost first.
    strict:
        When True (default) the constructor enforces Hermiticity to 1e-10,
        unit trace to 1e-10 and positivity down to -1e-10, raising
        :class:`NonHermitian` / :class:`NotPositive` / ``ValueError``.
        When False only shape and Hermiticity are enforced; used for
        closed-form states assembled verbatim from published coefficient
        tables, which are not always normalised.
    flags:
        Free-form markers (e.g. ``("literal",)``) carried along for
        reporting; no behavioural effect.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]
    strict: bool = True
    flags: tuple[str, ...] = field(default=())

    def __post_init__(self):
        m = _as_complex_matrix(self.matrix)
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"bad subsystem dimensions {dims}")
        n = int(np.prod(dims))
        if m.shape != (n, n):
            raise ValueError(f"matrix is {m.shape} but dims {dims} require ({n}, {n})")
        if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
            raise ValueError("matrix contains non-finite entries")
        asym = np.max(np.abs(m - m.conj().T))
        tol = STATE_HERMITICITY_TOL if self.strict else HERMITICITY_TOL
        if asym > tol:
            raise NonHermitian(f"matrix deviates from Hermiticity by {asym:.3e}")
        m = 0.5 * (m + m.conj().T)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "flags", tuple(self.flags))
        if self.strict:
            tr = complex(np.trace(m))
            if abs(tr - 1.0) > STATE_TRACE_TOL:
                raise ValueError(f"trace {tr} is not 1 within {STATE_TRACE_TOL}")
            lo = float(np.linalg.eigvalsh(m)[0])
            if lo < -STATE_EIGENVALUE_TOL:
                raise NotPositive(f"negative eigenvalue {lo:.3e}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def reduced(self, keep) -> "DensityMatrix":
        return partial_trace(self, keep)


def _check_subsystem(dims: tuple[int, ...], subsystem: int) -> int:
    s = int(subsystem)
    if s < 0 or s >= len(dims):
        raise InvalidSubsystem(f"subsystem {subsystem} out of range for dims {dims}")
    return s


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every subsystem not listed in ``keep``.

    Parameters
    ----------
    rho:
        State over ``rho.dims``.
    keep:
        Subsystem index or iterable of indices to retain, in their original
        order.

    Returns
    -------
    DensityMatrix over the kept subsystems.  Hermiticity, unit trace and
    positivity of a partial trace follow from the input's, so the result
    is built without re-running the strict checks.
    """
    if isinstance(keep, (int, np.integer)):
        keep_idx = [_check_subsystem(rho.dims, keep)]
    else:
        keep_idx = [_check_subsystem(rho.dims, k) for k in keep]
        if len(set(keep_idx)) != len(keep_idx):
            raise InvalidSubsystem(f"repeated subsystem in keep={keep}")
        if keep_idx != sorted(keep_idx):
            raise InvalidSubsystem("keep indices must be in ascending order")
    if not keep_idx:
        raise InvalidSubsystem("must keep at least one subsystem")

    n_sub = len(rho.dims)
    t = rho.matrix.reshape(rho.dims + rho.dims)
    # Trace out the dropped subsystems from highest index down so that the
    # axis numbering stays valid after each contraction.
    removed = 0
    for s in sorted(set(range(n_sub)) - set(keep_idx), reverse=True):
        cur = n_sub - removed
        t = np.trace(t, axis1=s, axis2=s + cur)
        removed += 1
    new_dims = tuple(rho.dims[k] for k in keep_idx)
    n = int(np.prod(new_dims))
    return DensityMatrix(t.reshape(n, n), new_dims, strict=False, flags=rho.flags)


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Transpose one tensor factor of ``rho`` and return the raw matrix.

    The result is generally not positive semidefinite, so it is returned as
    a plain array rather than a :class:`DensityMatrix`.
    """
    s = _check_subsystem(rho.dims, subsystem)
    n_sub = len(rho.dims)
    t = rho.matrix.reshape(rho.dims + rho.dims)
    axes = list(range(2 * n_sub))
    axes[s], axes[s + n_sub] = axes[s + n_sub], axes[s]
    n = rho.dim
    return t.transpose(axes).reshape(n, n)


def _require_hermitian(m) -> np.ndarray:
    a = _as_complex_matrix(m)
    asym = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if asym > HERMITICITY_TOL:
        raise NonHermitian(f"matrix deviates from Hermiticity by {asym:.3e}")
    return 0.5 * (a + a.conj().T)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending.

    The input is symmetrised after a Hermiticity check at tolerance 1e-8;
    deviations beyond that raise :class:`NonHermitian`.  Dimensions in this
    package never exceed 16, for which the LAPACK solver behind
    ``numpy.linalg.eigvalsh`` is exact to machine precision;
    :func:`jacobi_eigenvalues` provides an independent reference
    implementation used for cross-validation.
    """
    return np.linalg.eigvalsh(_require_hermitian(m))


def jacobi_eigenvalues(m, tol: float = 1e-14, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix via cyclic complex Jacobi rotations.

    Sweeps annihilate one off-diagonal entry at a time until the Frobenius
    mass of the off-diagonal part falls below ``tol`` (relative to the
    matrix scale).  Unconditionally stable for the small dimensions used
    here; kept as a self-contained cross-check of the LAPACK path.
    """
    a = _require_hermitian(m).copy()
    n = a.shape[0]
    if n == 1:
        return a.real.diagonal().copy()
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diagonal(a)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = abs(a[p, q])
                if g <= 1e-300:
                    continue
                # Factor out the phase so the 2x2 pivot block is real.
                e = a[p, q] / g
                a[q, :] *= e
                a[:, q] *= np.conj(e)
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * g)
                if theta >= 0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
    else:
        raise RuntimeError(f"Jacobi sweep did not converge in {max_sweeps} sweeps")
    return np.sort(a.diagonal().real)


def shannon_entropy(probs, tol: float = 1e-8) -> float:
    """Shannon entropy in bits of a probability vector.

    Entries in (-1e-10, 0) are clamped to zero; the vector must sum to 1
    within ``tol``.  The 0*log(0) branch returns 0 for entries at or below
    1e-15.
    """
    p = np.asarray(probs, dtype=np.float64).ravel()
    if np.any(p < -STATE_EIGENVALUE_TOL):
        raise NotPositive(f"negative probability {p.min():.3e}")
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if abs(total - 1.0) > tol:
        raise ValueError(f"probabilities sum to {total}, not 1")
    mask = p > ENTROPY_EIGENVALUE_FLOOR
    h = float(-(p[mask] * np.log2(p[mask])).sum())
    return max(h, 0.0)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy of ``rho`` in bits."""
    lam = hermitian_eigenvalues(rho.matrix)
    if lam[0] < -STATE_EIGENVALUE_TOL:
        raise NotPositive(f"state has negative eigenvalue {lam[0]:.3e}")
    return shannon_entropy(lam, tol=1e-6)
