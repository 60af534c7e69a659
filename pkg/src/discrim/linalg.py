"""Dense complex linear algebra for small operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; nothing here
mutates its inputs. Index conventions are row-major and 0-based, and tensor
factors are ordered left to right as in ``np.kron``.
"""
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ContractError, ShapeError

HERMITIAN_TOL = 1e-10
PSD_TOL = -1e-9


class HermitianEigenResult(NamedTuple):
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # unitary, columns are eigenvectors


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-d complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or 0 in a.shape:
        raise ShapeError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ContractError("matrix has non-finite entries")
    return a


def _square(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    return a


def dagger(m) -> np.ndarray:
    return np.conj(np.transpose(m))


def tensor(*ms) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor most significant."""
    if not ms:
        raise ShapeError("tensor needs at least one factor")
    out = as_matrix(ms[0])
    for m in ms[1:]:
        out = np.kron(out, as_matrix(m))
    return out


def partial_trace(m, dims: Sequence[int], keep) -> np.ndarray:
    """Trace out every tensor factor of ``m`` not listed in ``keep``.

    ``dims`` gives the factor dimensions in order; the kept factors stay in
    their original relative order. Keeping nothing returns the 1x1 matrix
    holding the full trace.
    """
    a = _square(m)
    dims = [int(d) for d in dims]
    if any(d <= 0 for d in dims) or int(np.prod(dims)) != a.shape[0]:
        raise ShapeError(f"factor dims {dims} do not multiply to {a.shape[0]}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ShapeError(f"keep indices {keep} out of range for {len(dims)} factors")
    n = len(dims)
    t = a.reshape(dims + dims)
    # trace the highest factors first so lower axis numbers stay valid
    for k in reversed([k for k in range(n) if k not in keep]):
        half = t.ndim // 2
        t = np.trace(t, axis1=k, axis2=k + half)
    d = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d, d)


def hermitian_deviation(m) -> float:
    a = _square(m)
    return float(np.max(np.abs(a - dagger(a))))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_deviation(m) <= tol


def _require_hermitian(m) -> np.ndarray:
    a = _square(m)
    dev = hermitian_deviation(a)
    if dev > HERMITIAN_TOL:
        raise ContractError(f"matrix is not Hermitian (deviation {dev:.3g})")
    return (a + dagger(a)) / 2


def hermitian_eig(m) -> HermitianEigenResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    a = _require_hermitian(m)
    w, v = np.linalg.eigh(a)
    return HermitianEigenResult(w, v)


def min_eigenvalue(m) -> float:
    return float(np.linalg.eigvalsh(_require_hermitian(m))[0])


def max_eigenvalue(m) -> float:
    return float(np.linalg.eigvalsh(_require_hermitian(m))[-1])


def is_psd(m, tol: float = PSD_TOL) -> bool:
    return is_hermitian(m) and min_eigenvalue(m) >= tol


def trace_norm(m) -> float:
    """Sum of singular values; uses the spectrum directly for Hermitian input."""
    a = _square(m)
    if hermitian_deviation(a) <= HERMITIAN_TOL:
        w = np.linalg.eigvalsh((a + dagger(a)) / 2)
        return float(np.sum(np.abs(w)))
    return float(np.sum(np.linalg.svd(a, compute_uv=False)))


def positive_part(m) -> np.ndarray:
    w, v = hermitian_eig(m)
    return (v * np.clip(w, 0.0, None)) @ dagger(v)


def sqrtm_psd(m) -> np.ndarray:
    """Principal square root of a PSD matrix; tiny negative eigenvalues are clipped."""
    w, v = hermitian_eig(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ dagger(v)


# -- state vectors -------------------------------------------------------------

_SINGLE = {
    "0": np.array([1, 0], dtype=complex),
    "1": np.array([0, 1], dtype=complex),
    "+": np.array([1, 1], dtype=complex) / np.sqrt(2),
    "-": np.array([1, -1], dtype=complex) / np.sqrt(2),
}


def state_vector(amplitudes, tol: float = 1e-10) -> np.ndarray:
    """Return ``amplitudes`` as a 1-d complex array, checking unit norm."""
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise ContractError("state vector must be non-empty and finite")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ContractError(f"state vector has norm {norm:.12g}, expected 1")
    return v


def ket(label: str) -> np.ndarray:
    """Product state from a label over ``0 1 + -``, e.g. ``ket("1+")``."""
    try:
        parts = [_SINGLE[c] for c in label]
    except KeyError as exc:
        raise ValueError(f"unknown qubit label {exc.args[0]!r} in {label!r}") from None
    out = np.array([1], dtype=complex)
    for p in parts:
        out = np.kron(out, p)
    return out


def projector(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(v, np.conj(v))


def outer(a, b) -> np.ndarray:
    """``|a><b|`` for vectors a, b."""
    return np.outer(np.asarray(a, dtype=complex).reshape(-1),
                    np.conj(np.asarray(b, dtype=complex).reshape(-1)))
