"""Quantum channels in Kraus form.

A channel is a list of Kraus operators ``K_j`` of shape ``(dim_out, dim_in)``
acting as ``X -> sum_j K_j X K_j^dagger``. Choi matrices use the
``output (x) input`` factor ordering, ``J = sum_ij Phi(E_ij) (x) E_ij``.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import List, Tuple

import numpy as np

from . import linalg as la
from .errors import ContractError, ShapeError

TP_TOL = 1e-9
RANK_TOL = 1e-10


@dataclass(frozen=True)
class KrausChannel:
    kraus: Tuple[np.ndarray, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        ops = tuple(la.as_matrix(k).copy() for k in self.kraus)
        if not ops:
            raise ShapeError("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        for j, k in enumerate(ops):
            if k.shape != shape:
                raise ShapeError(f"Kraus operator {j} has shape {k.shape}, expected {shape}")
            k.setflags(write=False)
        object.__setattr__(self, "kraus", ops)

    @property
    def dim_in(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.kraus[0].shape[0]

    def __len__(self):
        return len(self.kraus)

    def __eq__(self, other):
        if not isinstance(other, KrausChannel):
            return NotImplemented
        return len(self) == len(other) and all(a.shape == b.shape and np.array_equal(a, b)
                   for a, b in zip(self.kraus, other.kraus))

    __hash__ = None


@dataclass(frozen=True)
class ChannelReport:
    """Outcome of :func:`validate_channel`."""
    ok: bool
    completeness_deviation: float
    violations: Tuple[str, ...] = ()


def validate_channel(c: KrausChannel, tol: float = TP_TOL) -> ChannelReport:
    """Check trace preservation: max-entry deviation of sum K^dag K from identity."""
    violations: List[str] = []
    shape = c.kraus[0].shape
    for j, k in enumerate(c.kraus):
        if k.shape != shape:
            violations.append(f"kraus[{j}] has shape {k.shape}, expected {shape}")
    if violations:
        return ChannelReport(False, float("inf"), tuple(violations))
    total = sum(la.dagger(k) @ k for k in c.kraus)
    dev = float(np.max(np.abs(total - np.eye(c.dim_in))))
    if dev > tol:
        violations.append(f"sum K^dag K deviates from identity by {dev:.3g}")
    return ChannelReport(not violations, dev, tuple(violations))


def identity_channel(dim: int) -> KrausChannel:
    return KrausChannel((np.eye(dim, dtype=complex),), name=f"id{dim}")


def constant_channel(state, dim_in: int) -> KrausChannel:
    """The replacement channel ``X -> tr(X) sigma``."""
    sigma = la.as_matrix(state)
    w, v = la.hermitian_eig(sigma)
    if w[0] < la.PSD_TOL or abs(w.sum() - 1) > TP_TOL:
        raise ContractError("replacement state must be a density operator")
    ops = []
    for lam, vec in zip(w, v.T):
        if lam <= 1e-15:
            continue
        for i in range(dim_in):
            e = np.zeros(dim_in)
            e[i] = 1.0
            ops.append(np.sqrt(lam) * la.outer(vec, e))
    return KrausChannel(tuple(ops))


def preparation_channel(state) -> KrausChannel:
    """A 1-dimensional-input channel that prepares ``state``."""
    return constant_channel(state, 1)


def _check_state_dim(rho, dim: int) -> np.ndarray:
    r = la.as_matrix(rho)
    if r.shape != (dim, dim):
        raise ShapeError(f"state has shape {r.shape}, channel expects {dim}x{dim}")
    return r


def apply(c: KrausChannel, rho) -> np.ndarray:
    r = _check_state_dim(rho, c.dim_in)
    out = sum(k @ r @ la.dagger(k) for k in c.kraus)
    return (out + la.dagger(out)) / 2


def apply_extended(c: KrausChannel, rho, ancilla_dim: int) -> np.ndarray:
    """Apply ``c (x) id_W`` with factor order (channel input, ancilla)."""
    if ancilla_dim < 1:
        raise ShapeError("ancilla dimension must be positive")
    r = _check_state_dim(rho, c.dim_in * ancilla_dim)
    eye = np.eye(ancilla_dim)
    out = np.zeros((c.dim_out * ancilla_dim,) * 2, dtype=complex)
    for k in c.kraus:
        kk = np.kron(k, eye)
        out += kk @ r @ la.dagger(kk)
    return (out + la.dagger(out)) / 2


def apply_on_factor(c: KrausChannel, rho, dims, factor: int) -> np.ndarray:
    """Apply ``c`` to tensor factor ``factor`` of a multipartite state.

    Returns the state with that factor replaced by the channel output.
    """
    dims = list(dims)
    if dims[factor] != c.dim_in:
        raise ShapeError(f"factor {factor} has dim {dims[factor]}, channel expects {c.dim_in}")
    r = _check_state_dim(rho, int(np.prod(dims)))
    left = int(np.prod(dims[:factor]))
    right = int(np.prod(dims[factor + 1:]))
    el, er = np.eye(left), np.eye(right)
    d_out = left * c.dim_out * right
    out = np.zeros((d_out, d_out), dtype=complex)
    for k in c.kraus:
        kk = np.kron(np.kron(el, k), er)
        out += kk @ r @ la.dagger(kk)
    return (out + la.dagger(out)) / 2


def tensor_channels(c1: KrausChannel, c2: KrausChannel) -> KrausChannel:
    ops = tuple(np.kron(a, b) for a, b in product(c1.kraus, c2.kraus))
    return KrausChannel(ops)


def tensor_power(c: KrausChannel, n: int) -> KrausChannel:
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    out = c
    for _ in range(n - 1):
        out = tensor_channels(out, c)
    return out


def choi(c: KrausChannel) -> np.ndarray:
    """Choi matrix ``sum_ij c(E_ij) (x) E_ij`` (output factor first).

    Built as ``sum_k |K_k>><<K_k|`` with ``|K>> = sum_i K|i> (x) |i>``; row-major
    flattening of ``K`` gives exactly that vector.
    """
    vecs = np.stack([k.reshape(-1) for k in c.kraus], axis=1)
    return vecs @ la.dagger(vecs)


def choi_from_action(c: KrausChannel) -> np.ndarray:
    """Choi matrix from its definition, applying ``c`` to each matrix unit."""
    d = c.dim_in
    out = np.zeros((c.dim_out * d,) * 2, dtype=complex)
    for i, j in product(range(d), repeat=2):
        e = np.zeros((d, d), dtype=complex)
        e[i, j] = 1.0
        image = sum(k @ e @ la.dagger(k) for k in c.kraus)
        out += np.kron(image, e)
    return out


def apply_via_choi(j_mat, rho, dim_out: int) -> np.ndarray:
    """``Phi(rho) = tr_in[J (1 (x) rho^T)]`` for a Choi matrix in (out, in) order."""
    r = la.as_matrix(rho)
    dim_in = r.shape[0]
    prod_ = la.as_matrix(j_mat) @ np.kron(np.eye(dim_out), r.T)
    return la.partial_trace(prod_, [dim_out, dim_in], keep=[0])


def all_kraus_rank_one(c: KrausChannel, tol: float = RANK_TOL) -> bool:
    """True when every Kraus operator has numerical rank one.

    Rank-one Kraus operators are a sufficient witness that the channel is
    entanglement breaking.
    """
    for k in c.kraus:
        s = np.linalg.svd(k, compute_uv=False)
        if s[0] <= tol or (len(s) > 1 and s[1] >= tol):
            return False
    return True


# -- the two-qubit-to-one-qubit channel pair ----------------------------------

_S = np.sqrt(0.5)


def phi0() -> KrausChannel:
    """Measure qubit 1; on 0 emit |0>, on 1 measure qubit 2: 0 -> |0>, 1 -> I/2."""
    k = la.ket
    ops = (
        la.outer(k("0"), k("00")),
        la.outer(k("0"), k("01")),
        la.outer(k("0"), k("10")),
        _S * la.outer(k("0"), k("11")),
        _S * la.outer(k("1"), k("11")),
    )
    return KrausChannel(ops, name="phi0")


def phi1() -> KrausChannel:
    """Measure qubit 1; on 0 emit |+>, on 1 measure qubit 2 in +/-: + -> |1>, - -> I/2."""
    k = la.ket
    ops = (
        la.outer(k("+"), k("00")),
        la.outer(k("+"), k("01")),
        la.outer(k("1"), k("1+")),
        _S * la.outer(k("0"), k("1-")),
        _S * la.outer(k("1"), k("1-")),
    )
    return KrausChannel(ops, name="phi1")
