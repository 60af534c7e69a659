"""Quantum channel discrimination: one-shot and parallel optima, the overlap
certificate against perfect parallel discrimination, and exact simulation of
adaptive strategies."""
from dataclasses import dataclass
from itertools import product
from typing import Sequence, Tuple, Union

import numpy as np

from . import linalg as la
from .channels import (KrausChannel, apply, apply_on_factor, preparation_channel,
                       tensor_power, validate_channel)
from .errors import CapacityError, ContractError, ShapeError
from .sdp import DEFAULT_TOL, DiamondNormResult, diamond_norm_distance

CERT_TOL = 1e-9
MAX_CHOI_DIM = 4096


def helstrom_success(rho0, rho1) -> float:
    """Optimal equal-prior success probability for telling two states apart."""
    r0, r1 = la.as_matrix(rho0), la.as_matrix(rho1)
    if r0.shape != r1.shape:
        raise ShapeError(f"state shapes differ: {r0.shape} vs {r1.shape}")
    return 0.5 + la.trace_norm(r0 - r1) / 4


def one_shot_success(c0: KrausChannel, c1: KrausChannel, tol: float = DEFAULT_TOL) -> float:
    return diamond_norm_distance(c0, c1, tol).success_probability


def n_copy_diamond(c0: KrausChannel, c1: KrausChannel, n: int,
                   tol: float = DEFAULT_TOL) -> DiamondNormResult:
    """Diamond distance between the n-fold tensor powers of two channels."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    size = (c0.dim_out * c0.dim_in) ** n
    if size > MAX_CHOI_DIM:
        raise CapacityError(f"Choi dimension {size} for n={n} exceeds {MAX_CHOI_DIM}")
    return diamond_norm_distance(tensor_power(c0, n), tensor_power(c1, n), tol)


def n_copy_nonadaptive_success(c0: KrausChannel, c1: KrausChannel, n: int,
                               tol: float = DEFAULT_TOL) -> float:
    return n_copy_diamond(c0, c1, n, tol).success_probability


# -- overlap certificate ------------------------------------------------------

def paper_alpha() -> np.ndarray:
    """Coefficients that turn sum_jk alpha_jk B_j^dag A_k into a positive operator."""
    r2 = np.sqrt(2.0)
    alpha = np.zeros((5, 5), dtype=complex)
    alpha[0, 0] = alpha[1, 1] = r2
    alpha[2, 4] = alpha[3, 2] = 1.0
    alpha[3, 3] = -2 * r2
    return alpha


def overlap_operator(kraus_a: Sequence, kraus_b: Sequence, alpha) -> np.ndarray:
    """``sum_{j,k} alpha[j, k] B_j^dag A_k``."""
    alpha = la.as_matrix(alpha)
    if alpha.shape != (len(kraus_b), len(kraus_a)):
        raise ShapeError(f"alpha has shape {alpha.shape}, "
                         f"expected ({len(kraus_b)}, {len(kraus_a)})")
    a_ops = [la.as_matrix(a) for a in kraus_a]
    b_ops = [la.as_matrix(b) for b in kraus_b]
    if any(a.shape != a_ops[0].shape for a in a_ops) or \
            any(b.shape != a_ops[0].shape for b in b_ops):
        raise ShapeError("Kraus operators of both channels must share one shape")
    dim = a_ops[0].shape[1]
    out = np.zeros((dim, dim), dtype=complex)
    for j, k in product(range(len(b_ops)), range(len(a_ops))):
        if alpha[j, k] != 0:
            out += alpha[j, k] * (la.dagger(b_ops[j]) @ a_ops[k])
    return out


@dataclass(frozen=True)
class OverlapCertificate:
    """A Hermitian, positive-definite combination of the cross terms B_j^dag A_k.

    Its existence rules out any input (with ancilla, over any number of
    parallel uses) that makes the two outputs orthogonal.
    """
    alpha: np.ndarray
    p: np.ndarray
    min_eig: float


@dataclass(frozen=True)
class CertificateRejection:
    reason: str
    hermitian_deviation: float
    min_eig: float
    p: np.ndarray


def nonadaptive_impossibility_certificate(
        c0: KrausChannel, c1: KrausChannel, alpha,
) -> Union[OverlapCertificate, CertificateRejection]:
    p = overlap_operator(c0.kraus, c1.kraus, alpha)
    dev = la.hermitian_deviation(p)
    if dev > la.HERMITIAN_TOL:
        return CertificateRejection(f"P is not Hermitian (deviation {dev:.3g})",
                                    dev, float("nan"), p)
    lam = la.min_eigenvalue(p)
    if lam <= CERT_TOL:
        return CertificateRejection(f"P is not positive definite (min eigenvalue {lam:.3g})",
                                    dev, lam, p)
    return OverlapCertificate(np.array(alpha, dtype=complex), p, lam)


def pairwise_overlap_max(c0: KrausChannel, c1: KrausChannel, psi) -> float:
    """``max_{j,k} |<psi| B_j^dag A_k |psi>|``; zero iff the outputs on psi are orthogonal."""
    v = la.state_vector(psi)
    if v.shape[0] != c0.dim_in:
        raise ShapeError(f"state has dim {v.shape[0]}, channels expect {c0.dim_in}")
    av = [a @ v for a in c0.kraus]
    bv = [b @ v for b in c1.kraus]
    return max(abs(np.vdot(b, a)) for b, a in product(bv, av))


def output_overlap(c0: KrausChannel, c1: KrausChannel, psi) -> float:
    """``Tr(Phi_1(psi) Phi_0(psi))`` for a pure input."""
    rho = la.projector(la.state_vector(psi))
    return float(np.real(np.trace(apply(c1, rho) @ apply(c0, rho))))


# -- adaptive strategies ------------------------------------------------------

@dataclass(frozen=True)
class AdaptiveQuantumStrategy:
    """Rounds of (processing map, channel call) followed by a final measurement.

    Each processing map takes the current memory to (channel input (x) new
    memory). After the call the memory becomes (channel output (x) new
    memory). ``memory_dims[i]`` is the new-memory dimension of round ``i``;
    the POVM acts on the memory left after the last round.
    """
    rounds: Tuple[KrausChannel, ...]
    memory_dims: Tuple[int, ...]
    povm: Tuple[np.ndarray, ...]
    initial_memory_dim: int = 1
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.rounds) != len(self.memory_dims):
            raise ShapeError("need one memory dimension per round")
        for j, proc in enumerate(self.rounds):
            report = validate_channel(proc)
            if not report.ok:
                raise ContractError(f"round {j} processing map invalid: {report.violations}")
        effects = [la.as_matrix(e) for e in self.povm]
        total = sum(effects)
        if any(not la.is_psd(e) for e in effects):
            raise ContractError("POVM elements must be positive semidefinite")
        if np.max(np.abs(total - np.eye(total.shape[0]))) > 1e-9:
            raise ContractError("POVM elements do not sum to the identity")


def simulate_strategy(s: AdaptiveQuantumStrategy, c: KrausChannel) -> np.ndarray:
    """Exact outcome distribution of ``s`` run against channel ``c``."""
    state = np.eye(s.initial_memory_dim, dtype=complex) / s.initial_memory_dim
    for j, (proc, mem) in enumerate(zip(s.rounds, s.memory_dims)):
        if proc.dim_in != state.shape[0]:
            raise ShapeError(f"round {j}: processing map expects dim {proc.dim_in}, "
                             f"memory has dim {state.shape[0]}")
        if proc.dim_out != c.dim_in * mem:
            raise ShapeError(f"round {j}: processing output dim {proc.dim_out} != "
                             f"{c.dim_in} x {mem}")
        state = apply(proc, state)
        state = apply_on_factor(c, state, [c.dim_in, mem], 0)
    if s.povm[0].shape != state.shape:
        raise ShapeError(f"POVM acts on dim {s.povm[0].shape[0]}, final state has "
                         f"dim {state.shape[0]}")
    return np.array([float(np.real(np.trace(e @ state))) for e in s.povm])


def paper_two_step_strategy(rho_second) -> AdaptiveQuantumStrategy:
    """Two adaptive calls that identify phi0 / phi1 with certainty.

    Call 1 gets |0> (x) rho_second and returns the channel's key state; call 2
    gets |1> (x) key, and its output is measured in the standard basis.
    """
    rho = la.as_matrix(rho_second)
    if rho.shape != (2, 2):
        raise ShapeError(f"second-qubit state must be 2x2, got {rho.shape}")
    first = preparation_channel(np.kron(la.projector(la.ket("0")), rho))
    second = KrausChannel((np.kron(la.ket("1").reshape(2, 1), np.eye(2)),))
    povm = (la.projector(la.ket("0")), la.projector(la.ket("1")))
    return AdaptiveQuantumStrategy(rounds=(first, second), memory_dims=(1, 1),
                                   povm=povm, labels=("0", "1"))


def uniform_guess_strategy(dim_in: int, dim_out: int) -> AdaptiveQuantumStrategy:
    """One call on the maximally mixed state followed by a coin-flip POVM."""
    prep = preparation_channel(np.eye(dim_in) / dim_in)
    half = np.eye(dim_out) / 2
    return AdaptiveQuantumStrategy(rounds=(prep,), memory_dims=(1,), povm=(half, half))


def total_variation(p, q) -> float:
    return 0.5 * float(np.sum(np.abs(np.asarray(p) - np.asarray(q))))
