"""Diamond-norm distance between two channels by semidefinite programming.

Primal (over Hermitian ``W`` and a density operator ``rho`` on the input)::

    maximize   2 <J, W>
    subject to 0 <= W <= 1_out (x) rho,   tr rho = 1

with ``J`` the Choi matrix of ``c0 - c1`` in (output, input) order. Its dual is::

    minimize   lambda_max(tr_out Y)
    subject to Y >= 0,  Y >= 2 J

The solver is a log-barrier path-following method on the dual. Every dual
iterate is strictly feasible, so ``lambda_max(tr_out Y)`` is an upper bound
as soon as feasibility is confirmed. A primal point is read off the central
path (``rho ~ mu S^-1``) and scored exactly: for fixed ``rho`` the best
``W`` is ``(1 (x) sqrt rho) Pi_+ (1 (x) sqrt rho)`` where ``Pi_+`` projects
onto the positive part of ``(1 (x) sqrt rho) J (1 (x) sqrt rho)``.
"""
from dataclasses import dataclass
import logging

import numpy as np
import scipy.linalg as sla

from . import linalg as la
from .channels import KrausChannel, choi
from .errors import ConvergenceError, ShapeError

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-6
MAX_ITER = 10_000


@dataclass(frozen=True)
class DiamondNormResult:
    value: float
    witness_rho: np.ndarray
    witness_w: np.ndarray
    dual_bound: float
    gap: float
    dual_y: np.ndarray
    iterations: int

    @property
    def success_probability(self) -> float:
        return 0.5 + self.value / 4


def _herm(m):
    return (m + m.conj().T) / 2


def _ptr_out(m, dim_out, dim_in):
    return np.einsum("aiaj->ij", m.reshape(dim_out, dim_in, dim_out, dim_in))


def _lift(x, dim_out):
    return np.kron(np.eye(dim_out), x)


def best_w_for_input(jdiff, rho, dim_out):
    """Optimal ``W`` for a fixed input ``rho`` and the primal value it attains."""
    root = _lift(la.sqrtm_psd(_herm(rho)), dim_out)
    k = _herm(root @ jdiff @ root)
    w, v = np.linalg.eigh(k)
    pos = v[:, w > 0]
    wmat = _herm(root @ (pos @ pos.conj().T) @ root)
    # 2 <J, W> equals twice the positive eigenvalue mass of k; never negative
    value = 2.0 * float(w[w > 0].sum())
    return value, wmat


def certified_dual_bound(jdiff, y, dim_out, dim_in):
    """Upper bound from a (possibly slightly infeasible) dual matrix ``y``.

    Any eigenvalue shortfall in ``y >= 0`` or ``y >= 2J`` is repaired by adding
    a multiple of the identity, which costs ``shift * dim_out`` in the bound.
    """
    y = _herm(y)
    shift = max(0.0,
                -float(np.linalg.eigvalsh(y)[0]),
                -float(np.linalg.eigvalsh(y - 2 * jdiff)[0]))
    top = float(np.linalg.eigvalsh(_herm(_ptr_out(y, dim_out, dim_in)))[-1])
    return top + shift * dim_out


def _barrier(y, t, mu, j2, dim_out, dim_in):
    try:
        chols = (np.linalg.cholesky(y),
                 np.linalg.cholesky(y - j2),
                 np.linalg.cholesky(t * np.eye(dim_in) - _ptr_out(y, dim_out, dim_in)))
    except np.linalg.LinAlgError:
        return np.inf
    return t / mu - sum(2 * np.log(np.abs(np.diag(c))).sum() for c in chols)


def _schur_block(tmat, ginv, dim_out, dim_in):
    """Matrix of ``u -> tr_out L^-1(1 (x) u)`` on row-major ``vec(u)``.

    ``L(H) = Y^-1 H Y^-1 + Z^-1 H Z^-1`` is diagonal in the congruence basis
    ``tmat``; ``ginv`` holds the reciprocal diagonal.
    """
    t3 = tmat.reshape(dim_out, dim_in, -1)
    d2 = dim_in * dim_in
    out = np.zeros((dim_in, dim_in, dim_in, dim_in), dtype=complex)
    for o in range(dim_out):
        for o2 in range(dim_out):
            left = np.einsum("ap,cp->acp", t3[o], t3[o2].conj()).reshape(d2, -1)
            right = np.einsum("dq,bq->dbq", t3[o2], t3[o].conj()).reshape(d2, -1)
            out += (left @ ginv @ right.T).reshape(dim_in, dim_in, dim_in, dim_in)
    # out[a, c, d, b] -> [a, b, c, d]
    return out.transpose(0, 3, 1, 2).reshape(d2, d2)


def _newton_step(y, t, mu, j2, dim_out, dim_in):
    z = y - j2
    s = t * np.eye(dim_in) - _ptr_out(y, dim_out, dim_in)
    yi, zi, si = (_herm(np.linalg.inv(m)) for m in (y, z, s))
    grad_y = -yi - zi + _lift(si, dim_out)
    grad_t = 1.0 / mu - float(np.trace(si).real)

    d, tmat = sla.eigh(zi, yi)
    ginv = 1.0 / (1.0 + np.outer(d, d))

    def l_inv(r):
        return tmat @ ((tmat.conj().T @ r @ tmat) * ginv) @ tmat.conj().T

    d2 = dim_in * dim_in
    plp = _schur_block(tmat, ginv, dim_out, dim_in)
    si2 = si @ si
    system = np.zeros((d2 + 1, d2 + 1), dtype=complex)
    system[:d2, :d2] = np.eye(d2) + plp @ np.kron(si, si.T)
    system[:d2, -1] = -(plp @ si2.reshape(-1))
    system[-1, :d2] = -si2.T.reshape(-1)
    system[-1, -1] = np.trace(si2).real
    rhs = np.concatenate([_ptr_out(l_inv(-grad_y), dim_out, dim_in).reshape(-1), [-grad_t]])
    sol = np.linalg.solve(system, rhs)
    u = _herm(sol[:-1].reshape(dim_in, dim_in))
    dt = float(sol[-1].real)
    dy = _herm(l_inv(-grad_y - _lift(si @ u @ si, dim_out) + dt * _lift(si2, dim_out)))
    slope = float(np.real(np.vdot(grad_y, dy))) + grad_t * dt
    return dy, dt, slope, si


def diamond_norm_distance(c0: KrausChannel, c1: KrausChannel, tol: float = DEFAULT_TOL,
                          max_iter: int = MAX_ITER) -> DiamondNormResult:
    """Certified ``||c0 - c1||_diamond`` to duality gap ``tol``.

    Raises :class:`ConvergenceError` (carrying the best bounds) when the
    iteration budget runs out or the barrier method stalls numerically.
    """
    if (c0.dim_in, c0.dim_out) != (c1.dim_in, c1.dim_out):
        raise ShapeError("channels must share input and output dimensions")
    if tol <= 0:
        raise ValueError("tol must be positive")
    jdiff = _herm(choi(c0) - choi(c1))
    return solve_diamond_sdp(jdiff, c0.dim_out, c0.dim_in, tol=tol, max_iter=max_iter)


def solve_diamond_sdp(jdiff, dim_out, dim_in, tol=DEFAULT_TOL, max_iter=MAX_ITER):
    n = dim_out * dim_in
    jdiff = _herm(la.as_matrix(jdiff))
    if jdiff.shape != (n, n):
        raise ShapeError(f"Choi matrix has shape {jdiff.shape}, expected {n}x{n}")
    j2 = 2 * jdiff
    y = la.positive_part(j2) + np.eye(n)
    t = la.max_eigenvalue(_herm(_ptr_out(y, dim_out, dim_in))) + 1.0
    mu = 1.0

    best_lo = (-np.inf, None, None)
    best_hi = (np.inf, None)
    iters = 0

    def finish():
        lo, rho, w = best_lo
        hi, ybest = best_hi
        return DiamondNormResult(value=lo, witness_rho=rho, witness_w=w,
                                 dual_bound=hi, gap=hi - lo, dual_y=ybest,
                                 iterations=iters)

    while iters < max_iter:
        stalled = False
        for _ in range(100):
            if iters >= max_iter:
                break
            iters += 1
            try:
                dy, dt, slope, si = _newton_step(y, t, mu, j2, dim_out, dim_in)
            except (np.linalg.LinAlgError, ValueError):
                stalled = True
                break
            decrement = np.sqrt(max(0.0, -slope))
            if decrement < 1e-3:
                break
            step = 1.0 / (1.0 + decrement) if decrement > 0.25 else 1.0
            f0 = _barrier(y, t, mu, j2, dim_out, dim_in)
            while step > 1e-12 and (_barrier(y + step * dy, t + step * dt, mu, j2, dim_out, dim_in)
                                    > f0 + 0.25 * step * slope):
                step *= 0.5
            if step <= 1e-12:
                stalled = True
                break
            y = _herm(y + step * dy)
            t = t + step * dt

        s = t * np.eye(dim_in) - _ptr_out(y, dim_out, dim_in)
        try:
            rho = _herm(np.linalg.inv(s))
        except np.linalg.LinAlgError:
            rho = None
        if rho is not None and np.all(np.isfinite(rho)) and np.trace(rho).real > 0:
            rho = rho / np.trace(rho).real
            lo, w = best_w_for_input(jdiff, rho, dim_out)
            if lo > best_lo[0]:
                best_lo = (lo, rho, w)
        hi = certified_dual_bound(jdiff, y, dim_out, dim_in)
        if hi < best_hi[0]:
            best_hi = (hi, y.copy())
        log.debug("mu=%.1e iters=%d lower=%.12f upper=%.12f", mu, iters, best_lo[0], best_hi[0])

        if best_hi[0] - best_lo[0] <= tol:
            return finish()
        if stalled or mu < 1e-15:
            break
        mu *= 0.1

    raise ConvergenceError(
        f"duality gap {best_hi[0] - best_lo[0]:.3g} above tol {tol:g} after {iters} steps",
        lower=best_lo[0], upper=best_hi[0])


def purified_input(rho) -> np.ndarray:
    """Pure input on (input (x) ancilla) realising the SDP value for ``rho``.

    ``|psi> = (sqrt(rho)^T (x) 1)|Omega>`` with ``|Omega> = sum_i |ii>``;
    feeding it to ``c (x) id`` reproduces the congruence used by the solver.
    """
    root = la.sqrtm_psd(rho)
    return root.T.reshape(-1)
