"""Covariance-matrix containers and the Gaussian linear-algebra kernel.

Quadrature ordering is (q_1, p_1, q_2, p_2, ...) per mode with vacuum
variance 1/2, so the symplectic form is Omega = diag-blocks [[0, 1], [-1, 0]]
and a state is physical iff every symplectic eigenvalue is >= 1/2.

The steady-state covariance of the linear model solves the Lyapunov
equation A V + V A^T = -D; :func:`solve_lyapunov` implements the
Bartels-Stewart strategy on top of the in-package real Schur
decomposition.  An independent vectorized solver lives in
:mod:`lgsteer.validation` so the two routes can cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigen import eigenvalues, real_schur, schur_eigenvalues
from .errors import (
    EigenFailure,
    NonPhysicalInput,
    SolveFailure,
    UnknownMode,
    UnstableSystem,
)

__all__ = [
    "CovarianceMatrix",
    "symplectic_form",
    "reduce",
    "partial_transpose",
    "symplectic_eigenvalues",
    "min_pt_symplectic",
    "steady_covariance",
    "solve_lyapunov",
    "lyapunov_residual",
]

MODE_ORDER = ("mirror1", "mirror2", "cavity")

_SYM_TOL = 1e-12
_PHYS_TOL = 1e-9
_PAIR_TOL = 1e-8


@dataclass(frozen=True)
class CovarianceMatrix:
    """Real symmetric matrix of quadrature second moments.

    ``data`` is symmetrized on construction and frozen; ``mode_labels``
    names the modes in row order.  Physicality (nu >= 1/2) is *not*
    enforced here because partial transposition legitimately produces
    non-physical matrices of the same shape; use :meth:`check_physical`
    where a contract requires a genuine state.
    """

    data: np.ndarray
    mode_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=float)
        n = 2 * len(self.mode_labels)
        if data.shape != (n, n):
            raise NonPhysicalInput(
                f"covariance shape {data.shape} does not match "
                f"{len(self.mode_labels)} mode labels"
            )
        if not np.all(np.isfinite(data)):
            raise NonPhysicalInput("covariance matrix has non-finite entries")
        sym = 0.5 * (data + data.T)
        sym.flags.writeable = False
        object.__setattr__(self, "data", sym)
        object.__setattr__(self, "mode_labels", tuple(self.mode_labels))

    @property
    def n_modes(self) -> int:
        return len(self.mode_labels)

    def check_physical(self, tol: float = _PHYS_TOL) -> None:
        """Raise :class:`NonPhysicalInput` unless every nu >= 1/2 - tol."""
        nus = symplectic_eigenvalues(self)
        if nus[0] < 0.5 - tol:
            raise NonPhysicalInput(
                f"smallest symplectic eigenvalue {nus[0]} violates the "
                f"Heisenberg bound 1/2"
            )


def symplectic_form(n_modes: int) -> np.ndarray:
    """Omega = direct sum of n_modes copies of [[0, 1], [-1, 0]]."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _mode_index(cm: CovarianceMatrix, label: str) -> int:
    try:
        return cm.mode_labels.index(label)
    except ValueError:
        raise UnknownMode(
            f"mode {label!r} not in {cm.mode_labels}"
        ) from None


def reduce(cm: CovarianceMatrix, modes) -> CovarianceMatrix:
    """Principal submatrix for the given mode subset, original ordering."""
    wanted = set(modes)
    if not wanted:
        raise UnknownMode("mode subset must be non-empty")
    for label in wanted:
        _mode_index(cm, label)
    keep_labels = tuple(lb for lb in cm.mode_labels if lb in wanted)
    idx = []
    for i, lb in enumerate(cm.mode_labels):
        if lb in wanted:
            idx.extend((2 * i, 2 * i + 1))
    return CovarianceMatrix(cm.data[np.ix_(idx, idx)], keep_labels)


def partial_transpose(cm: CovarianceMatrix, mode: str) -> CovarianceMatrix:
    """Flip the sign of ``mode``'s momentum quadrature: V -> P V P.

    An involution; the determinant is preserved (P has det -1 but enters
    twice).
    """
    i = _mode_index(cm, mode)
    p = np.ones(2 * cm.n_modes)
    p[2 * i + 1] = -1.0
    return CovarianceMatrix(cm.data * np.outer(p, p), cm.mode_labels)


def symplectic_eigenvalues(cm: CovarianceMatrix) -> list[float]:
    """Moduli of eig(i Omega V), paired and deduplicated, ascending.

    The 2m eigenvalues of Omega V come in +/- pairs; their moduli are
    matched to relative tolerance 1e-8 and averaged.  A pairing failure
    signals a numerical pathology and raises :class:`EigenFailure`.
    """
    omega = symplectic_form(cm.n_modes)
    lam = eigenvalues(omega @ cm.data)
    mods = sorted(abs(z) for z in lam)
    out = []
    for k in range(0, len(mods), 2):
        a, b = mods[k], mods[k + 1]
        if b - a > _PAIR_TOL * max(b, 1.0):
            raise EigenFailure(
                f"symplectic eigenvalue moduli {a} and {b} do not pair "
                f"within tolerance"
            )
        out.append(0.5 * (a + b))
    return out


def min_pt_symplectic(cm: CovarianceMatrix) -> float:
    """Smallest symplectic eigenvalue of the partially transposed two-mode CM.

    Uses the determinant closed form

        nu = 2^{-1/2} sqrt(aleph - sqrt(aleph^2 - 4 det V)),
        aleph = det A + det B - 2 det C,

    where A, B are the single-mode blocks and C the cross block.  Values
    below 1/2 certify entanglement of the two modes.
    """
    if cm.n_modes != 2:
        raise NonPhysicalInput(
            f"closed form needs a two-mode CM, got {cm.n_modes} modes"
        )
    v = cm.data
    det_a = float(np.linalg.det(v[0:2, 0:2]))
    det_b = float(np.linalg.det(v[2:4, 2:4]))
    det_c = float(np.linalg.det(v[0:2, 2:4]))
    det_v = float(np.linalg.det(v))
    aleph = det_a + det_b - 2.0 * det_c
    disc = aleph * aleph - 4.0 * det_v
    tol = 1e-9 * max(1.0, aleph * aleph)
    if disc < -tol:
        raise NonPhysicalInput(
            f"aleph^2 - 4 det V = {disc} < 0: upstream covariance is not "
            f"a valid state"
        )
    inner = 0.5 * (aleph - math.sqrt(max(disc, 0.0)))
    if inner < -tol:
        raise NonPhysicalInput(f"negative nu^2 = {inner} in closed form")
    return math.sqrt(max(inner, 0.0))


def _diag_blocks(t: np.ndarray) -> list[tuple[int, int]]:
    """(start, size) partition of a quasi-triangular matrix's diagonal."""
    n = t.shape[0]
    blocks = []
    i = 0
    while i < n:
        if i < n - 1 and t[i + 1, i] != 0.0:
            blocks.append((i, 2))
            i += 2
        else:
            blocks.append((i, 1))
            i += 1
    return blocks


def _back_substitute(t: np.ndarray, q: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve ``A X + X A^T = -rhs`` given the real Schur pair of A."""
    n = t.shape[0]
    rhs_t = q.T @ rhs @ q
    y = np.zeros((n, n))
    eye_n = np.eye(n)
    for start, size in reversed(_diag_blocks(t)):
        jj = slice(start, start + size)
        after = slice(start + size, n)
        c = -rhs_t[:, jj] - y[:, after] @ t[jj, after].T
        m = np.kron(np.eye(size), t) + np.kron(t[jj, jj], eye_n)
        try:
            x = np.linalg.solve(m, c.reshape(-1, order="F"))
        except np.linalg.LinAlgError as exc:
            raise SolveFailure(f"singular Sylvester block at {start}: {exc}") from exc
        y[:, jj] = x.reshape((n, size), order="F")
    return q @ y @ q.T


def steady_covariance(a: np.ndarray, d: np.ndarray):
    """Stability margin and (when stable) steady-state covariance.

    Returns ``(margin, cm_or_None)`` with the margin in the units of
    ``a``.  One Schur decomposition serves both the stability decision
    and the Bartels-Stewart back-substitution, which keeps grid sweeps
    cheap and guarantees the two can never disagree at a boundary point.

    Near-marginal systems (margin within ~1e-8 of zero relative to the
    fastest rate) have steady states with entries of order 1/|margin|;
    there the plain back-substitution loses backward stability, so the
    solution is polished by iterative refinement until the residual sits
    at the backward-stable floor ``eps * |A| * |V|``.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    if a.shape != (6, 6) or d.shape != (6, 6):
        raise SolveFailure(f"expected 6x6 matrices, got {a.shape} and {d.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(d))):
        raise SolveFailure("drift or diffusion has non-finite entries")
    if np.max(np.abs(d - d.T)) > _SYM_TOL * max(1.0, np.max(np.abs(d))):
        raise SolveFailure("diffusion matrix is not symmetric")
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return 0.0, None
    # exact power-of-two scaling keeps SI-scale and unit-scale inputs on
    # the same numerical path
    scale = 2.0 ** math.ceil(math.log2(scale))
    a_s = a / scale
    d_s = d / scale
    t, q = real_schur(a_s)
    margin = max(z.real for z in schur_eigenvalues(t)) * scale
    if margin >= 0.0:
        return margin, None
    v = _back_substitute(t, q, d_s)
    v = 0.5 * (v + v.T)
    al = a_s.astype(np.longdouble)
    dl = d_s.astype(np.longdouble)
    amax = float(np.max(np.abs(a_s)))
    dmax = float(np.max(np.abs(d_s)))
    eps = float(np.finfo(float).eps)
    for _ in range(4):
        if not np.all(np.isfinite(v)):
            raise SolveFailure("Lyapunov solution has non-finite entries")
        vl = v.astype(np.longdouble)
        resid_mat = np.asarray(al @ vl + vl @ al.T + dl, dtype=float)
        resid = float(np.max(np.abs(resid_mat)))
        floor = 32.0 * eps * max(1.0, dmax, amax * float(np.max(np.abs(v))))
        if resid <= floor:
            break
        delta = _back_substitute(t, q, resid_mat)
        v = 0.5 * ((v + delta) + (v + delta).T)
    if not np.all(np.isfinite(v)):
        raise SolveFailure("Lyapunov solution has non-finite entries")
    vmax = float(np.max(np.abs(v)))
    resid = lyapunov_residual(a, d, v)
    bound = 1e-8 * max(1.0, float(np.max(np.abs(d))), float(np.max(np.abs(a))) * vmax)
    if resid > bound:
        raise SolveFailure(f"Lyapunov residual {resid} exceeds bound {bound}")
    jitter = 1e-9 * max(1.0, vmax)
    try:
        np.linalg.cholesky(v + jitter * np.eye(6))
    except np.linalg.LinAlgError as exc:
        raise SolveFailure(
            "Lyapunov solution is not positive semidefinite"
        ) from exc
    return margin, CovarianceMatrix(v, MODE_ORDER)


def solve_lyapunov(a: np.ndarray, d: np.ndarray) -> CovarianceMatrix:
    """Steady-state covariance from A V + V A^T = -D (Bartels-Stewart).

    Requires a strictly stable drift; raises :class:`UnstableSystem`
    otherwise (callers sweeping a grid should mask the point instead of
    treating this as fatal).
    """
    margin, cm = steady_covariance(a, d)
    if cm is None:
        raise UnstableSystem(
            f"stability margin {margin} >= 0: no steady state"
        )
    return cm


def lyapunov_residual(a: np.ndarray, d: np.ndarray, v) -> float:
    """Max-norm of A V + V A^T + D.

    Accumulated in extended precision so the returned value reflects the
    quality of ``v`` rather than rounding noise in the evaluation, which
    matters when the products ``A V`` are many orders larger than their
    cancelling sum.
    """
    vm = v.data if isinstance(v, CovarianceMatrix) else np.asarray(v, dtype=float)
    al = np.asarray(a, dtype=np.longdouble)
    vl = vm.astype(np.longdouble)
    dl = np.asarray(d, dtype=np.longdouble)
    return float(np.max(np.abs(al @ vl + vl @ al.T + dl)))
