"""Independent oracles that certify the core solver pipeline.

Three routes to the steady-state covariance exist in this package: the
Schur-based :func:`lgsteer.gaussian.solve_lyapunov`, the vectorized
Kronecker solve here, and direct time integration of the covariance
ODE.  They share no linear-algebra code (this module leans on
``numpy.linalg`` rather than the in-repo eigensolver), so agreement is
meaningful evidence.  :func:`run_checks` bundles the cross-checks plus
analytic reference states for the CLI ``verify`` command; the solver
under test is injectable so a corrupted solver is detectably red.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import LgsteerError, SingularSystem, SolveFailure, StepOverflow
from .gaussian import (
    CovarianceMatrix,
    lyapunov_residual,
    min_pt_symplectic,
    solve_lyapunov,
    symplectic_eigenvalues,
)
from . import measures as _measures

# entries beyond this abort the integrator (diverging or bad step size)
_OVERFLOW = 1e12
# Kronecker-sum conditioning threshold for declaring marginal stability
_MARGINAL_TOL = 1e-12

_DEFAULT_SEED = 12345


def _generic_labels(n_modes: int) -> tuple[str, ...]:
    return tuple(f"mode{k + 1}" for k in range(n_modes))


def lyapunov_oracle(a: np.ndarray, d: np.ndarray) -> CovarianceMatrix:
    """Steady-state covariance by dense Kronecker elimination.

    Vectorizes ``A V + V A^T = -D`` into
    ``(I (+) A + A (+) I) vec(V) = -vec(D)`` and solves the 4n^2-sized
    dense system directly.  Slower than the Schur route but entirely
    independent of it; intended for tests and the ``verify`` command.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or d.shape != (n, n):
        raise SolveFailure(f"expected square matrices, got {a.shape} and {d.shape}")
    lam = np.linalg.eigvals(a)
    scale = max(1.0, float(np.max(np.abs(lam))))
    sums = lam[:, None] + lam[None, :]
    if np.min(np.abs(sums)) <= _MARGINAL_TOL * scale:
        raise SingularSystem(
            "eigenvalue pair sums to zero: marginally stable drift"
        )
    kron_sum = np.kron(np.eye(n), a) + np.kron(a, np.eye(n))
    try:
        vec = np.linalg.solve(kron_sum, -d.reshape(-1, order="F"))
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"Kronecker sum not invertible: {exc}") from exc
    v = vec.reshape((n, n), order="F")
    v = 0.5 * (v + v.T)
    resid = lyapunov_residual(a, d, v)
    bound = 1e-10 * max(
        1.0,
        float(np.max(np.abs(d))),
        float(np.max(np.abs(a))) * float(np.max(np.abs(v))),
    )
    if resid > bound:
        raise SolveFailure(f"oracle residual {resid} exceeds bound {bound}")
    return CovarianceMatrix(v, _generic_labels(n // 2))


def integrate_covariance(
    a: np.ndarray,
    d: np.ndarray,
    v0: np.ndarray | None,
    t_end: float,
    dt: float,
) -> CovarianceMatrix:
    """Integrate ``dV/dt = A V + V A^T + D`` with fixed-step RK4.

    ``v0 = None`` starts from zero covariance.  The state is
    re-symmetrized after every step, which lets each stage use the
    cheaper ``P + P^T + D`` form with ``P = A V``.  For stable drift and
    ``t_end >= 50/|margin|`` the result matches the Lyapunov solution to
    1e-6 in max entry.  Raises :class:`StepOverflow` when any entry
    exceeds 1e12 — the signature of an unstable drift or an unstable
    step size.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or d.shape != (n, n):
        raise SolveFailure(f"expected square matrices, got {a.shape} and {d.shape}")
    if dt <= 0.0 or t_end <= 0.0:
        raise SolveFailure(f"need positive t_end and dt, got {t_end} and {dt}")
    if v0 is None:
        v = np.zeros((n, n))
    else:
        v = np.array(getattr(v0, "data", v0), dtype=float)
        v = 0.5 * (v + v.T)
    n_steps = max(1, int(round(t_end / dt)))

    def rate(state: np.ndarray) -> np.ndarray:
        p = a @ state
        return p + p.T + d

    half = 0.5 * dt
    sixth = dt / 6.0
    for _ in range(n_steps):
        k1 = rate(v)
        k2 = rate(v + half * k1)
        k3 = rate(v + half * k2)
        k4 = rate(v + dt * k3)
        v = v + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        v = 0.5 * (v + v.T)
        peak = float(np.max(np.abs(v)))
        if not math.isfinite(peak) or peak > _OVERFLOW:
            raise StepOverflow(
                f"covariance entry reached {peak:g}: unstable drift or dt too large"
            )
    return CovarianceMatrix(v, _generic_labels(n // 2))


@dataclass(frozen=True)
class ReferenceState:
    """Analytic Gaussian state with closed-form measure values."""

    name: str
    cm: CovarianceMatrix
    expected: dict = field(default_factory=dict)


def reference(name: str, value: float) -> ReferenceState:
    """Analytic reference states: vacuum, thermal, two-mode squeezed.

    ``vacuum``: ``value`` = number of modes, V = I/2, every measure 0.
    ``thermal``: ``value`` = occupation n, single mode, Renyi-2 entropy
    ``ln(2n+1)``.  ``tmsv``: ``value`` = squeezing r; EN = 2r, both
    steering directions ``ln cosh 2r``, pure so entropy 0, and the
    smaller partial-transpose eigenvalue is ``exp(-2r)/2``.
    """
    if name == "vacuum":
        m = int(value)
        if m < 1 or m != value:
            raise ValueError(f"vacuum needs a positive integer mode count, got {value}")
        cm = CovarianceMatrix(0.5 * np.eye(2 * m), _generic_labels(m))
        expected = {"renyi2_entropy": 0.0}
        if m == 2:
            expected.update(
                log_negativity=0.0,
                steering_ab=0.0,
                steering_ba=0.0,
                min_pt_symplectic=0.5,
            )
        return ReferenceState("vacuum", cm, expected)
    if name == "thermal":
        nbar = float(value)
        if nbar < 0.0:
            raise ValueError(f"thermal occupation must be >= 0, got {value}")
        cm = CovarianceMatrix((nbar + 0.5) * np.eye(2), _generic_labels(1))
        return ReferenceState(
            "thermal", cm, {"renyi2_entropy": math.log(2.0 * nbar + 1.0)}
        )
    if name == "tmsv":
        r = float(value)
        ch = 0.5 * math.cosh(2.0 * r)
        sh = 0.5 * math.sinh(2.0 * r)
        v = np.array(
            [
                [ch, 0.0, sh, 0.0],
                [0.0, ch, 0.0, -sh],
                [sh, 0.0, ch, 0.0],
                [0.0, -sh, 0.0, ch],
            ]
        )
        cm = CovarianceMatrix(v, _generic_labels(2))
        zeta = math.log(math.cosh(2.0 * r))
        return ReferenceState(
            "tmsv",
            cm,
            {
                "log_negativity": 2.0 * r,
                "steering_ab": zeta,
                "steering_ba": zeta,
                "renyi2_entropy": 0.0,
                "min_pt_symplectic": 0.5 * math.exp(-2.0 * r),
            },
        )
    raise ValueError(f"unknown reference state {name!r}")


def random_stable_system(rng: np.random.Generator, n: int = 6):
    """Seeded random (A, D) pair with stability margin exactly -0.5.

    A is uniform on [-1, 1) shifted left by ``max Re eig + 0.5``; D is
    ``B B^T`` for uniform B, hence symmetric positive semidefinite.
    """
    m = rng.uniform(-1.0, 1.0, size=(n, n))
    shift = float(np.max(np.linalg.eigvals(m).real)) + 0.5
    a = m - shift * np.eye(n)
    b = rng.uniform(-1.0, 1.0, size=(n, n))
    return a, b @ b.T


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named verification check."""

    name: str
    passed: bool
    detail: str


def _check(name: str, fn) -> CheckResult:
    try:
        detail = fn()
    except LgsteerError as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    except (ValueError, ArithmeticError) as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    if detail is None:
        return CheckResult(name, True, "ok")
    if isinstance(detail, str):
        return CheckResult(name, False, detail)
    return CheckResult(name, True, "ok")


def run_checks(solver=None, seed: int = _DEFAULT_SEED, n_random: int = 20):
    """Run the verification suite; returns a list of :class:`CheckResult`.

    ``solver`` is the Lyapunov solver under test (defaults to the
    package solver); injecting a wrong one makes the identity and
    agreement checks fail by name.  ``seed`` fixes the random-matrix
    stream so failures reproduce; ``n_random`` sets how many seeded
    systems the three-route agreement covers.
    """
    solver = solve_lyapunov if solver is None else solver
    results: list[CheckResult] = []

    eye6 = np.eye(6)

    def solver_identity():
        v = solver(-eye6, eye6)
        err = float(np.max(np.abs(v.data - 0.5 * eye6)))
        if err > 1e-10:
            return f"max deviation from I/2 is {err:g}"

    def oracle_identity():
        v = lyapunov_oracle(-eye6, eye6)
        err = float(np.max(np.abs(v.data - 0.5 * eye6)))
        if err > 1e-12:
            return f"max deviation from I/2 is {err:g}"

    def integrator_identity():
        v = integrate_covariance(-eye6, eye6, None, 40.0, 0.01)
        err = float(np.max(np.abs(v.data - 0.5 * eye6)))
        if err > 1e-6:
            return f"max deviation from I/2 is {err:g}"

    def integrator_overflow():
        try:
            integrate_covariance(eye6, eye6, None, 60.0, 0.1)
        except StepOverflow:
            return None
        return "unstable drift did not trigger StepOverflow"

    def marginal_rejected():
        a = -eye6.copy()
        a[0, 0] = 0.0
        try:
            lyapunov_oracle(a, eye6)
        except SingularSystem:
            return None
        return "marginally stable drift was not rejected"

    def route_agreement():
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(n_random):
            a, d_mat = random_stable_system(rng)
            v_solver = solver(a, d_mat).data
            v_oracle = lyapunov_oracle(a, d_mat).data
            v_ode = integrate_covariance(a, d_mat, None, 100.0, 0.02).data
            worst = max(
                worst,
                float(np.max(np.abs(v_solver - v_oracle))),
                float(np.max(np.abs(v_solver - v_ode))),
                float(np.max(np.abs(v_oracle - v_ode))),
            )
        if worst > 1e-6:
            return f"worst three-route disagreement {worst:g} exceeds 1e-6"

    def reference_states():
        for r in (0.25, 0.5, 1.0, 2.0):
            ref = reference("tmsv", r)
            en = _measures.log_negativity(ref.cm)
            za = _measures.steering(ref.cm, "mode2")
            zb = _measures.steering(ref.cm, "mode1")
            ent = _measures.renyi2_entropy(ref.cm)
            nu = min_pt_symplectic(ref.cm)
            exp = ref.expected
            errs = (
                abs(en - exp["log_negativity"]),
                abs(za - exp["steering_ab"]),
                abs(zb - exp["steering_ba"]),
                abs(ent - exp["renyi2_entropy"]),
                abs(nu - exp["min_pt_symplectic"]),
            )
            if max(errs) > 1e-10:
                return f"tmsv(r={r}) deviates by {max(errs):g}"
        vac = reference("vacuum", 2)
        if abs(_measures.log_negativity(vac.cm)) > 0.0:
            return "vacuum shows entanglement"
        if abs(_measures.renyi2_entropy(vac.cm)) > 1e-12:
            return "vacuum entropy not zero"
        th = reference("thermal", 3.0)
        err = abs(_measures.renyi2_entropy(th.cm) - th.expected["renyi2_entropy"])
        if err > 1e-12:
            return f"thermal entropy off by {err:g}"

    def steady_state_physical():
        from .model import SystemParams, build_model

        w1 = 2.0 * math.pi * 1e7
        params = SystemParams(
            cavity_length=1e-3,
            mirror_mass=35e-12,
            mirror_radius=10e-6,
            omega_phi1=w1,
            omega_phi2=1.5 * w1,
            laser_power=50e-3,
            laser_wavelength=810e-9,
            quality_factor=2e7,
            finesse=5e3,
            oam_number=100,
            temperature=15e-3,
            opa_gain=0.0,
            opa_phase=0.0,
            detuning=w1,
        )
        lm = build_model(params)
        v = solver(lm.drift, lm.diffusion)
        resid = lyapunov_residual(lm.drift, lm.diffusion, v.data)
        bound = 1e-8 * max(1.0, float(np.max(np.abs(lm.diffusion))))
        if resid > bound:
            return f"steady-state residual {resid:g} exceeds {bound:g}"
        nus = symplectic_eigenvalues(v)
        if min(nus) < 0.5 - 1e-9:
            return f"symplectic eigenvalue {min(nus):g} below 1/2"

    results.append(_check("solver_identity", solver_identity))
    results.append(_check("oracle_identity", oracle_identity))
    results.append(_check("integrator_identity", integrator_identity))
    results.append(_check("integrator_overflow", integrator_overflow))
    results.append(_check("marginal_rejected", marginal_rejected))
    results.append(_check("route_agreement", route_agreement))
    results.append(_check("reference_states", reference_states))
    results.append(_check("steady_state_physical", steady_state_physical))
    return results
