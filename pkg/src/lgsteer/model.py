"""Linearized model of a Laguerre-Gaussian cavity with two rotating mirrors.

The cavity supports a single LG mode with orbital angular momentum ``l``
driven by a laser of power ``P``; an intracavity parametric amplifier (gain
``chi``, pump phase ``theta``) squeezes the field.  Each mirror is a
torsional oscillator (angle, angular momentum) coupled to the field by the
radiation torque; reflection transfers ``2l*hbar`` per photon with opposite
sign at the two mirrors.

Linearizing the Langevin equations around the steady state gives

    d/dt u = A u + noise,        u = (d_phi1, d_Lz1, d_phi2, d_Lz2, dX, dY)

with a 6x6 drift matrix ``A`` and a diagonal diffusion matrix ``D`` that
together fix the steady-state covariance through ``A V + V A^T = -D``.
This module builds ``A`` and ``D`` in SI units (rad/s); everything
downstream works with the dimensionless ratios.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import CLIGHT, HBAR, KBOLTZ
from .eigen import eigenvalues
from .errors import NonPositiveParameter

__all__ = [
    "SystemParams",
    "DerivedParams",
    "SteadyState",
    "LinearModel",
    "derive",
    "steady_state",
    "build_drift",
    "build_diffusion",
    "build_model",
    "stability_margin",
    "thermal_occupation",
]

_POSITIVE_FIELDS = (
    "cavity_length",
    "mirror_mass",
    "mirror_radius",
    "omega_phi1",
    "omega_phi2",
    "laser_power",
    "laser_wavelength",
    "quality_factor",
    "finesse",
)


@dataclass(frozen=True)
class SystemParams:
    """Raw physical inputs, all in SI units.

    Parameters
    ----------
    cavity_length : float
        Cavity length L in meters.
    mirror_mass : float
        Mass m of each rotating mirror in kilograms.
    mirror_radius : float
        Mirror radius R in meters.
    omega_phi1, omega_phi2 : float
        Torsional angular frequencies of the two mirrors, rad/s.
    laser_power : float
        Drive power in watts.
    laser_wavelength : float
        Drive wavelength in meters.
    quality_factor : float
        Mechanical quality factor Q (sets gamma_m = omega_phi1 / Q).
    finesse : float
        Cavity finesse (sets kappa unless ``kappa_override`` is given).
    oam_number : int
        Topological charge l of the LG mode, integer >= 1.
    temperature : float
        Bath temperature in kelvin, >= 0.
    opa_gain : float
        Parametric gain chi in rad/s, >= 0.
    opa_phase : float
        Pump phase theta in radians; reduced modulo 2*pi on construction.
    detuning : float
        Effective cavity detuning Delta in rad/s (the sweep variable;
        may take either sign).
    kappa_override : float or None
        If set, replaces the finesse-derived cavity decay rate.
    """

    cavity_length: float
    mirror_mass: float
    mirror_radius: float
    omega_phi1: float
    omega_phi2: float
    laser_power: float
    laser_wavelength: float
    quality_factor: float
    finesse: float
    oam_number: int
    temperature: float
    opa_gain: float = 0.0
    opa_phase: float = 0.0
    detuning: float = 0.0
    kappa_override: float | None = None

    def __post_init__(self) -> None:
        for name in _POSITIVE_FIELDS:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise NonPositiveParameter(
                    f"{name} must be a strictly positive finite number, got {value!r}"
                )
        if not (isinstance(self.oam_number, int) and self.oam_number >= 1):
            raise NonPositiveParameter(
                f"oam_number must be an integer >= 1, got {self.oam_number!r}"
            )
        if not (math.isfinite(self.temperature) and self.temperature >= 0):
            raise NonPositiveParameter(
                f"temperature must be >= 0, got {self.temperature!r}"
            )
        if not (math.isfinite(self.opa_gain) and self.opa_gain >= 0):
            raise NonPositiveParameter(
                f"opa_gain must be >= 0, got {self.opa_gain!r}"
            )
        if not math.isfinite(self.detuning):
            raise NonPositiveParameter(f"detuning must be finite, got {self.detuning!r}")
        if self.kappa_override is not None and not (
            math.isfinite(self.kappa_override) and self.kappa_override > 0
        ):
            raise NonPositiveParameter(
                f"kappa_override must be strictly positive, got {self.kappa_override!r}"
            )
        # canonical phase in [0, 2*pi)
        object.__setattr__(self, "opa_phase", self.opa_phase % (2.0 * math.pi))


@dataclass(frozen=True)
class DerivedParams:
    """Rates and constants computed from :class:`SystemParams`.

    ``kappa`` is the cavity amplitude decay rate, ``gamma_m`` the mirror
    damping rate, ``inertia`` the moment of inertia I = m R^2 / 2,
    ``g1``/``g2`` the single-photon optorotational couplings,
    ``nbar1``/``nbar2`` the thermal occupations of the two mirrors,
    ``drive_amplitude`` the input-field amplitude E and ``laser_freq``
    the laser angular frequency.  All rates in rad/s.
    """

    kappa: float
    gamma_m: float
    inertia: float
    g1: float
    g2: float
    nbar1: float
    nbar2: float
    drive_amplitude: float
    laser_freq: float
    params: SystemParams = field(repr=False)


@dataclass(frozen=True)
class SteadyState:
    """Classical working point the fluctuations are expanded around.

    ``a0`` is the intracavity field amplitude, ``phi10``/``phi20`` the
    static angular displacements, and ``G1``/``G2`` the effective
    (photon-enhanced) coupling rates in rad/s.
    """

    a0: complex
    phi10: float
    phi20: float
    G1: float
    G2: float
    delta_eff: float


@dataclass(frozen=True)
class LinearModel:
    """Drift and diffusion matrices plus the working point behind them.

    ``drift`` and ``diffusion`` are 6x6 real matrices in rad/s with
    row/column ordering (d_phi1, d_Lz1, d_phi2, d_Lz2, dX, dY).
    """

    drift: np.ndarray
    diffusion: np.ndarray
    steady: SteadyState
    derived: DerivedParams


def thermal_occupation(omega: float, temperature: float) -> float:
    """Bose occupation n̄ of a mode at ``omega`` (rad/s) and temperature (K).

    Satisfies 2*n̄ + 1 = coth(hbar*omega / (2*kB*T)); returns 0 at T = 0.
    """
    if temperature == 0.0:
        return 0.0
    x = HBAR * omega / (KBOLTZ * temperature)
    return 1.0 / math.expm1(x)


def derive(params: SystemParams) -> DerivedParams:
    """Compute all derived rates from the raw inputs.

    The cavity decay follows kappa = pi*c / (2*F*L) unless overridden;
    the drive amplitude is E = sqrt(2*kappa*P / (hbar*omega_L)).
    """
    kappa = math.pi * CLIGHT / (2.0 * params.finesse * params.cavity_length)
    if params.kappa_override is not None:
        kappa = params.kappa_override
    gamma_m = params.omega_phi1 / params.quality_factor
    inertia = params.mirror_mass * params.mirror_radius**2 / 2.0
    coupling_prefactor = CLIGHT * params.oam_number / params.cavity_length
    g1 = coupling_prefactor * math.sqrt(HBAR / (inertia * params.omega_phi1))
    g2 = coupling_prefactor * math.sqrt(HBAR / (inertia * params.omega_phi2))
    laser_freq = 2.0 * math.pi * CLIGHT / params.laser_wavelength
    drive_amplitude = math.sqrt(
        2.0 * kappa * params.laser_power / (HBAR * laser_freq)
    )
    return DerivedParams(
        kappa=kappa,
        gamma_m=gamma_m,
        inertia=inertia,
        g1=g1,
        g2=g2,
        nbar1=thermal_occupation(params.omega_phi1, params.temperature),
        nbar2=thermal_occupation(params.omega_phi2, params.temperature),
        drive_amplitude=drive_amplitude,
        laser_freq=laser_freq,
        params=params,
    )


def steady_state(derived: DerivedParams) -> SteadyState:
    """Solve for the classical working point.

    The intracavity amplitude is

        a0 = (kappa - i*Delta + 2*chi*e^{i*theta}) * E
             / (kappa^2 + Delta^2 + 4*chi^2)

    and the static mirror displacements follow from torque balance,
    phi_j0 = g_aj |a0|^2 / omega_phij with g_a1 = -g1, g_a2 = +g2.
    The effective couplings G_j = sqrt(2) g_j |a0| drop a0's global
    phase (a cavity-field phase rotation that leaves the correlation
    spectrum unchanged).
    """
    p = derived.params
    chi = p.opa_gain
    delta = p.detuning
    kappa = derived.kappa
    denom = kappa**2 + delta**2 + 4.0 * chi**2
    a0 = (
        (kappa - 1j * delta + 2.0 * chi * cmath.exp(1j * p.opa_phase))
        * derived.drive_amplitude
        / denom
    )
    mag2 = abs(a0) ** 2
    phi10 = -derived.g1 * mag2 / p.omega_phi1
    phi20 = +derived.g2 * mag2 / p.omega_phi2
    root2 = math.sqrt(2.0)
    return SteadyState(
        a0=a0,
        phi10=phi10,
        phi20=phi20,
        G1=root2 * derived.g1 * abs(a0),
        G2=root2 * derived.g2 * abs(a0),
        delta_eff=delta,
    )


def build_drift(derived: DerivedParams, steady: SteadyState) -> np.ndarray:
    """Assemble the 6x6 drift matrix.

    Cavity block entries: mu_pm = -kappa +/- 2*chi*cos(theta) on the
    diagonal, rho_plus = +Delta + 2*chi*sin(theta) in the X row and
    rho_minus = -Delta + 2*chi*sin(theta) in the Y row.  The mirrors
    couple to the amplitude quadrature with opposite signs (-G1, +G2),
    mirroring the opposite angular-momentum transfer at the two mirrors.
    """
    p = derived.params
    w1 = p.omega_phi1
    w2 = p.omega_phi2
    gm = derived.gamma_m
    chi = p.opa_gain
    theta = p.opa_phase
    delta = steady.delta_eff
    G1 = steady.G1
    G2 = steady.G2
    mu_p = -derived.kappa + 2.0 * chi * math.cos(theta)
    mu_m = -derived.kappa - 2.0 * chi * math.cos(theta)
    rho_p = +delta + 2.0 * chi * math.sin(theta)
    rho_m = -delta + 2.0 * chi * math.sin(theta)
    return np.array(
        [
            [0.0, w1, 0.0, 0.0, 0.0, 0.0],
            [-w1, -gm, 0.0, 0.0, -G1, 0.0],
            [0.0, 0.0, 0.0, w2, 0.0, 0.0],
            [0.0, 0.0, -w2, -gm, G2, 0.0],
            [0.0, 0.0, 0.0, 0.0, mu_p, rho_p],
            [-G1, 0.0, G2, 0.0, rho_m, mu_m],
        ]
    )


def build_diffusion(derived: DerivedParams) -> np.ndarray:
    """Diagonal diffusion matrix diag(0, gamma*(2n1+1), 0, gamma*(2n2+1), kappa, kappa)."""
    gm = derived.gamma_m
    return np.diag(
        [
            0.0,
            gm * (2.0 * derived.nbar1 + 1.0),
            0.0,
            gm * (2.0 * derived.nbar2 + 1.0),
            derived.kappa,
            derived.kappa,
        ]
    )


def build_model(params: SystemParams) -> LinearModel:
    """Full pipeline: params -> derived -> steady state -> (A, D)."""
    derived = derive(params)
    steady = steady_state(derived)
    return LinearModel(
        drift=build_drift(derived, steady),
        diffusion=build_diffusion(derived),
        steady=steady,
        derived=derived,
    )


def stability_margin(drift: np.ndarray) -> float:
    """Largest real part of the drift spectrum, in the units of ``drift``.

    The linear system has a steady state iff the margin is strictly
    negative.  The matrix is rescaled by a power of two near its largest
    entry before the QR iteration so SI-scale and unit-scale inputs take
    the same numerical path.
    """
    drift = np.asarray(drift, dtype=float)
    scale = float(np.max(np.abs(drift)))
    if scale == 0.0:
        return 0.0
    # exact (power-of-two) scaling: no rounding introduced
    scale = 2.0 ** math.ceil(math.log2(scale))
    lam = eigenvalues(drift / scale)
    return scale * max(z.real for z in lam)


def with_updates(params: SystemParams, **changes) -> SystemParams:
    """Return a copy of ``params`` with the given fields replaced."""
    return replace(params, **changes)
