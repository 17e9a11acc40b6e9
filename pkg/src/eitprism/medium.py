"""Steady-state optical response of a coherently driven three-level vapor.

Everything is Gaussian CGS: lengths in cm, number densities in cm^-3, and
all rates / detunings / Rabi frequencies in angular units (rad/s).

For a weak probe detuned by ``delta`` from two-photon resonance, with a
control field of Rabi frequency ``omega``, the probe susceptibility of the
Lambda system is

    chi(delta) = eta * gamma_r * (delta + i*gamma_cb)
                 / (omega**2 + (gamma - i*delta) * (gamma_cb - i*delta))

where ``gamma`` is the optical coherence decay rate, ``gamma_cb`` the
ground-state coherence decay rate, ``gamma_r`` the radiative rate of the
probe transition, and ``eta = 3 * wavelength**3 * density / (16 * pi**2)``.
Its real part collapses to the familiar dispersive form implemented in
:func:`re_chi`; the two are checked against each other in the tests.  The
imaginary part is non-negative for physical rates, so the medium never
amplifies.

A transversely Gaussian control beam makes ``omega`` a function of the
transverse coordinate x, which turns the vapor into a gradient-index
element.  :func:`index_profile` evaluates n(x) on a grid and
:func:`grad_index` gives the analytic transverse derivative of Re n used by
the ray tracer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MediumParams",
    "ControlField",
    "eta",
    "re_chi",
    "complex_chi",
    "refractive_index",
    "rabi_at",
    "index_profile",
    "grad_index",
    "grad_index_fd",
]

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class MediumParams:
    """Atomic and cell parameters.

    wavelength : probe wavelength in vacuum, cm
    density    : number density of atoms, cm^-3
    gamma_r    : radiative decay rate of the probe transition, rad/s
    gamma      : optical coherence decay rate, rad/s
    gamma_cb   : ground-state coherence decay rate, rad/s
    cell_length: length of the vapor cell along the beam, cm
    """

    wavelength: float
    density: float
    gamma_r: float
    gamma: float
    gamma_cb: float
    cell_length: float

    def __post_init__(self) -> None:
        if self.wavelength <= 0.0:
            raise ValueError("wavelength must be positive")
        if self.density < 0.0:
            raise ValueError("density must be non-negative")
        if self.gamma_r <= 0.0 or self.gamma <= 0.0 or self.gamma_cb <= 0.0:
            raise ValueError("decay rates must be positive")
        if self.cell_length <= 0.0:
            raise ValueError("cell_length must be positive")


@dataclass(frozen=True)
class ControlField:
    """Transverse profile of the control beam.

    The Rabi frequency falls off as a field Gaussian,
    ``omega(x) = omega_peak * exp(-((x - center) / waist)**2)``.

    omega_peak : peak Rabi frequency, rad/s
    waist      : 1/e field radius of the control beam, cm
    center     : transverse position of the control-beam axis, cm
    """

    omega_peak: float
    waist: float
    center: float = 0.0

    def __post_init__(self) -> None:
        if self.omega_peak < 0.0:
            raise ValueError("omega_peak must be non-negative")
        if self.waist <= 0.0:
            raise ValueError("waist must be positive")


def eta(p: MediumParams) -> float:
    """Dimensionless coupling strength, 3*lambda^3*N/(16*pi^2)."""
    return 3.0 * p.wavelength**3 * p.density / (16.0 * math.pi**2)


def re_chi(delta, omega: float, p: MediumParams):
    """Dispersive (real) part of the probe susceptibility.

    Accepts a scalar or array two-photon detuning ``delta`` (rad/s) and a
    scalar control Rabi frequency ``omega`` (rad/s).
    """
    d2 = delta * delta
    num = omega**2 - p.gamma_cb**2 - d2
    den = (omega**2 + p.gamma_cb * p.gamma - d2) ** 2 + d2 * (p.gamma_cb + p.gamma) ** 2
    return eta(p) * p.gamma_r * delta * num / den


def complex_chi(delta, omega: float, p: MediumParams):
    """Complex probe susceptibility chi(delta) for control Rabi ``omega``.

    Re chi agrees with :func:`re_chi`; Im chi >= 0 (absorption only).
    Uses only arithmetic that broadcasts, so ``delta`` may be an array.
    """
    den = omega * omega + (p.gamma - 1j * delta) * (p.gamma_cb - 1j * delta)
    return eta(p) * p.gamma_r * (delta + 1j * p.gamma_cb) / den


def refractive_index(chi):
    """Complex refractive index n = sqrt(1 + 4*pi*chi).

    Principal branch; Im n >= 0 whenever Im chi >= 0.  Rejects
    susceptibilities with 1 + 4*pi*Re(chi) <= 0 (no propagating solution).
    """
    arg = 1.0 + FOUR_PI * np.asarray(chi, dtype=complex)
    if np.any(arg.real <= 0.0):
        raise ValueError("non-physical susceptibility: 1 + 4*pi*Re(chi) <= 0")
    n = np.sqrt(arg)
    if np.ndim(chi) == 0:
        return complex(n)
    return n


def rabi_at(x, c: ControlField):
    """Control Rabi frequency at transverse position x (cm)."""
    u = (np.asarray(x, dtype=float) - c.center) / c.waist
    val = c.omega_peak * np.exp(-u * u)
    if np.ndim(x) == 0:
        return float(val)
    return val


def index_profile(delta: float, x, p: MediumParams, c: ControlField):
    """Complex refractive index n(x) across the control-beam profile."""
    return refractive_index(complex_chi(delta, rabi_at(x, c), p))


def grad_index(delta: float, x: float, p: MediumParams, c: ControlField) -> float:
    """Analytic transverse gradient of Re n at position x (1/cm).

    Chain rule through n(chi(omega(x))):
        dn/dchi   = 2*pi / n
        dchi/domega = -2*omega*chi / D,  D the denominator of chi
        domega/dx = -2*(x - center)/waist^2 * omega
    Scalar-only; the vectorized cross-check is :func:`grad_index_fd`.
    """
    u = x - c.center
    inv_w2 = 1.0 / (c.waist * c.waist)
    om = c.omega_peak * math.exp(-u * u * inv_w2)
    den = om * om + (p.gamma - 1j * delta) * (p.gamma_cb - 1j * delta)
    chi = eta(p) * p.gamma_r * (delta + 1j * p.gamma_cb) / den
    n = (1.0 + FOUR_PI * chi) ** 0.5
    dom_dx = -2.0 * u * inv_w2 * om
    return ((2.0 * math.pi / n) * (-2.0 * om * chi / den) * dom_dx).real


def grad_index_fd(
    delta: float, x: float, p: MediumParams, c: ControlField, h: float | None = None
) -> float:
    """Central finite difference of Re n(x), for validating :func:`grad_index`."""
    if h is None:
        h = c.waist / 1e4
    hi = index_profile(delta, x + h, p, c).real
    lo = index_profile(delta, x - h, p, c).real
    return (hi - lo) / (2.0 * h)
