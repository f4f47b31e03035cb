"""Split-step spectral solver for the dimensionless lattice NLSE.

Working equation (lattice units: xi = pi n_ph z, tau = E_R t / hbar):

    i d_tau psi = [ -d_xi^2 + s cos^2(xi) + g |psi|^2 - i kappa/2 ] psi

with s = V1/E_R, g = 4|gamma|/pi^2 when |psi|^2 is normalized to unit spatial
mean, and kappa the loss rate in recoil units.  Periodic box of n_periods
lattice periods, i.e. xi in [0, pi n_periods).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BlowUp, ConfigError, DomainError, NoConvergence, NonFinite

BLOWUP_FACTOR = 1e6


def interaction_strength(gamma_abs: float) -> float:
    """Dimensionless NLSE coupling g = 4|gamma|/pi^2 for unit-mean density."""
    return 4 * gamma_abs / math.pi**2


@dataclass(frozen=True)
class NlseParams:
    v1_over_er: float = 0.0         # lattice depth s
    g_int: float = 0.0              # nonlinear coupling g
    kappa_dimless: float = 0.0      # loss rate in recoil units
    n_periods: int = 8
    grid_points: int = 256
    # optional ramp: (tau, s, g, kappa) control points, linearly interpolated
    schedule: tuple[tuple[float, float, float, float], ...] = ()

    def __post_init__(self):
        n = self.grid_points
        if n < 16 or n & (n - 1):
            raise ConfigError(f"grid_points must be a power of two >= 16, got {n}")
        if self.n_periods < 1:
            raise ConfigError(f"n_periods must be >= 1, got {self.n_periods}")
        if n % self.n_periods:
            raise ConfigError("grid_points must be divisible by n_periods "
                              "(commensurate grid)")
        if self.v1_over_er < 0 or self.g_int < 0:
            raise ConfigError("lattice depth and coupling must be non-negative")

    def coefficients(self, tau: float) -> tuple[float, float, float]:
        """(s, g, kappa) at time tau, from the schedule if one is set."""
        if not self.schedule:
            return self.v1_over_er, self.g_int, self.kappa_dimless
        ts = np.array([p[0] for p in self.schedule])
        cols = np.array([p[1:] for p in self.schedule])
        s, g, kap = (np.interp(tau, ts, cols[:, i]) for i in range(3))
        return float(s), float(g), float(kap)


@dataclass
class FieldState:
    psi: np.ndarray            # complex amplitudes, unit-mean |psi|^2 convention
    time: float = 0.0

    def copy(self) -> "FieldState":
        return FieldState(self.psi.copy(), self.time)


@dataclass
class Observables:
    tau: np.ndarray
    norm: np.ndarray           # spatial mean of |psi|^2
    energy: np.ndarray
    contrast: np.ndarray


def grid(params: NlseParams) -> np.ndarray:
    """Spatial grid xi over the periodic box [0, pi n_periods)."""
    n = params.grid_points
    return np.arange(n) * (math.pi * params.n_periods / n)


def _wavenumbers(params: NlseParams) -> np.ndarray:
    n = params.grid_points
    dx = math.pi * params.n_periods / n
    return 2 * math.pi * np.fft.fftfreq(n, d=dx)


def norm_of(psi: np.ndarray) -> float:
    return float(np.mean(np.abs(psi) ** 2))


def energy_of(psi: np.ndarray, params: NlseParams, tau: float = 0.0) -> float:
    """Mean energy density: |d psi|^2 + s cos^2 |psi|^2 + (g/2)|psi|^4."""
    s, g, _ = params.coefficients(tau)
    k = _wavenumbers(params)
    dpsi = np.fft.ifft(1j * k * np.fft.fft(psi))
    xi = grid(params)
    kin = np.mean(np.abs(dpsi) ** 2)
    pot = np.mean(s * np.cos(xi) ** 2 * np.abs(psi) ** 2)
    inter = 0.5 * g * np.mean(np.abs(psi) ** 4)
    return float(kin + pot + inter)


def contrast_of(psi: np.ndarray, params: NlseParams) -> float:
    """Modulation contrast (max-min)/(max+min) of the period-averaged density."""
    dens = np.abs(psi) ** 2
    folded = dens.reshape(params.n_periods, -1).mean(axis=0)
    hi, lo = folded.max(), folded.min()
    if hi + lo == 0:
        return 0.0
    return float((hi - lo) / (hi + lo))


def evolve(state: FieldState, params: NlseParams, dt: float, steps: int,
           record_every: int = 1) -> tuple[FieldState, Observables]:
    """Real-time Strang-split evolution: half kinetic / full potential / half kinetic.

    The kinetic factor is the exact spectral phase; the loss enters the
    potential step as a pointwise exp(-kappa dt / 2) amplitude factor, which
    is exact for the linear loss term.
    """
    if dt <= 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if norm_of(state.psi) <= 0:
        raise DomainError("initial state has zero norm")
    psi = np.asarray(state.psi, dtype=complex).copy()
    xi = grid(params)
    k2 = _wavenumbers(params) ** 2
    half_kin = np.exp(-1j * k2 * dt / 2)
    cos2 = np.cos(xi) ** 2
    guard = BLOWUP_FACTOR * np.abs(psi).max()

    taus, norms, energies, contrasts = [], [], [], []

    def record(tau):
        taus.append(tau)
        norms.append(norm_of(psi))
        energies.append(energy_of(psi, params, tau))
        contrasts.append(contrast_of(psi, params))

    tau = state.time
    record(tau)
    static = not params.schedule
    if static:
        s, g, kap = params.coefficients(tau)
        loss = math.exp(-kap * dt / 2)
    for step in range(steps):
        if not static:
            s, g, kap = params.coefficients(tau + dt / 2)
            loss = math.exp(-kap * dt / 2)
        psi = np.fft.ifft(half_kin * np.fft.fft(psi))
        psi *= np.exp(-1j * (s * cos2 + g * np.abs(psi) ** 2) * dt) * loss
        psi = np.fft.ifft(half_kin * np.fft.fft(psi))
        tau += dt
        if not np.all(np.isfinite(psi.view(float))):
            raise NonFinite(f"non-finite field at step {step + 1}")
        if np.abs(psi).max() > guard:
            raise BlowUp(f"amplitude exceeded {BLOWUP_FACTOR}x initial maximum")
        if (step + 1) % record_every == 0 or step + 1 == steps:
            record(tau)

    obs = Observables(np.array(taus), np.array(norms),
                      np.array(energies), np.array(contrasts))
    return FieldState(psi, tau), obs


def ground_state(params: NlseParams, tol: float = 1e-12, dt: float = 5e-3,
                 max_iter: int = 200_000) -> FieldState:
    """Imaginary-time relaxation to the mean-field ground state.

    Renormalizes |psi|^2 back to unit spatial mean after every step and stops
    when the relative energy change per step drops below tol.  The time step
    is reduced in stages after each converged pass, removing the O(dt^2)
    splitting bias so the returned state is stationary under real-time
    evolution.
    """
    if params.kappa_dimless != 0 or any(p[3] != 0 for p in params.schedule):
        raise DomainError("ground_state requires kappa = 0")
    n = params.grid_points
    xi = grid(params)
    k2 = _wavenumbers(params) ** 2
    s, g, _ = params.coefficients(0.0)
    cos2 = np.cos(xi) ** 2

    # small symmetry-breaking seed so the lattice minima are found quickly
    psi = np.ones(n, dtype=complex) + 0.05 * np.sin(xi) ** 2
    psi /= math.sqrt(norm_of(psi))
    e_prev = energy_of(psi, params)
    budget = max_iter
    for stage_dt in (dt, dt / 4, dt / 16, dt / 64):
        half_kin = np.exp(-k2 * stage_dt / 2)
        converged = False
        while budget > 0:
            budget -= 1
            psi = np.fft.ifft(half_kin * np.fft.fft(psi))
            psi *= np.exp(-(s * cos2 + g * np.abs(psi) ** 2) * stage_dt)
            psi = np.fft.ifft(half_kin * np.fft.fft(psi))
            psi /= math.sqrt(norm_of(psi))
            e = energy_of(psi, params)
            if abs(e - e_prev) <= tol * max(abs(e), 1.0):
                converged = True
                e_prev = e
                break
            e_prev = e
        if not converged:
            raise NoConvergence(
                f"imaginary time did not converge in {max_iter} steps")
    return FieldState(psi, 0.0)


def release_profile(state: FieldState, params: NlseParams, v_g: float,
                    n_ph: float) -> tuple[np.ndarray, np.ndarray]:
    """Map the spatial density to the outgoing intensity time series.

    Zeroth-order release model: the frozen density profile streams out at the
    group velocity, t = z / v_g with z = xi / (pi n_ph).  Returns (times in
    seconds, intensity); integrating intensity over time gives the state norm
    times the physical box length n_periods / n_ph.
    """
    if v_g <= 0:
        raise DomainError(f"v_g must be positive, got {v_g}")
    if n_ph <= 0:
        raise DomainError(f"n_ph must be positive, got {n_ph}")
    z = grid(params) / (math.pi * n_ph)
    times = z / v_g
    intensity = np.abs(state.psi) ** 2 * v_g
    return times, intensity
