"""Stress and displacement fields in the perforated cell.

Total fields are the uniform remote state plus the doubly-periodic
corrective potentials.  Evaluation folds the point into the Voronoi
cell around the origin and restores the quasi-periodic increments
analytically, so periodicity is exact by construction and evaluation is
valid everywhere outside the holes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elliptic import fold_point
from .errors import DomainError, InvalidArgumentError
from .solver import LoadCase, PotentialCoefficients, ProblemSpec, SeriesTables

__all__ = [
    "FieldSample",
    "CellGeometry",
    "cell_boundary_radius",
    "uniform_polar_stress",
    "potentials_eval",
    "displacement_potentials",
    "total_stress",
    "total_displacement",
    "boundary_residual",
    "isolated_hole_reference",
]


@dataclass(frozen=True)
class FieldSample:
    """Stresses (and optionally 2G-scaled displacements) at one point."""

    r: float
    theta: float
    z: complex
    sigma_r: float
    tau_rtheta: float
    sigma_theta: float
    sigma_x: float
    sigma_y: float
    tau_xy: float
    u2G: float = float("nan")
    v2G: float = float("nan")


def cell_boundary_radius(theta: float, a: float) -> float:
    """Distance from the cell center to the hexagon boundary at angle theta.

    Vertices sit at theta = 0 mod 60 degrees (distance a/sqrt(3)), edge
    midpoints at 30 degrees (distance a/2).
    """
    t = np.mod(theta, np.pi / 3)
    return a / (np.sin(t) + np.sqrt(3) * np.cos(t))


@dataclass(frozen=True)
class CellGeometry:
    """Hexagonal Voronoi cell with a central hole of radius lam."""

    a: float
    lam: float

    def boundary_radius(self, theta: float) -> float:
        return cell_boundary_radius(theta, self.a)

    def contains(self, r: float, theta: float) -> bool:
        return self.lam <= r <= self.boundary_radius(theta)


def uniform_polar_stress(r: float, theta: float, load: LoadCase) -> tuple[float, float]:
    """Polar traction components of the uniform remote state."""
    psi = theta - load.alpha
    sr = load.sigma_plus + load.sigma_minus * np.cos(2 * psi)
    tau = -load.sigma_minus * np.sin(2 * psi)
    return float(sr), float(tau)


def _series_parts(z0: complex, coeffs: PotentialCoefficients, tables: SeriesTables):
    """Phi, Phi', Psi of the corrective problem at a folded point z0."""
    K, lam = tables.K, tables.lam
    T = tables.r.shape[0]
    j = np.arange(T)
    zpow = z0 ** (2.0 * j)  # z0^(2j)
    zpow_d = 2.0 * j[1:] * z0 ** (2.0 * j[1:] - 1.0)
    k = np.arange(K)
    wk = lam ** (2.0 * k + 2.0)
    sing = z0 ** (-(2.0 * k + 2.0))
    sing_d = -(2.0 * k + 2.0) * z0 ** (-(2.0 * k + 3.0))
    reg = tables.r[:, :K].T @ zpow  # sum_j r_jk z0^2j, per k
    reg_d = tables.r[1:, :K].T @ zpow_d
    reg_rho = tables.rho[:, :K].T @ zpow
    al = coeffs.alpha
    phi = coeffs.alpha0 + np.sum(al * wk * (sing + reg))
    phi_d = np.sum(al * wk * (sing_d + reg_d))
    psi = coeffs.beta0 + np.sum(coeffs.beta[:K] * wk * (sing + reg)) - np.sum(al * wk * reg_rho)
    return complex(phi), complex(phi_d), complex(psi)


def potentials_eval(
    z: complex,
    coeffs: PotentialCoefficients,
    tables: SeriesTables,
    fold: bool = True,
) -> tuple[complex, complex, complex]:
    """(Phi, Phi', Psi) of the corrective problem at any point outside holes.

    With fold=True the point is reduced to the central cell and Psi's
    quasi-periodic increment -conj(w)*Phi' is restored analytically.
    fold=False evaluates the raw series (valid while |z| stays well
    inside the nearest noncentral lattice translate).
    """
    spec = tables.sums.spec
    if fold:
        z0, m, n = fold_point(z, spec)
        w = m * spec.omega1 + n * spec.omega2
    else:
        z0, w = z, 0.0
    if abs(z0) < tables.lam * (1 - 1e-12):
        raise DomainError(f"point {z} lies inside a hole (folded |z0| = {abs(z0):.6g})")
    phi, phi_d, psi = _series_parts(z0, coeffs, tables)
    return phi, phi_d, psi - np.conj(w) * phi_d


def _disp_series_parts(z0: complex, coeffs: PotentialCoefficients, tables: SeriesTables):
    """Antiderivative potentials (phi, psi) at a folded point z0."""
    K, lam = tables.K, tables.lam
    T = tables.r.shape[0]
    j = np.arange(T)
    zint = z0 ** (2.0 * j + 1.0) / (2.0 * j + 1.0)  # integral of z^2j
    k = np.arange(K)
    wk = lam ** (2.0 * k + 2.0)
    sing_int = z0 ** (-(2.0 * k + 1.0)) / (-(2.0 * k + 1.0))
    reg_int = tables.r[:, :K].T @ zint
    rho_int = tables.rho[:, :K].T @ zint
    al = coeffs.alpha
    phi = coeffs.alpha0 * z0 + np.sum(al * wk * (sing_int + reg_int))
    psi = (
        coeffs.beta0 * z0
        + np.sum(coeffs.beta[:K] * wk * (sing_int + reg_int))
        - np.sum(al * wk * rho_int)
    )
    return complex(phi), complex(psi)


def displacement_potentials(
    z: complex, coeffs: PotentialCoefficients, tables: SeriesTables
) -> tuple[complex, complex]:
    """Muskhelishvili displacement potentials (phi, psi) at any point.

    Quasi-periodic continuation: across a translate w = m*omega1 + n*omega2,
    phi gains alpha0*w - alpha1*lam^2*(m*delta1 + n*delta2) and psi gains
    beta0*w - beta1*lam^2*(...) - conj(w)*(Phi(z0) - alpha0).
    """
    sums = tables.sums
    spec = sums.spec
    z0, m, n = fold_point(z, spec)
    if abs(z0) < tables.lam * (1 - 1e-12):
        raise DomainError(f"point {z} lies inside a hole")
    w = m * spec.omega1 + n * spec.omega2
    dw = m * sums.delta1 + n * sums.delta2
    lam2 = tables.lam**2
    phi0, psi0 = _disp_series_parts(z0, coeffs, tables)
    phi_at0, _, _ = potentials_eval(z0, coeffs, tables, fold=False)
    phi = phi0 + coeffs.alpha0 * w - coeffs.alpha[0] * lam2 * dw
    psi = psi0 + coeffs.beta0 * w - coeffs.beta[0] * lam2 * dw - np.conj(w) * (phi_at0 - coeffs.alpha0)
    return phi, psi


def total_stress(
    r: float,
    theta: float,
    prob: ProblemSpec,
    coeffs: PotentialCoefficients,
    tables: SeriesTables,
) -> FieldSample:
    """Total stresses at the polar point (r, theta) of the central cell."""
    z = r * np.exp(1j * theta)
    load = prob.load
    phi, phi_d, psi = potentials_eval(z, coeffs, tables)
    srk, tauk = uniform_polar_stress(r, theta, load)
    pol = srk - 1j * tauk + 2 * np.real(phi) - (np.conj(z) * phi_d + psi) * np.exp(2j * theta)
    sigma_r = float(np.real(pol))
    tau_rt = -float(np.imag(pol))
    # Cartesian components from the total potentials (corrective + uniform)
    phi_t = phi + load.sigma_plus / 2
    psi_t = psi - load.sigma_minus * np.exp(-2j * load.alpha)
    trace = 4 * np.real(phi_t)
    dev = 2 * (np.conj(z) * phi_d + psi_t)
    sigma_x = float((trace - np.real(dev)) / 2)
    sigma_y = float((trace + np.real(dev)) / 2)
    tau_xy = float(np.imag(dev) / 2)
    sigma_theta = float(trace - sigma_r)
    return FieldSample(
        r=float(r), theta=float(theta), z=complex(z),
        sigma_r=sigma_r, tau_rtheta=tau_rt, sigma_theta=sigma_theta,
        sigma_x=sigma_x, sigma_y=sigma_y, tau_xy=tau_xy,
    )


def total_displacement(
    z: complex,
    prob: ProblemSpec,
    coeffs: PotentialCoefficients,
    tables: SeriesTables,
    nu: float,
) -> tuple[float, float]:
    """2G-scaled total displacements (2G u, 2G v) at the point z.

    The uniform-load part carries e^(2 i alpha) on the conj(z) term so
    that differentiating the displacement reproduces the rotated remote
    state for every load angle.
    """
    if not -1.0 < nu < 0.5:
        raise InvalidArgumentError(f"Poisson ratio {nu} outside (-1, 0.5)")
    load = prob.load
    kappa = (3.0 - nu) / (1.0 + nu)
    phi, psi = displacement_potentials(z, coeffs, tables)
    phi_big, _, _ = potentials_eval(z, coeffs, tables)
    disp = (
        (kappa - 1.0) / 4.0 * (load.sigma1 + load.sigma2) * z
        + load.sigma_minus * np.exp(2j * load.alpha) * np.conj(z)
        + kappa * phi
        - z * np.conj(phi_big)
        - np.conj(psi)
    )
    return float(np.real(disp)), float(np.imag(disp))


def boundary_residual(
    prob: ProblemSpec,
    coeffs: PotentialCoefficients,
    tables: SeriesTables,
    n_theta: int = 256,
) -> float:
    """Max rim-traction defect of the assembled solution over a theta grid."""
    load = prob.load
    lam = prob.lam
    worst = 0.0
    for theta in np.linspace(0.0, 2 * np.pi, n_theta, endpoint=False):
        t = lam * np.exp(1j * theta)
        phi, phi_d, psi = potentials_eval(t, coeffs, tables, fold=False)
        res = (
            phi + np.conj(phi)
            - (np.conj(t) * phi_d + psi) * np.exp(2j * theta)
            + load.sigma_plus
            + load.sigma_minus * np.exp(2j * (theta - load.alpha))
        )
        worst = max(worst, abs(res))
    return worst


def isolated_hole_reference(
    r: float, theta: float, lam: float, load: LoadCase
) -> tuple[float, float, float]:
    """Classical traction-free isolated-hole field (dilute-limit oracle)."""
    if r < lam:
        raise DomainError(f"r = {r} inside the hole of radius {lam}")
    sp, sm = load.sigma_plus, load.sigma_minus
    psi = theta - load.alpha
    q = (lam / r) ** 2
    sigma_r = sp * (1 - q) + sm * (1 - 4 * q + 3 * q * q) * np.cos(2 * psi)
    sigma_t = sp * (1 + q) - sm * (1 + 3 * q * q) * np.cos(2 * psi)
    tau = -sm * (1 + 2 * q - 3 * q * q) * np.sin(2 * psi)
    return float(sigma_r), float(tau), float(sigma_t)
