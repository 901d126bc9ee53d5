"""Bond <-> effective moduli conversion for the perforated sheet.

The displacement jumps of the periodic solution across one period must
match the jumps of a homogeneous isotropic sheet.  Written in the unit
load basis (sigma_+ = 1 and sigma_- = 1 separately) this gives closed
forms in both directions through four real coefficients of the two
unit-load solutions.  The raw 4x4 jump-matching system is kept as an
internal oracle: its determinant and the isotropy collapse
kappa_1 = kappa_2 are checked rather than assumed.

Conversions are load-independent: the boundary conditions are pure
tractions, so the unit-load coefficient sets depend only on the lattice
and the hole radius, and are cached per (lattice, lam, K, shells).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, InvalidArgumentError, NumericalError
from .lattice import LatticeSpec, LatticeSums
from .solver import unit_load_coefficients

__all__ = [
    "ModuliSet",
    "HomogenizationData",
    "IsotropyReport",
    "homogenization_data",
    "bond_from_effective",
    "effective_from_bond",
    "isotropy_check",
]

# Smallest acceptable magnitude of a conversion denominator, relative to
# its O(1) natural scale; below this the geometry is degenerate.
_DEGENERATE_EPS = 1e-10


def _check_nu(nu: float, name: str = "nu", hi: float = 1.0):
    # conversions use the two-dimensional stability bound nu < 1: the bond
    # ratio recovered from a large hole fraction can legitimately exceed the
    # three-dimensional 0.5 limit that ModuliSet enforces for materials
    if not -1.0 < nu < hi:
        raise InvalidArgumentError(f"Poisson ratio {name} = {nu} outside (-1, {hi})")


@dataclass(frozen=True)
class ModuliSet:
    """Bond moduli (E, nu) together with their effective counterparts."""

    E: float
    nu: float
    E_eff: float
    nu_eff: float

    def __post_init__(self):
        if not self.E > 0 or not self.E_eff > 0:
            raise InvalidArgumentError("Young moduli must be positive")
        _check_nu(self.nu, "nu", hi=0.5)
        _check_nu(self.nu_eff, "nu_eff", hi=0.5)

    @property
    def G(self) -> float:
        return self.E / (2.0 * (1.0 + self.nu))

    @property
    def kappa(self) -> float:
        return (3.0 - self.nu) / (1.0 + self.nu)

    @property
    def kappa_plus(self) -> float:
        return (1.0 + self.nu_eff) / self.E_eff

    @property
    def kappa_minus(self) -> float:
        return (1.0 - self.nu_eff) / self.E_eff


@dataclass(frozen=True)
class HomogenizationData:
    """The four real unit-load coefficients driving both conversions.

    alpha0_plus and beta1_plus come from the equibiaxial unit load
    (sigma_+ = 1), alpha1_minus and beta0_minus from the pure-deviator
    unit load (sigma_- = 1); delta is the real cyclic constant of the
    lattice and a its constant.
    """

    a: float
    lam: float
    delta: float
    alpha0_plus: float
    beta1_plus: float
    alpha1_minus: float
    beta0_minus: float

    @property
    def lam2delta(self) -> float:
        return self.lam**2 * self.delta


_cache: dict[tuple, HomogenizationData] = {}
_cache_lock = threading.Lock()


def homogenization_data(
    spec: LatticeSpec,
    lam: float,
    K: int = 16,
    sums: LatticeSums | None = None,
    shells: int = 64,
) -> HomogenizationData:
    """Unit-load coefficient set for one (lattice, hole radius) pair, cached."""
    key = (spec.a, spec.omega1, lam, K, shells, None if sums is None else id(sums))
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    plus, minus = unit_load_coefficients(spec, lam, K=K, sums=sums, shells=shells)
    vals = {
        "alpha0_plus": plus.alpha0,
        "beta1_plus": plus.beta[0],
        "alpha1_minus": minus.alpha[0],
        "beta0_minus": minus.beta0,
    }
    scale = max(abs(v) for v in vals.values())
    for name, v in vals.items():
        if abs(np.imag(v)) > 1e-9 * max(scale, 1.0):
            raise ConsistencyError(
                f"unit-load coefficient {name} = {v} is not real", residual=abs(np.imag(v))
            )
    if sums is None:
        from .lattice import compute_lattice_sums

        sums = compute_lattice_sums(spec, s_max=max(40, 2 * K + 2), shells=shells)
    data = HomogenizationData(
        a=spec.a,
        lam=float(lam),
        delta=float(sums.delta),
        alpha0_plus=float(np.real(vals["alpha0_plus"])),
        beta1_plus=float(np.real(vals["beta1_plus"])),
        alpha1_minus=float(np.real(vals["alpha1_minus"])),
        beta0_minus=float(np.real(vals["beta0_minus"])),
    )
    with _cache_lock:
        _cache[key] = data
    return data


def bond_from_effective(E_eff: float, nu_eff: float, data: HomogenizationData) -> tuple[float, float]:
    """Bond moduli (E, nu) that produce the given effective pair."""
    if not E_eff > 0:
        raise InvalidArgumentError(f"E_eff must be positive, got {E_eff}")
    _check_nu(nu_eff, "nu_eff")
    ld = data.lam2delta
    a0, b1 = data.alpha0_plus, data.beta1_plus
    a1, b0 = data.alpha1_minus, data.beta0_minus
    d0 = 2.0 - (1.0 - nu_eff) * (b0 - a1 * ld) - (1.0 + nu_eff) * (b1 * ld - 2.0 * a0)
    d1 = 2.0 * nu_eff + (1.0 - nu_eff) * (b0 + 3.0 * a1 * ld) + (1.0 + nu_eff) * (b1 * ld + 2.0 * a0)
    d2 = 2.0 * a1 * b1 * ld * ld - (1.0 + 2.0 * a0) * (a1 * ld + b0 - 1.0)
    if abs(d0) < _DEGENERATE_EPS:
        raise NumericalError(f"degenerate geometry: conversion denominator {d0:.3e}")
    nu = d1 / d0
    E = E_eff * 2.0 * d2 / d0
    return E, nu


def effective_from_bond(E: float, nu: float, data: HomogenizationData) -> tuple[float, float]:
    """Effective moduli (E_eff, nu_eff) of the perforated sheet."""
    if not E > 0:
        raise InvalidArgumentError(f"E must be positive, got {E}")
    _check_nu(nu, "nu")
    kappa = (3.0 - nu) / (1.0 + nu)
    ld = data.lam2delta
    lam_p = data.alpha0_plus * (kappa - 1.0) + data.beta1_plus * ld
    lam_m = 1.0 - data.alpha1_minus * ld * kappa - data.beta0_minus
    den = 1.0 - nu + (1.0 + nu) * (lam_p + lam_m)
    if abs(den) < _DEGENERATE_EPS:
        raise NumericalError(f"degenerate geometry: conversion denominator {den:.3e}")
    E_eff = 2.0 * E / den
    nu_eff = ((1.0 + nu) * (lam_m - lam_p) - (1.0 - nu)) / den
    return E_eff, nu_eff


@dataclass(frozen=True)
class IsotropyReport:
    """Result of solving the raw 4x4 jump-matching system directly."""

    det: complex
    det_expected: float
    det_rel_err: float
    kappa_plus: float
    kappa_minus: float
    split_plus: float
    split_minus: float
    imag_residual: float
    closed_form_gap: float


def isotropy_check(data: HomogenizationData, E: float = 1.0, nu: float = 0.3) -> IsotropyReport:
    """Solve the jump-matching system for kappa_j^pm and test isotropy.

    The system couples the four unknowns (kappa_1^-, kappa_2^-,
    kappa_1^+, kappa_2^+) through the two periods; for the hexagonal
    lattice its solution must collapse to kappa_1 = kappa_2 and agree
    with the closed-form conversion.  Discrepancies are reported, not
    raised.
    """
    if not E > 0:
        raise InvalidArgumentError(f"E must be positive, got {E}")
    _check_nu(nu, "nu")
    a = data.a
    w1 = a * np.sqrt(3) / 2 - 1j * a / 2
    w2 = np.conj(w1)
    # cyclic constants of the two periods; delta is their real invariant
    d1 = data.delta * np.conj(w1)
    d2 = data.delta * np.conj(w2)
    kappa = (3.0 - nu) / (1.0 + nu)
    ld = data.lam**2

    M = np.zeros((4, 4), dtype=complex)
    rhs = np.zeros(4, dtype=complex)
    for j, wj in enumerate((w1, w2)):
        wjb = np.conj(wj)
        dj = (d1, d2)[j]
        M[j] = [wj, wj, wjb, -wjb]
        M[2 + j] = [-wj, wj, -wjb, -wjb]
        bp = (1.0 - nu) / E * wj + (1.0 + nu) / E * (
            data.alpha0_plus * (kappa - 1.0) * wj + data.beta1_plus * ld * np.conj(dj)
        )
        bm = (1.0 + nu) / E * (-wjb + data.alpha1_minus * ld * kappa * dj + data.beta0_minus * wjb)
        # the jump of u + iv is twice the per-coordinate strain jump
        rhs[j] = 2.0 * bp
        rhs[2 + j] = 2.0 * bm
    det = complex(np.linalg.det(M))
    det_expected = -12.0 * a**4
    x = np.linalg.solve(M, rhs)
    km1, km2, kp1, kp2 = x
    scale_p = max(abs(kp1), abs(kp2), 1e-300)
    scale_m = max(abs(km1), abs(km2), 1e-300)
    E_eff, nu_eff = effective_from_bond(E, nu, data)
    kp_closed = (1.0 + nu_eff) / E_eff
    km_closed = (1.0 - nu_eff) / E_eff
    gap = max(
        abs(np.real(kp1) - kp_closed) / max(abs(kp_closed), 1e-300),
        abs(np.real(km1) - km_closed) / max(abs(km_closed), 1e-300),
    )
    return IsotropyReport(
        det=det,
        det_expected=det_expected,
        det_rel_err=abs(det - det_expected) / abs(det_expected),
        kappa_plus=float(np.real(kp1 + kp2) / 2),
        kappa_minus=float(np.real(km1 + km2) / 2),
        split_plus=float(abs(kp1 - kp2) / scale_p),
        split_minus=float(abs(km1 - km2) / scale_m),
        imag_residual=float(max(abs(np.imag(v)) for v in x)),
        closed_form_gap=float(gap),
    )
