"""Total fields: periodicity, boundary conditions, oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexlat import errors, fields, lattice, solver


class TestCellGeometry:
    def test_vertex_and_edge_distances(self):
        a = 1.0
        assert fields.cell_boundary_radius(0.0, a) == pytest.approx(a / np.sqrt(3))
        assert fields.cell_boundary_radius(np.pi / 6, a) == pytest.approx(a / 2)

    @given(st.floats(0, 2 * np.pi))
    def test_radius_range(self, theta):
        r = fields.cell_boundary_radius(theta, 1.0)
        assert 0.5 - 1e-12 <= r <= 1 / np.sqrt(3) + 1e-12

    def test_contains(self):
        cell = fields.CellGeometry(a=1.0, lam=0.2)
        assert cell.contains(0.3, 0.1)
        assert not cell.contains(0.1, 0.1)
        assert not cell.contains(0.55, np.pi / 6)


class TestPeriodicity:
    def test_stress_at_congruent_pairs(self, spec, solved, tables):
        prob, coeffs = solved
        rng = np.random.default_rng(11)
        cell = fields.CellGeometry(a=spec.a, lam=prob.lam)
        count = 0
        while count < 30:
            r = rng.uniform(prob.lam, 0.5)
            th = rng.uniform(0, 2 * np.pi)
            if not cell.contains(r, th):
                continue
            z = r * np.exp(1j * th)
            m, n = int(rng.integers(-2, 3)), int(rng.integers(-2, 3))
            zt = z + m * spec.omega1 + n * spec.omega2
            f0 = fields.total_stress(r, th, prob, coeffs, tables)
            ft = fields.total_stress(abs(zt), np.angle(zt), prob, coeffs, tables)
            for u, v in (
                (f0.sigma_x, ft.sigma_x),
                (f0.sigma_y, ft.sigma_y),
                (f0.tau_xy, ft.tau_xy),
            ):
                assert abs(u - v) < 1e-10
            count += 1

    def test_psi_quasi_defect(self, spec, solved, tables):
        # Psi picks up exactly -conj(w) Phi' across a translate
        prob, coeffs = solved
        z0 = 0.27 * np.exp(0.9j)
        phi, phi_d, psi = fields.potentials_eval(z0, coeffs, tables, fold=False)
        for m, n in ((1, 0), (0, 1), (-1, 2)):
            w = m * spec.omega1 + n * spec.omega2
            _, _, psi_t = fields.potentials_eval(z0 + w, coeffs, tables)
            assert abs(psi_t - (psi - np.conj(w) * phi_d)) < 1e-10


class TestBoundary:
    def test_rim_traction_free_for_all_angles(self, spec, tables):
        for ang in (0.0, np.pi / 8, np.pi / 4):
            load = solver.LoadCase(2.0, 1.0, ang)
            prob = solver.ProblemSpec(spec, 0.2, load, 16)
            coeffs = solver.solve_coefficients(prob, tables)
            worst = 0.0
            for th in np.linspace(0, 2 * np.pi, 90, endpoint=False):
                f = fields.total_stress(prob.lam, th, prob, coeffs, tables)
                worst = max(worst, abs(f.sigma_r), abs(f.tau_rtheta))
            assert worst < 1e-6 * 2.0

    def test_inside_hole_rejected(self, solved, tables):
        prob, coeffs = solved
        with pytest.raises(errors.DomainError):
            fields.total_stress(0.1, 0.0, prob, coeffs, tables)


class TestStressConsistency:
    def test_polar_cartesian_rotation(self, solved, tables):
        prob, coeffs = solved
        rng = np.random.default_rng(4)
        for _ in range(20):
            r = rng.uniform(prob.lam, 0.45)
            th = rng.uniform(0, 2 * np.pi)
            f = fields.total_stress(r, th, prob, coeffs, tables)
            c, s = np.cos(th), np.sin(th)
            sr = f.sigma_x * c * c + f.sigma_y * s * s + 2 * f.tau_xy * s * c
            st_ = f.sigma_x * s * s + f.sigma_y * c * c - 2 * f.tau_xy * s * c
            trt = (f.sigma_y - f.sigma_x) * s * c + f.tau_xy * (c * c - s * s)
            assert sr == pytest.approx(f.sigma_r, abs=1e-10)
            assert st_ == pytest.approx(f.sigma_theta, abs=1e-10)
            assert trt == pytest.approx(f.tau_rtheta, abs=1e-10)

    def test_trace_is_harmonic_mean_value(self, solved, tables):
        # trace = 4 Re Phi_tot: check the mean over a circle equals center value
        prob, coeffs = solved
        zc = 0.3 + 0.05j
        rad = 0.04
        vals = []
        for t in np.linspace(0, 2 * np.pi, 64, endpoint=False):
            z = zc + rad * np.exp(1j * t)
            f = fields.total_stress(abs(z), np.angle(z), prob, coeffs, tables)
            vals.append(f.sigma_x + f.sigma_y)
        fc = fields.total_stress(abs(zc), np.angle(zc), prob, coeffs, tables)
        assert np.mean(vals) == pytest.approx(fc.sigma_x + fc.sigma_y, abs=1e-8)


class TestDisplacements:
    def test_hooke_against_finite_differences(self, spec, solved, tables):
        prob, coeffs = solved
        nu = 0.2668
        h = 1e-6
        rng = np.random.default_rng(8)
        cell = fields.CellGeometry(a=spec.a, lam=prob.lam)
        checked = 0
        while checked < 15:
            r = rng.uniform(prob.lam + 5 * h, 0.45)
            th = rng.uniform(0, 2 * np.pi)
            if not cell.contains(r, th):
                continue
            z = r * np.exp(1j * th)

            def disp(zz):
                return fields.total_displacement(zz, prob, coeffs, tables, nu)

            ux = (disp(z + h)[0] - disp(z - h)[0]) / (2 * h)
            vy = (disp(z + 1j * h)[1] - disp(z - 1j * h)[1]) / (2 * h)
            uy = (disp(z + 1j * h)[0] - disp(z - 1j * h)[0]) / (2 * h)
            vx = (disp(z + h)[1] - disp(z - h)[1]) / (2 * h)
            f = fields.total_stress(r, th, prob, coeffs, tables)
            # 2G-scaled plane-stress Hooke's law
            ex = (f.sigma_x - nu * f.sigma_y) * 2 / (1 + nu) / 2
            ey = (f.sigma_y - nu * f.sigma_x) * 2 / (1 + nu) / 2
            gxy = 2 * f.tau_xy
            assert ux == pytest.approx(ex, abs=2e-5)
            assert vy == pytest.approx(ey, abs=2e-5)
            assert uy + vx == pytest.approx(gxy, abs=2e-5)
            checked += 1

    def test_displacement_jump_closed_form(self, spec, sums, unit_sets):
        # 2G(u+iv) jump across a period matches the coefficient expression
        tables = solver.series_tables(sums, 0.2, 16)
        nu = 0.3
        kappa = (3 - nu) / (1 + nu)
        lam2 = 0.2**2
        for coeffs, (sp, sm) in zip(unit_sets, ((1.0, 0.0), (0.0, 1.0))):
            load = solver.LoadCase(sp + sm, sp - sm, 0.0)
            prob = solver.ProblemSpec(spec, 0.2, load, 16)
            z = 0.31 + 0.12j
            for wj, dj in ((spec.omega1, sums.delta1), (spec.omega2, sums.delta2)):
                u0, v0 = fields.total_displacement(z, prob, coeffs, tables, nu)
                u1, v1 = fields.total_displacement(z + wj, prob, coeffs, tables, nu)
                jump = complex(u1 - u0, v1 - v0)
                a0, b0 = coeffs.alpha0, coeffs.beta0
                a1, b1 = coeffs.alpha[0], coeffs.beta[0]
                pred = (
                    (1 - nu) / (1 + nu) * sp * wj
                    + sm * np.conj(wj)
                    + a0 * (kappa - 1) * wj
                    - np.conj(b0) * np.conj(wj)
                    - a1 * lam2 * kappa * dj
                    + np.conj(b1) * lam2 * np.conj(dj)
                )
                assert abs(jump - pred) < 1e-6

    def test_invalid_poisson(self, solved, tables):
        prob, coeffs = solved
        with pytest.raises(errors.InvalidArgumentError):
            fields.total_displacement(0.3 + 0j, prob, coeffs, tables, 0.7)


class TestIsolatedHoleOracle:
    def test_rim_is_traction_free(self):
        load = solver.LoadCase(1.0, 0.0, 0.0)
        for th in np.linspace(0, 2 * np.pi, 24):
            sr, tau, _ = fields.isolated_hole_reference(0.1, th, 0.1, load)
            assert abs(sr) < 1e-14 and abs(tau) < 1e-14

    def test_concentration_factor(self):
        load = solver.LoadCase(1.0, 0.0, 0.0)
        _, _, st_ = fields.isolated_hole_reference(0.1, np.pi / 2, 0.1, load)
        assert st_ == pytest.approx(3.0, abs=1e-14)
        _, _, st0 = fields.isolated_hole_reference(0.1, 0.0, 0.1, load)
        assert st0 == pytest.approx(-1.0, abs=1e-14)

    def test_far_field_recovery(self):
        load = solver.LoadCase(2.0, 1.0, 0.3)
        sr, tau, st_ = fields.isolated_hole_reference(1e4, 0.9, 0.1, load)
        srk, tauk = fields.uniform_polar_stress(1e4, 0.9, load)
        assert sr == pytest.approx(srk, abs=1e-6)
        assert tau == pytest.approx(tauk, abs=1e-6)

    def test_inside_hole_rejected(self):
        with pytest.raises(errors.DomainError):
            fields.isolated_hole_reference(0.05, 0.0, 0.1, solver.LoadCase(1, 0, 0))

    def test_periodic_solution_converges_to_oracle(self, spec, sums):
        # interaction error scales with hole area fraction: quarter radius
        # must cut the mismatch by ~16
        errs = []
        for lam in (0.02, 0.005):
            tables = solver.series_tables(sums, lam, 8)
            load = solver.LoadCase(1.0, 0.0, 0.0)
            prob = solver.ProblemSpec(spec, lam, load, 8)
            coeffs = solver.solve_coefficients(prob, tables)
            worst = 0.0
            for th in np.linspace(0, np.pi, 13):
                f = fields.total_stress(1.5 * lam, th, prob, coeffs, tables)
                kr, kt, ks = fields.isolated_hole_reference(1.5 * lam, th, lam, load)
                worst = max(worst, abs(f.sigma_r - kr), abs(f.tau_rtheta - kt),
                            abs(f.sigma_theta - ks))
            errs.append(worst)
        assert errs[1] < errs[0] / 10
