#include <doctest.h>

#include <cmath>

#include "plasmon/mie.hpp"
#include "plasmon/quasistatic.hpp"

using namespace plasmon;

TEST_CASE("ball tensor is the Clausius-Mossotti polarizability") {
    const cplx ec(-1.3, 0.4), em = 1.7;
    const double r = 0.6;
    const PolarizationTensor t = ball_polarization_tensor(ec, em, r);
    const cplx beta = (ec - em) / (ec + 2.0 * em);
    CHECK(std::abs(t.scalar() - 4.0 * pi * r * r * r * beta) < 1e-13);
    CHECK((t.M - t.M(0, 0) * CMat3::Identity()).norm() == 0.0);
    CHECK(ball_polarization_tensor(em, em, r).M.norm() == 0.0);
    CHECK_THROWS_AS(ball_polarization_tensor(cplx(1.0 / 6.0), 1.0), Error);
}

TEST_CASE("Green function solves the Helmholtz equation away from the source") {
    const cplx k(1.3, 0.05);
    const Vec3 z(0.1, -0.2, 0.3), x(0.9, 0.4, -0.5);
    const double h = 1e-3;
    cplx lap = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 e = Vec3::Unit(i) * h;
        lap += (green(x + e, z, k) - 2.0 * green(x, z, k) + green(x - e, z, k)) / (h * h);
    }
    CHECK(std::abs(lap + k * k * green(x, z, k)) < 1e-6);
}

TEST_CASE("dyadic kernel is divergence free") {
    const cplx k(0.8, 0.0);
    const Vec3 z = Vec3::Zero(), x(0.7, -0.3, 0.5);
    const double h = 1e-4;
    for (int col = 0; col < 3; ++col) {
        cplx div = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Vec3 e = Vec3::Unit(i) * h;
            div += (green_dyadic_kernel(x + e, z, k)(i, col) - green_dyadic_kernel(x - e, z, k)(i, col)) / (2 * h);
        }
        CHECK(std::abs(div) < 1e-6);
    }
}

TEST_CASE("near field tends to the far-field amplitude") {
    const MediumPair md{1.0, 1.0, cplx(-2.5, 0.3), cplx(1.8, 0.1)};
    const double omega = 1.1;
    const PlaneWave pw{Vec3::UnitZ(), Vec3::UnitX()};
    const CMat3 Me = ball_polarization_tensor(md.eps_c, md.eps_m, 0.05).M;
    const CMat3 Mm = ball_polarization_tensor(md.mu_c, md.mu_m, 0.05).M;
    const Vec3 xhat = make_direction(Vec3(0.3, 0.5, -0.4));
    const double R = 1e5;
    const cplx k = wavenumber(omega, md.eps_m, md.mu_m);
    const CVec3 far = quasistatic_amplitude(xhat, pw, omega, md, Me, Mm);
    const CVec3 field = farfield_dipole(R * xhat, Vec3::Zero(), omega, md, Me, Mm, pw.p.cast<cplx>(), plane_wave_h(pw, omega, md));
    const CVec3 scaled = -field * (4.0 * pi * R) / std::exp(I * k * R);
    CHECK((scaled - far).norm() < 1e-4 * far.norm());
}

TEST_CASE("quasistatic amplitude equals the dipole series amplitude") {
    const MediumPair md{1.3, 1.0, cplx(-2.4, 0.2), cplx(1.5, 0.05)};
    const double omega = 0.9, r = 0.02;
    const CMat3 Me = ball_polarization_tensor(md.eps_c, md.eps_m, r).M;
    const CMat3 Mm = ball_polarization_tensor(md.mu_c, md.mu_m, r).M;
    const PlaneWave pw{make_direction(Vec3(0.2, -0.1, 1.0)), Vec3::Zero()};
    PlaneWave wave = pw;
    wave.p = pw.d.cross(Vec3(1, 0.3, 0)).normalized();
    const cplx k = wavenumber(omega, md.eps_m, md.mu_m);
    const ScatterCoeffs dip = dipole_coeffs({r}, md, omega);
    for (const Vec3& x : {Vec3(1, 0, 0), Vec3(0.3, 0.4, -0.8), wave.d}) {
        const CVec3 a = quasistatic_amplitude(x, wave, omega, md, Me, Mm);
        const CVec3 b = amplitude_from_coeffs(dip, k, wave, x);
        CHECK((a - b).norm() < 1e-12 * b.norm());
    }
    const double q1 = extinction_quasistatic(wave.d, wave.p, omega, md, Me, Mm);
    const double q2 = extinction({r}, md, omega, wave, ExtinctionMode::dipole);
    CHECK(q1 == doctest::Approx(q2).epsilon(1e-12));
}

TEST_CASE("lossy hosts are rejected for extinction") {
    const MediumPair md{cplx(1.0, 0.2), 1.0, -2.0, 1.0};
    CHECK_THROWS_AS(extinction_quasistatic(Vec3::UnitZ(), Vec3::UnitX(), 1.0, md, CMat3::Identity(), CMat3::Zero()), Error);
    CHECK_THROWS_AS(green(Vec3::Zero(), Vec3::Zero(), 1.0), Error);
}
