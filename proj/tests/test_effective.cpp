#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "plasmon/effective.hpp"
#include "plasmon/optimize.hpp"
#include "plasmon/quadrature.hpp"

using namespace plasmon;

namespace {

// Kernel matrix by plain (cos theta, phi) product quadrature in the source variable, with the
// value at the target subtracted and restored through the closed-form integral Tr(R)/3.
Eigen::MatrixXcd subtracted_kernel_matrix(const Mat3& R, int n, int inner) {
    const int dim = 2 * n + 1;
    const GaussLegendre outer = gauss_legendre(n + 6), in = gauss_legendre(inner);
    const int outer_p = 2 * n + 10, inner_p = 2 * inner + 1;
    std::vector<Vec3> ys;
    std::vector<double> wy;
    std::vector<std::vector<Harmonics>> hy;
    for (std::size_t a = 0; a < in.nodes.size(); ++a)
        for (int b = 0; b < inner_p; ++b) {
            const double ct = in.nodes[a], st = std::sqrt(1 - ct * ct), ph = 2 * pi * (b + 0.5) / inner_p;
            ys.emplace_back(st * std::cos(ph), st * std::sin(ph), ct);
            wy.push_back(in.weights[a] * 2 * pi / inner_p);
            hy.push_back(harmonics_all(n, ys.back()));
        }
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t a = 0; a < outer.nodes.size(); ++a)
        for (int b = 0; b < outer_p; ++b) {
            const double ct = outer.nodes[a], st = std::sqrt(1 - ct * ct), ph = 2 * pi * b / outer_p;
            const Vec3 x(st * std::cos(ph), st * std::sin(ph), ct);
            const double wx = outer.weights[a] * 2 * pi / outer_p;
            const auto hx = harmonics_all(n, x);
            Eigen::VectorXcd f = Eigen::VectorXcd::Zero(dim);
            for (std::size_t q = 0; q < ys.size(); ++q) {
                const Vec3 z = x - ys[q];
                const double r = z.norm();
                if (r < 1e-12) continue;
                const double k = z.dot(R * z) / (4 * pi * r * r * r);
                for (int c = 0; c < dim; ++c) f(c) += wy[q] * k * (hy[q][c].Y - hx[c].Y);
            }
            for (int c = 0; c < dim; ++c) f(c) += hx[c].Y * R.trace() / 3.0;
            for (int rr = 0; rr < dim; ++rr)
                for (int c = 0; c < dim; ++c) T(rr, c) += wx * std::conj(hx[rr].Y) * f(c);
        }
    return T;
}

// Real basis x, y, z from the complex degree-1 harmonics (no Condon-Shortley phase).
Eigen::Matrix3cd to_real_basis(const Eigen::MatrixXcd& P) {
    Eigen::Matrix3cd U = Eigen::Matrix3cd::Zero();
    const double s = 1.0 / std::sqrt(2.0);
    U(2, 0) = s;        // Y_1^1
    U(0, 0) = s;        // Y_1^-1
    U(2, 1) = -I * s;
    U(0, 1) = I * s;
    U(1, 2) = 1.0;      // Y_1^0
    return U.adjoint() * P * U;
}

const Material drude{{1.0, 1.0, 0.02}, 1.0, 1.0, 1.0};

}  // namespace

TEST_CASE("zeroth-order eigenvalues") {
    const auto same = q0_eigenvalues(2.0, 2.0, ball_np_spectrum(4, true));
    for (cplx t : same) CHECK(std::abs(t - 2.0) < 1e-15);
    const auto f = q0_eigenvalues(1.0, -2.0, {1.0 / 6.0});
    CHECK(std::abs(f[0]) < 1e-15);
    const auto ord = q0_eigenvalues(1.0, -3.0, ball_np_spectrum(5));
    for (std::size_t i = 1; i < ord.size(); ++i) CHECK(ord[i].real() < ord[i - 1].real());
    CHECK_THROWS_AS(q0_eigenvalues(1.0, 2.0, {}), Error);
}

TEST_CASE("isotropic R reproduces the derivative of the zeroth order") {
    const cplx ec(-2.3, 0.4);
    for (double alpha : {0.5, -1.2})
        for (int n = 1; n <= 3; ++n)
            for (int m = -n; m <= n; ++m) {
                const AnisoPermittivity a{ec, 0.1, alpha * Mat3::Identity()};
                const cplx got = q1_correction(a, {n, m}, 1.0);
                const cplx expect = ec * alpha * (0.5 - np_ball_eigenvalue(n));
                CHECK(std::abs(got - expect) <= 1e-8 * std::abs(expect));
                // finite difference of q0 in the scaled particle permittivity
                const double h = 1e-6;
                const cplx lam = np_ball_eigenvalue(n);
                auto q0 = [&](double d) { return 0.5 * (1.0 + ec * (1 + d * alpha)) + (1.0 - ec * (1 + d * alpha)) * lam; };
                CHECK(std::abs((q0(h) - q0(-h)) / (2 * h) - got) < 1e-7);
            }
}

TEST_CASE("kernel matrix matches the subtracted product quadrature") {
    const Mat3 R = Vec3(1.0, -1.0, 0.0).asDiagonal();
    Mat3 G;
    G << 0.4, 0.3, -0.1, 0.3, -0.2, 0.5, -0.1, 0.5, 0.7;
    for (const Mat3& r : {R, G})
        for (int n = 1; n <= 2; ++n) {
            const Eigen::MatrixXcd a = anisotropic_kernel_matrix(r, n, 2 * n + 8);
            const Eigen::MatrixXcd b = subtracted_kernel_matrix(r, n, 48);
            CHECK((a - b).cwiseAbs().maxCoeff() < 1e-4);
            CHECK((a - a.adjoint()).norm() < 1e-12);
        }
}

TEST_CASE("degree-1 multiplet is R / 3 in the Cartesian basis") {
    Mat3 G;
    G << 0.4, 0.3, -0.1, 0.3, -0.2, 0.5, -0.1, 0.5, 0.7;
    const Eigen::Matrix3cd P = to_real_basis(q1_multiplet(G, 1, 1.0));
    CHECK((P - G.cast<cplx>() / 3.0).norm() < 1e-10);
}

TEST_CASE("traceless R: mode value and multiplet trace") {
    const Mat3 R = Vec3(1.0, -1.0, 0.0).asDiagonal();
    const cplx ec(-2.0, 0.1);
    const AnisoPermittivity a{ec, 0.1, R};
    CHECK(std::abs(q1_correction(a, {1, 0}, 1.0)) < 1e-10);
    Mat3 G;
    G << 0.4, 0.3, -0.1, 0.3, -0.2, 0.5, -0.1, 0.5, 0.7;
    cplx trace = 0.0;
    for (int m = -1; m <= 1; ++m) trace += q1_correction({ec, 0.1, G}, {1, m}, 1.0);
    CHECK(std::abs(trace - ec * G.trace() * (0.5 - 1.0 / 6.0)) < 1e-10);
    // higher degree trace from the same quadrature against the dense oracle
    const Eigen::MatrixXcd T2 = subtracted_kernel_matrix(G, 2, 48);
    const Eigen::MatrixXcd P2 = q1_multiplet(G, 2, 1.0);
    const double lam = np_ball_eigenvalue(2);
    const cplx oracle_trace = (0.5 - lam) * 5.0 * (G.trace() / 10.0 * 5.0 - 0.5 * T2.trace()) -
                              (-0.5 * G.trace() * lam * 5.0 + 0.75 * T2.trace());
    CHECK(std::abs(P2.trace() - oracle_trace) < 1e-4);
}

TEST_CASE("quadrature degree guard") {
    CHECK_THROWS_AS(anisotropic_kernel_matrix(Mat3::Identity(), 2, 5), Error);
    CHECK_THROWS_AS(q1_correction({1.0, 0.1, Mat3::Identity()}, {0, 0}, 1.0), Error);
    Mat3 bad = Mat3::Zero();
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(q1_correction({1.0, 0.1, bad}, {1, 0}, 1.0), Error);
}

TEST_CASE("anisotropic resonances") {
    SUBCASE("delta = 0 is the Frohlich root") {
        const Material lossless{{1.0, 1.0, 0.0}, 1.0, 1.0, 1.0};
        const auto res = aniso_resonance(lossless, Vec3(1.0, -1.0, 0.0).asDiagonal(), 0.0, 1);
        for (const AnisoResonance& r : res) CHECK(std::abs(r.report.omega_star - 1.0 / std::sqrt(3.0)) < 1e-8);
    }
    SUBCASE("isotropic R equals the rescaled permittivity to second order") {
        const double alpha = 1.0;
        std::vector<double> ds, diffs;
        for (double delta : {0.04, 0.02, 0.01}) {
            const auto res = aniso_resonance(drude, alpha * Mat3::Identity(), delta, 1);
            REQUIRE(res.size() == 1);
            CHECK(res[0].multiplicity == 3);
            const double lam = np_ball_eigenvalue(1);
            auto obj = [&](double w) {
                const cplx e = drude_permittivity(drude.drude, w) * (1 + delta * alpha);
                return std::abs(0.5 * (1.0 + e) + (1.0 - e) * lam);
            };
            const MinimumResult m = bracket_and_minimize(obj, 0.05, 1.5, 200, 1e-12);
            ds.push_back(delta);
            diffs.push_back(std::abs(res[0].report.omega_star - m.x));
        }
        CHECK(diffs[0] < 0.05 * 0.04 * 0.04 * 10);
        CHECK(oracle::loglog_slope(ds, diffs) > 1.8);
    }
    SUBCASE("traceless R splits the triplet") {
        const auto three = aniso_resonance(drude, Vec3(1.0, -1.0, 0.0).asDiagonal(), 0.1, 1);
        CHECK(three.size() == 3);
        const auto two = aniso_resonance(drude, Vec3(1.0, 1.0, -2.0).asDiagonal(), 0.1, 1);
        REQUIRE(two.size() == 2);
        CHECK(two[0].multiplicity + two[1].multiplicity == 3);
        for (std::size_t i = 1; i < three.size(); ++i)
            CHECK(std::abs(three[i].report.omega_star - three[i - 1].report.omega_star) > 1e-4);
    }
    CHECK_THROWS_AS(aniso_resonance(drude, Mat3::Identity(), 0.3, 1), Error);
}

TEST_CASE("Maxwell-Garnett equals Clausius-Mossotti for balls") {
    const cplx em = 1.3;
    for (const cplx ec : {cplx(3.0, 0.2), cplx(-5.0, 0.5), cplx(0.5, 0.0)})
        for (double f : {1e-3, 1e-2, 0.1}) {
            const EffectiveTensor t = mg_effective_ball(em, ec, f);
            const cplx beta = (ec - em) / (ec + 2.0 * em);
            const cplx cm = em * (1.0 + 3.0 * f * beta / (1.0 - f * beta));
            CHECK(std::abs(t.gamma_star(0, 0) - cm) <= 1e-12 * std::abs(cm));
            CHECK((t.gamma_star - t.gamma_star.transpose()).norm() < 1e-15);
            CHECK(std::abs(t.gamma_star(0, 1)) < 1e-15);
        }
    const EffectiveTensor small = mg_effective_ball(em, cplx(3.0), 1e-9);
    CHECK((small.gamma_star - em * CMat3::Identity()).norm() < 1e-8);
    CHECK(unit_volume_radius() == doctest::Approx(std::cbrt(3.0 / (4.0 * pi))));
}

TEST_CASE("validity margin shrinks approaching the Frohlich point") {
    const Material mat{{1.0, 1.0, 0.01}, 1.0, 1.0, 1.0};
    const double f = 0.01;
    double last_margin = 1e300;
    bool tripped = false;
    const double w_res = 1.0 / std::sqrt(3.0);
    // lambda* runs from 1/3 (omega = 1/sqrt(6)) down to the dipole eigenvalue 1/6
    for (double w : linspace(0.42, w_res - 1e-4, 40)) {
        const EffectiveTensor t = mg_effective_ball(1.0, drude_permittivity(mat.drude, w), f);
        CHECK(t.margin < last_margin);
        last_margin = t.margin;
        CHECK(t.validity == (t.margin >= 0.0));
        tripped = tripped || !t.validity;
        CHECK(t.remainder_scale == doctest::Approx(std::pow(f, 8.0 / 3.0) / (t.dist * t.dist)));
    }
    CHECK(mg_effective_ball(1.0, drude_permittivity(mat.drude, 0.42), f).validity);
    CHECK(tripped);
}

TEST_CASE("near resonance the composite becomes plasmonic") {
    // scan omega for a negative real part of f M (Id - f M / 3)^-1
    bool negative = false;
    for (double w : linspace(0.5, 0.75, 200)) {
        const cplx ec = drude_permittivity({1.0, 1.0, 0.01}, w);
        const EffectiveTensor t = mg_effective_ball(1.0, ec, 0.1);
        if (!t.validity && (t.gamma_star(0, 0) - 1.0).real() < 0.0) negative = true;
    }
    CHECK(negative);
}

TEST_CASE("singular MG denominator") {
    // unit-volume ball: Id - (f/3) M = (1 - f beta) Id vanishes at beta = 1/f
    const double f = 0.1;
    CHECK_THROWS_AS(mg_effective_ball(1.0, cplx(-7.0 / 3.0), f), Error);
    CHECK_THROWS_AS(mg_effective_ball(1.0, 2.0, 1.5), Error);
}

TEST_CASE("periodic regular part") {
    const double r0 = periodic_regular_part(Vec3::Zero());
    // Wigner constant of the simple cubic lattice
    CHECK(r0 == doctest::Approx(2.837297479480620 / (4.0 * pi)).epsilon(1e-12));
    const Vec3 x(0.13, -0.07, 0.21);
    CHECK(std::abs(periodic_regular_part(x) - periodic_regular_part(-x)) < 1e-13);
    // cubic symmetry
    CHECK(std::abs(periodic_regular_part(Vec3(0.1, 0.2, 0.3)) - periodic_regular_part(Vec3(0.3, 0.1, 0.2))) < 1e-13);
    // finite-difference Laplacian
    const double h = 1e-2;
    const Vec3 p(0.05, 0.02, -0.03);
    double lap = 0.0;
    for (int i = 0; i < 3; ++i)
        lap += (periodic_regular_part(p + h * Vec3::Unit(i)) - 2 * periodic_regular_part(p) +
                periodic_regular_part(p - h * Vec3::Unit(i))) / (h * h);
    CHECK(lap == doctest::Approx(-1.0).epsilon(1e-4));
    RegularPartOptions coarse;
    coarse.truncation = 1;
    coarse.alpha = 0.5;
    CHECK_THROWS_AS(periodic_regular_part(x, coarse), Error);
    CHECK_THROWS_AS(periodic_regular_part(Vec3(0.6, 0, 0)), Error);
}
