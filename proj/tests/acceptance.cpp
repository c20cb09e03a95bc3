// One PASS/FAIL line per acceptance criterion; exit status counts the failures.
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include <fmt/format.h>

#include "oracles.hpp"
#include "plasmon/cli.hpp"
#include "plasmon/effective.hpp"
#include "plasmon/mie.hpp"
#include "plasmon/optimize.hpp"
#include "plasmon/shell_modes.hpp"
#include "plasmon/sphere_modes.hpp"

using namespace plasmon;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome wronskian() {
    double worst = 0.0;
    for (int a = 0; a < 20; ++a)
        for (int b = 0; b < 10; ++b) {
            const cplx z(0.1 * std::pow(400.0, a / 19.0), -1.0 + 11.0 * b / 9.0);
            const BesselTable t = bessel_table(20, z);
            for (int n = 0; n <= 20; ++n)
                worst = std::max(worst, std::abs(t.j[n] * t.H[n] - t.h[n] * t.J[n] - I / z) * std::abs(z));
        }
    return {worst <= 1e-11, fmt::format("max |z||jH - hJ - i/z| = {:.3e} (bound 1e-11)", worst)};
}

Outcome frohlich() {
    const Material mat{{1.0, 1.0, 0.0}, 1.0, 1.0, 1.0};
    const ResonanceReport r1 = find_resonance(Family::eps_plus, 1, mat, 0.01, Order::quasistatic);
    const ResonanceReport r2 = find_resonance(Family::eps_plus, 2, mat, 0.01, Order::quasistatic);
    const double e1 = std::abs(r1.omega_star - 1.0 / std::sqrt(3.0)), e2 = std::abs(r2.omega_star - std::sqrt(0.4));
    return {r1.found && r2.found && e1 <= 1e-8 && e2 <= 1e-8,
            fmt::format("n=1 error {:.2e}, n=2 error {:.2e} (bound 1e-8)", e1, e2)};
}

Outcome mie_dipole() {
    const DrudeParams dp{1.0, 1.0, 0.05};
    const double w0 = 1.0 / std::sqrt(3.0);
    const double radius = 0.01 / w0;
    double worst_dip = 0.0, worst_bh = 0.0;
    std::size_t peak_index = 0;
    const auto grid = linspace(0.45, 0.7, 50);
    std::vector<double> q;
    for (double w : grid) {
        const MediumPair md{1.0, 1.0, drude_permittivity(dp, w), 1.0};
        const double qs = extinction({radius}, md, w, PlaneWave{}, ExtinctionMode::series);
        const double qd = extinction({radius}, md, w, PlaneWave{}, ExtinctionMode::dipole);
        const cplx kc = wavenumber(w, md.eps_c, 1.0);
        const double qbh = oracle::bh_mie(w * radius, kc / w, 1.0, mie_nmax(w * radius)).qext_cross_section(w);
        worst_dip = std::max(worst_dip, std::abs(qs - qd) / qs);
        worst_bh = std::max(worst_bh, std::abs(qs - qbh) / qbh);
        q.push_back(qs);
        if (qs > q[peak_index]) peak_index = q.size() - 1;
    }
    const bool bracketed = peak_index > 0 && peak_index + 1 < grid.size();
    return {bracketed && worst_dip <= 5e-2 && worst_bh <= 1e-9,
            fmt::format("max rel |Qs-Qd| = {:.3e} (bound 5e-2), max rel |Qs-Qmie| = {:.3e} (bound 1e-9), peak inside scan: {}",
                        worst_dip, worst_bh, bracketed)};
}

const MediumPair magnetic{1.0, 1.0, cplx(-2.5, 0.3), cplx(2.0, 0.1)};
const std::vector<double> ladder{0.08, 0.04, 0.02, 0.01};

Outcome sphere_order() {
    double worst = 1e300, tau1 = 0.0;
    const double omega = 0.7;
    for (int n = 1; n <= 3; ++n) {
        const ModeBlock b = w_blocks(n, omega, magnetic);
        for (const EigenExpansion& e : eigen_expansions(n, omega, magnetic)) {
            std::vector<double> res;
            for (double r : ladder) {
                const cplx pred = e.tau(r, omega);
                res.push_back(std::abs(oracle::nearest_eigenvalue(b.assembled(r), pred) - pred));
            }
            worst = std::min(worst, oracle::loglog_slope(ladder, res));
            tau1 = std::max(tau1, std::abs(e.tau1));
        }
    }
    return {worst >= 2.7 && tau1 == 0.0, fmt::format("min slope {:.3f} over 4 families, n<=3 (bound 2.7); max |tau1| = {}", worst, tau1)};
}

Outcome shell_spectrum() {
    double worst = 0.0;
    bool multiplicity = true;
    for (double rho : {0.2, 0.5, 0.8})
        for (int n = 1; n <= 3; ++n) {
            const ShellBlocks b = shell_blocks(n, rho, 0.7, magnetic);
            const Contrasts c = contrasts(magnetic);
            const auto tau0 = shell_tau0(*c.lambda_mu, c.lambda_eps, n, rho);
            const Eigen::ComplexEigenSolver<CMat8> es(b.W0, false);
            for (cplx t : tau0) {
                std::vector<double> d;
                for (int k = 0; k < 8; ++k) d.push_back(std::abs(es.eigenvalues()(k) - t));
                std::sort(d.begin(), d.end());
                worst = std::max(worst, d[1]);
                multiplicity = multiplicity && d[2] > 1e-6;
            }
        }
    const double l1 = std::abs(shell_np_eigenvalue(1, 0.5) - std::sqrt(2.0) / 6.0);
    double thin = 0.0;
    for (int n = 1; n <= 3; ++n) {
        const ShellBlocks b = shell_blocks(n, 1e-3, 0.7, magnetic);
        for (const EigenExpansion& e : eigen_expansions(n, 0.7, magnetic))
            thin = std::max(thin, std::abs(oracle::nearest_eigenvalue(b.W0, e.tau0) - e.tau0));
    }
    return {worst <= 1e-10 && multiplicity && l1 <= 1e-12 && thin <= 1e-4,
            fmt::format("W0 spectrum gap {:.2e} (1e-10), multiplicity 2: {}, |L1(0.5) - sqrt2/6| = {:.1e} (1e-12), rho=1e-3 vs sphere {:.2e} (1e-4)",
                        worst, multiplicity, l1, thin)};
}

Outcome shell_order() {
    const double omega = 0.7;
    double worst = 1e300, tau1 = 0.0;
    int branches = 0;
    for (double rho : {0.2, 0.5, 0.8})
        for (int n = 1; n <= 3; ++n) {
            const ShellBlocks b = shell_blocks(n, rho, omega, magnetic);
            const auto ex = shell_degenerate_expansion(n, rho, omega, magnetic);
            for (int pair = 0; pair < 4; ++pair) {
                const DegenExpansion& d0 = ex[2 * pair];
                const DegenExpansion& d1 = ex[2 * pair + 1];
                std::vector<double> r0, r1;
                for (double rs : ladder) {
                    Eigen::ComplexEigenSolver<CMat8> es(b.assembled(rs), false);
                    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + 8);
                    std::sort(ev.begin(), ev.end(), [&](cplx a, cplx c) { return std::abs(a - d0.tau0) < std::abs(c - d0.tau0); });
                    const cplx p0 = d0.tau(rs, omega), p1 = d1.tau(rs, omega);
                    const bool same = std::abs(ev[0] - p0) + std::abs(ev[1] - p1) <= std::abs(ev[1] - p0) + std::abs(ev[0] - p1);
                    r0.push_back(std::abs((same ? ev[0] : ev[1]) - p0));
                    r1.push_back(std::abs((same ? ev[1] : ev[0]) - p1));
                }
                worst = std::min({worst, oracle::loglog_slope(ladder, r0), oracle::loglog_slope(ladder, r1)});
                tau1 = std::max({tau1, std::abs(d0.tau1), std::abs(d1.tau1)});
                branches += 2;
            }
        }
    return {worst >= 2.7 && tau1 < 1e-12,
            fmt::format("min slope {:.3f} over {} branch fits (bound 2.7); max |tau1| = {:.1e}", worst, branches, tau1)};
}

Outcome maxwell_garnett() {
    double worst = 0.0;
    const cplx em = 1.0;
    for (cplx ec : {cplx(4.0, 0.1), cplx(-6.0, 0.3), cplx(0.3, 0.0)})
        for (double f : {1e-3, 1e-2, 0.1}) {
            const cplx beta = (ec - em) / (ec + 2.0 * em);
            const cplx cm = em * (1.0 + 3.0 * f * beta / (1.0 - f * beta));
            worst = std::max(worst, std::abs(mg_effective_ball(em, ec, f).gamma_star(0, 0) - cm) / std::abs(cm));
        }
    // approach the Frohlich point from the dielectric side at f = 0.1
    const DrudeParams dp{1.0, 1.0, 0.01};
    bool first_valid = false, last_invalid = false;
    int flips = 0;
    bool prev = true;
    const auto grid = linspace(1.6, 1.0 / std::sqrt(3.0) + 1e-3, 300);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const bool v = mg_effective_ball(em, drude_permittivity(dp, grid[i]), 0.1).validity;
        if (i == 0) first_valid = v;
        if (i > 0 && v != prev) ++flips;
        prev = v;
        last_invalid = !v;
    }
    return {worst <= 1e-12 && first_valid && last_invalid,
            fmt::format("max rel |MG - CM| = {:.2e} (bound 1e-12); f=0.1 flag valid at omega=1.6: {}, invalid near Frohlich: {}, flips: {}",
                        worst, first_valid, last_invalid, flips)};
}

Outcome regular_part() {
    const double r0 = periodic_regular_part(Vec3::Zero());
    double coeff[3];
    for (int axis = 0; axis < 3; ++axis) {
        // least squares R(x) - R(0) = c |x|^2 + d |x|^4
        double s44 = 0, s46 = 0, s66 = 0, s4y = 0, s6y = 0;
        for (double t : std::vector<double>{1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 3e-2, 4e-2, 5e-2}) {
            const double y = periodic_regular_part(t * Vec3::Unit(axis)) - r0;
            const double a = t * t, b = a * a;
            s44 += a * a;
            s46 += a * b;
            s66 += b * b;
            s4y += a * y;
            s6y += b * y;
        }
        coeff[axis] = (s4y * s66 - s6y * s46) / (s44 * s66 - s46 * s46);
    }
    double dev = 0.0, spread = 0.0;
    for (int i = 0; i < 3; ++i) {
        dev = std::max(dev, std::abs(coeff[i] + 1.0 / 6.0) * 6.0);
        for (int j = 0; j < 3; ++j) spread = std::max(spread, std::abs(coeff[i] - coeff[j]) / std::abs(coeff[j]));
    }
    return {dev <= 0.02 && spread <= 0.01,
            fmt::format("coefficients ({:.6f}, {:.6f}, {:.6f}); rel deviation from -1/6 {:.2e} (0.02), axis spread {:.2e} (0.01)",
                        coeff[0], coeff[1], coeff[2], dev, spread)};
}

Outcome anisotropic() {
    double worst = 0.0;
    const cplx ec(-2.3, 0.4);
    for (int n = 1; n <= 3; ++n)
        for (int m = -n; m <= n; ++m) {
            const cplx got = q1_correction({ec, 0.1, 0.7 * Mat3::Identity()}, {n, m}, 1.0);
            const cplx expect = ec * 0.7 * (0.5 - np_ball_eigenvalue(n));
            worst = std::max(worst, std::abs(got - expect) / std::abs(expect));
        }
    const Material mat{{1.0, 1.0, 0.02}, 1.0, 1.0, 1.0};
    const auto split = aniso_resonance(mat, Vec3(1.0, -1.0, 0.0).asDiagonal(), 0.1, 1);
    const auto iso = aniso_resonance(mat, Mat3::Identity(), 0.1, 1);
    bool distinct = split.size() == 3;
    for (std::size_t i = 1; distinct && i < split.size(); ++i)
        distinct = std::abs(split[i].report.omega_star - split[i - 1].report.omega_star) > 1e-6 && split[i].report.found;
    return {worst <= 1e-8 && distinct && iso.size() == 1,
            fmt::format("max rel |q1 - eps_c alpha (1/2 - lambda)| = {:.2e} (1e-8); traceless R gives {} resonances ({:.5f}, {:.5f}, {:.5f}); isotropic R gives {}",
                        worst, split.size(), split.size() > 0 ? split[0].report.omega_star : 0.0,
                        split.size() > 1 ? split[1].report.omega_star : 0.0, split.size() > 2 ? split[2].report.omega_star : 0.0,
                        iso.size())};
}

Outcome end_to_end() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "plasmon_acceptance_e2e";
    fs::remove_all(dir);
    cli::RunConfig cfg;
    cfg.material.drude = {1.0, 1.0, 0.05};
    cfg.radius = 0.3 * std::sqrt(3.0);  // k_m r = 0.3 at the Frohlich frequency
    cfg.omega_min = 0.3;
    cfg.omega_max = 0.8;
    cfg.count = 501;
    cfg.order = "both";
    cfg.out_dir = dir.string();
    cli::execute("resonance", cfg);
    cli::execute("spectrum", cfg);
    const auto res = nlohmann::json::parse(std::ifstream(dir / "resonance.json"));
    const auto peaks = nlohmann::json::parse(std::ifstream(dir / "spectrum_peaks.json"))["peaks"];
    double qs = 0.0, corr = 0.0;
    for (const auto& r : res["reports"]) (r["order"] == "quasistatic" ? qs : corr) = r["omega_star"].get<double>();
    if (peaks.size() != 1) return {false, fmt::format("expected one Mie peak, found {}", peaks.size())};
    const double peak = peaks[0]["omega"], fwhm = peaks[0]["fwhm"];
    const bool inside = std::abs(corr - peak) <= 0.5 * fwhm;
    const bool same_sign = (corr - qs) * (peak - qs) > 0.0;
    fs::remove_all(dir);
    return {inside && same_sign,
            fmt::format("corrected {:.6f}, Mie peak {:.6f} +- {:.6f} (half FWHM), quasistatic {:.6f}; shifts {:+.5f} vs {:+.5f}",
                        corr, peak, 0.5 * fwhm, qs, corr - qs, peak - qs)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"Wronskian identity", wronskian},
        {"Frohlich resonance", frohlich},
        {"Mie-dipole agreement", mie_dipole},
        {"Sphere eigenvalue expansion order", sphere_order},
        {"Shell spectrum", shell_spectrum},
        {"Shell degenerate expansion order", shell_order},
        {"Maxwell-Garnett vs Clausius-Mossotti", maxwell_garnett},
        {"Periodic regular part", regular_part},
        {"Anisotropic consistency", anisotropic},
        {"End-to-end resonance vs spectrum", end_to_end},
    };
    int failures = 0, index = 1;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s  %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    }
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
