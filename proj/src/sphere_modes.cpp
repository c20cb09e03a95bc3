#include "plasmon/sphere_modes.hpp"

#include <cmath>
#include <limits>

#include "plasmon/optimize.hpp"
#include "plasmon/specfun.hpp"

namespace plasmon {

BoundaryMatrices boundary_matrices(int n, cplx k, double r) {
    if (k == 0.0) throw Error(ErrorKind::domain, "boundary_matrices: k must be nonzero");
    if (!(r > 0.0)) throw Error(ErrorKind::domain, "boundary_matrices: r must be > 0");
    if (n < 1) throw Error(ErrorKind::domain, "boundary_matrices: n must be >= 1");
    const cplx t = k * r;
    const BesselTable b = bessel_table(n, t);
    BoundaryMatrices out;
    out.M << 0.5 - I * t * b.h[n] * b.J[n], 0.0, 0.0, 0.5 + I * t * b.j[n] * b.H[n];
    out.L << 0.0, I * k * t * t * b.j[n] * b.h[n], -I * k * b.J[n] * b.H[n], 0.0;
    return out;
}

SmallRCoeffs small_r_coeffs(int n) {
    if (n < 1) throw Error(ErrorKind::domain, "small_r_coeffs: n must be >= 1");
    const double a = 2.0 * n + 1.0;
    const double am = 2.0 * (2 * n - 1) * a, ap = 2.0 * a * (2 * n + 3);
    SmallRCoeffs c;
    c.p = 1.0 / a;
    c.q = (n + 1.0) * (n - 2.0) / am - n * (n + 3.0) / ap;
    c.r = -(n + 1.0) / am + (n + 3.0) / ap;
    c.s = -(n - 2.0) / am + n / ap;
    return c;
}

double np_ball_eigenvalue(int n) { return 1.0 / (2.0 * (2 * n + 1)); }

BlockConstants block_constants(const MediumPair& m) {
    BlockConstants c;
    c.lambda_eps = lambda_eps(m);
    c.lambda_mu = lambda_mu(m);
    const cplx prod = m.mu_c * m.eps_c - m.mu_m * m.eps_m;
    c.C_mu = prod / (m.mu_m - m.mu_c);
    c.C_eps = prod / (m.eps_m - m.eps_c);
    c.D_mu = (m.eps_c * m.mu_c * m.mu_c - m.eps_m * m.mu_m * m.mu_m) / (m.mu_m - m.mu_c);
    c.D_eps = (m.eps_c * m.eps_c * m.mu_c - m.eps_m * m.eps_m * m.mu_m) / (m.eps_m - m.eps_c);
    return c;
}

ModeBlock w_blocks(int n, double omega, const MediumPair& media) {
    const BlockConstants c = block_constants(media);
    if (std::abs(c.lambda_mu - c.lambda_eps) < 1e-12)
        throw Error(ErrorKind::degenerate, "w_blocks: lambda_mu equals lambda_eps");
    const SmallRCoeffs k = small_r_coeffs(n);
    const double ph = np_ball_eigenvalue(n);
    ModeBlock b;
    b.n = n;
    b.W0 = CMat4::Zero();
    b.W0.diagonal() << c.lambda_mu + ph, c.lambda_mu - ph, c.lambda_eps + ph, c.lambda_eps - ph;
    b.W1 = CMat4::Zero();
    b.W1(0, 3) = omega * c.C_mu * k.p;
    b.W1(1, 2) = omega * c.C_mu * k.q;
    b.W1(2, 1) = omega * c.C_eps * k.p;
    b.W1(3, 0) = omega * c.C_eps * k.q;
    b.W2 = CMat4::Zero();
    b.W2.diagonal() << c.D_mu * k.r, c.D_mu * k.s, c.D_eps * k.r, c.D_eps * k.s;
    b.W2 *= omega * omega;
    return b;
}

std::string to_string(Family f) {
    switch (f) {
        case Family::mu_plus: return "mu+";
        case Family::mu_minus: return "mu-";
        case Family::eps_plus: return "eps+";
        case Family::eps_minus: return "eps-";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    if (s == "mu+") return Family::mu_plus;
    if (s == "mu-") return Family::mu_minus;
    if (s == "eps+") return Family::eps_plus;
    if (s == "eps-") return Family::eps_minus;
    throw Error(ErrorKind::domain, "unknown family '" + s + "' (expected mu+, mu-, eps+, eps-)");
}

std::string to_string(Order o) { return o == Order::quasistatic ? "quasistatic" : "corrected"; }

Order order_from_string(const std::string& s) {
    if (s == "quasistatic") return Order::quasistatic;
    if (s == "corrected") return Order::corrected;
    throw Error(ErrorKind::domain, "unknown order '" + s + "' (expected quasistatic or corrected)");
}

EigenExpansion eigen_expansion(Family family, int n, double /*omega*/, const MediumPair& media) {
    const SmallRCoeffs k = small_r_coeffs(n);
    const double ph = np_ball_eigenvalue(n);
    const bool magnetic = !media.nonmagnetic();
    const bool is_mu = family == Family::mu_plus || family == Family::mu_minus;
    if (is_mu && !magnetic)
        throw Error(ErrorKind::degenerate, "mu families are undefined for a nonmagnetic particle");

    const cplx le = lambda_eps(media);
    EigenExpansion e;
    e.family = family;
    e.n = n;
    e.tau1 = 0.0;

    if (magnetic) {
        const BlockConstants c = block_constants(media);
        if (std::abs(c.lambda_mu - c.lambda_eps) < 1e-8)
            throw Error(ErrorKind::degenerate, "expansion refused: lambda_mu equals lambda_eps");
        const cplx delta = c.lambda_mu - c.lambda_eps;
        auto den = [&](cplx d) {
            if (std::abs(d) < 1e-12) throw Error(ErrorKind::degenerate, "expansion: lambda_mu - lambda_eps +- p_n vanishes");
            return d;
        };
        const cplx prod = c.C_mu * c.C_eps * k.p * k.q;
        switch (family) {
            case Family::mu_plus: {
                const cplx d = den(delta + k.p);
                e.tau0 = c.lambda_mu + ph;
                e.tau2_coeff = prod / d + c.D_mu * k.r;
                e.index = 0; e.partner = 3; e.eigvec1_coeff = c.C_eps * k.q / d;
            } break;
            case Family::mu_minus: {
                const cplx d = den(delta - k.p);
                e.tau0 = c.lambda_mu - ph;
                e.tau2_coeff = prod / d + c.D_mu * k.s;
                e.index = 1; e.partner = 2; e.eigvec1_coeff = c.C_eps * k.p / d;
            } break;
            case Family::eps_plus: {
                const cplx d = den(-delta + k.p);
                e.tau0 = c.lambda_eps + ph;
                e.tau2_coeff = prod / d + c.D_eps * k.r;
                e.index = 2; e.partner = 1; e.eigvec1_coeff = c.C_mu * k.q / d;
            } break;
            case Family::eps_minus: {
                const cplx d = den(-delta - k.p);
                e.tau0 = c.lambda_eps - ph;
                e.tau2_coeff = prod / d + c.D_eps * k.s;
                e.index = 3; e.partner = 0; e.eigvec1_coeff = c.C_mu * k.p / d;
            } break;
        }
        return e;
    }

    // mu_c == mu_m: C_mu / (lambda_eps - lambda_mu +- p_n) -> -(eps_c - eps_m)
    const cplx mu_ratio = -(media.eps_c - media.eps_m);
    const cplx C_eps = -media.mu_m;
    const cplx D_eps = -media.mu_m * (media.eps_c + media.eps_m);
    if (family == Family::eps_plus) {
        e.tau0 = le + ph;
        e.tau2_coeff = C_eps * mu_ratio * k.p * k.q + D_eps * k.r;
        e.index = 2; e.partner = 1; e.eigvec1_coeff = mu_ratio * k.q;
    } else {
        e.tau0 = le - ph;
        e.tau2_coeff = C_eps * mu_ratio * k.p * k.q + D_eps * k.s;
        e.index = 3; e.partner = 0; e.eigvec1_coeff = mu_ratio * k.p;
    }
    return e;
}

std::vector<EigenExpansion> eigen_expansions(int n, double omega, const MediumPair& media) {
    std::vector<EigenExpansion> out;
    if (!media.nonmagnetic()) {
        out.push_back(eigen_expansion(Family::mu_plus, n, omega, media));
        out.push_back(eigen_expansion(Family::mu_minus, n, omega, media));
    }
    out.push_back(eigen_expansion(Family::eps_plus, n, omega, media));
    out.push_back(eigen_expansion(Family::eps_minus, n, omega, media));
    return out;
}

double lorentzian_fwhm(const std::function<cplx(double)>& tau, double omega_star) {
    const double h = 1e-5 * omega_star;
    const double slope = (tau(omega_star + h).real() - tau(omega_star - h).real()) / (2.0 * h);
    if (slope == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return 2.0 * std::abs(tau(omega_star).imag()) / std::abs(slope);
}

namespace {

ResonanceReport search(const std::function<cplx(double)>& tau, const SearchRange& range) {
    auto objective = [&](double w) {
        try {
            const cplx t = tau(w);
            return std::isfinite(std::abs(t)) ? std::abs(t) : std::numeric_limits<double>::infinity();
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const MinimumResult m = bracket_and_minimize(objective, range.lo, range.hi, range.grid, range.tol);
    ResonanceReport rep;
    rep.found = m.interior && std::isfinite(m.value);
    rep.omega_star = m.x;
    if (rep.found) {
        rep.tau_at_min = tau(m.x);
        rep.fwhm_estimate = lorentzian_fwhm(tau, m.x);
    }
    return rep;
}

}  // namespace

ResonanceReport find_resonance(Family family, int n, const Material& mat, double r, Order order,
                               const SearchRange& range) {
    if (!(r > 0.0)) throw Error(ErrorKind::domain, "find_resonance: r must be > 0");
    auto tau0 = [&](double w) { return eigen_expansion(family, n, w, mat.at(w)).tau0; };
    auto tau_corr = [&](double w) { return eigen_expansion(family, n, w, mat.at(w)).tau(r, w); };

    ResonanceReport qs = search(tau0, range);
    ResonanceReport rep = order == Order::quasistatic ? qs : search(tau_corr, range);
    rep.order = order;
    rep.family = to_string(family);
    rep.n = n;
    rep.quasistatic_omega = qs.omega_star;
    rep.found = rep.found && qs.found;
    rep.shift_from_quasistatic = order == Order::quasistatic ? 0.0 : rep.omega_star - qs.omega_star;
    return rep;
}

}  // namespace plasmon
