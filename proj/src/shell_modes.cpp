#include "plasmon/shell_modes.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "plasmon/optimize.hpp"

namespace plasmon {

void ShellGeometry::validate() const {
    if (!(r_s > 0.0)) throw Error(ErrorKind::domain, "shell: r_s must be > 0");
    if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::domain, "shell: rho must lie in (0, 1)");
}

namespace {

void check_shell(int n, double rho) {
    if (n < 1) throw Error(ErrorKind::domain, "shell: n must be >= 1");
    if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::domain, "shell: rho must lie in (0, 1)");
}

struct Constants {
    bool magnetic;
    cplx lambda_mu, lambda_eps;
    cplx C_mu;  // for nonmagnetic media: the limit of C_mu / (tau_eps - tau_mu)
    cplx C_eps, D_mu, D_eps;
};

Constants constants(const MediumPair& m) {
    Constants c;
    c.magnetic = !m.nonmagnetic();
    if (c.magnetic) {
        const BlockConstants b = block_constants(m);
        c.lambda_mu = b.lambda_mu;
        c.lambda_eps = b.lambda_eps;
        c.C_mu = b.C_mu;
        c.C_eps = b.C_eps;
        c.D_mu = b.D_mu;
        c.D_eps = b.D_eps;
    } else {
        c.lambda_mu = 0.0;
        c.lambda_eps = lambda_eps(m);
        c.C_mu = -(m.eps_c - m.eps_m);
        c.C_eps = -m.mu_m;
        c.D_mu = 0.0;
        c.D_eps = -m.mu_m * (m.eps_c + m.eps_m);
    }
    return c;
}

CMat4 anti(cplx a, cplx b, cplx c, cplx d) {
    CMat4 m = CMat4::Zero();
    m(0, 3) = a;
    m(1, 2) = b;
    m(2, 1) = c;
    m(3, 0) = d;
    return m;
}

CMat4 diag(cplx a, cplx b, cplx c, cplx d) {
    CMat4 m = CMat4::Zero();
    m.diagonal() << a, b, c, d;
    return m;
}

CMat8 block(const CMat4& a, const CMat4& b, const CMat4& c, const CMat4& d) {
    CMat8 m;
    m << a, b, c, d;
    return m;
}

ShellBlocks build(int n, double rho, double omega, const Constants& c) {
    const SmallRCoeffs k = small_r_coeffs(n);
    const ShellCoeffs t = shell_coeffs(n, rho);
    const double ph = np_ball_eigenvalue(n);
    ShellBlocks b;
    b.n = n;
    b.rho = rho;
    const CMat4 Lam = diag(c.lambda_mu, c.lambda_mu, c.lambda_eps, c.lambda_eps);
    const CMat4 P0 = diag(ph, -ph, ph, -ph);
    const CMat4 Q0 = rho * rho * diag(t.g, t.f, t.g, t.f);
    const CMat4 R0 = diag(t.f, t.g, t.f, t.g);
    b.W0 = block(Lam + P0, Q0, R0, Lam - P0);

    const CMat4 P1 = omega * anti(c.C_mu * k.p, c.C_mu * k.q, c.C_eps * k.p, c.C_eps * k.q);
    const CMat4 At = anti(c.C_mu * t.pt, c.C_mu * t.qt, c.C_eps * t.pt, c.C_eps * t.qt);
    b.W1 = block(P1, omega * rho * At, -(omega / rho) * At, -P1);

    const double w2 = omega * omega;
    const CMat4 P2 = w2 * diag(c.D_mu * k.r, c.D_mu * k.s, c.D_eps * k.r, c.D_eps * k.s);
    const CMat4 Q2 = w2 * rho * diag(c.D_mu * t.rt, c.D_mu * t.st, c.D_eps * t.rt, c.D_eps * t.st);
    const CMat4 R2 = (w2 / rho) * diag(c.D_mu * t.st, -c.D_mu * t.rt, c.D_eps * t.st, -c.D_eps * t.rt);
    b.W2 = block(P2, Q2, R2, -P2);
    return b;
}

const char* branch_label(int branch) {
    static const char* labels[] = {"mu+", "mu+", "mu-", "mu-", "eps+", "eps+", "eps-", "eps-"};
    return labels[branch - 1];
}

bool is_mu_branch(int b) { return b <= 4; }

// Closed-form (r_s omega)^2 coefficients built from the T/K combinations.
std::array<cplx, 8> printed_tau2(int n, double rho, const Constants& c) {
    const SmallRCoeffs k = small_r_coeffs(n);
    const ShellCoeffs t = shell_coeffs(n, rho);
    const double p = k.p, q = k.q, r = k.r, s = k.s;
    const double ph = np_ball_eigenvalue(n);
    const double L = shell_np_eigenvalue(n, rho);
    const CMat8 E = shell_basis(n, rho);
    double N[8];
    for (int i = 0; i < 8; ++i) N[i] = E.col(i).norm();

    const double a1 = (L + ph) * q + rho * t.f * t.qt, a2 = (L - ph) * p + rho * t.g * t.pt;
    const double a3 = (-L + ph) * q + rho * t.f * t.qt, a4 = (-L - ph) * p + rho * t.g * t.pt;
    const double b1 = t.f * t.g * q + (L + ph) * t.g * t.qt / rho, b2 = t.f * t.g * p + (L - ph) * t.f * t.pt / rho;
    const double b3 = t.f * t.g * q + (-L + ph) * t.g * t.qt / rho, b4 = t.f * t.g * p + (-L - ph) * t.f * t.pt / rho;

    const cplx Ce = c.C_eps;
    const cplx T16 = Ce * ((L - ph) * a1 - b1) / (N[0] * N[5]), T18 = Ce * ((-L - ph) * a1 - b1) / (N[0] * N[7]);
    const cplx T25 = Ce * ((L + ph) * a2 - b2) / (N[1] * N[4]), T27 = Ce * ((-L + ph) * a2 - b2) / (N[1] * N[6]);
    const cplx T36 = Ce * ((L - ph) * a3 - b3) / (N[2] * N[5]), T38 = Ce * ((-L - ph) * a3 - b3) / (N[2] * N[7]);
    const cplx T45 = Ce * ((L + ph) * a4 - b4) / (N[3] * N[4]), T47 = Ce * ((-L + ph) * a4 - b4) / (N[3] * N[6]);

    // K_i / D_mu
    const double k1 = ((L + ph) * ((L + ph) * r + rho * t.f * t.rt) + t.f * ((L + ph) * t.st / rho - t.f * r)) / (N[0] * N[0]);
    const double k2 = (t.g * ((-L + ph) * t.rt / rho - t.g * s) + (L - ph) * ((L - ph) * s + rho * t.g * t.st)) / (N[1] * N[1]);
    const double k3 = ((-L + ph) * ((-L + ph) * r + rho * t.f * t.rt) + t.f * ((-L + ph) * t.st / rho - t.f * r)) / (N[2] * N[2]);
    const double k4 = (t.g * ((L + ph) * t.rt / rho - t.g * s) + (-L - ph) * ((-L - ph) * s + rho * t.g * t.st)) / (N[3] * N[3]);

    const cplx d = c.lambda_mu - c.lambda_eps;
    // C_mu / C_eps divided by a mu-eps denominator; in the nonmagnetic limit C_mu holds that ratio already
    auto ratio = [&](cplx den) { return c.magnetic ? c.C_mu / (Ce * den) : c.C_mu / Ce; };
    std::array<cplx, 8> out;
    if (c.magnetic) {
        const cplx km = c.C_mu / Ce;
        const cplx s12 = T16 * (km * T25) / d + T18 * (km * T45) / (d + 2.0 * L);
        const cplx s34 = T36 * (km * T27) / (d - 2.0 * L) + T38 * (km * T47) / d;
        out[0] = s12 + c.D_mu * k1;
        out[1] = s12 + c.D_mu * k2;
        out[2] = s34 + c.D_mu * k3;
        out[3] = s34 + c.D_mu * k4;
    } else {
        out[0] = out[1] = out[2] = out[3] = 0.0;
    }
    const cplx s56 = ratio(-d) * T16 * T25 + ratio(-d + 2.0 * L) * T18 * T45;
    const cplx s78 = ratio(-d - 2.0 * L) * T36 * T27 + ratio(-d) * T38 * T47;
    out[4] = s56 + c.D_eps * k1;
    out[5] = s56 + c.D_eps * k2;
    out[6] = s78 + c.D_eps * k3;
    out[7] = s78 + c.D_eps * k4;
    return out;
}

}  // namespace

double shell_np_eigenvalue(int n, double rho) {
    check_shell(n, rho);
    return np_ball_eigenvalue(n) * std::sqrt(1.0 + 4.0 * n * (n + 1) * std::pow(rho, 2 * n + 1));
}

ShellCoeffs shell_coeffs(int n, double rho) {
    check_shell(n, rho);
    const double a = 2.0 * n + 1.0;
    const double am = 2.0 * (2 * n - 1) * a, ap = 2.0 * a * (2 * n + 3);
    const double rn = std::pow(rho, n);
    ShellCoeffs c;
    c.f = rn * n / a;
    c.g = rn / rho * (n + 1) / a;
    c.pt = rn * rho / a;
    c.qt = (n + 1.0) * (n - 2.0) / am * rn - n * (n + 3.0) / ap * rn * rho * rho;
    c.rt = -(n + 1.0) / am * rn + (n + 3.0) / ap * rn * rho * rho;
    c.st = -(n - 2.0) / am * rn * rho + n / ap * rn * rho * rho * rho;
    return c;
}

ShellBlocks shell_blocks(int n, double rho, double omega, const MediumPair& media) {
    check_shell(n, rho);
    if (media.nonmagnetic()) throw Error(ErrorKind::degenerate, "shell_blocks: mu_s equals mu_m (nonmagnetic)");
    return build(n, rho, omega, constants(media));
}

CMat8 shell_basis(int n, double rho) {
    const ShellCoeffs t = shell_coeffs(n, rho);
    const double ph = np_ball_eigenvalue(n), L = shell_np_eigenvalue(n, rho);
    CMat8 E = CMat8::Zero();
    const double lead[4] = {L + ph, L - ph, -L + ph, -L - ph};
    for (int type = 0; type < 2; ++type) {      // 0: mu indices (1,2 / 5,6), 1: eps indices (3,4 / 7,8)
        for (int j = 0; j < 4; ++j) {
            const int col = 4 * type + j;
            const int row = 2 * type + (j % 2);  // e_1/e_2 or e_3/e_4
            E(row, col) = lead[j];
            E(row + 4, col) = (j % 2 == 0) ? t.f : t.g;
        }
    }
    return E;
}

std::array<cplx, 8> shell_tau0(cplx lambda_mu, cplx lambda_eps, int n, double rho) {
    const double L = shell_np_eigenvalue(n, rho);
    return {lambda_mu + L, lambda_mu + L, lambda_mu - L, lambda_mu - L,
            lambda_eps + L, lambda_eps + L, lambda_eps - L, lambda_eps - L};
}

std::vector<DegenExpansion> shell_degenerate_expansion(int n, double rho, double omega, const MediumPair& media) {
    check_shell(n, rho);
    const Constants c = constants(media);
    const double L = shell_np_eigenvalue(n, rho);
    if (c.magnetic) {
        const cplx d = c.lambda_mu - c.lambda_eps;
        const std::pair<const char*, cplx> checks[] = {
            {"lambda_mu - lambda_eps", d}, {"lambda_mu - lambda_eps + 2 lambda_sh", d + 2.0 * L},
            {"lambda_mu - lambda_eps - 2 lambda_sh", d - 2.0 * L}};
        for (const auto& [name, v] : checks)
            if (std::abs(v) < 1e-8) throw Error(ErrorKind::degenerate, std::string("shell expansion: ") + name + " vanishes");
    }

    const ShellBlocks b = build(n, rho, omega, c);
    const CMat8 E = shell_basis(n, rho);
    const CMat8 Lft = E.inverse();
    const std::array<cplx, 8> tau0 = shell_tau0(c.lambda_mu, c.lambda_eps, n, rho);
    const std::array<cplx, 8> printed = printed_tau2(n, rho, c);

    auto pairs_with = [](int i, int k) { return i / 2 == k / 2; };
    // (tau_i - tau_k); for nonmagnetic media the mu denominators are absorbed into C_mu
    auto gap = [&](int i, int k) -> cplx {
        if (!c.magnetic && (is_mu_branch(i + 1) != is_mu_branch(k + 1))) return 1.0;
        return tau0[i] - tau0[k];
    };
    auto first = [&](int a, int bcol) { return cplx((Lft.row(a) * b.W1 * E.col(bcol))(0)); };
    auto second = [&](int a, int bcol) {
        cplx h = (Lft.row(a) * b.W2 * E.col(bcol))(0);
        for (int k = 0; k < 8; ++k) {
            if (pairs_with(a, k)) continue;
            if (!c.magnetic && is_mu_branch(a + 1) && is_mu_branch(k + 1)) continue;
            h += first(a, k) * first(k, bcol) / gap(a, k);
        }
        return h;
    };

    std::vector<DegenExpansion> out;
    for (int pair = 0; pair < 4; ++pair) {
        const int i = 2 * pair, j = i + 1;
        if (!c.magnetic && is_mu_branch(i + 1)) continue;
        CMat2 H1, H2;
        H1 << first(i, i), first(i, j), first(j, i), first(j, j);
        H2 << second(i, i), second(i, j), second(j, i), second(j, j);
        const Eigen::ComplexEigenSolver<CMat2> es1(H1), es2(H2);
        cplx t2[2] = {H2(0, 0), H2(1, 1)};
        const double off = std::abs(H2(0, 1)) + std::abs(H2(1, 0));
        if (off > 1e-13 * (std::abs(H2(0, 0)) + std::abs(H2(1, 1)))) {
            cplx e0 = es2.eigenvalues()(0), e1 = es2.eigenvalues()(1);
            if (std::abs(e0 - t2[0]) + std::abs(e1 - t2[1]) > std::abs(e1 - t2[0]) + std::abs(e0 - t2[1])) std::swap(e0, e1);
            t2[0] = e0;
            t2[1] = e1;
        }
        for (int a = 0; a < 2; ++a) {
            const int idx = i + a;
            DegenExpansion d;
            d.branch = idx + 1;
            d.label = branch_label(idx + 1);
            d.tau0 = tau0[idx];
            d.tau1 = es1.eigenvalues()(a) / omega;
            d.tau2_coeff = t2[a] / (omega * omega);
            d.tau2_printed = printed[idx];
            for (int k = 0; k < 8; ++k) {
                if (pairs_with(idx, k)) continue;
                if (!c.magnetic && is_mu_branch(idx + 1) == is_mu_branch(k + 1)) continue;
                const cplx coeff = first(k, idx) / gap(idx, k) / omega;
                if (std::abs(coeff) > 1e-14) d.mixing.emplace_back(k + 1, coeff);
            }
            out.push_back(d);
        }
    }
    return out;
}

std::vector<ShellResonance> shell_resonances(const Material& shell, const ShellGeometry& geom, Order order, int n_cut,
                                             const SearchRange& range) {
    geom.validate();
    if (n_cut < 1) throw Error(ErrorKind::domain, "shell_resonances: n_cut must be >= 1");
    std::vector<ShellResonance> out;
    for (int n = 1; n <= n_cut; ++n) {
        const int branches[] = {5, 6, 7, 8};
        for (int br : branches) {
            if (order == Order::quasistatic && br % 2 == 0) continue;
            auto expansion = [&](double w) {
                for (const DegenExpansion& d : shell_degenerate_expansion(n, geom.rho, w, shell.at(w)))
                    if (d.branch == br) return d;
                throw Error(ErrorKind::not_found, "shell branch missing");
            };
            auto tau0 = [&](double w) { return expansion(w).tau0; };
            auto tau_corr = [&](double w) { return expansion(w).tau(geom.r_s, w); };

            auto search = [&](const std::function<cplx(double)>& tau) {
                auto objective = [&](double w) {
                    try {
                        return std::abs(tau(w));
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
            };
            const ResonanceReport qs = search(tau0);
            ResonanceReport rep = order == Order::quasistatic ? qs : search(tau_corr);
            rep.order = order;
            rep.family = branch_label(br);
            rep.n = n;
            rep.quasistatic_omega = qs.omega_star;
            rep.found = rep.found && qs.found;
            rep.shift_from_quasistatic = order == Order::quasistatic ? 0.0 : rep.omega_star - qs.omega_star;
            out.push_back({rep, br, br <= 6 ? "bonding" : "antibonding"});
        }
    }
    return out;
}

}  // namespace plasmon
