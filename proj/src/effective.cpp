#include "plasmon/effective.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "plasmon/optimize.hpp"
#include "plasmon/quadrature.hpp"

namespace plasmon {

std::vector<cplx> q0_eigenvalues(cplx eps_m, cplx eps_c, const std::vector<double>& np_spectrum) {
    if (np_spectrum.empty()) throw Error(ErrorKind::domain, "q0_eigenvalues: empty spectrum");
    std::vector<cplx> out;
    out.reserve(np_spectrum.size());
    for (double l : np_spectrum) out.push_back(0.5 * (eps_m + eps_c) + (eps_m - eps_c) * l);
    return out;
}

void AnisoPermittivity::validate() const {
    if (!(delta >= 0.0)) throw Error(ErrorKind::domain, "aniso: delta must be >= 0");
    if ((R - R.transpose()).norm() > 1e-12 * std::max(1.0, R.norm()))
        throw Error(ErrorKind::domain, "aniso: R must be symmetric");
}

namespace {

// Y_n^m for m = -n..n at a unit vector.
void all_y(int n, const Vec3& x, std::vector<cplx>& out) {
    const double ct = std::clamp(x.z(), -1.0, 1.0), st = std::hypot(x.x(), x.y());
    const double phi = st == 0.0 ? 0.0 : std::atan2(x.y(), x.x());
    out.resize(2 * n + 1);
    std::vector<double> p, ps;
    for (int m = 0; m <= n; ++m) {
        legendre_column(m, n, ct, st, p, ps);
        const cplx y = p[n - m] * std::polar(1.0, m * phi);
        out[n + m] = y;
        out[n - m] = std::conj(y);
    }
}

// orthonormal e1, e2 completing x
void frame(const Vec3& x, Vec3& e1, Vec3& e2) {
    const Vec3 a = std::abs(x.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    e1 = (a - a.dot(x) * x).normalized();
    e2 = x.cross(e1);
}

}  // namespace

Eigen::MatrixXcd anisotropic_kernel_matrix(const Mat3& R, int n, int degree) {
    if (n < 1) throw Error(ErrorKind::domain, "anisotropic kernel: n must be >= 1");
    if (degree < 2 * n + 8) throw Error(ErrorKind::domain, "anisotropic kernel: quadrature degree must be >= 2n + 8");
    const int dim = 2 * n + 1;
    const GaussLegendre outer_t = gauss_legendre(n + 6);
    const int outer_p = 2 * n + 10;
    const GaussLegendre inner_t = gauss_legendre(2 * degree, 0.0, pi);
    const int inner_p = 2 * degree + 2;

    std::vector<double> cphi(inner_p), sphi(inner_p);
    for (int j = 0; j < inner_p; ++j) {
        cphi[j] = std::cos(2.0 * pi * j / inner_p);
        sphi[j] = std::sin(2.0 * pi * j / inner_p);
    }

    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<cplx> yx, yy;
    Eigen::VectorXcd acc(dim);
    for (std::size_t a = 0; a < outer_t.nodes.size(); ++a) {
        const double ct = outer_t.nodes[a], st = std::sqrt(1.0 - ct * ct);
        for (int b = 0; b < outer_p; ++b) {
            const double phi = 2.0 * pi * b / outer_p;
            const Vec3 x(st * std::cos(phi), st * std::sin(phi), ct);
            const double wx = outer_t.weights[a] * 2.0 * pi / outer_p;
            Vec3 e1, e2;
            frame(x, e1, e2);
            acc.setZero();
            for (std::size_t i = 0; i < inner_t.nodes.size(); ++i) {
                const double t = inner_t.nodes[i];
                // sin(t) / |x - y| = cos(t/2) removes the weak singularity
                const double wt = inner_t.weights[i] * std::cos(0.5 * t) * (2.0 * pi / inner_p) / (4.0 * pi);
                for (int j = 0; j < inner_p; ++j) {
                    const Vec3 y = std::cos(t) * x + std::sin(t) * (cphi[j] * e1 + sphi[j] * e2);
                    const Vec3 z = x - y;
                    const double k = z.dot(R * z) / z.squaredNorm();
                    all_y(n, y, yy);
                    for (int c = 0; c < dim; ++c) acc(c) += wt * k * yy[c];
                }
            }
            all_y(n, x, yx);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) T(r, c) += wx * std::conj(yx[r]) * acc(c);
        }
    }
    return T;
}

Eigen::MatrixXcd q1_multiplet(const Mat3& R, int n, cplx eps_c, int degree) {
    if (degree <= 0) degree = 2 * n + 8;
    const int dim = 2 * n + 1;
    const Eigen::MatrixXcd T = anisotropic_kernel_matrix(R, n, degree);
    const double tr = R.trace();
    const double lam = np_ball_eigenvalue(n);
    const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd S1 = (tr / (2.0 * (2 * n + 1))) * Id - 0.5 * T;
    const Eigen::MatrixXcd K1 = (-0.5 * tr * lam) * Id + 0.75 * T;
    return eps_c * ((0.5 - lam) * (2 * n + 1) * S1 - K1);
}

namespace {

Eigen::MatrixXcd certified_multiplet(const Mat3& R, int n, int degree) {
    if (degree <= 0) degree = 2 * n + 8;
    const Eigen::MatrixXcd a = q1_multiplet(R, n, 1.0, degree);
    const Eigen::MatrixXcd b = q1_multiplet(R, n, 1.0, degree + 4);
    const double scale = std::max(R.cwiseAbs().maxCoeff(), 1e-300);
    if ((a - b).cwiseAbs().maxCoeff() > 1e-6 * scale)
        throw Error(ErrorKind::accuracy, "anisotropic quadrature did not converge");
    return b;
}

}  // namespace

cplx q1_correction(const AnisoPermittivity& aniso, const ModeIndex& mode, cplx /*eps_m*/, int degree) {
    aniso.validate();
    check_mode(mode);
    const Eigen::MatrixXcd P = certified_multiplet(aniso.R, mode.n, degree);
    return aniso.eps_c * P(mode.m + mode.n, mode.m + mode.n);
}

std::vector<AnisoResonance> aniso_resonance(const Material& mat, const Mat3& R, double delta, int n,
                                            const SearchRange& range) {
    if (!(delta >= 0.0 && delta <= 0.2)) throw Error(ErrorKind::domain, "aniso_resonance: delta must lie in [0, 0.2]");
    AnisoPermittivity probe{1.0, delta, R};
    probe.validate();
    const Eigen::MatrixXcd P = certified_multiplet(R, n, 0);
    const Eigen::MatrixXcd H = 0.5 * (P + P.adjoint());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max(R.cwiseAbs().maxCoeff(), 1e-300);

    std::vector<std::pair<double, int>> distinct;
    for (int i = 0; i < ev.size(); ++i) {
        if (!distinct.empty() && std::abs(ev(i) - distinct.back().first) < 1e-7 * scale) {
            distinct.back().second++;
        } else {
            distinct.emplace_back(ev(i), 1);
        }
    }

    const double lam = np_ball_eigenvalue(n);
    auto tau_n = [&](double w) {
        const cplx ec = drude_permittivity(mat.drude, w);
        return 0.5 * (mat.eps_m + ec) + (mat.eps_m - ec) * lam;
    };
    auto search = [&](const std::function<cplx(double)>& tau) {
        auto obj = [&](double w) { return std::abs(tau(w)); };
        const MinimumResult m = bracket_and_minimize(obj, range.lo, range.hi, range.grid, range.tol);
        ResonanceReport rep;
        rep.found = m.interior;
        rep.omega_star = m.x;
        if (rep.found) {
            rep.tau_at_min = tau(m.x);
            rep.fwhm_estimate = lorentzian_fwhm(tau, m.x);
        }
        return rep;
    };
    const ResonanceReport iso = search(tau_n);

    std::vector<AnisoResonance> out;
    for (const auto& [mu, mult] : distinct) {
        auto tau = [&, mu = mu](double w) { return tau_n(w) + delta * drude_permittivity(mat.drude, w) * mu; };
        ResonanceReport rep = search(tau);
        rep.order = Order::corrected;
        rep.family = "aniso";
        rep.n = n;
        rep.quasistatic_omega = iso.omega_star;
        rep.found = rep.found && iso.found;
        rep.shift_from_quasistatic = rep.omega_star - iso.omega_star;
        out.push_back({rep, mu, mult});
    }
    return out;
}

double unit_volume_radius() { return std::cbrt(3.0 / (4.0 * pi)); }

EffectiveTensor mg_effective(cplx eps_m, cplx eps_c, double f, const CMat3& M, double validity_constant) {
    if (!(f > 0.0 && f < 1.0)) throw Error(ErrorKind::domain, "mg_effective: f must lie in (0, 1)");
    const CMat3 A = CMat3::Identity() - (f / 3.0) * M;
    const Eigen::JacobiSVD<CMat3> svd(A);
    const double smin = svd.singularValues().minCoeff();
    if (!(smin > 1e-12 * (1.0 + (f / 3.0) * M.norm())))
        throw Error(ErrorKind::singular, "mg_effective: Id - (f/3) M is singular (resonant composite)");
    const CMat3 inv = A.inverse();

    EffectiveTensor out;
    out.gamma_star = eps_m * (CMat3::Identity() + f * M * inv);
    out.f = f;
    out.inverse_norm = 1.0 / smin;

    std::vector<double> spectrum = ball_np_spectrum(2000, true);
    spectrum.push_back(0.0);
    out.dist = spectral_distance(lambda_star(eps_c, eps_m), spectrum, false);
    out.remainder_scale = std::pow(f, 8.0 / 3.0) / (out.dist * out.dist);
    const double threshold = validity_constant * std::pow(out.dist, 0.6);
    out.margin = threshold - f;
    out.validity = f <= threshold;
    return out;
}

EffectiveTensor mg_effective_ball(cplx eps_m, cplx eps_c, double f, double validity_constant) {
    const PolarizationTensor t = ball_polarization_tensor(eps_c, eps_m, unit_volume_radius());
    return mg_effective(eps_m, eps_c, f, t.M, validity_constant);
}

namespace {

double ewald(const Vec3& x, double alpha, int n_real, int n_recip) {
    double real_sum = 0.0;
    for (int i = -n_real; i <= n_real; ++i)
        for (int j = -n_real; j <= n_real; ++j)
            for (int k = -n_real; k <= n_real; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                const double r = (x + Vec3(i, j, k)).norm();
                real_sum += std::erfc(alpha * r) / (4.0 * pi * r);
            }
    const double r0 = x.norm();
    const double self = r0 < 1e-8 ? alpha / (2.0 * std::pow(pi, 1.5)) * (1.0 - alpha * alpha * r0 * r0 / 3.0)
                                   : std::erf(alpha * r0) / (4.0 * pi * r0);
    double recip_sum = 0.0;
    for (int i = -n_recip; i <= n_recip; ++i)
        for (int j = -n_recip; j <= n_recip; ++j)
            for (int k = -n_recip; k <= n_recip; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                const Vec3 kv = 2.0 * pi * Vec3(i, j, k);
                const double k2 = kv.squaredNorm();
                recip_sum += std::exp(-k2 / (4.0 * alpha * alpha)) * std::cos(kv.dot(x)) / k2;
            }
    return -real_sum + self - recip_sum + 1.0 / (4.0 * alpha * alpha);
}

double ewald_auto(const Vec3& x, double alpha, int truncation) {
    if (truncation > 0) return ewald(x, alpha, truncation, truncation);
    const int n_real = static_cast<int>(std::ceil(6.2 / alpha + 0.5));
    const int n_recip = static_cast<int>(std::ceil(2.0 * alpha * std::sqrt(40.0) / (2.0 * pi))) + 1;
    return ewald(x, alpha, n_real, n_recip);
}

}  // namespace

double periodic_regular_part(const Vec3& x, const RegularPartOptions& opt) {
    if (!(x.norm() < 0.5)) throw Error(ErrorKind::domain, "periodic_regular_part: |x| must be < 1/2");
    if (!(opt.alpha > 0.0)) throw Error(ErrorKind::domain, "periodic_regular_part: alpha must be > 0");
    const double value = ewald_auto(x, opt.alpha, opt.truncation);
    if (opt.certify) {
        const double check = ewald_auto(x, 2.0 * opt.alpha, opt.truncation);
        if (std::abs(value - check) > 1e-10 * std::max(1.0, std::abs(value)))
            throw Error(ErrorKind::accuracy, "periodic_regular_part: Ewald sums disagree across alpha");
    }
    return value;
}

}  // namespace plasmon
