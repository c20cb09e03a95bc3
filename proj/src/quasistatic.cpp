#include "plasmon/quasistatic.hpp"

#include <cmath>
#include <limits>

namespace plasmon {

PolarizationTensor ball_polarization_tensor(cplx lambda, double radius) {
    if (!(radius > 0.0)) throw Error(ErrorKind::domain, "polarization tensor: radius must be > 0");
    const cplx gap = lambda - 1.0 / 6.0;
    if (std::abs(gap) < 1e-14) throw Error(ErrorKind::singular, "polarization tensor: pole at lambda = 1/6");
    PolarizationTensor t;
    t.lambda = lambda;
    const double volume = 4.0 * pi * radius * radius * radius / 3.0;
    t.M = CMat3::Identity() * (volume / gap);
    if (!std::isfinite(std::abs(lambda))) t.M.setZero();
    return t;
}

PolarizationTensor ball_polarization_tensor(cplx eps_c, cplx eps_m, double radius) {
    if (eps_c == eps_m) {
        PolarizationTensor t;
        t.lambda = std::numeric_limits<double>::infinity();
        return t;
    }
    return ball_polarization_tensor(lambda_star(eps_c, eps_m), radius);
}

namespace {

struct Radial {
    double r;
    Vec3 rhat;
    cplx G, dG, d2G;
};

Radial radial(const Vec3& x, const Vec3& z, cplx k) {
    const Vec3 d = x - z;
    const double r = d.norm();
    if (!(r > 0.0)) throw Error(ErrorKind::singular, "green: x coincides with the source point");
    const cplx e = std::exp(I * k * r);
    Radial out;
    out.r = r;
    out.rhat = d / r;
    out.G = -e / (4.0 * pi * r);
    out.dG = -e * (I * k * r - 1.0) / (4.0 * pi * r * r);
    out.d2G = -e * (-k * k * r * r - 2.0 * I * k * r + 2.0) / (4.0 * pi * r * r * r);
    return out;
}

}  // namespace

cplx green(const Vec3& x, const Vec3& z, cplx k) { return radial(x, z, k).G; }

CMat3 green_dyadic_kernel(const Vec3& x, const Vec3& z, cplx k) {
    const Radial g = radial(x, z, k);
    const CMat3 rr = (g.rhat * g.rhat.transpose()).cast<cplx>();
    const CMat3 hess = g.d2G * rr + (g.dG / g.r) * (CMat3::Identity() - rr);
    return g.G * CMat3::Identity() + hess / (k * k);
}

CMat3 green_dyadic(const Vec3& x, const Vec3& z, cplx k, cplx eps_m) { return eps_m * green_dyadic_kernel(x, z, k); }

CVec3 farfield_dipole(const Vec3& x, const Vec3& z, double omega, const MediumPair& media, const CMat3& M_eps,
                      const CMat3& M_mu, const CVec3& E_inc, const CVec3& H_inc) {
    const cplx k = wavenumber(omega, media.eps_m, media.mu_m);
    const Radial g = radial(x, z, k);
    // curl(G_d v) = eps_m grad(G) x v
    const CVec3 m_h = M_mu * H_inc;
    const CVec3 curl = media.eps_m * g.dG * cross(g.rhat.cast<cplx>(), m_h);
    const CVec3 electric = green_dyadic(x, z, k, media.eps_m) * (M_eps * E_inc);
    return -(I * omega * media.mu_m / media.eps_m) * curl - omega * omega * media.mu_m * electric;
}

CVec3 plane_wave_h(const PlaneWave& pw, double omega, const MediumPair& media) {
    const cplx k = wavenumber(omega, media.eps_m, media.mu_m);
    return (k / (omega * media.mu_m)) * pw.d.cross(pw.p).cast<cplx>();
}

CVec3 quasistatic_amplitude(const Vec3& xhat, const PlaneWave& pw, double omega, const MediumPair& media,
                            const CMat3& M_eps, const CMat3& M_mu) {
    pw.validate();
    const Vec3 xh = make_direction(xhat);
    const cplx k = wavenumber(omega, media.eps_m, media.mu_m);
    const CVec3 h = plane_wave_h(pw, omega, media);
    const CVec3 mh = M_mu * h;
    const CMat3 proj = (Mat3::Identity() - xh * xh.transpose()).cast<cplx>();
    return omega * media.mu_m * k * cross(xh.cast<cplx>(), mh) - k * k * proj * (M_eps * pw.p.cast<cplx>());
}

double extinction_quasistatic(const Vec3& d, const Vec3& p, double omega, const MediumPair& media,
                              const CMat3& M_eps, const CMat3& M_mu) {
    const PlaneWave pw{d, p};
    const cplx k = wavenumber(omega, media.eps_m, media.mu_m);
    if (std::abs(k.imag()) > 1e-12 * std::abs(k))
        throw Error(ErrorKind::domain, "extinction requires a lossless host (real k_m)");
    const CVec3 A = quasistatic_amplitude(d, pw, omega, media, M_eps, M_mu);
    const cplx pa = (p.cast<cplx>().transpose() * A)(0);
    return -pa.imag() / (k.real() * p.squaredNorm());
}

}  // namespace plasmon
