#pragma once

#include <string>

#include "plasmon/media.hpp"
#include "plasmon/mie.hpp"

namespace plasmon {

struct PolarizationTensor {
    CMat3 M = CMat3::Zero();
    cplx lambda = 0.0;
    std::string shape = "ball";

    cplx scalar() const { return M(0, 0); }
};

/// |D| / (lambda* - 1/6) Id with |D| = 4 pi radius^3 / 3; lambda* as returned by lambda_star().
PolarizationTensor ball_polarization_tensor(cplx lambda_star, double radius);

/// Convenience: the tensor for permittivities eps_c, eps_m.
PolarizationTensor ball_polarization_tensor(cplx eps_c, cplx eps_m, double radius);

/// Outgoing Laplace-Helmholtz kernel -exp(i k |x - z|) / (4 pi |x - z|).
cplx green(const Vec3& x, const Vec3& z, cplx k);

/// G Id + Hess(G) / k^2 (without the eps_m factor of the dyadic Green function).
CMat3 green_dyadic_kernel(const Vec3& x, const Vec3& z, cplx k);

/// eps_m (G Id + Hess(G) / k^2).
CMat3 green_dyadic(const Vec3& x, const Vec3& z, cplx k, cplx eps_m);

/// Dipolar scattered field at x from a particle at z:
/// -(i w mu_m / eps_m) curl(G_d M_mu H) - w^2 mu_m G_d M_eps E.
CVec3 farfield_dipole(const Vec3& x, const Vec3& z, double omega, const MediumPair& media, const CMat3& M_eps,
                      const CMat3& M_mu, const CVec3& E_inc, const CVec3& H_inc);

/// Plane-wave amplitude of a centred particle, E^s ~ -exp(i k |x|) / (4 pi |x|) A(xhat).
CVec3 quasistatic_amplitude(const Vec3& xhat, const PlaneWave& pw, double omega, const MediumPair& media,
                            const CMat3& M_eps, const CMat3& M_mu);

/// Incident magnetic amplitude (k / (w mu_m)) d x p.
CVec3 plane_wave_h(const PlaneWave& pw, double omega, const MediumPair& media);

/// Optical theorem -(1/k) Im[p . A(d)] / |p|^2.
double extinction_quasistatic(const Vec3& d, const Vec3& p, double omega, const MediumPair& media,
                              const CMat3& M_eps, const CMat3& M_mu);

}  // namespace plasmon
