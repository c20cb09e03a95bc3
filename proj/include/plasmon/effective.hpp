#pragma once

#include <vector>

#include "plasmon/quasistatic.hpp"
#include "plasmon/sphere_modes.hpp"
#include "plasmon/specfun.hpp"

namespace plasmon {

/// tau_j = (eps_m + eps_c)/2 + (eps_m - eps_c) lambda_j.
std::vector<cplx> q0_eigenvalues(cplx eps_m, cplx eps_c, const std::vector<double>& np_spectrum);

/// A = eps_c (Id + delta R) with R real symmetric.
struct AnisoPermittivity {
    cplx eps_c = 1.0;
    double delta = 0.0;
    Mat3 R = Mat3::Zero();

    void validate() const;
    CMat3 A() const { return eps_c * (Mat3::Identity() + delta * R).cast<cplx>(); }
};

/// Unit-sphere matrix of the kernel (R(x-y), x-y) / (4 pi |x-y|^3) between Y_n^m (rows m = -n..n)
/// and Y_n^m' (columns), by product quadrature rotated about each target point.
Eigen::MatrixXcd anisotropic_kernel_matrix(const Mat3& R, int n, int degree);

/// First-order multiplet matrix P_{m m'} of the anisotropic correction on the unit ball.
/// Its diagonal entries are the per-mode corrections; eigenvalues split the (2n+1)-fold multiplet.
Eigen::MatrixXcd q1_multiplet(const Mat3& R, int n, cplx eps_c, int degree = 0);

/// tau_{j,1} = P_jj for the mode Y_n^m. Quadrature degree 0 selects 2n + 8; the result is checked
/// against degree + 4 and an accuracy error is raised above 1e-6 relative disagreement.
cplx q1_correction(const AnisoPermittivity& aniso, const ModeIndex& mode, cplx eps_m, int degree = 0);

struct AnisoResonance {
    ResonanceReport report;
    double multiplet_eigenvalue;  // eigenvalue of P / eps_c; one resonance per distinct value
    int multiplicity;
};

/// Minimizes |tau_n + delta eps_c mu_k| over omega for each distinct eigenvalue mu_k of the
/// degree-n multiplet. delta must not exceed 0.2.
std::vector<AnisoResonance> aniso_resonance(const Material& mat, const Mat3& R, double delta, int n,
                                            const SearchRange& range = {});

struct EffectiveTensor {
    CMat3 gamma_star;
    double f = 0.0;
    double remainder_scale = 0.0;  // f^(8/3) / dist^2
    bool validity = false;         // f <= validity_constant dist^(3/5)
    double margin = 0.0;           // validity_constant dist^(3/5) - f
    double dist = 0.0;             // distance of lambda* to the ball spectrum
    double inverse_norm = 0.0;     // ||(Id - (f/3) M)^{-1}||_2
};

/// Radius of the unit-volume ball.
double unit_volume_radius();

/// Maxwell-Garnett formula eps_m (Id + f M (Id - (f/3) M)^{-1}) for a unit-volume inclusion tensor M.
EffectiveTensor mg_effective(cplx eps_m, cplx eps_c, double f, const CMat3& M, double validity_constant = 0.1);

/// Unit-volume ball tensor shortcut.
EffectiveTensor mg_effective_ball(cplx eps_m, cplx eps_c, double f, double validity_constant = 0.1);

struct RegularPartOptions {
    double alpha = 1.7724538509055160273;  // sqrt(pi)
    int truncation = 0;                    // lattice cutoff per axis; 0 picks one from alpha
    bool certify = true;                   // repeat with 2 alpha and require agreement to 1e-10
};

/// R(x) = G#(x) + 1/(4 pi |x|) for the unit cubic lattice, by Ewald splitting.
double periodic_regular_part(const Vec3& x, const RegularPartOptions& opt = {});

}  // namespace plasmon
