#pragma once

#include <functional>
#include <string>
#include <vector>

#include "plasmon/media.hpp"

namespace plasmon {

struct BoundaryMatrices {
    CMat2 M;  // diag(1/2 - i kr h J, 1/2 + i kr j H)
    CMat2 L;  // antidiag(i k (kr)^2 j h, -i k J H)
};

BoundaryMatrices boundary_matrices(int n, cplx k, double r);

struct SmallRCoeffs {
    double p, q, r, s;
};

SmallRCoeffs small_r_coeffs(int n);

/// 1/(2(2n+1)): the ball Neumann-Poincare eigenvalue on the W0 diagonal.
double np_ball_eigenvalue(int n);

/// Contrast constants shared by the sphere and shell blocks.
struct BlockConstants {
    cplx lambda_mu, lambda_eps;
    cplx C_mu, C_eps, D_mu, D_eps;
};

/// Requires both contrasts; nonmagnetic pairs raise a degenerate error.
BlockConstants block_constants(const MediumPair& m);

struct ModeBlock {
    int n = 1;
    CMat4 W0, W1, W2;

    CMat4 assembled(double r) const { return W0 + r * W1 + r * r * W2; }
};

ModeBlock w_blocks(int n, double omega, const MediumPair& media);

enum class Family { mu_plus, mu_minus, eps_plus, eps_minus };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct EigenExpansion {
    Family family;
    int n;
    cplx tau0;
    cplx tau1;        // identically zero
    cplx tau2_coeff;  // multiplies (r omega)^2
    int index;        // basis vector e_index carries the zeroth-order eigenvector
    int partner;      // basis vector mixed in at first order
    cplx eigvec1_coeff;  // multiplies (r omega) on e_partner

    cplx tau(double r, double omega) const { return tau0 + (r * omega) * (r * omega) * tau2_coeff; }
    CVec4 eigvec0() const { return CVec4::Unit(index); }
    CVec4 eigvec(double r, double omega) const {
        CVec4 v = eigvec0();
        v(partner) += r * omega * eigvec1_coeff;
        return v;
    }
};

/// Four families for magnetic contrast; only eps+ and eps- for mu_c == mu_m.
std::vector<EigenExpansion> eigen_expansions(int n, double omega, const MediumPair& media);

/// The expansion for one family, using the nonmagnetic limit when mu_c == mu_m.
EigenExpansion eigen_expansion(Family family, int n, double omega, const MediumPair& media);

enum class Order { quasistatic, corrected };

std::string to_string(Order o);
Order order_from_string(const std::string& s);

struct SearchRange {
    double lo = 0.05;
    double hi = 1.5;
    int grid = 200;
    double tol = 1e-12;
};

struct ResonanceReport {
    bool found = false;
    double omega_star = 0.0;
    Order order = Order::quasistatic;
    std::string family;
    int n = 1;
    cplx tau_at_min = 0.0;
    double shift_from_quasistatic = 0.0;
    double fwhm_estimate = 0.0;
    double quasistatic_omega = 0.0;
};

/// Minimizes |tau0| (quasistatic) or |tau0 + (r omega)^2 tau2| (corrected) over omega for a
/// Drude particle described by `mat`.
ResonanceReport find_resonance(Family family, int n, const Material& mat, double r, Order order,
                               const SearchRange& range = {});

/// Linewidth 2 |Im tau| / |d Re tau / d omega| of a resonance of tau(omega) at omega_star.
double lorentzian_fwhm(const std::function<cplx(double)>& tau, double omega_star);

}  // namespace plasmon
