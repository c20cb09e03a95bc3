#pragma once

#include <array>
#include <string>
#include <vector>

#include "plasmon/sphere_modes.hpp"

namespace plasmon {

/// Shell of outer radius r_s and inner radius rho r_s; the core is filled with the host medium.
struct ShellGeometry {
    double r_s = 1.0;
    double rho = 0.5;

    void validate() const;
};

/// (1/(2(2n+1))) sqrt(1 + 4 n (n+1) rho^(2n+1)).
double shell_np_eigenvalue(int n, double rho);

struct ShellCoeffs {
    double f, g;              // interface couplings
    double pt, qt, rt, st;    // rho-weighted analogues of p_n, q_n, r_n, s_n
};

ShellCoeffs shell_coeffs(int n, double rho);

/// `media` holds the shell material in the particle slots (eps_c, mu_c) and the host.
struct ShellBlocks {
    int n = 1;
    double rho = 0.5;
    CMat8 W0, W1, W2;

    CMat8 assembled(double r_s) const { return W0 + r_s * W1 + r_s * r_s * W2; }
};

ShellBlocks shell_blocks(int n, double rho, double omega, const MediumPair& media);

/// Zeroth-order eigenvectors E_1..E_8 (columns) of W0; independent of the contrasts.
CMat8 shell_basis(int n, double rho);

/// W0 eigenvalues in branch order: lambda_mu +- L (1-4), lambda_eps +- L (5-8), each twice.
std::array<cplx, 8> shell_tau0(cplx lambda_mu, cplx lambda_eps, int n, double rho);

struct DegenExpansion {
    int branch;               // 1..8
    std::string label;        // "mu+", "mu-", "eps+", "eps-"
    cplx tau0;
    cplx tau1;                // vanishes: degenerate partners do not couple
    cplx tau2_coeff;          // multiplies (r_s omega)^2
    cplx tau2_printed;        // the closed-form T/K combination, reported alongside
    std::vector<std::pair<int, cplx>> mixing;  // (branch j, coefficient of r_s omega E_j)

    cplx tau(double r_s, double omega) const { return tau0 + (r_s * omega) * (r_s * omega) * tau2_coeff; }
};

/// Eight branches for magnetic contrast, branches 5-8 for mu_s == mu_m.
std::vector<DegenExpansion> shell_degenerate_expansion(int n, double rho, double omega, const MediumPair& media);

struct ShellResonance {
    ResonanceReport report;
    int branch;
    std::string hybrid;  // "bonding" (lambda_eps = -L) or "antibonding" (lambda_eps = +L)
};

/// Resonances of the eps branches for n = 1..n_cut. Quasistatic order reports one entry per
/// degenerate pair; corrected order reports each branch.
std::vector<ShellResonance> shell_resonances(const Material& shell, const ShellGeometry& geom, Order order,
                                             int n_cut = 1, const SearchRange& range = {});

}  // namespace plasmon
