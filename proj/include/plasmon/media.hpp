#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plasmon/types.hpp"

namespace plasmon {

struct DrudeParams {
    double eps_inf = 1.0;
    double omega_p = 1.0;
    double gamma_damp = 0.0;

    void validate() const;
};

/// eps_inf - omega_p^2 / (omega^2 + i gamma omega).
cplx drude_permittivity(const DrudeParams& p, double omega);

struct MediumPair {
    cplx eps_m = 1.0;
    cplx mu_m = 1.0;
    cplx eps_c = 1.0;
    cplx mu_c = 1.0;

    bool nonmagnetic() const { return mu_c == mu_m; }
};

struct Contrasts {
    cplx lambda_eps;
    std::optional<cplx> lambda_mu;  // empty for nonmagnetic particles
};

/// lambda = (c + m) / (2 (m - c)) for the permittivity and permeability pairs.
Contrasts contrasts(const MediumPair& m);

cplx lambda_eps(const MediumPair& m);
cplx lambda_mu(const MediumPair& m);

/// Contrast with the opposite orientation, (c + m) / (2 (c - m)); the ball pole sits at +1/6.
cplx lambda_star(cplx eps_c, cplx eps_m);

/// Principal-branch wavenumber omega sqrt(eps mu) with Im k >= 0.
cplx wavenumber(double omega, cplx eps, cplx mu);

/// min_j |lambda - lambda_j| over the list, optionally also over -lambda_j.
double spectral_distance(cplx lambda, const std::vector<double>& spectrum, bool include_negatives);

/// Neumann-Poincare eigenvalues of the ball: 1/(2(2n+1)) for n = 1..nmax, plus 1/2 if requested.
std::vector<double> ball_np_spectrum(int nmax, bool include_half = false);

/// Drude particle in a fixed host; mu_c is frequency independent.
struct Material {
    DrudeParams drude;
    cplx mu_c = 1.0;
    cplx eps_m = 1.0;
    cplx mu_m = 1.0;

    MediumPair at(double omega) const;
};

/// Flat key=value file with keys eps_inf, omega_p, gamma, mu_c_re, mu_c_im, eps_m, mu_m.
Material load_material_preset(const std::string& path);

}  // namespace plasmon
