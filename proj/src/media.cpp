#include "plasmon/media.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace plasmon {

void DrudeParams::validate() const {
    if (!(eps_inf >= 1.0)) throw Error(ErrorKind::domain, "drude: eps_inf must be >= 1");
    if (!(omega_p >= 0.0)) throw Error(ErrorKind::domain, "drude: omega_p must be >= 0");
    if (!(gamma_damp >= 0.0)) throw Error(ErrorKind::domain, "drude: gamma must be >= 0");
}

cplx drude_permittivity(const DrudeParams& p, double omega) {
    if (!(omega > 0.0)) throw Error(ErrorKind::domain, "drude: omega must be > 0");
    return p.eps_inf - p.omega_p * p.omega_p / cplx(omega * omega, p.gamma_damp * omega);
}

cplx lambda_eps(const MediumPair& m) {
    if (m.eps_c == m.eps_m) throw Error(ErrorKind::degenerate, "contrast: eps_c equals eps_m");
    return (m.eps_c + m.eps_m) / (2.0 * (m.eps_m - m.eps_c));
}

cplx lambda_mu(const MediumPair& m) {
    if (m.mu_c == m.mu_m) throw Error(ErrorKind::degenerate, "contrast: mu_c equals mu_m (nonmagnetic)");
    return (m.mu_c + m.mu_m) / (2.0 * (m.mu_m - m.mu_c));
}

Contrasts contrasts(const MediumPair& m) {
    Contrasts c;
    c.lambda_eps = lambda_eps(m);
    if (!m.nonmagnetic()) c.lambda_mu = lambda_mu(m);
    return c;
}

cplx lambda_star(cplx eps_c, cplx eps_m) {
    if (eps_c == eps_m) throw Error(ErrorKind::degenerate, "contrast: eps_c equals eps_m");
    return (eps_c + eps_m) / (2.0 * (eps_c - eps_m));
}

cplx wavenumber(double omega, cplx eps, cplx mu) {
    cplx k = omega * std::sqrt(eps * mu);
    if (k.imag() < 0.0) k = -k;
    return k;
}

double spectral_distance(cplx lambda, const std::vector<double>& spectrum, bool include_negatives) {
    if (spectrum.empty()) throw Error(ErrorKind::domain, "spectral_distance: empty spectrum");
    double best = std::numeric_limits<double>::infinity();
    for (double s : spectrum) {
        best = std::min(best, std::abs(lambda - s));
        if (include_negatives) best = std::min(best, std::abs(lambda + s));
    }
    return best;
}

std::vector<double> ball_np_spectrum(int nmax, bool include_half) {
    std::vector<double> out;
    if (include_half) out.push_back(0.5);
    for (int n = 1; n <= nmax; ++n) out.push_back(1.0 / (2.0 * (2 * n + 1)));
    return out;
}

MediumPair Material::at(double omega) const {
    return {eps_m, mu_m, drude_permittivity(drude, omega), mu_c};
}

Material load_material_preset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::domain, "material preset: cannot open " + path);
    boost::property_tree::ptree tree;
    boost::property_tree::read_ini(in, tree);
    Material mat;
    mat.drude.eps_inf = tree.get("eps_inf", 1.0);
    mat.drude.omega_p = tree.get("omega_p", 1.0);
    mat.drude.gamma_damp = tree.get("gamma", 0.0);
    mat.mu_c = {tree.get("mu_c_re", 1.0), tree.get("mu_c_im", 0.0)};
    mat.eps_m = tree.get("eps_m", 1.0);
    mat.mu_m = tree.get("mu_m", 1.0);
    mat.drude.validate();
    return mat;
}

}  // namespace plasmon
