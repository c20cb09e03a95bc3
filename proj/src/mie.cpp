#include "plasmon/mie.hpp"

#include <cmath>
#include <limits>

#include "plasmon/parallel.hpp"

namespace plasmon {

void PlaneWave::validate() const {
    if (std::abs(d.norm() - 1.0) > 1e-12) throw Error(ErrorKind::domain, "plane wave: d must be a unit vector");
    if (!(p.norm() > 0.0)) throw Error(ErrorKind::domain, "plane wave: polarization must be nonzero");
    if (std::abs(p.dot(d)) > 1e-12 * p.norm()) throw Error(ErrorKind::domain, "plane wave: p . d must vanish");
}

bool ScatterCoeffs::any_singular() const {
    for (bool s : singular)
        if (s) return true;
    return false;
}

int mie_nmax(double x) {
    const int n = static_cast<int>(std::ceil(x + 4.05 * std::cbrt(x))) + 2;
    return std::max(4, n);
}

namespace {

void check_inputs(const SphereGeometry& geom, double omega) {
    if (!(geom.radius > 0.0)) throw Error(ErrorKind::domain, "sphere radius must be > 0");
    if (!(omega > 0.0)) throw Error(ErrorKind::domain, "omega must be > 0");
}

// (c_p j(kc r) J(km r) - c_m j(km r) J(kc r)) / (c_m J(kc r) h(km r) - c_p j(kc r) H(km r))
cplx coefficient(cplx c_p, cplx c_m, const BesselTable& in, const BesselTable& out, int n, bool& singular) {
    const cplx num = c_p * in.j[n] * out.J[n] - c_m * out.j[n] * in.J[n];
    const cplx t1 = c_m * in.J[n] * out.h[n], t2 = c_p * in.j[n] * out.H[n];
    const cplx den = t1 - t2;
    singular = std::abs(den) <= 1e-14 * (std::abs(t1) + std::abs(t2));
    if (den == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
    return num / den;
}

double real_wavenumber(cplx k) {
    if (std::abs(k.imag()) > 1e-12 * std::abs(k))
        throw Error(ErrorKind::domain, "extinction requires a lossless host (real k_m)");
    return k.real();
}

}  // namespace

ScatterCoeffs scattering_coeffs(const SphereGeometry& geom, const MediumPair& media, double omega, int nmax) {
    check_inputs(geom, omega);
    const cplx km = wavenumber(omega, media.eps_m, media.mu_m);
    const cplx kc = wavenumber(omega, media.eps_c, media.mu_c);
    if (nmax <= 0) nmax = mie_nmax(std::abs(km) * geom.radius);
    if (nmax > max_bessel_order) throw Error(ErrorKind::domain, "sphere too large for the Bessel order limit");

    const BesselTable out = bessel_table(nmax, km * geom.radius);
    const BesselTable in = bessel_table(nmax, kc * geom.radius);
    ScatterCoeffs s;
    s.te.resize(nmax);
    s.tm.resize(nmax);
    s.singular.resize(nmax);
    for (int n = 1; n <= nmax; ++n) {
        bool sing_te = false, sing_tm = false;
        s.te[n - 1] = coefficient(media.mu_c, media.mu_m, in, out, n, sing_te);
        s.tm[n - 1] = coefficient(media.eps_c, media.eps_m, in, out, n, sing_tm);
        s.singular[n - 1] = sing_te || sing_tm;
    }
    return s;
}

ScatterCoeffs dipole_coeffs(const SphereGeometry& geom, const MediumPair& media, double omega) {
    check_inputs(geom, omega);
    const cplx x = wavenumber(omega, media.eps_m, media.mu_m) * geom.radius;
    const cplx x3 = x * x * x;
    ScatterCoeffs s;
    s.te = {I * (2.0 / 3.0) * (media.mu_c - media.mu_m) * x3 / (2.0 * media.mu_m + media.mu_c)};
    s.tm = {I * (2.0 / 3.0) * (media.eps_c - media.eps_m) * x3 / (2.0 * media.eps_m + media.eps_c)};
    s.singular = {media.mu_c == -2.0 * media.mu_m || media.eps_c == -2.0 * media.eps_m};
    return s;
}

CVec3 amplitude_from_coeffs(const ScatterCoeffs& s, cplx km, const PlaneWave& pw, const Vec3& xhat,
                            SeriesForm form) {
    pw.validate();
    const Vec3 xh = make_direction(xhat);
    const CVec3 p = pw.p.cast<cplx>();
    CVec3 sum = CVec3::Zero();
    for (int n = 1; n <= s.nmax(); ++n) {
        const auto hd = harmonics_all(n, pw.d);
        const auto hx = harmonics_all(n, xh);
        for (int l = 0; l < 2 * n + 1; ++l) {
            if (form == SeriesForm::corrected) {
                const cplx vp = hd[l].V.dot(p), up = hd[l].U.dot(p);
                sum += I * s.te[n - 1] * vp * hx[l].V + I * s.tm[n - 1] * up * hx[l].U;
            } else {
                const cplx vp = (hd[l].V.transpose() * p)(0), up = (hd[l].U.transpose() * p)(0);
                sum += -s.te[n - 1] * vp * hx[l].V + I * s.tm[n - 1] * up * hx[l].U;
            }
        }
    }
    return sum * (16.0 * pi * pi / km);
}

CVec3 plane_wave_amplitude(const SphereGeometry& geom, const MediumPair& media, double omega, const PlaneWave& pw,
                           const Vec3& xhat, int nmax, SeriesForm form) {
    const ScatterCoeffs s = scattering_coeffs(geom, media, omega, nmax);
    return amplitude_from_coeffs(s, wavenumber(omega, media.eps_m, media.mu_m), pw, xhat, form);
}

namespace {

double series_extinction(const ScatterCoeffs& s, double k, const PlaneWave& pw, SeriesForm form) {
    const CVec3 p = pw.p.cast<cplx>();
    const double p2 = pw.p.squaredNorm();
    double acc = 0.0;
    for (int n = 1; n <= s.nmax(); ++n) {
        for (const Harmonics& h : harmonics_all(n, pw.d)) {
            const cplx vp = (h.V.transpose() * p)(0), up = (h.U.transpose() * p)(0);
            if (form == SeriesForm::corrected) {
                acc += (I * s.te[n - 1] * std::norm(vp) + I * s.tm[n - 1] * std::norm(up)).imag();
            } else {
                acc += (-s.te[n - 1] * vp * vp + I * s.tm[n - 1] * up * up).imag();
            }
        }
    }
    if (form == SeriesForm::corrected) return -16.0 * pi * pi / (k * k * p2) * acc;
    return 64.0 * pi * pi * pi / (k * k * p2) * acc;
}

}  // namespace

double extinction(const SphereGeometry& geom, const MediumPair& media, double omega, const PlaneWave& pw,
                  ExtinctionMode mode, SeriesForm form, int nmax) {
    pw.validate();
    const double k = real_wavenumber(wavenumber(omega, media.eps_m, media.mu_m));
    const ScatterCoeffs s = mode == ExtinctionMode::series ? scattering_coeffs(geom, media, omega, nmax)
                                                            : dipole_coeffs(geom, media, omega);
    return series_extinction(s, k, pw, form);
}

Spectrum scan_spectrum(const SphereGeometry& geom, const MediaAt& media, const std::vector<double>& grid,
                       const PlaneWave& pw, const ScanOptions& opt) {
    if (grid.size() < 3) throw Error(ErrorKind::domain, "scan_spectrum: need at least 3 grid points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw Error(ErrorKind::domain, "scan_spectrum: grid must be strictly increasing");
    pw.validate();
    Spectrum sp;
    sp.omega = grid;
    sp.qext = parallel_map<double>(grid.size(), opt.jobs, [&](std::size_t i) {
        return extinction(geom, media(grid[i]), grid[i], pw, opt.mode, opt.form);
    });
    sp.peaks = find_peaks(sp.omega, sp.qext);
    return sp;
}

std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<Peak> peaks;
    const std::size_t n = y.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1] && y[i] > 0.0)) continue;
        // vertex of the parabola through the three points
        const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
        const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
        const double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
        const double a = (d12 - d01) / (x2 - x0);
        double xp = x1, yp = y1;
        if (a < 0.0) {
            const double b = d01 - a * (x0 + x1);
            xp = -b / (2.0 * a);
            xp = std::clamp(xp, x0, x2);
            yp = y1 + (xp - x1) * (d01 + a * (xp - x0));
            yp = std::max(yp, y1);
        }
        const double half = 0.5 * yp;
        double left = std::numeric_limits<double>::quiet_NaN(), right = left;
        for (std::size_t k = i; k > 0; --k) {
            if (y[k - 1] < half) {
                left = x[k - 1] + (half - y[k - 1]) * (x[k] - x[k - 1]) / (y[k] - y[k - 1]);
                break;
            }
        }
        for (std::size_t k = i; k + 1 < n; ++k) {
            if (y[k + 1] < half) {
                right = x[k] + (y[k] - half) * (x[k + 1] - x[k]) / (y[k] - y[k + 1]);
                break;
            }
        }
        peaks.push_back({xp, yp, right - left});
    }
    return peaks;
}

std::vector<double> linspace(double a, double b, int count) {
    if (count < 2) throw Error(ErrorKind::domain, "linspace: count must be >= 2");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = a + (b - a) * i / (count - 1);
    return out;
}

}  // namespace plasmon
