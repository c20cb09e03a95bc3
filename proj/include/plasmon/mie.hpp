#pragma once

#include <functional>
#include <vector>

#include "plasmon/media.hpp"
#include "plasmon/specfun.hpp"

namespace plasmon {

struct SphereGeometry {
    double radius = 1.0;
};

struct PlaneWave {
    Vec3 d = Vec3::UnitZ();
    Vec3 p = Vec3::UnitX();

    void validate() const;
};

struct ScatterCoeffs {
    std::vector<cplx> te;         // S_n^TE at index n - 1
    std::vector<cplx> tm;         // S_n^TM at index n - 1
    std::vector<bool> singular;   // a denominator vanished to 1e-14 for this n
    int nmax() const { return static_cast<int>(te.size()); }
    bool any_singular() const;
};

/// Wiscombe-style truncation max(4, ceil(x + 4.05 x^(1/3)) + 2).
int mie_nmax(double size_parameter);

/// nmax <= 0 selects mie_nmax(|k_m| r).
ScatterCoeffs scattering_coeffs(const SphereGeometry& geom, const MediumPair& media, double omega,
                                int nmax = 0);

/// How the harmonic sums are formed. The conjugated variant agrees with classical Mie theory;
/// the verbatim variant squares V(d).p and U(d).p without conjugation and uses the -1 TE phase.
enum class SeriesForm { corrected, verbatim };

enum class ExtinctionMode { series, dipole };

/// Far-field amplitude A with E^s ~ -exp(i k |x|) / (4 pi |x|) A(xhat).
CVec3 plane_wave_amplitude(const SphereGeometry& geom, const MediumPair& media, double omega,
                           const PlaneWave& pw, const Vec3& xhat, int nmax = 0,
                           SeriesForm form = SeriesForm::corrected);

/// Same amplitude from precomputed coefficients.
CVec3 amplitude_from_coeffs(const ScatterCoeffs& s, cplx k_m, const PlaneWave& pw, const Vec3& xhat,
                            SeriesForm form = SeriesForm::corrected);

double extinction(const SphereGeometry& geom, const MediumPair& media, double omega, const PlaneWave& pw,
                  ExtinctionMode mode, SeriesForm form = SeriesForm::corrected, int nmax = 0);

/// Small-sphere n = 1 coefficients i (2/3) (c - m) x^3 / (c + 2m) for TE (mu) and TM (eps).
ScatterCoeffs dipole_coeffs(const SphereGeometry& geom, const MediumPair& media, double omega);

struct Peak {
    double omega;
    double q;
    double fwhm;  // NaN when a half-height crossing is outside the grid
};

struct Spectrum {
    std::vector<double> omega;
    std::vector<double> qext;
    std::vector<Peak> peaks;
};

using MediaAt = std::function<MediumPair(double omega)>;

struct ScanOptions {
    ExtinctionMode mode = ExtinctionMode::series;
    SeriesForm form = SeriesForm::corrected;
    int jobs = 0;  // <= 0 uses the hardware concurrency
};

Spectrum scan_spectrum(const SphereGeometry& geom, const MediaAt& media, const std::vector<double>& grid,
                       const PlaneWave& pw, const ScanOptions& opt = {});

/// Local maxima with three-point parabolic refinement and half-height FWHM.
std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> linspace(double a, double b, int count);

}  // namespace plasmon
