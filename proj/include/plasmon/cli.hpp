#pragma once

#include <string>
#include <vector>

#include "plasmon/effective.hpp"
#include "plasmon/mie.hpp"
#include "plasmon/sphere_modes.hpp"

namespace plasmon::cli {

inline constexpr double hbar_c_ev_nm = 197.3269804;

/// Raised for unparseable or invalid configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string geometry = "sphere";
    double radius = 0.01;  // sphere radius, or outer shell radius
    double rho = 0.5;
    Material material;
    double omega_min = 0.3, omega_max = 0.9;
    int count = 201;
    std::string units = "reduced";  // or ev_nm: frequencies in eV, lengths in nm

    ExtinctionMode mode = ExtinctionMode::series;
    SeriesForm form = SeriesForm::corrected;
    Vec3 direction = Vec3::UnitZ();
    Vec3 polarization = Vec3::UnitX();

    int modes_n_max = 3;

    std::vector<Family> families{Family::eps_plus};
    std::string order = "both";  // quasistatic, corrected, or both
    int resonance_n_max = 1;
    SearchRange search;

    double f = 0.1;
    double validity_constant = 0.1;

    Mat3 R = Vec3(1.0, -1.0, 0.0).asDiagonal();
    double delta = 0.1;
    int aniso_n = 1;

    std::string out_dir = ".";
    int jobs = 0;
    std::string format = "csv";

    void validate() const;
    /// External frequency units per internal unit.
    double frequency_scale() const { return units == "ev_nm" ? hbar_c_ev_nm : 1.0; }
};

/// Reads a sectioned key=value file; unknown sections or keys are rejected.
RunConfig load_config(const std::string& path);

/// Writes artifacts of `command` under cfg.out_dir and returns their paths.
std::vector<std::string> execute(const std::string& command, const RunConfig& cfg);

/// Full front end: argument parsing, execution, and the exit-status contract
/// (0 ok, 1 selftest failure, 2 configuration error, 3 computation error).
int run(int argc, char** argv);

}  // namespace plasmon::cli
