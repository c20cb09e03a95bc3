#include "plasmon/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "plasmon/parallel.hpp"
#include "plasmon/selftest.hpp"
#include "plasmon/shell_modes.hpp"

namespace plasmon::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void RunConfig::validate() const {
    if (geometry != "sphere" && geometry != "shell") throw ConfigError("geometry must be sphere or shell");
    if (!(radius > 0.0)) throw ConfigError("radius must be > 0");
    if (geometry == "shell" && !(rho > 0.0 && rho < 1.0)) throw ConfigError("rho must lie in (0, 1)");
    if (count < 3) throw ConfigError("grid count must be >= 3");
    if (!(omega_min > 0.0 && omega_max > omega_min)) throw ConfigError("need 0 < omega_min < omega_max");
    if (units != "reduced" && units != "ev_nm") throw ConfigError("units must be reduced or ev_nm");
    if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
    if (order != "quasistatic" && order != "corrected" && order != "both")
        throw ConfigError("order must be quasistatic, corrected or both");
    if (modes_n_max < 1 || resonance_n_max < 1 || aniso_n < 1) throw ConfigError("mode degrees must be >= 1");
    if (!(search.hi > search.lo && search.lo > 0.0) || search.grid < 3) throw ConfigError("invalid search range");
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("f must lie in (0, 1)");
    if (!(validity_constant > 0.0)) throw ConfigError("validity_constant must be > 0");
    if (families.empty()) throw ConfigError("at least one family is required");
}

namespace {

// ---------------------------------------------------------------- config

const std::map<std::string, std::set<std::string>> known_keys = {
    {"geometry", {"kind", "radius", "rho"}},
    {"material", {"preset", "eps_inf", "omega_p", "gamma", "mu_c", "mu_c_im"}},
    {"host", {"eps_m", "eps_m_im", "mu_m", "mu_m_im"}},
    {"grid", {"omega_min", "omega_max", "count"}},
    {"units", {"system"}},
    {"spectrum", {"mode", "form", "direction", "polarization"}},
    {"modes", {"n_max"}},
    {"resonance", {"families", "order", "n_max", "search_min", "search_max", "search_grid"}},
    {"mg", {"f", "validity_constant"}},
    {"aniso", {"R", "delta", "n"}},
    {"run", {"out", "jobs", "format"}},
};

std::vector<double> numbers(const std::string& text, std::size_t expected, const std::string& key) {
    std::istringstream in(text);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (!in.eof() || out.size() != expected)
        throw ConfigError(fmt::format("{} needs {} numbers", key, expected));
    return out;
}

template <class T>
T get(const boost::property_tree::ptree& sec, const std::string& key, T fallback, const std::string& where) {
    const auto v = sec.get_optional<std::string>(key);
    if (!v) return fallback;
    std::istringstream in(*v);
    T out;
    if (!(in >> out) || !(in >> std::ws).eof()) throw ConfigError(fmt::format("{}.{}: cannot parse '{}'", where, key, *v));
    return out;
}

std::vector<Family> parse_families(const std::string& text) {
    std::vector<Family> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        try {
            out.push_back(family_from_string(item));
        } catch (const Error&) {
            throw ConfigError("unknown family '" + item + "'");
        }
    }
    return out;
}

// ---------------------------------------------------------------- output

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) return "0";
    return fmt::format("{:.17g}", v);
}

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "_" + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "_" + std::to_string(i), out);
    } else if (j.is_number_float()) {
        out.emplace_back(prefix, number(j.get<double>()));
    } else if (j.is_null()) {
        out.emplace_back(prefix, "nan");
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::domain, "cannot write " + path.string());
    out << text;
}

std::string to_csv(const std::vector<json>& rows) {
    std::string text;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<std::pair<std::string, std::string>> cells;
        flatten(rows[r], "", cells);
        if (r == 0) {
            for (std::size_t c = 0; c < cells.size(); ++c) text += (c ? "," : "") + cells[c].first;
            text += "\n";
        }
        for (std::size_t c = 0; c < cells.size(); ++c) text += (c ? "," : "") + cells[c].second;
        text += "\n";
    }
    return text;
}

std::string to_json_text(const json& j) { return j.dump(2) + "\n"; }

fs::path write_table(const RunConfig& cfg, const std::string& stem, const std::vector<json>& rows) {
    const fs::path path = fs::path(cfg.out_dir) / (stem + (cfg.format == "csv" ? ".csv" : ".json"));
    if (cfg.format == "csv") {
        write_text(path, to_csv(rows));
    } else {
        json arr = json::array();
        for (const json& r : rows) arr.push_back(r);
        write_text(path, to_json_text(arr));
    }
    return path;
}

fs::path write_document(const RunConfig& cfg, const std::string& stem, const json& doc) {
    const fs::path path = fs::path(cfg.out_dir) / (stem + ".json");
    write_text(path, to_json_text(doc));
    return path;
}

// ---------------------------------------------------------------- commands

// Internal (reduced) copy of the configuration.
struct Internal {
    RunConfig cfg;
    double scale;
    std::vector<double> grid;
};

Internal internalize(const RunConfig& ext) {
    Internal in{ext, ext.frequency_scale(), {}};
    in.cfg.omega_min /= in.scale;
    in.cfg.omega_max /= in.scale;
    in.cfg.material.drude.omega_p /= in.scale;
    in.cfg.material.drude.gamma_damp /= in.scale;
    in.cfg.search.lo /= in.scale;
    in.cfg.search.hi /= in.scale;
    in.grid = linspace(in.cfg.omega_min, in.cfg.omega_max, in.cfg.count);
    return in;
}

json header(const RunConfig& cfg) {
    return {{"geometry", cfg.geometry}, {"radius", cfg.radius}, {"units", cfg.units}};
}

json report_json(const ResonanceReport& r, double scale) {
    json j;
    j["family"] = r.family;
    j["n"] = r.n;
    j["order"] = to_string(r.order);
    j["found"] = r.found;
    j["omega_star"] = r.omega_star * scale;
    j["tau_at_min"] = complex_json(r.tau_at_min);
    j["shift_from_quasistatic"] = r.shift_from_quasistatic * scale;
    j["fwhm_estimate"] = r.fwhm_estimate * scale;
    j["quasistatic_omega"] = r.quasistatic_omega * scale;
    return j;
}

std::vector<Order> orders(const std::string& o) {
    if (o == "both") return {Order::quasistatic, Order::corrected};
    return {order_from_string(o)};
}

std::vector<std::string> cmd_spectrum(const RunConfig& ext) {
    if (ext.geometry != "sphere") throw ConfigError("spectrum supports the sphere geometry only");
    const Internal in = internalize(ext);
    const PlaneWave pw{make_direction(ext.direction), ext.polarization};
    const Material mat = in.cfg.material;
    const Spectrum sp = scan_spectrum({ext.radius}, [&](double w) { return mat.at(w); }, in.grid, pw,
                                      {ext.mode, ext.form, ext.jobs});
    std::vector<json> rows;
    for (std::size_t i = 0; i < sp.omega.size(); ++i) rows.push_back({{"omega", sp.omega[i] * in.scale}, {"qext", sp.qext[i]}});
    json peaks = json::array();
    for (const Peak& p : sp.peaks)
        peaks.push_back({{"omega", p.omega * in.scale}, {"q", p.q}, {"fwhm", std::isnan(p.fwhm) ? json(nullptr) : json(p.fwhm * in.scale)}});
    json doc = header(ext);
    doc["mode"] = ext.mode == ExtinctionMode::series ? "series" : "dipole";
    doc["form"] = ext.form == SeriesForm::corrected ? "corrected" : "verbatim";
    doc["peaks"] = peaks;
    return {write_table(ext, "spectrum", rows).string(), write_document(ext, "spectrum_peaks", doc).string()};
}

std::vector<std::string> cmd_modes(const RunConfig& ext) {
    const Internal in = internalize(ext);
    const Material mat = in.cfg.material;
    const int nmax = ext.modes_n_max;
    auto per_omega = parallel_map<std::vector<json>>(in.grid.size(), ext.jobs, [&](std::size_t i) {
        const double w = in.grid[i];
        const MediumPair md = mat.at(w);
        std::vector<json> rows;
        for (int n = 1; n <= nmax; ++n) {
            if (ext.geometry == "sphere") {
                for (const EigenExpansion& e : eigen_expansions(n, w, md)) {
                    rows.push_back({{"omega", w * in.scale}, {"family", to_string(e.family)}, {"n", n},
                                    {"tau0", complex_json(e.tau0)}, {"tau2", complex_json(e.tau2_coeff)},
                                    {"tau", complex_json(e.tau(ext.radius, w))}});
                }
            } else {
                for (const DegenExpansion& d : shell_degenerate_expansion(n, ext.rho, w, md)) {
                    rows.push_back({{"omega", w * in.scale}, {"branch", d.branch}, {"family", d.label}, {"n", n},
                                    {"tau0", complex_json(d.tau0)}, {"tau2", complex_json(d.tau2_coeff)},
                                    {"tau2_closed_form", complex_json(d.tau2_printed)},
                                    {"tau", complex_json(d.tau(ext.radius, w))}});
                }
            }
        }
        return rows;
    });
    std::vector<json> rows;
    for (auto& block : per_omega)
        for (auto& r : block) rows.push_back(std::move(r));
    return {write_table(ext, "modes", rows).string()};
}

std::vector<std::string> cmd_resonance(const RunConfig& ext) {
    const Internal in = internalize(ext);
    json reports = json::array();
    if (ext.geometry == "sphere") {
        for (Family fam : ext.families) {
            if (ext.material.mu_c == ext.material.mu_m && (fam == Family::mu_plus || fam == Family::mu_minus))
                throw ConfigError("mu families need a magnetic particle (mu_c != mu_m)");
            for (int n = 1; n <= ext.resonance_n_max; ++n)
                for (Order o : orders(ext.order))
                    reports.push_back(report_json(find_resonance(fam, n, in.cfg.material, ext.radius, o, in.cfg.search), in.scale));
        }
    } else {
        for (Order o : orders(ext.order))
            for (const ShellResonance& r :
                 shell_resonances(in.cfg.material, {ext.radius, ext.rho}, o, ext.resonance_n_max, in.cfg.search)) {
                json j = report_json(r.report, in.scale);
                j["branch"] = r.branch;
                j["hybrid"] = r.hybrid;
                reports.push_back(j);
            }
    }
    json doc = header(ext);
    if (ext.geometry == "shell") doc["rho"] = ext.rho;
    doc["reports"] = reports;
    return {write_document(ext, "resonance", doc).string()};
}

json tensor_json(const CMat3& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::string> cmd_mg(const RunConfig& ext) {
    const Internal in = internalize(ext);
    std::vector<json> rows;
    for (double w : in.grid) {
        const MediumPair md = in.cfg.material.at(w);
        json r;
        r["omega"] = w * in.scale;
        r["eps_c"] = complex_json(md.eps_c);
        try {
            const EffectiveTensor t = mg_effective_ball(md.eps_m, md.eps_c, ext.f, ext.validity_constant);
            r["gamma_star"] = tensor_json(t.gamma_star);
            r["f"] = t.f;
            r["validity"] = t.validity;
            r["margin"] = t.margin;
            r["remainder_scale"] = t.remainder_scale;
            r["dist"] = t.dist;
            r["inverse_norm"] = t.inverse_norm;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::singular) throw;
            // resonant composite at this frequency
            r["gamma_star"] = tensor_json(CMat3::Constant(cplx(std::nan(""), std::nan(""))));
            r["f"] = ext.f;
            r["validity"] = false;
            r["margin"] = std::nan("");
            r["remainder_scale"] = std::nan("");
            r["dist"] = std::nan("");
            r["inverse_norm"] = std::nan("");
        }
        rows.push_back(r);
    }
    return {write_table(ext, "mg", rows).string()};
}

std::vector<std::string> cmd_aniso(const RunConfig& ext) {
    const Internal in = internalize(ext);
    json doc = header(ext);
    doc["delta"] = ext.delta;
    doc["n"] = ext.aniso_n;
    json R = json::array();
    for (int i = 0; i < 3; ++i) R.push_back({ext.R(i, 0), ext.R(i, 1), ext.R(i, 2)});
    doc["R"] = R;
    json res = json::array();
    for (const AnisoResonance& a : aniso_resonance(in.cfg.material, ext.R, ext.delta, ext.aniso_n, in.cfg.search)) {
        res.push_back({{"multiplet_eigenvalue", a.multiplet_eigenvalue}, {"multiplicity", a.multiplicity},
                       {"report", report_json(a.report, in.scale)}});
    }
    doc["resonances"] = res;
    return {write_document(ext, "aniso", doc).string()};
}

}  // namespace

RunConfig load_config(const std::string& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
        const auto it = known_keys.find(section);
        if (it == known_keys.end()) throw ConfigError("config: unknown section [" + section + "]");
        if (!body.data().empty()) throw ConfigError("config: key '" + section + "' outside a section");
        for (const auto& [key, value] : body)
            if (!it->second.count(key)) throw ConfigError("config: unknown key " + section + "." + key);
    }
    const boost::property_tree::ptree empty;
    auto sec = [&](const char* name) -> const boost::property_tree::ptree& {
        const auto c = tree.get_child_optional(name);
        return c ? *c : empty;
    };

    RunConfig cfg;
    const auto& geo = sec("geometry");
    cfg.geometry = get<std::string>(geo, "kind", cfg.geometry, "geometry");
    cfg.radius = get(geo, "radius", cfg.radius, "geometry");
    cfg.rho = get(geo, "rho", cfg.rho, "geometry");

    const auto& mat = sec("material");
    const std::string preset = get<std::string>(mat, "preset", "", "material");
    if (!preset.empty()) {
        fs::path p(preset);
        if (p.is_relative()) p = fs::path(path).parent_path() / p;
        try {
            cfg.material = load_material_preset(p.string());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    cfg.material.drude.eps_inf = get(mat, "eps_inf", cfg.material.drude.eps_inf, "material");
    cfg.material.drude.omega_p = get(mat, "omega_p", cfg.material.drude.omega_p, "material");
    cfg.material.drude.gamma_damp = get(mat, "gamma", cfg.material.drude.gamma_damp, "material");
    cfg.material.mu_c = {get(mat, "mu_c", cfg.material.mu_c.real(), "material"),
                         get(mat, "mu_c_im", cfg.material.mu_c.imag(), "material")};

    const auto& host = sec("host");
    cfg.material.eps_m = {get(host, "eps_m", cfg.material.eps_m.real(), "host"),
                          get(host, "eps_m_im", cfg.material.eps_m.imag(), "host")};
    cfg.material.mu_m = {get(host, "mu_m", cfg.material.mu_m.real(), "host"),
                         get(host, "mu_m_im", cfg.material.mu_m.imag(), "host")};

    const auto& grid = sec("grid");
    cfg.omega_min = get(grid, "omega_min", cfg.omega_min, "grid");
    cfg.omega_max = get(grid, "omega_max", cfg.omega_max, "grid");
    cfg.count = get(grid, "count", cfg.count, "grid");
    cfg.units = get<std::string>(sec("units"), "system", cfg.units, "units");

    const auto& spec = sec("spectrum");
    const std::string mode = get<std::string>(spec, "mode", "series", "spectrum");
    if (mode != "series" && mode != "dipole") throw ConfigError("spectrum.mode must be series or dipole");
    cfg.mode = mode == "series" ? ExtinctionMode::series : ExtinctionMode::dipole;
    const std::string form = get<std::string>(spec, "form", "corrected", "spectrum");
    if (form != "corrected" && form != "verbatim") throw ConfigError("spectrum.form must be corrected or verbatim");
    cfg.form = form == "corrected" ? SeriesForm::corrected : SeriesForm::verbatim;
    if (auto d = spec.get_optional<std::string>("direction")) {
        const auto v = numbers(*d, 3, "spectrum.direction");
        cfg.direction = Vec3(v[0], v[1], v[2]);
    }
    if (auto p = spec.get_optional<std::string>("polarization")) {
        const auto v = numbers(*p, 3, "spectrum.polarization");
        cfg.polarization = Vec3(v[0], v[1], v[2]);
    }

    cfg.modes_n_max = get(sec("modes"), "n_max", cfg.modes_n_max, "modes");

    const auto& res = sec("resonance");
    if (auto fams = res.get_optional<std::string>("families")) cfg.families = parse_families(*fams);
    cfg.order = get<std::string>(res, "order", cfg.order, "resonance");
    cfg.resonance_n_max = get(res, "n_max", cfg.resonance_n_max, "resonance");
    cfg.search.lo = get(res, "search_min", cfg.search.lo, "resonance");
    cfg.search.hi = get(res, "search_max", cfg.search.hi, "resonance");
    cfg.search.grid = get(res, "search_grid", cfg.search.grid, "resonance");

    cfg.f = get(sec("mg"), "f", cfg.f, "mg");
    cfg.validity_constant = get(sec("mg"), "validity_constant", cfg.validity_constant, "mg");

    const auto& an = sec("aniso");
    if (auto r = an.get_optional<std::string>("R")) {
        const auto v = numbers(*r, 9, "aniso.R");
        cfg.R << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
    }
    cfg.delta = get(an, "delta", cfg.delta, "aniso");
    cfg.aniso_n = get(an, "n", cfg.aniso_n, "aniso");

    const auto& run = sec("run");
    cfg.out_dir = get<std::string>(run, "out", cfg.out_dir, "run");
    cfg.jobs = get(run, "jobs", cfg.jobs, "run");
    cfg.format = get<std::string>(run, "format", cfg.format, "run");
    return cfg;
}

std::vector<std::string> execute(const std::string& command, const RunConfig& cfg) {
    cfg.validate();
    try {
        cfg.material.drude.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + cfg.out_dir);
    if (command == "spectrum") return cmd_spectrum(cfg);
    if (command == "modes") return cmd_modes(cfg);
    if (command == "resonance") return cmd_resonance(cfg);
    if (command == "mg") return cmd_mg(cfg);
    if (command == "aniso") return cmd_aniso(cfg);
    throw ConfigError("unknown command " + command);
}

namespace {

void print_error(const char* kind, const std::string& message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

int selftest(const RunConfig& cfg, bool write) {
    const auto results = run_selftest();
    bool ok = true;
    json doc = json::array();
    for (const CheckResult& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " value=" << number(r.value)
                  << " bound=" << number(r.threshold) << "\n";
        ok = ok && r.passed;
        doc.push_back({{"name", r.name}, {"passed", r.passed}, {"value", r.value}, {"threshold", r.threshold}});
    }
    if (write) write_document(cfg, "selftest", doc);
    return ok ? 0 : 1;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Plasmonic resonance calculator for spheres, shells and dilute composites"};
    app.require_subcommand(1);

    std::string config_path, out_dir, format, geometry, order;
    int jobs = -1;
    const char* commands[][2] = {
        {"spectrum", "Extinction spectrum over the frequency grid with peak detection"},
        {"modes", "Eigenvalue expansions per family and degree over the grid"},
        {"resonance", "Quasistatic and size-corrected resonance search"},
        {"mg", "Maxwell-Garnett effective tensor over the grid"},
        {"aniso", "Anisotropic-ball resonance multiplet"},
        {"selftest", "Run the built-in invariant suite"},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c[0], c[1]);
        sub->add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_option("--jobs", jobs, "Worker threads (default: hardware concurrency)")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--geometry", geometry, "sphere or shell")->check(CLI::IsMember({"sphere", "shell"}));
        if (std::string(c[0]) == "resonance")
            sub->add_option("--order", order, "quasistatic, corrected or both")
                ->check(CLI::IsMember({"quasistatic", "corrected", "both"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("config", e.what());
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (jobs >= 0) cfg.jobs = jobs;
        if (!format.empty()) cfg.format = format;
        if (!geometry.empty()) cfg.geometry = geometry;
        if (!order.empty()) cfg.order = order;
        if (command == "selftest") return selftest(cfg, !out_dir.empty());
        for (const std::string& p : execute(command, cfg)) std::cout << p << "\n";
        return 0;
    } catch (const ConfigError& e) {
        print_error("config", e.what());
        return 2;
    } catch (const Error& e) {
        print_error(to_string(e.kind()), e.what());
        return 3;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 3;
    }
}

}  // namespace plasmon::cli
