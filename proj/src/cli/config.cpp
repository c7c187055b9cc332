#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nls/cli.hpp"
#include "nls/error.hpp"
#include "nls/families.hpp"
#include "nls/io.hpp"

namespace nls::cli {
namespace {

namespace pt = boost::property_tree;

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& i : items) s += "\n  " + i;
    return s;
}

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"grid", {"topology", "x_min", "length", "points"}},
        {"data", {"family", "amplitude", "sigma", "wavenumber", "alpha", "path"}},
        {"time", {"dt", "steps"}},
        {"solver", {"depth", "eps", "tol", "relative", "max_iter", "blowup_factor", "lebesgue_base"}},
        {"propagator", {"backend", "q", "radius"}},
        {"oracle", {"scheme", "dealias", "substeps"}},
        {"sweep", {"eps"}},
        {"dispersive", {"p", "t_end", "samples"}},
        {"output", {"dir"}},
    };
    return keys;
}

// Reads typed values and collects every problem instead of stopping at the first.
class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::vector<std::string>& problems() { return problems_; }

    std::optional<std::string> raw(const std::string& section, const std::string& key) const {
        const auto s = tree_.get_child_optional(section);
        if (!s) return std::nullopt;
        const auto v = s->get_optional<std::string>(key);
        if (!v) return std::nullopt;
        // Trailing "; ..." or "# ..." after whitespace is a comment.
        std::string text = *v;
        for (std::size_t i = 1; i < text.size(); ++i) {
            if ((text[i] == ';' || text[i] == '#') && (text[i - 1] == ' ' || text[i - 1] == '\t')) {
                text.erase(i);
                break;
            }
        }
        text.erase(text.find_last_not_of(" \t") + 1);
        return text;
    }

    void real(const std::string& section, const std::string& key, double& target, double lo, double hi,
              bool open_lo = false) {
        const auto v = raw(section, key);
        if (!v) return;
        double x = 0.0;
        if (!parse_real(*v, x)) return fail(section, key, "not a number: '" + *v + "'");
        if (!(open_lo ? x > lo : x >= lo) || !(x <= hi)) {
            return fail(section, key, "out of range: " + *v);
        }
        target = x;
    }

    template <class Int>
    void integer(const std::string& section, const std::string& key, Int& target, long long lo, long long hi) {
        const auto v = raw(section, key);
        if (!v) return;
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(*v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != v->size()) return fail(section, key, "not an integer: '" + *v + "'");
        if (x < lo || x > hi) return fail(section, key, "out of range: " + *v);
        target = static_cast<Int>(x);
    }

    void boolean(const std::string& section, const std::string& key, bool& target) {
        const auto v = raw(section, key);
        if (!v) return;
        if (*v == "true" || *v == "1" || *v == "yes") {
            target = true;
        } else if (*v == "false" || *v == "0" || *v == "no") {
            target = false;
        } else {
            fail(section, key, "not a boolean: '" + *v + "'");
        }
    }

    void reals(const std::string& section, const std::string& key, std::vector<double>& target, double lo,
               bool allow_inf) {
        const auto v = raw(section, key);
        if (!v) return;
        std::vector<double> out;
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            item = b == std::string::npos ? "" : item.substr(b, e - b + 1);
            double x = 0.0;
            if (allow_inf && (item == "inf" || item == "infinity")) {
                x = kInf;
            } else if (!parse_real(item, x) || !(x >= lo)) {
                return fail(section, key, "bad list entry: '" + item + "'");
            }
            out.push_back(x);
        }
        if (out.empty()) return fail(section, key, "empty list");
        target = std::move(out);
    }

    void fail(const std::string& section, const std::string& key, const std::string& why) {
        problems_.push_back(section + "." + key + ": " + why);
    }

private:
    static bool parse_real(const std::string& s, double& x) {
        std::size_t used = 0;
        try {
            x = std::stod(s, &used);
        } catch (const std::exception&) {
            return false;
        }
        return used == s.size() && std::isfinite(x);
    }

    const pt::ptree& tree_;
    std::vector<std::string> problems_;
};

} // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration:" + join(problems)), problems_(std::move(problems)) {}

ExperimentConfig parse_config(const std::string& text) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError({"syntax: line " + std::to_string(e.line()) + ": " + e.message()});
    }

    Reader r(tree);
    for (const auto& [section, body] : tree) {
        const auto it = schema().find(section);
        if (it == schema().end()) {
            r.problems().push_back(section + ": unknown section");
            continue;
        }
        for (const auto& [key, value] : body) {
            if (!it->second.count(key)) r.fail(section, key, "unknown key");
        }
    }

    ExperimentConfig cfg;
    if (const auto v = r.raw("grid", "topology")) {
        if (*v == "periodic") {
            cfg.grid.topology = Topology::Periodic;
        } else if (*v == "truncated") {
            cfg.grid.topology = Topology::Truncated;
        } else {
            r.fail("grid", "topology", "expected periodic or truncated, got '" + *v + "'");
        }
    }
    r.real("grid", "x_min", cfg.grid.x_min, -1e12, 1e12);
    r.real("grid", "length", cfg.grid.length, 0.0, 1e12, true);
    r.integer("grid", "points", cfg.grid.points, 8, 1 << 22);
    if (cfg.grid.points & (cfg.grid.points - 1)) r.fail("grid", "points", "must be a power of two");

    if (const auto v = r.raw("data", "family")) {
        static const std::set<std::string> families = {"gaussian", "plane-wave", "windowed-power", "schwartz",
                                                       "file"};
        if (families.count(*v)) {
            cfg.data.family = *v;
        } else {
            r.fail("data", "family", "unknown family '" + *v + "'");
        }
    }
    r.real("data", "amplitude", cfg.data.amplitude, -1e6, 1e6);
    r.real("data", "sigma", cfg.data.sigma, 0.0, 1e6, true);
    r.real("data", "wavenumber", cfg.data.wavenumber, -1e6, 1e6);
    r.real("data", "alpha", cfg.data.alpha, 0.0, 1e3, true);
    if (const auto v = r.raw("data", "path")) cfg.data.path = *v;
    if (cfg.data.family == "file" && cfg.data.path.empty()) r.fail("data", "path", "required for family file");

    r.real("time", "dt", cfg.time.dt, 0.0, 1e6, true);
    r.integer("time", "steps", cfg.time.steps, 2, 1000000);

    r.integer("solver", "depth", cfg.depth, 1, 16);
    if (r.raw("solver", "eps")) {
        double eps = 0.0;
        r.real("solver", "eps", eps, 0.0, 1e6, true);
        if (eps > 0.0) cfg.eps = eps;
    }
    r.real("solver", "tol", cfg.remainder.tol, 0.0, 1.0, true);
    r.boolean("solver", "relative", cfg.remainder.relative);
    r.integer("solver", "max_iter", cfg.remainder.max_iter, 1, 100000);
    r.real("solver", "blowup_factor", cfg.remainder.blowup_factor, 1.0, 1e300, true);
    r.real("solver", "lebesgue_base", cfg.lebesgue_base, 0.0, 1e6);
    if (cfg.lebesgue_base != 0.0 && cfg.lebesgue_base < 1.0) {
        r.fail("solver", "lebesgue_base", "must be 0 (default) or at least 1");
    }

    if (const auto v = r.raw("propagator", "backend")) {
        if (*v == "fourier") {
            cfg.backend.kind = BackendKind::FourierMultiplier;
        } else if (*v == "kernel") {
            cfg.backend.kind = BackendKind::OscillatoryKernel;
        } else {
            r.fail("propagator", "backend", "expected fourier or kernel, got '" + *v + "'");
        }
    }
    r.integer("propagator", "q", cfg.backend.nodes_per_oscillation, 8, 4096);
    if (r.raw("propagator", "radius")) {
        double radius = 0.0;
        r.real("propagator", "radius", radius, 0.0, 1e12, true);
        if (radius > 0.0) cfg.backend.cutoff_radius = radius;
    }

    if (const auto v = r.raw("oracle", "scheme")) {
        if (*v == "strang-split") {
            cfg.oracle.scheme = OracleScheme::StrangSplit;
        } else if (*v == "explicit-rk4") {
            cfg.oracle.scheme = OracleScheme::ExplicitRk4;
        } else {
            r.fail("oracle", "scheme", "expected strang-split or explicit-rk4, got '" + *v + "'");
        }
    }
    r.boolean("oracle", "dealias", cfg.oracle.dealias);
    r.integer("oracle", "substeps", cfg.oracle.substeps, 1, 100000);

    r.reals("sweep", "eps", cfg.sweep_eps, 0.0, false);
    for (double e : cfg.sweep_eps) {
        if (!(e > 0.0)) r.fail("sweep", "eps", "entries must be positive");
    }
    if (cfg.sweep_eps.size() < 2) r.fail("sweep", "eps", "need at least two values to fit a slope");

    r.reals("dispersive", "p", cfg.dispersive.exponents, 2.0, true);
    r.real("dispersive", "t_end", cfg.dispersive.t_end, 0.0, 1e6, true);
    r.integer("dispersive", "samples", cfg.dispersive.samples, 2, 100000);

    if (const auto v = r.raw("output", "dir")) cfg.out_dir = *v;

    if (!r.problems().empty()) throw ConfigError(r.problems());
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"config: cannot read '" + path + "'"});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate_for(const ExperimentConfig& cfg, const std::string& subcommand) {
    std::vector<std::string> problems;
    const bool periodic_only = subcommand == "oracle" || subcommand == "compare";
    if (periodic_only && cfg.grid.topology != Topology::Periodic) {
        problems.push_back("grid.topology: " + subcommand + " needs a periodic grid");
    }
    if (cfg.backend.kind == BackendKind::OscillatoryKernel && cfg.grid.topology != Topology::Truncated) {
        problems.push_back("propagator.backend: kernel needs grid.topology = truncated");
    }
    if (cfg.backend.kind == BackendKind::OscillatoryKernel && cfg.time.dt < kKernelMinTime) {
        problems.push_back("time.dt: kernel backend needs dt >= 1e-3");
    }
    if (cfg.data.family == "file") {
        std::error_code ec;
        if (!std::filesystem::is_regular_file(cfg.data.path, ec)) {
            problems.push_back("data.path: no such file '" + cfg.data.path + "'");
        }
    }
    if (subcommand == "sweep-eps" && cfg.sweep_eps.size() < 2) {
        problems.push_back("sweep.eps: need at least two values");
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
}

GridFunction initial_data(const ExperimentConfig& cfg) {
    const auto& d = cfg.data;
    if (d.family == "file") return io::load_array(d.path);
    const Grid g = cfg.grid.topology == Topology::Periodic
                       ? Grid::periodic(cfg.grid.x_min, cfg.grid.length, cfg.grid.points)
                       : Grid::truncated(cfg.grid.x_min, cfg.grid.length, cfg.grid.points);
    if (d.family == "gaussian") return gaussian_data(g, d.amplitude, d.sigma);
    if (d.family == "plane-wave") return plane_wave(g, d.amplitude, d.wavenumber, 0.0);
    if (d.family == "windowed-power") return windowed_power_data(g, d.alpha, d.amplitude);
    return schwartz_data(g, d.amplitude, d.sigma);
}

std::string canonical_config(const ExperimentConfig& cfg) {
    auto exponent = [](double p) { return std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p); };
    nlohmann::json p = nlohmann::json::array();
    for (double x : cfg.dispersive.exponents) p.push_back(exponent(x));
    nlohmann::json j = {
        {"grid",
         {{"topology", cfg.grid.topology == Topology::Periodic ? "periodic" : "truncated"},
          {"x_min", cfg.grid.x_min},
          {"length", cfg.grid.length},
          {"points", cfg.grid.points}}},
        {"data",
         {{"family", cfg.data.family},
          {"amplitude", cfg.data.amplitude},
          {"sigma", cfg.data.sigma},
          {"wavenumber", cfg.data.wavenumber},
          {"alpha", cfg.data.alpha},
          {"path", cfg.data.path}}},
        {"time", {{"dt", cfg.time.dt}, {"steps", cfg.time.steps}}},
        {"solver",
         {{"depth", cfg.depth},
          {"eps", cfg.eps ? nlohmann::json(*cfg.eps) : nlohmann::json(nullptr)},
          {"tol", cfg.remainder.tol},
          {"relative", cfg.remainder.relative},
          {"max_iter", cfg.remainder.max_iter},
          {"blowup_factor", cfg.remainder.blowup_factor},
          {"lebesgue_base", cfg.lebesgue_base}}},
        {"propagator",
         {{"backend", cfg.backend.kind == BackendKind::FourierMultiplier ? "fourier" : "kernel"},
          {"q", cfg.backend.nodes_per_oscillation},
          {"radius", cfg.backend.cutoff_radius ? nlohmann::json(*cfg.backend.cutoff_radius)
                                               : nlohmann::json(nullptr)}}},
        {"oracle",
         {{"scheme", cfg.oracle.scheme == OracleScheme::StrangSplit ? "strang-split" : "explicit-rk4"},
          {"dealias", cfg.oracle.dealias},
          {"substeps", cfg.oracle.substeps}}},
        {"sweep", {{"eps", cfg.sweep_eps}}},
        {"dispersive", {{"p", p}, {"t_end", cfg.dispersive.t_end}, {"samples", cfg.dispersive.samples}}},
    };
    return j.dump();
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace nls::cli
