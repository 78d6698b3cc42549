// vexhardy: command-line front end for the variable-exponent Hardy space toolkit.
//
//   vexhardy <command> [--config file.json] [--<key> value ...]
//
// Every configuration key of a command is also a flag (underscores become
// dashes). Values given on the command line override the config file, which
// overrides the built-in defaults. Exit status: 0 success, 2 configuration
// error, 3 numeric failure.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vexhardy/boundary_function.hpp"
#include "vexhardy/corpus.hpp"
#include "vexhardy/disk_hardy.hpp"
#include "vexhardy/exponent.hpp"
#include "vexhardy/halfplane.hpp"
#include "vexhardy/kernel_estimates.hpp"
#include "vexhardy/lp_variable.hpp"
#include "vexhardy/serialize.hpp"

namespace {

using namespace vexhardy;

constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Command {
    std::string name;
    std::string description;
    json defaults;
};

json common_defaults(json extra) {
    json j{{"workers", 1}, {"output", ""}, {"timestamp", true}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

std::vector<Command> commands() {
    const json heights = default_halfplane_schedule();
    return {
        {"norm", "Luxemburg norm of boundary data",
         common_defaults({{"exponent", "paper-sec3"}, {"function", "constant:1"}, {"grid_size", 16384}, {"rtol", 1e-10}})},
        {"modular", "modular of boundary data at lambda = 1",
         common_defaults({{"exponent", "paper-sec3"}, {"function", "constant:1"}, {"grid_size", 16384}})},
        {"hardy-disk", "Hardy norm over the radius schedule 1 - 2^-k",
         common_defaults({{"exponent", "paper-sec3"},
                          {"function", "power:0:0.45"},
                          {"grid_size", 16384},
                          {"k_min", 1},
                          {"k_max", 12},
                          {"csv", ""}})},
        {"kernel-scaling", "growth of reproducing-kernel norms toward the boundary",
         common_defaults({{"exponent", "paper-sec3"},
                          {"theta", 0},
                          {"k_min", 3},
                          {"k_max", 10},
                          {"grid_size", 16384},
                          {"extra_levels", 10},
                          {"csv", ""}})},
        {"forelli-rudin", "Forelli-Rudin integrals and their growth",
         common_defaults({{"s", 1.5}, {"k_min", 3}, {"k_max", 10}, {"grid_size", 16384}, {"csv", ""}})},
        {"phi-check", "phi-majorization over a matrix of points and radii",
         common_defaults({{"exponent", "paper-sec3"},
                          {"z_abs", {0.5, 0.75, 0.9, 0.99}},
                          {"theta", {0, "pi/2", "pi"}},
                          {"r", {0.6, 0.75, 0.9, 0.95}},
                          {"grid_size", 4096}})},
        {"sec3", "membership of (1+z)^-s and (1-z)^-s, s = 1/q + eps",
         common_defaults({{"q", 2.5}, {"eps", 0.05}, {"k_min", 1}, {"k_max", 12}, {"grid_size", 16384}})},
        {"szego", "Szego projection checks and operator-norm proxy",
         common_defaults({{"exponent", "paper-sec3"},
                          {"trials", 1000},
                          {"seed", 20240607},
                          {"degree", 8},
                          {"grid_size", 256},
                          {"bound", 2.0}})},
        {"halfplane-hardy", "half-plane Hardy norm over horizontal lines",
         common_defaults({{"exponent", "constant-line:2"},
                          {"function", "bump-extension"},
                          {"heights", heights},
                          {"half_width", 64.0},
                          {"spacing", 1.0 / 1024.0}})},
        {"approx-identity", "deficits of the Poisson approximate identity on the line",
         common_defaults({{"exponent", "lh-demo"},
                          {"function", "bump"},
                          {"k_min", 1},
                          {"k_max", 10},
                          {"half_width", 64.0},
                          {"spacing", 1.0 / 1024.0},
                          {"uniform_bound", 2.0}})},
        {"hk-bound", "boundedness on H_k = {y >= k}",
         common_defaults({{"exponent", "constant-line:2"},
                          {"function", "bump-extension"},
                          {"k", 1.0},
                          {"probes", {{0, 1}, {0.5, 1}, {-2, 1.5}, {0, 3}, {4, 8}}},
                          {"heights", heights},
                          {"half_width", 64.0},
                          {"spacing", 1.0 / 1024.0}})},
        {"exponent-diag", "essential bounds and log-Holder regularity",
         common_defaults({{"exponent", "paper-sec3"}, {"grid_size", 1024}, {"ceiling", 5.0}})},
    };
}

bool same_kind(const json& a, const json& b) {
    if (a.is_number() && (b.is_number() || b.is_string())) return true;
    return a.type() == b.type();
}

/// Merges overrides into the defaults; unknown keys and type changes are errors.
void merge(json& resolved, const json& overrides, const std::string& origin) {
    if (!overrides.is_object()) throw ConfigError(origin + ": expected a JSON object");
    for (const auto& [key, value] : overrides.items()) {
        if (key == "command") continue;
        if (!resolved.contains(key)) throw ConfigError(origin + ": unknown key '" + key + "'");
        const auto& def = resolved[key];
        const bool exponent_object = key == "exponent" && value.is_object();
        const bool mixed_list = def.is_array() && value.is_array();
        if (!exponent_object && !mixed_list && !same_kind(def, value))
            throw ConfigError(origin + ": key '" + key + "' expects a " + std::string(def.type_name()) + ", got " +
                              value.type_name());
        resolved[key] = value;
    }
}

/// Flag text is read as JSON when possible (numbers, lists, true/false),
/// otherwise as a plain string.
json parse_flag(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        return json(text);
    }
}

std::string key_to_flag(std::string key) {
    for (auto& c : key)
        if (c == '_') c = '-';
    return "--" + key;
}

double number(const json& cfg, const std::string& key) { return parse_real(cfg.at(key), key); }

std::size_t count(const json& cfg, const std::string& key) {
    const double v = number(cfg, key);
    if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError(key + ": expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

int integer(const json& cfg, const std::string& key) {
    const double v = number(cfg, key);
    if (v != std::floor(v)) throw ConfigError(key + ": expected an integer");
    return static_cast<int>(v);
}

std::vector<double> reals(const json& cfg, const std::string& key) {
    std::vector<double> out;
    for (const auto& v : cfg.at(key)) out.push_back(parse_real(v, key));
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double real_arg(const std::string& s, const std::string& what) { return parse_real(json(s), what); }

struct FunctionSpec {
    std::string family;
    std::vector<std::string> args;
};

FunctionSpec function_spec(const json& cfg) {
    const auto text = cfg.at("function").get<std::string>();
    const auto colon = text.find(':');
    FunctionSpec f;
    f.family = text.substr(0, colon);
    if (colon != std::string::npos) {
        const auto rest = text.substr(colon + 1);
        f.args = (f.family == "csv" || f.family == "poisson-csv") ? std::vector<std::string>{rest} : split(rest, ':');
    }
    return f;
}

void expect_args(const FunctionSpec& f, std::size_t n) {
    if (f.args.size() != n)
        throw ConfigError("function '" + f.family + "' expects " + std::to_string(n) + " parameter(s)");
}

std::vector<complex> polynomial_coefficients(const FunctionSpec& f) {
    expect_args(f, 1);
    std::vector<complex> c;
    for (const auto& s : split(f.args[0], ',')) c.emplace_back(real_arg(s, "polynomial coefficient"));
    return c;
}

TrigPolynomial trig_spec(const FunctionSpec& f) {
    expect_args(f, 2);
    SeededRng rng(static_cast<std::uint64_t>(real_arg(f.args[0], "seed")));
    return random_trig_polynomial(rng, static_cast<int>(real_arg(f.args[1], "degree")));
}

/// constant:c | power:angle:s | polynomial:c0,c1,... | kernel:re:im |
/// poisson-trig:seed:degree | poisson-csv:path
DiskSampler disk_sampler(const FunctionSpec& f, std::size_t n) {
    if (f.family == "constant") {
        expect_args(f, 1);
        return constant_sampler(real_arg(f.args[0], "constant"));
    }
    if (f.family == "power") {
        expect_args(f, 2);
        return power_sampler(real_arg(f.args[0], "angle"), real_arg(f.args[1], "power"));
    }
    if (f.family == "polynomial") return polynomial_sampler(polynomial_coefficients(f));
    if (f.family == "kernel") {
        expect_args(f, 2);
        return kernel_sampler({real_arg(f.args[0], "kernel point"), real_arg(f.args[1], "kernel point")});
    }
    if (f.family == "poisson-trig") return poisson_extension_sampler(trig_spec(f).sample(n));
    if (f.family == "poisson-csv") return poisson_extension_sampler(read_csv_file(f.args.at(0)));
    throw ConfigError("function: unknown disk family '" + f.family + "'");
}

/// bump | cauchy | constant:c | csv:path
LineFunction line_function(const FunctionSpec& f, const LineOptions& g) {
    if (f.family == "bump") return bump_line(g);
    if (f.family == "cauchy") return cauchy_line(g);
    if (f.family == "constant") {
        expect_args(f, 1);
        const double c = real_arg(f.args[0], "constant");
        return sample_line([c](double) { return complex(c); }, g.half_width, g.spacing, PowerTail{0.0, std::abs(c), std::abs(c)});
    }
    if (f.family == "csv") {
        auto u = read_csv_file(f.args.at(0));
        if (u.domain() != DomainKind::line) throw ConfigError("function: expected a line CSV (x,re,im)");
        return u;
    }
    throw ConfigError("function: unknown line family '" + f.family + "'");
}

/// Boundary data for norm and modular: disk families are sampled on the unit
/// circle (boundary trace), line families on the configured grid.
BoundaryFunction boundary_function(const FunctionSpec& f, const VariableExponent& p, std::size_t n,
                                   const LineOptions& g) {
    if (p.domain() == DomainKind::line) return line_function(f, g);
    if (f.family == "csv") {
        auto u = read_csv_file(f.args.at(0));
        if (u.domain() != DomainKind::circle) throw ConfigError("function: expected a circle CSV (theta,re,im)");
        return u;
    }
    if (f.family == "cos") return BoundaryFunction::sample_circle([](double t) { return std::cos(t); }, n);
    if (f.family == "trig") return trig_spec(f).sample(n);
    if (f.family == "kernel") {
        expect_args(f, 2);
        return kernel_boundary_values({real_arg(f.args[0], "kernel point"), real_arg(f.args[1], "kernel point")}, 0.0, n);
    }
    const auto s = disk_sampler(f, n);
    return sample_dilation(s, 1.0, n, p.breakpoints());
}

/// bump-extension | cauchy | im-inverse-shift | constant:c | poisson-csv:path
HalfplaneSampler halfplane_sampler(const FunctionSpec& f, const LineOptions& g) {
    if (f.family == "bump-extension") return poisson_extension_halfplane(bump_line(g));
    if (f.family == "cauchy") return cauchy_halfplane();
    if (f.family == "im-inverse-shift") return inverse_shift_halfplane();
    if (f.family == "constant") {
        expect_args(f, 1);
        return constant_halfplane(real_arg(f.args[0], "constant"));
    }
    if (f.family == "poisson-csv") return poisson_extension_halfplane(line_function({"csv", f.args}, g));
    throw ConfigError("function: unknown half-plane family '" + f.family + "'");
}

LineOptions line_options(const json& cfg) { return {number(cfg, "half_width"), number(cfg, "spacing")}; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open " + path + " for writing");
    os << text;
}

std::string hardy_csv(const HardyReport& r) {
    ScalingReport s;
    for (const auto& p : r.norms_by_radius)
        if (!p.norm.infinite && p.norm.value > 0.0) s.points.push_back({p.abscissa, p.norm.value});
    return scaling_csv(s, "norm");
}

json run(const std::string& name, const json& cfg) {
    const std::size_t workers = std::max<std::size_t>(1, count(cfg, "workers"));

    if (name == "norm" || name == "modular") {
        const auto p = parse_exponent(cfg.at("exponent"));
        const LineOptions g;
        const auto f = boundary_function(function_spec(cfg), p, count(cfg, "grid_size"), g);
        if (name == "modular") {
            const Modular rho(f, p);
            return {{"modular", finite_or_null(rho(1.0))}, {"infinite", rho.infinite()}, {"measure", rho.measure()}};
        }
        LuxemburgOptions lux;
        lux.rtol = number(cfg, "rtol");
        return to_json(luxemburg_norm(f, p, lux));
    }
    if (name == "hardy-disk") {
        const auto p = parse_exponent(cfg.at("exponent"));
        HardyOptions opt;
        opt.grid_size = count(cfg, "grid_size");
        opt.workers = workers;
        const auto s = disk_sampler(function_spec(cfg), opt.grid_size);
        const auto rep = hardy_norm(s, p, dyadic_radii(integer(cfg, "k_min"), integer(cfg, "k_max")), opt);
        if (const auto csv = cfg.at("csv").get<std::string>(); !csv.empty()) write_text(csv, hardy_csv(rep));
        json j = to_json(rep);
        j["function_kind"] = to_string(s.kind);
        return j;
    }
    if (name == "kernel-scaling") {
        const auto p = parse_exponent(cfg.at("exponent"));
        EvaluationBoundOptions opt;
        opt.hardy.grid_size = count(cfg, "grid_size");
        opt.hardy.workers = workers;
        opt.extra_levels = integer(cfg, "extra_levels");
        std::vector<int> ks;
        for (int k = integer(cfg, "k_min"); k <= integer(cfg, "k_max"); ++k) ks.push_back(k);
        const auto rep = evaluation_bound_experiment(p, number(cfg, "theta"), ks, opt);
        if (const auto csv = cfg.at("csv").get<std::string>(); !csv.empty()) write_text(csv, scaling_csv(rep, "norm"));
        return to_json(rep);
    }
    if (name == "forelli-rudin") {
        const auto rep = forelli_rudin_check(number(cfg, "s"), dyadic_radii(integer(cfg, "k_min"), integer(cfg, "k_max")),
                                             count(cfg, "grid_size"));
        if (const auto csv = cfg.at("csv").get<std::string>(); !csv.empty())
            write_text(csv, scaling_csv(rep.scaling, "integral"));
        return to_json(rep);
    }
    if (name == "phi-check") {
        const auto p = parse_exponent(cfg.at("exponent"));
        const std::size_t n = count(cfg, "grid_size");
        const auto za = reals(cfg, "z_abs"), th = reals(cfg, "theta"), rs = reals(cfg, "r");
        struct Cell {
            double a, t, r;
        };
        std::vector<Cell> cells;
        for (double a : za)
            for (double t : th)
                for (double r : rs) cells.push_back({a, t, r});
        std::vector<PhiReport> coarse(cells.size()), fine(cells.size());
        parallel_for(cells.size(), workers, [&](std::size_t i) {
            const auto z = std::polar(cells[i].a, cells[i].t);
            coarse[i] = phi_majorization_check(p, z, cells[i].r, n);
            fine[i] = phi_majorization_check(p, z, cells[i].r, 2 * n);
        });
        json entries = json::array();
        double max_ratio = 0.0, max_change = 0.0, bound = 0.0;
        bool within = true;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            json e = to_json(coarse[i]);
            const double change = std::abs(fine[i].max_ratio - coarse[i].max_ratio) / coarse[i].max_ratio;
            e["max_ratio_doubled_grid"] = fine[i].max_ratio;
            e["relative_change"] = change;
            entries.push_back(e);
            max_ratio = std::max(max_ratio, coarse[i].max_ratio);
            max_change = std::max(max_change, change);
            bound = coarse[i].bound;
            within = within && coarse[i].within_bound;
        }
        return {{"entries", entries},
                {"max_ratio", max_ratio},
                {"bound", bound},
                {"within_bound", within},
                {"max_relative_change", max_change},
                {"stable", max_change <= 0.01}};
    }
    if (name == "sec3") {
        HardyOptions opt;
        opt.grid_size = count(cfg, "grid_size");
        opt.workers = workers;
        return to_json(sec3_example_report(number(cfg, "q"), number(cfg, "eps"),
                                           dyadic_radii(integer(cfg, "k_min"), integer(cfg, "k_max")), opt));
    }
    if (name == "szego") {
        const auto p = parse_exponent(cfg.at("exponent"));
        const std::size_t n = count(cfg, "grid_size");
        const int degree = integer(cfg, "degree");
        const auto rep = szego_boundedness_experiment(p, count(cfg, "trials"), count(cfg, "seed"), degree, n,
                                                      number(cfg, "bound"));
        double basis_error = 0.0;
        for (long k = -degree; k <= degree; ++k) {
            const auto e = BoundaryFunction::sample_circle([k](double t) { return std::polar(1.0, k * t); }, n);
            const auto ke = szego_project(e);
            for (std::size_t j = 0; j < n; ++j)
                basis_error = std::max(basis_error, std::abs(ke.values()[j] - (k >= 0 ? e.values()[j] : complex{})));
        }
        SeededRng rng(count(cfg, "seed"));
        const auto f = random_trig_polynomial(rng, degree).sample(n);
        const auto kf = szego_project(f);
        const auto c1 = fourier_coefficients(kf), c2 = fourier_coefficients(szego_project(kf));
        double idempotence = 0.0;
        for (long k = c1.min_index(); k <= c1.max_index(); ++k) idempotence = std::max(idempotence, std::abs(c1[k] - c2[k]));
        json j = to_json(rep);
        j["basis_error"] = basis_error;
        j["idempotence_error"] = idempotence;
        return j;
    }
    if (name == "halfplane-hardy") {
        const auto p = parse_exponent(cfg.at("exponent"));
        HalfplaneHardyOptions opt;
        opt.grid = line_options(cfg);
        opt.workers = workers;
        const auto s = halfplane_sampler(function_spec(cfg), opt.grid);
        return to_json(halfplane_hardy_norm(s, p, reals(cfg, "heights"), opt), "y");
    }
    if (name == "approx-identity") {
        const auto p = parse_exponent(cfg.at("exponent"));
        const auto u = line_function(function_spec(cfg), line_options(cfg));
        ApproximateIdentityOptions opt;
        opt.uniform_bound = number(cfg, "uniform_bound");
        opt.workers = workers;
        return to_json(approximate_identity_check(u, p, dyadic_heights(integer(cfg, "k_min"), integer(cfg, "k_max")), opt));
    }
    if (name == "hk-bound") {
        const auto p = parse_exponent(cfg.at("exponent"));
        HalfplaneHardyOptions opt;
        opt.grid = line_options(cfg);
        opt.workers = workers;
        const auto s = halfplane_sampler(function_spec(cfg), opt.grid);
        std::vector<std::pair<double, double>> probes;
        for (const auto& pr : cfg.at("probes")) {
            if (!pr.is_array() || pr.size() != 2) throw ConfigError("probes: expected [x, y] pairs");
            probes.emplace_back(parse_real(pr[0], "probe"), parse_real(pr[1], "probe"));
        }
        return to_json(hk_bound_check(s, p, number(cfg, "k"), probes, reals(cfg, "heights"), opt));
    }
    if (name == "exponent-diag") {
        const auto p = parse_exponent(cfg.at("exponent"));
        const auto reg = log_holder_constant(p, count(cfg, "grid_size"), {number(cfg, "ceiling")});
        json j{{"exponent", to_json(p)}, {"p_minus", p.p_minus()}, {"p_plus", p.p_plus()}, {"regularity", to_json(reg)}};
        if (p.p_minus() > 1.0) {
            const auto q = conjugate(p);
            j["conjugate_bounds"] = {q.p_minus(), q.p_plus()};
        } else {
            j["conjugate_bounds"] = nullptr;
        }
        return j;
    }
    throw ConfigError("unknown command '" + name + "'");
}

/// Invalid parameters, files or function kinds, as opposed to numeric breakdowns.
bool is_config_error(const std::exception& e) {
    return dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const json::exception*>(&e) ||
           dynamic_cast<const InputError*>(&e) || dynamic_cast<const PreconditionError*>(&e) ||
           dynamic_cast<const DomainError*>(&e) || dynamic_cast<const ContractError*>(&e) ||
           dynamic_cast<const RangeError*>(&e) || dynamic_cast<const ConstructionError*>(&e) ||
           dynamic_cast<const PeriodicityError*>(&e) || dynamic_cast<const ConjugateUnboundedError*>(&e);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for variable-exponent Lebesgue and Hardy spaces"};
    app.require_subcommand(1);

    const auto cmds = commands();
    std::string config_path;
    bool no_timestamp = false;
    std::map<std::string, std::map<std::string, std::string>> flags;
    for (const auto& c : cmds) {
        auto* sub = app.add_subcommand(c.name, c.description);
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
        for (const auto& [key, def] : c.defaults.items())
            sub->add_option(key_to_flag(key), flags[c.name][key], "default: " + def.dump());
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }

    const auto* sub = app.get_subcommands().front();
    const Command& cmd = *std::find_if(cmds.begin(), cmds.end(), [&](const Command& c) { return c.name == sub->get_name(); });

    json cfg = cmd.defaults;
    try {
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw ConfigError("cannot open config file " + config_path);
            json file;
            try {
                file = json::parse(is);
            } catch (const json::parse_error& e) {
                throw ConfigError(std::string("config file: ") + e.what());
            }
            if (file.contains("command") && file["command"] != cmd.name)
                throw ConfigError("config file is for command '" + file["command"].dump() + "'");
            merge(cfg, file, "config file");
        }
        json cli = json::object();
        for (const auto& [key, text] : flags[cmd.name])
            if (sub->count(key_to_flag(key)) > 0) cli[key] = parse_flag(text);
        merge(cfg, cli, "command line");
        if (no_timestamp) cfg["timestamp"] = false;
        if (cfg.contains("exponent")) (void)parse_exponent(cfg["exponent"]);
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    }

    json out;
    out["command"] = cmd.name;
    out["config"] = cfg;
    try {
        out["report"] = run(cmd.name, cfg);
    } catch (const std::exception& e) {
        if (is_config_error(e)) {
            std::cerr << "configuration error: " << e.what() << '\n';
            return exit_config;
        }
        std::cerr << "numeric failure: " << e.what() << '\n';
        return exit_numeric;
    }
    if (cfg.at("timestamp").get<bool>()) out["timestamp"] = utc_timestamp();

    const auto text = out.dump(2) + "\n";
    const auto path = cfg.at("output").get<std::string>();
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(path);
        if (!os) {
            std::cerr << "configuration error: cannot open " << path << '\n';
            return exit_config;
        }
        os << text;
    }
    return 0;
}
