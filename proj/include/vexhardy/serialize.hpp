#pragma once

// JSON for exponents and reports. Infinite quantities are written as null
// next to an explicit flag. Parsing accepts numbers or the strings "inf",
// "-inf" and pi expressions such as "pi/3", "2pi", "-5pi/3".

#include <cmath>
#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vexhardy/disk_hardy.hpp"
#include "vexhardy/error.hpp"
#include "vexhardy/exponent.hpp"
#include "vexhardy/halfplane.hpp"
#include "vexhardy/kernel_estimates.hpp"
#include "vexhardy/lp_variable.hpp"

namespace vexhardy {

using json = nlohmann::ordered_json;

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// Number, "inf", "-inf", or [-][k]pi[/m].
inline double parse_real(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw InputError(field + ": expected a number or a string");
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return infinity;
    if (s == "-inf") return -infinity;
    static const std::regex pi_expr(R"(^\s*([+-]?)\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
    std::smatch m;
    if (std::regex_match(s, m, pi_expr)) {
        double v = m[2].length() ? std::stod(m[2].str()) : 1.0;
        v *= pi;
        if (m[3].matched) v /= std::stod(m[3].str());
        return m[1] == "-" ? -v : v;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError(field + ": cannot parse '" + s + "' as a real number");
}

inline FormulaKind parse_formula_kind(const std::string& s) {
    for (auto k : {FormulaKind::constant, FormulaKind::affine, FormulaKind::cosine_offset, FormulaKind::log_decay,
                   FormulaKind::rational_decay})
        if (to_string(k) == s) return k;
    throw InputError("unknown exponent formula '" + s + "'");
}

inline DomainKind parse_domain(const std::string& s) {
    if (s == "circle") return DomainKind::circle;
    if (s == "line") return DomainKind::line;
    throw InputError("domain must be 'circle' or 'line', got '" + s + "'");
}

/// Reserved names "paper-sec3" and "lh-demo", "constant:<c>" (circle),
/// "constant-line:<c>", or an object
///   {"domain": "circle", "pieces": [{"lo": 0, "hi": "pi/3", "formula": "constant", "a": 3}, ...]}.
inline VariableExponent parse_exponent(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "paper-sec3") return example_exponent_sec3();
        if (s == "lh-demo") return lh_demo_exponent();
        for (auto [prefix, domain] : {std::pair{"constant:", DomainKind::circle},
                                      std::pair{"constant-line:", DomainKind::line}}) {
            const std::string pre = prefix;
            if (s.rfind(pre, 0) == 0) return VariableExponent::constant(parse_real(json(s.substr(pre.size())), "exponent"), domain);
        }
        throw InputError("exponent: unknown name '" + s + "'");
    }
    if (!j.is_object()) throw InputError("exponent: expected a name or an object");
    for (const auto& [key, _] : j.items())
        if (key != "domain" && key != "pieces") throw InputError("exponent: unknown key '" + key + "'");
    if (!j.contains("domain") || !j.contains("pieces")) throw InputError("exponent: needs 'domain' and 'pieces'");
    const auto domain = parse_domain(j.at("domain").get<std::string>());
    std::vector<Piece> pieces;
    for (const auto& pj : j.at("pieces")) {
        for (const auto& [key, _] : pj.items())
            if (key != "lo" && key != "hi" && key != "formula" && key != "a" && key != "b")
                throw InputError("exponent piece: unknown key '" + key + "'");
        Piece p;
        p.lo = parse_real(pj.at("lo"), "exponent piece lo");
        p.hi = parse_real(pj.at("hi"), "exponent piece hi");
        p.formula.kind = parse_formula_kind(pj.at("formula").get<std::string>());
        p.formula.a = pj.contains("a") ? parse_real(pj.at("a"), "exponent piece a") : 0.0;
        p.formula.b = pj.contains("b") ? parse_real(pj.at("b"), "exponent piece b") : 0.0;
        pieces.push_back(p);
    }
    return make_piecewise_exponent(domain, std::move(pieces));
}

inline json to_json(const VariableExponent& p) {
    json j;
    j["domain"] = to_string(p.domain());
    j["conjugated"] = p.conjugated();
    json pieces = json::array();
    for (const auto& pc : p.pieces()) {
        pieces.push_back({{"lo", finite_or_null(pc.lo)},
                          {"hi", finite_or_null(pc.hi)},
                          {"formula", to_string(pc.formula.kind)},
                          {"a", pc.formula.a},
                          {"b", pc.formula.b}});
    }
    j["pieces"] = pieces;
    j["p_minus"] = p.p_minus();
    j["p_plus"] = p.p_plus();
    if (auto v = p.p_infinity()) j["p_infinity"] = *v;
    return j;
}

inline json to_json(const RegularityReport& r) {
    json j{{"c_log_estimate", r.c_log_estimate},
           {"worst_pair", {r.worst_pair.first, r.worst_pair.second}},
           {"pairs_examined", r.pairs_examined},
           {"ceiling", r.ceiling},
           {"log_holder", r.log_holder}};
    j["c_infinity_estimate"] = r.c_infinity_estimate ? json(*r.c_infinity_estimate) : json(nullptr);
    return j;
}

inline json to_json(const NormResult& r) {
    return {{"value", finite_or_null(r.value)},
            {"infinite", r.infinite},
            {"bracket", {finite_or_null(r.bracket.first), finite_or_null(r.bracket.second)}},
            {"modular_at_value", finite_or_null(r.modular_at_value)},
            {"iterations", r.iterations}};
}

inline json to_json(const LogLogFit& f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}};
}

inline json to_json(const HardyReport& r, const char* parameter_name = "r") {
    json pts = json::array();
    for (const auto& p : r.norms_by_radius)
        pts.push_back({{parameter_name, p.parameter}, {"norm", to_json(p.norm)}, {"modular", finite_or_null(p.modular)}});
    json j;
    j["norms_by_radius"] = pts;
    j["hardy_norm"] = r.hardy_norm_infinite ? json(nullptr) : json(r.hardy_norm);
    j["hardy_norm_infinite"] = r.hardy_norm_infinite;
    j["verdict"] = to_string(r.verdict);
    j["member"] = r.member();
    j["growth"] = r.growth ? to_json(*r.growth) : json(nullptr);
    j["modular_growth"] = r.modular_growth ? to_json(*r.modular_growth) : json(nullptr);
    j["sup_over_schedule"] = true;
    return j;
}

inline json to_json(const ScalingReport& r) {
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back({p.distance, p.value});
    json j{{"points", pts},
           {"fitted_slope", r.fitted_slope},
           {"theoretical_slope", r.theoretical_slope},
           {"residual", r.residual},
           {"unreliable_fit", r.unreliable},
           {"grid_size", r.grid_size}};
    if (r.theta) {
        j["theta"] = *r.theta;
        j["p_theta"] = *r.p_theta;
        j["plateau"] = r.plateau;
        j["upper_constant"] = r.upper_constant;
    }
    return j;
}

/// Two columns (log distance, log value) for plotting.
inline std::string scaling_csv(const ScalingReport& r, const std::string& value_name) {
    std::ostringstream os;
    os << std::setprecision(17) << "log_distance,log_" << value_name << '\n';
    for (const auto& p : r.points) os << std::log(p.distance) << ',' << std::log(p.value) << '\n';
    return os.str();
}

inline json to_json(const ForelliRudinReport& r) {
    json j = to_json(r.scaling);
    j["s"] = r.s;
    j["normalized"] = r.normalized;
    j["band"] = {r.band_min, r.band_max};
    return j;
}

inline json to_json(const PhiReport& r) {
    return {{"z", {r.z.real(), r.z.imag()}},
            {"r", r.r},
            {"grid_size", r.grid_size},
            {"max_ratio", r.max_ratio},
            {"e2_nodes", r.e2_nodes},
            {"c_log_estimate", r.c_log_estimate},
            {"bound", r.bound},
            {"within_bound", r.within_bound},
            {"e1_integral", r.e1_integral},
            {"e2_integral", r.e2_integral},
            {"e2_fixed_integral", r.e2_fixed_integral},
            {"fixed_integral", r.fixed_integral},
            {"max_ratio_conjugate", r.max_ratio_conjugate}};
}

inline json to_json(const Sec3Report& r) {
    return {{"q", r.q},
            {"eps", r.eps},
            {"power", r.power},
            {"f", to_json(r.f_report)},
            {"g", to_json(r.g_report)},
            {"f_constant_exponent", to_json(r.f_constant_report)},
            {"local_exponents",
             {{"f", r.f_local_exponent}, {"g", r.g_local_exponent}, {"f_constant_exponent", r.f_constant_local_exponent}}},
            {"predicted_member",
             {{"f", r.f_local_exponent < 1.0},
              {"g", r.g_local_exponent < 1.0},
              {"f_constant_exponent", r.f_constant_local_exponent < 1.0}}},
            {"g_predicted_modular_growth", r.g_predicted_growth}};
}

inline json to_json(const SzegoReport& r) {
    return {{"trials", r.trials},
            {"max_ratio", r.max_ratio},
            {"mean_ratio", r.mean_ratio},
            {"bound", r.bound},
            {"bounded", r.bounded}};
}

inline json to_json(const PoissonConvergenceReport& r) {
    json d = json::array();
    for (const auto& [r0, v] : r.deficits) d.push_back({{"r", r0}, {"deficit", v}});
    return {{"deficits", d},
            {"f_norm", r.f_norm},
            {"max_ratio", r.max_ratio},
            {"uniform_bound", r.uniform_bound},
            {"uniformly_bounded", r.uniformly_bounded},
            {"strictly_decreasing", r.strictly_decreasing},
            {"c_log_estimate", r.c_log_estimate}};
}

inline json to_json(const InclusionReport& r) {
    return {{"norm_p_plus", r.norm_p_plus},
            {"norm_variable", r.norm_variable},
            {"norm_p_minus", r.norm_p_minus},
            {"constant_upper", r.constant_upper},
            {"constant_lower", r.constant_lower},
            {"constant", r.constant},
            {"bound", r.bound},
            {"holds", r.holds}};
}

inline json to_json(const ApproximateIdentityReport& r) {
    json d = json::array();
    for (const auto& [y, v] : r.deficits) d.push_back({{"y", y}, {"deficit", v}});
    json j{{"deficits", d},
           {"u_norm", r.u_norm},
           {"max_ratio", r.max_ratio},
           {"uniform_bound", r.uniform_bound},
           {"uniformly_bounded", r.uniformly_bounded},
           {"strictly_decreasing", r.strictly_decreasing},
           {"truncation_uncertain", r.truncation_uncertain},
           {"c_log_estimate", r.c_log_estimate}};
    j["c_infinity_estimate"] = r.c_infinity_estimate ? json(*r.c_infinity_estimate) : json(nullptr);
    return j;
}

inline json to_json(const HkReport& r) {
    json probes = json::array();
    for (const auto& p : r.probes)
        probes.push_back({{"x", p.x}, {"y", p.y}, {"value", p.value}, {"bound", p.bound}});
    return {{"k", r.k},
            {"R", r.R},
            {"hardy_norm", r.hardy_norm},
            {"probes", probes},
            {"sup_observed", r.sup_observed},
            {"sup_bound", r.sup_bound},
            {"holds", r.holds}};
}

inline json to_json(const RepresentationReport& r) {
    return {{"residual", r.residual},
            {"sup_norm", r.sup_norm},
            {"boundary_norm", r.boundary_norm},
            {"ratio", r.ratio}};
}

}  // namespace vexhardy
