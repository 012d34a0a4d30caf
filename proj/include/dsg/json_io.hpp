#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dsg/oracle.hpp"
#include "dsg/pareto.hpp"
#include "dsg/pricing.hpp"
#include "dsg/sweep.hpp"

namespace dsg {

/// Emitted JSON is assembled by hand; the output contract is numbers with
/// 12 significant digits (%.12g). Parsing goes through nlohmann::json.
namespace jio {

using detail::fmt_g;

inline GameInstance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw InvalidParameterError("instance JSON must be an object");
    for (const char* key : {"r_f", "r_g", "c", "m"})
        if (!j.contains(key) || !j.at(key).is_number())
            throw InvalidParameterError(std::string("instance JSON needs numeric \"") +
                                        key + "\"");
    const double gamma = j.contains("gamma") ? j.at("gamma").get<double>() : 1.0;
    return GameInstance(j.at("r_f").get<double>(), j.at("r_g").get<double>(),
                        j.at("c").get<double>(), j.at("m").get<double>(), gamma);
}

inline GameInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed JSON in " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

inline std::string instance_json(const GameInstance& g) {
    std::ostringstream out;
    out << "{\"r_f\":" << fmt_g(g.r_f) << ",\"r_g\":" << fmt_g(g.r_g)
        << ",\"c\":" << fmt_g(g.c) << ",\"m\":" << fmt_g(g.m)
        << ",\"gamma\":" << fmt_g(g.gamma) << "}";
    return out.str();
}

inline std::string outcome_json(const SpeOutcome& o) {
    std::ostringstream out;
    out << "{\"alpha\":" << fmt_g(o.profile.alpha) << ",\"x\":" << fmt_g(o.profile.x)
        << ",\"U\":" << fmt_g(o.firm_utility) << ",\"V\":" << fmt_g(o.genai_utility)
        << ",\"kind\":\"" << to_string(o.kind) << "\",\"case_id\":\"" << o.case_id
        << "\"}";
    return out.str();
}

inline std::string interval_set_json(const PriceIntervalSet& set) {
    std::ostringstream out;
    out << "{\"intervals\":[";
    for (std::size_t i = 0; i < set.intervals.size(); ++i) {
        const PriceInterval& iv = set.intervals[i];
        if (i) out << ',';
        out << "{\"lo\":" << fmt_g(iv.lo) << ",\"lo_closed\":" << (iv.lo_closed ? "true" : "false")
            << ",\"hi\":" << fmt_g(iv.hi) << ",\"hi_closed\":" << (iv.hi_closed ? "true" : "false")
            << '}';
    }
    out << "]}";
    return out.str();
}

inline std::string pricing_json(const PricingSolution& s) {
    std::ostringstream out;
    out << "{\"lambda\":" << fmt_g(s.lambda) << ",\"objective_value\":"
        << fmt_g(s.objective_value) << ",\"representative_m\":" << fmt_g(s.representative_m)
        << ",\"method\":\"" << s.method << "\",\"optimal_prices\":"
        << interval_set_json(s.optimal_prices) << "}";
    return out.str();
}

inline SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("base") || !j.contains("axis1") ||
        !j.contains("axis2") || !j.contains("quantities"))
        throw SpecError("sweep spec JSON needs base, axis1, axis2, quantities");
    auto axis = [&](const char* key) {
        const nlohmann::json& a = j.at(key);
        for (const char* f : {"min", "max"})
            if (!a.contains(f) || !a.at(f).is_number())
                throw SpecError(std::string("sweep axis needs numeric \"") + f + "\"");
        if (!a.contains("param") || !a.at("param").is_string())
            throw SpecError("sweep axis needs string \"param\"");
        if (!a.contains("steps") || !a.at("steps").is_number_integer())
            throw SpecError("sweep axis needs integer \"steps\"");
        return SweepAxis{parse_sweep_param(a.at("param").get<std::string>()),
                         a.at("min").get<double>(), a.at("max").get<double>(),
                         a.at("steps").get<int>()};
    };
    std::vector<Quantity> quantities;
    for (const nlohmann::json& q : j.at("quantities"))
        quantities.push_back(parse_quantity(q.get<std::string>()));
    SweepSpec spec{instance_from_json(j.at("base")), axis("axis1"), axis("axis2"),
                   std::move(quantities)};
    spec.validate();
    return spec;
}

inline SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sweep spec: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed JSON in " + path + ": " + e.what());
    }
    return sweep_spec_from_json(j);
}

} // namespace jio
} // namespace dsg
