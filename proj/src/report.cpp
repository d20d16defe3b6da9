#include "divkit/report.hpp"

#include <cmath>
#include <cstdio>

namespace divkit {

std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void emit(const Json& j, std::string& out, int depth) {
    const auto indent = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
    switch (j.type()) {
        case Json::value_t::number_float:
            out += format_number(j.get<double>());
            return;
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                indent(depth + 1);
                emit(j[i], out, depth + 1);
                out += i + 1 < j.size() ? ",\n" : "\n";
            }
            indent(depth);
            out += ']';
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (const auto& [key, value] : j.items()) {
                indent(depth + 1);
                out += Json(key).dump();
                out += ": ";
                emit(value, out, depth + 1);
                out += ++i < j.size() ? ",\n" : "\n";
            }
            indent(depth);
            out += '}';
            return;
        }
        default:
            out += j.dump();
    }
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

std::string dump_json(const Json& j) {
    std::string out;
    emit(j, out, 0);
    out += '\n';
    return out;
}

Json to_json(const GridSpec& grid) {
    Json j;
    j["x_min"] = grid.x_min;
    j["x_max"] = grid.x_max;
    j["points"] = grid.points;
    j["spacing"] = grid.spacing == Spacing::log ? "log" : "linear";
    return j;
}

Json to_json(const ChainReport& report, const InequalityChain& chain) {
    Json j;
    j["name"] = report.name;
    j["provenance"] = std::string(to_string(report.provenance));
    j["superseded"] = report.superseded;
    j["gating"] = !report.superseded;
    Json terms = Json::array();
    for (const auto& t : chain.terms) terms.push_back(t.label());
    j["terms"] = terms;
    j["links"] = report.comparisons;
    j["pairs"] = report.pairs_tested;
    j["passed"] = report.passed();
    j["worst_slack"] = optional_json(report.worst_slack);
    j["worst_link"] = optional_json(report.worst_link);
    j["worst_pair"] = optional_json(report.worst_pair);
    j["failure_count"] = report.failure_count;
    Json failures = Json::array();
    for (const auto& f : report.failures) {
        Json fj;
        fj["pair"] = f.pair_index;
        fj["link"] = f.link;
        fj["lhs"] = f.lhs;
        fj["rhs"] = f.rhs;
        failures.push_back(fj);
    }
    j["failures"] = failures;
    return j;
}

Json to_json(const ScanReport& report) {
    Json j;
    j["function"] = report.function;
    j["grid"] = to_json(report.grid);
    j["min"] = report.min_value;
    j["argmin"] = report.argmin;
    j["max"] = report.max_value;
    j["argmax"] = report.argmax;
    j["negative_count"] = report.negative_count;
    j["worst_violation"] = report.worst_violation;
    j["pass"] = report.pass;
    return j;
}

Json to_json(const FactorizationCheck& check) {
    Json j;
    j["candidate"] = std::string(to_string(check.candidate));
    j["max_relative_residual"] = check.max_relative_residual;
    j["worst_x"] = check.worst_x;
    j["pass"] = check.pass;
    return j;
}

}  // namespace divkit
