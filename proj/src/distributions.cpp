#include "divkit/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "divkit/errors.hpp"
#include "divkit/parallel.hpp"

namespace divkit {

struct DistributionAccess {
    static ProbabilityDistribution make(std::vector<double> v) {
        return ProbabilityDistribution(std::move(v));
    }
};

namespace {

double compensated_sum(std::span<const double> v) {
    double sum = 0.0;
    double carry = 0.0;
    for (double x : v) {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + carry;
}

void rescale_to_unit(std::vector<double>& v) {
    const double sum = compensated_sum(v);
    if (std::abs(sum - 1.0) <= kSumTolerance) return;
    for (double& x : v) x /= sum;
}

// Entries below the floor are pinned to it; the unpinned mass is rescaled so the total stays 1.
void pin_to_floor(std::vector<double>& v, double floor) {
    std::vector<bool> pinned(v.size(), false);
    for (;;) {
        bool changed = false;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!pinned[i] && v[i] < floor) {
                pinned[i] = true;
                changed = true;
            }
        }
        if (!changed) return;
        double free_mass = 0.0;
        std::size_t n_pinned = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (pinned[i]) {
                ++n_pinned;
            } else {
                free_mass += v[i];
            }
        }
        const double target = 1.0 - static_cast<double>(n_pinned) * floor;
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = pinned[i] ? floor : v[i] * (target / free_mass);
        }
    }
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string record_name(std::size_t pair_index, char which) {
    return "pair " + std::to_string(pair_index) + " (" + which + ")";
}

ProbabilityDistribution validate_record(std::span<const double> raw, const ValidationPolicy& policy,
                                        std::size_t pair_index, char which) {
    try {
        return validate(raw, policy);
    } catch (const RejectedInput& e) {
        throw RejectedInput(record_name(pair_index, which) + ": " + e.what());
    }
}

std::vector<DistributionPair> parse_csv(std::string_view text, const ValidationPolicy& policy) {
    struct Row {
        std::vector<double> values;
        std::size_t line;
    };
    std::vector<Row> rows;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        const auto line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.empty() || line.front() == '#') continue;
        rows.push_back({parse_csv_row(line, line_no), line_no});
    }
    if (rows.size() % 2 != 0) {
        throw ParseError("line " + std::to_string(rows.back().line) +
                             ": odd number of distribution rows; rows pair up as (p, q)",
                         rows.back().line);
    }
    std::vector<DistributionPair> pairs;
    pairs.reserve(rows.size() / 2);
    for (std::size_t k = 0; k + 1 < rows.size(); k += 2) {
        const auto& p = rows[k];
        const auto& q = rows[k + 1];
        if (p.values.size() != q.values.size()) {
            throw ParseError("line " + std::to_string(q.line) + ": q has " +
                                 std::to_string(q.values.size()) + " entries, p on line " +
                                 std::to_string(p.line) + " has " + std::to_string(p.values.size()),
                             q.line);
        }
        pairs.emplace_back(validate_record(p.values, policy, k / 2, 'p'),
                           validate_record(q.values, policy, k / 2, 'q'));
    }
    return pairs;
}

std::vector<double> json_numbers(const nlohmann::json& node, std::size_t record, const char* key) {
    if (!node.contains(key) || !node[key].is_array()) {
        throw ParseError("record " + std::to_string(record) + ": missing array \"" + key + "\"",
                         record);
    }
    std::vector<double> out;
    for (const auto& v : node[key]) {
        if (!v.is_number()) {
            throw ParseError("record " + std::to_string(record) + ": non-numeric entry in \"" +
                                 key + "\"",
                             record);
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<DistributionPair> parse_json(std::string_view text, const ValidationPolicy& policy) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array()) {
        throw ParseError("expected an object with array \"pairs\"", 0);
    }
    std::vector<DistributionPair> pairs;
    std::size_t record = 0;
    for (const auto& item : doc["pairs"]) {
        if (!item.is_object()) {
            throw ParseError("record " + std::to_string(record) + ": expected an object", record);
        }
        const auto p = json_numbers(item, record, "p");
        const auto q = json_numbers(item, record, "q");
        if (p.size() != q.size()) {
            throw ParseError("record " + std::to_string(record) + ": p and q lengths differ",
                             record);
        }
        pairs.emplace_back(validate_record(p, policy, record, 'p'),
                           validate_record(q, policy, record, 'q'));
        ++record;
    }
    return pairs;
}

}  // namespace

DistributionPair::DistributionPair(ProbabilityDistribution p, ProbabilityDistribution q)
    : p_(std::move(p)), q_(std::move(q)) {
    if (p_.size() != q_.size()) {
        throw RejectedInput("distribution pair has unequal lengths (" + std::to_string(p_.size()) +
                            " vs " + std::to_string(q_.size()) + ")");
    }
}

ProbabilityDistribution validate(std::span<const double> raw, const ValidationPolicy& policy) {
    if (raw.size() < 2) {
        throw RejectedInput("distribution needs at least 2 entries, got " +
                            std::to_string(raw.size()));
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i])) {
            throw RejectedInput("entry " + std::to_string(i) + " is not finite");
        }
    }
    std::vector<double> v(raw.begin(), raw.end());

    if (policy.mode == ValidationMode::reject) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] <= 0.0) {
                throw RejectedInput("entry " + std::to_string(i) + " is not strictly positive");
            }
        }
        const double sum = compensated_sum(v);
        if (std::abs(sum - 1.0) > kInputSumTolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "entries sum to " << sum << ", not 1";
            throw RejectedInput(msg.str());
        }
        rescale_to_unit(v);
        return DistributionAccess::make(std::move(v));
    }

    const double floor = policy.zero_floor;
    if (!(floor >= 0.0)) throw RejectedInput("zero_floor must be >= 0");
    if (floor > 0.0 && floor >= 1.0 / static_cast<double>(v.size())) {
        throw RejectedInput("zero_floor must be < 1/n");
    }
    for (double& x : v) x = std::max(x, floor);
    if (compensated_sum(v) <= 0.0) throw RejectedInput("entries have no positive mass");
    rescale_to_unit(v);
    if (floor > 0.0) pin_to_floor(v, floor);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] <= 0.0) {
            throw RejectedInput("entry " + std::to_string(i) +
                                " is not strictly positive after renormalization (zero_floor = 0)");
        }
    }
    return DistributionAccess::make(std::move(v));
}

ProbabilityDistribution sample_uniform_simplex(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw RejectedInput("simplex dimension must be >= 2");
    std::mt19937_64 engine(mix_seed(seed, n));
    std::vector<double> v(n);
    for (double& x : v) {
        // u in (0, 1): 53 random bits offset by half an ulp, so -log(u) is finite and > 0.
        const double u = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
        x = -std::log(u);
    }
    const double sum = compensated_sum(v);
    for (double& x : v) x /= sum;
    return DistributionAccess::make(std::move(v));
}

DistributionPair sample_uniform_pair(std::size_t n, std::uint64_t seed) {
    return {sample_uniform_simplex(n, mix_seed(seed, 0)),
            sample_uniform_simplex(n, mix_seed(seed, 1))};
}

ProbabilityDistribution mixture(const ProbabilityDistribution& a, const ProbabilityDistribution& b,
                                double lambda) {
    if (a.size() != b.size()) throw RejectedInput("mixture of distributions of unequal length");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw RejectedInput("mixture weight outside [0, 1]");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = lambda * a[i] + (1.0 - lambda) * b[i];
    rescale_to_unit(v);
    return DistributionAccess::make(std::move(v));
}

DistributionPair mixture(const DistributionPair& a, const DistributionPair& b, double lambda) {
    return {mixture(a.p(), b.p(), lambda), mixture(a.q(), b.q(), lambda)};
}

InputFormat parse_input_format(std::string_view name) {
    if (name == "csv") return InputFormat::csv;
    if (name == "json") return InputFormat::json;
    throw ParseError("unknown input format '" + std::string(name) + "' (expected csv or json)", 0);
}

std::vector<double> parse_csv_row(std::string_view row, std::size_t line) {
    std::vector<double> out;
    std::size_t column = 0;
    for (;;) {
        ++column;
        const auto comma = row.find(',');
        const auto field = trim(row.substr(0, comma));
        double value = 0.0;
        const auto* first = field.data();
        const auto* last = field.data() + field.size();
        if (!field.empty() && *first == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (field.empty() || ec != std::errc{} || ptr != last) {
            throw ParseError("line " + std::to_string(line) + ", column " +
                                 std::to_string(column) + ": invalid number '" +
                                 std::string(field) + "'",
                             line);
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        row = row.substr(comma + 1);
    }
    return out;
}

std::vector<DistributionPair> parse_pairs(std::string_view text, InputFormat format,
                                          const ValidationPolicy& policy) {
    return format == InputFormat::csv ? parse_csv(text, policy) : parse_json(text, policy);
}

std::vector<DistributionPair> load_pairs(const std::filesystem::path& path, InputFormat format,
                                         const ValidationPolicy& policy) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_pairs(buffer.str(), format, policy);
}

}  // namespace divkit
