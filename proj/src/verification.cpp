#include "divkit/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "divkit/errors.hpp"
#include "divkit/parallel.hpp"

namespace divkit {

namespace {

constexpr std::array<std::string_view, kAllAuxFunctions.size()> kAuxNames = {
    "m1", "m2", "m3", "k1", "k2", "k2_const3", "k2_lead2", "k3", "k4", "k5",
    "k6", "k7", "ineq15", "ineq16", "ineq17", "ineq18", "ineq20", "ineq21", "ineq22",
};

}  // namespace

std::string_view to_string(AuxFunctionId id) { return kAuxNames[static_cast<std::size_t>(id)]; }

std::optional<AuxFunctionId> parse_aux_function(std::string_view name) {
    for (std::size_t i = 0; i < kAuxNames.size(); ++i) {
        if (kAuxNames[i] == name) return kAllAuxFunctions[i];
    }
    return std::nullopt;
}

double aux_function(AuxFunctionId id, double x) { return aux_scaled(id, x).value; }

ScanReport nonnegativity_scan(AuxFunctionId id, const GridSpec& grid, double rel_tol) {
    grid.validate();
    const auto xs = grid.points_vector();
    std::vector<forms::Scaled<long double>> values(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        values[i] = aux_scaled<long double>(id, static_cast<long double>(xs[i]));
    });

    ScanReport rep;
    rep.function = std::string(to_string(id));
    rep.grid = grid;
    long double lo = std::numeric_limits<long double>::infinity();
    long double hi = -lo;
    long double worst = lo;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& v = values[i];
        if (v.value < lo) {
            lo = v.value;
            rep.argmin = xs[i];
        }
        if (v.value > hi) {
            hi = v.value;
            rep.argmax = xs[i];
        }
        const long double scale = std::max<long double>(1, v.magnitude);
        worst = std::min(worst, v.value / scale);
        if (v.value < -rel_tol * scale) ++rep.negative_count;
    }
    rep.min_value = static_cast<double>(lo);
    rep.max_value = static_cast<double>(hi);
    rep.worst_violation = static_cast<double>(worst);
    rep.pass = rep.negative_count == 0;
    return rep;
}

namespace {

std::vector<GRatioInfo> build_g_ratios() {
    using G = GRatioId;
    return {
        {G::hDelta_dDelta, "hDelta_dDelta", {3, 1}, {4, 1}, {4, 5}},
        {G::dDelta_dh, "dDelta_dh", {4, 1}, {4, 3}, {5}},
        {G::dh_dI, "dh_dI", {4, 3}, {4, 2}, {3, 7}},
        {G::dI_hI, "dI_hI", {4, 2}, {3, 2}, {7, 4}},
        {G::Th_Td, "Th_Td", {6, 3}, {6, 4}, {4, 3}},
        {G::Td_PsiDelta, "Td_PsiDelta", {6, 4}, {7, 1}, {3, 16}},
        {G::Psih_Psid, "Psih_Psid", {7, 3}, {7, 4}, {12, 11}},
        {G::Psid_PsiT, "Psid_PsiT", {7, 4}, {7, 6}, {11, 8}},
        {G::Td_Jd, "Td_Jd", {6, 4}, {5, 4}, {9}},
    };
}

const std::vector<GRatioInfo>& g_ratio_table() {
    static const std::vector<GRatioInfo> table = build_g_ratios();
    return table;
}

void require_g_domain(long double x) {
    detail::require_positive(x, "g_ratio");
    if (std::abs(x - 1) <= 1e-12L) throw DomainError("g_ratio: undefined at x = 1 (0/0)");
}

}  // namespace

const GRatioInfo& g_ratio_info(GRatioId id) { return g_ratio_table()[static_cast<std::size_t>(id)]; }

std::string_view to_string(GRatioId id) { return g_ratio_info(id).name; }

std::optional<GRatioId> parse_g_ratio(std::string_view name) {
    for (const auto& info : g_ratio_table()) {
        if (info.name == name) return info.id;
    }
    return std::nullopt;
}

long double g_ratio_extended(GRatioId id, long double x) {
    require_g_domain(x);
    const auto& info = g_ratio_info(id);
    return difference_generator_second(info.numerator, x) /
           difference_generator_second(info.denominator, x);
}

double g_ratio(GRatioId id, double x) {
    return static_cast<double>(g_ratio_extended(id, static_cast<long double>(x)));
}

double g_ratio_printed(GRatioId id, double x) {
    require_g_domain(x);
    switch (id) {
        case GRatioId::hDelta_dDelta: return forms::g_hDelta_dDelta(x);
        case GRatioId::dDelta_dh: return forms::g_dDelta_dh(x);
        case GRatioId::dh_dI: return forms::g_dh_dI(x);
        case GRatioId::dI_hI: return forms::g_dI_hI(x);
        case GRatioId::Th_Td: return forms::g_Th_Td(x);
        case GRatioId::Td_PsiDelta: return forms::g_Td_PsiDelta(x);
        case GRatioId::Psih_Psid: return forms::g_Psih_Psid(x);
        case GRatioId::Psid_PsiT: return forms::g_Psid_PsiT(x);
        case GRatioId::Td_Jd: return forms::g_Td_Jd(x);
    }
    throw DomainError("g_ratio_printed: unknown id");
}

double g_limit_at_one(GRatioId id) {
    const auto avg = [id](long double h) {
        return (g_ratio_extended(id, 1 + h) + g_ratio_extended(id, 1 - h)) / 2;
    };
    const long double a1 = avg(1e-2L);
    const long double a2 = avg(5e-3L);
    const long double a3 = avg(2.5e-3L);
    const long double d1 = std::abs(a2 - a1);
    const long double d2 = std::abs(a3 - a2);
    if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3) ||
        (d2 > d1 && d2 > 1e-15L * std::max<long double>(1, std::abs(a3)))) {
        throw ExtrapolationError("g_limit_at_one(" + std::string(to_string(id)) +
                                 "): symmetric averages do not converge");
    }
    // error is even in h: a(h) = L + c2 h^2 + c4 h^4 + ...
    const long double r1 = (4 * a2 - a1) / 3;
    const long double r2 = (4 * a3 - a2) / 3;
    return static_cast<double>((16 * r2 - r1) / 15);
}

ScanReport g_monotonicity_scan(GRatioId id, const GridSpec& grid, double slack) {
    grid.validate();
    const auto xs = grid.points_vector();
    const long double skip = std::numeric_limits<long double>::quiet_NaN();
    std::vector<long double> g(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        g[i] = std::abs(xs[i] - 1.0) < kGExclusion ? skip
                                                   : g_ratio_extended(id, static_cast<long double>(xs[i]));
    });

    ScanReport rep;
    rep.function = "g:" + std::string(to_string(id));
    rep.grid = grid;
    long double lo = std::numeric_limits<long double>::infinity();
    long double hi = -lo;
    long double worst = lo;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::isnan(g[i])) continue;
        if (g[i] < lo) {
            lo = g[i];
            rep.argmin = xs[i];
        }
        if (g[i] > hi) {
            hi = g[i];
            rep.argmax = xs[i];
        }
        if (i + 1 >= xs.size() || std::isnan(g[i + 1])) continue;
        const bool left = xs[i + 1] < 1.0;
        const bool right = xs[i] > 1.0;
        if (!left && !right) continue;
        // positive when the step goes the claimed way
        const long double step = left ? g[i + 1] - g[i] : g[i] - g[i + 1];
        const long double scaled = step / std::max<long double>(1, std::abs(g[i]));
        worst = std::min(worst, scaled);
        if (scaled < -slack) ++rep.negative_count;
    }
    rep.min_value = static_cast<double>(lo);
    rep.max_value = static_cast<double>(hi);
    rep.worst_violation = std::isfinite(worst) ? static_cast<double>(worst) : 0.0;
    rep.pass = rep.negative_count == 0 && std::isfinite(lo);
    return rep;
}

FactorizationCheck k2_factorization_check(AuxFunctionId candidate, const GridSpec& grid) {
    grid.validate();
    const auto xs = grid.points_vector();
    std::vector<long double> residual(xs.size(), -1);
    parallel_for(xs.size(), [&](std::size_t i) {
        const long double x = xs[i];
        if (std::abs(x - 1) < 1e-2L) return;
        const auto g = [](long double t) { return g_ratio_extended(GRatioId::dh_dI, t); };
        const auto central = [&](long double h) { return (g(x + h) - g(x - h)) / (2 * h); };
        const long double h = 1e-3L * x;
        const long double derivative = (4 * central(h / 2) - central(h)) / 3;
        const long double claimed = forms::dh_dI_derivative_prefactor(x) *
                                    aux_scaled<long double>(candidate, x).value;
        const long double scale = std::max({std::abs(derivative), std::abs(claimed),
                                            std::numeric_limits<long double>::min()});
        residual[i] = std::abs(derivative - claimed) / scale;
    });
    FactorizationCheck out{candidate};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (residual[i] > out.max_relative_residual) {
            out.max_relative_residual = static_cast<double>(residual[i]);
            out.worst_x = xs[i];
        }
    }
    out.pass = out.max_relative_residual <= kFactorizationTolerance;
    return out;
}

double ScaledDifference::evaluate(const MeasureTable& table) const {
    return coefficient.value() * difference(id, table);
}

std::string ScaledDifference::label() const {
    return (coefficient == Rational(1) ? std::string() : coefficient.str() + " ") + "D_" + id.name();
}

CounterexampleResult counterexample_search(const ScaledDifference& lhs, const ScaledDifference& rhs,
                                           std::size_t budget, std::uint64_t seed,
                                           std::span<const std::size_t> dims, double margin) {
    if (budget == 0) throw RejectedInput("counterexample_search: budget must be >= 1");
    if (dims.empty()) throw RejectedInput("counterexample_search: no dimensions given");
    constexpr std::size_t kBatch = 4096;
    CounterexampleResult out;
    struct Sample {
        double lhs;
        double rhs;
    };
    std::vector<Sample> batch;
    for (std::size_t start = 0; start < budget && !out.both_found(); start += kBatch) {
        const std::size_t count = std::min(kBatch, budget - start);
        batch.assign(count, {});
        parallel_for(count, [&](std::size_t k) {
            const std::size_t i = start + k;
            const MeasureTable table(sample_uniform_pair(dims[i % dims.size()], mix_seed(seed, i)));
            batch[k] = {lhs.evaluate(table), rhs.evaluate(table)};
        });
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t i = start + k;
            out.samples_used = i + 1;
            const auto [l, r] = batch[k];
            auto* slot = l < r - margin ? &out.lhs_less : l > r + margin ? &out.lhs_greater : nullptr;
            if (slot && !*slot) {
                slot->emplace(Witness{sample_uniform_pair(dims[i % dims.size()], mix_seed(seed, i)),
                                      i, l, r});
            }
            if (out.both_found()) break;
        }
    }
    return out;
}

std::vector<DistributionPair> random_pairs(std::size_t samples_per_dim,
                                           std::span<const std::size_t> dims, std::uint64_t seed) {
    const std::size_t total = samples_per_dim * dims.size();
    std::vector<std::optional<DistributionPair>> slots(total);
    parallel_for(total, [&](std::size_t j) {
        slots[j].emplace(sample_uniform_pair(dims[j / samples_per_dim], mix_seed(seed, j)));
    });
    std::vector<DistributionPair> out;
    out.reserve(total);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

PropositionCheck proposition_check(GRatioId id, std::span<const DistributionPair> pairs, double tol,
                                   double denominator_floor) {
    const auto& info = g_ratio_info(id);
    std::vector<std::array<double, 2>> values(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        const MeasureTable table(pairs[i]);
        values[i] = {difference(info.numerator, table), difference(info.denominator, table)};
    });
    PropositionCheck out;
    out.id = id;
    out.pairs = pairs.size();
    out.worst_slack = std::numeric_limits<double>::infinity();
    const double limit = info.paper_limit.value();
    for (const auto& [num, den] : values) {
        const double slack = limit * den - num;
        out.worst_slack = std::min(out.worst_slack, slack);
        if (slack < -tol) ++out.failures;
        if (den >= denominator_floor) {
            const double ratio = num / den;
            if (!out.sampled_sup || ratio > *out.sampled_sup) out.sampled_sup = ratio;
        }
    }
    if (pairs.empty()) out.worst_slack = 0.0;
    return out;
}

}  // namespace divkit
