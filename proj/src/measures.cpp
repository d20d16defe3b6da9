#include "divkit/measures.hpp"

#include <cmath>

#include "divkit/errors.hpp"

namespace divkit {

namespace {

struct Sums {
    double hellinger = 0, triangular = 0, sym_chi = 0, chi = 0, j = 0, js = 0, ag = 0;
    double d = 0, bhattacharyya = 0, harmonic = 0;
};

Sums accumulate(const DistributionPair& pair) {
    const auto p = pair.p().values();
    const auto q = pair.q().values();
    Sums s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i];
        const double qi = q[i];
        const double diff = pi - qi;
        const double sum = pi + qi;
        const double mid = sum / 2.0;
        const double sp = std::sqrt(pi);
        const double sq = std::sqrt(qi);
        const double lp = std::log(pi);
        const double lq = std::log(qi);
        const double lm = std::log(mid);

        s.hellinger += (sp - sq) * (sp - sq);
        s.triangular += diff * diff / sum;
        s.sym_chi += diff * diff * sum / (pi * qi);
        s.chi += diff * diff / qi;
        s.j += diff * (lp - lq);
        s.js += pi * (lp - lm) + qi * (lq - lm);
        s.ag += mid * (lm - 0.5 * (lp + lq));
        // m - ((sqrt p + sqrt q)/2) sqrt m, rearranged so the terms do not cancel
        const double sm = std::sqrt(mid);
        s.d += sm * (sp - sq) * (sp - sq) / (4.0 * (sm + (sp + sq) / 2.0));
        s.bhattacharyya += sp * sq;
        s.harmonic += 2.0 * pi * qi / sum;
    }
    return s;
}

double select(const Sums& s, MeasureId id) {
    switch (id) {
        case MeasureId::hellinger: return s.hellinger / 2.0;
        case MeasureId::triangular: return s.triangular;
        case MeasureId::sym_chi_square: return s.sym_chi;
        case MeasureId::chi_square: return s.chi;
        case MeasureId::j_div: return s.j;
        case MeasureId::jensen_shannon: return s.js / 2.0;
        case MeasureId::ag_mean: return s.ag;
        case MeasureId::d_div: return s.d;
        case MeasureId::bhattacharyya: return s.bhattacharyya;
        case MeasureId::harmonic_mean: return s.harmonic;
    }
    throw DomainError("unknown measure id");
}

constexpr std::array<std::string_view, kAllMeasures.size()> kNames = {
    "hellinger", "triangular",     "sym_chi_square", "chi_square",    "j_div",
    "jensen_shannon", "ag_mean",   "d_div",          "bhattacharyya", "harmonic_mean",
};

}  // namespace

std::string_view to_string(MeasureId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<MeasureId> parse_measure_id(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return kAllMeasures[i];
    }
    return std::nullopt;
}

double evaluate(MeasureId id, const DistributionPair& pair) { return select(accumulate(pair), id); }

MeasureTable::MeasureTable(const DistributionPair& pair) {
    const Sums s = accumulate(pair);
    for (std::size_t i = 0; i < kAllMeasures.size(); ++i) values_[i] = select(s, kAllMeasures[i]);
}

double zeta(double s, const DistributionPair& pair) {
    if (detail::near_zero_branch(s) || detail::near_one_branch(s)) {
        return evaluate(MeasureId::j_div, pair);
    }
    const auto p = pair.p().values();
    const auto q = pair.q().values();
    double sum = 0.0;
    // Per-term form of [sum(p^s q^{1-s} + p^{1-s} q^s) - 2]; avoids one large cancellation.
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::pow(p[i], s) * std::pow(q[i], 1.0 - s) +
               std::pow(p[i], 1.0 - s) * std::pow(q[i], s) - p[i] - q[i];
    }
    return sum / (s * (s - 1.0));
}

double xi(double s, const DistributionPair& pair) {
    if (detail::near_zero_branch(s)) return evaluate(MeasureId::jensen_shannon, pair);
    if (detail::near_one_branch(s)) return evaluate(MeasureId::ag_mean, pair);
    const auto p = pair.p().values();
    const auto q = pair.q().values();
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        // ((p^{1-s} + q^{1-s})/2) m^s - m = m [((p/m)^{1-s} + (q/m)^{1-s})/2 - 1]
        const double mid = (p[i] + q[i]) / 2.0;
        const double delta = (p[i] - q[i]) / (p[i] + q[i]);
        sum += mid * detail::power_mean_gap(1.0 - s, p[i] / mid, q[i] / mid, delta);
    }
    return sum / (s * (s - 1.0));
}

const std::array<NormalizedMember, kChainLength>& normalized_members() {
    static const std::array<NormalizedMember, kChainLength> members = {{
        {1, MeasureId::triangular, Rational(1, 4), Generator(Family::psi, -1.0), "Delta"},
        {2, MeasureId::jensen_shannon, Rational(1), Generator(Family::psi, 0.0), "I"},
        {3, MeasureId::hellinger, Rational(1), Generator(Family::phi, 0.5, 1.0 / 8.0), "h"},
        {4, MeasureId::d_div, Rational(4), Generator(Family::psi, 0.5), "d"},
        {5, MeasureId::j_div, Rational(1, 8), Generator(Family::phi, 0.0, 1.0 / 8.0), "J"},
        {6, MeasureId::ag_mean, Rational(1), Generator(Family::psi, 1.0), "T"},
        {7, MeasureId::sym_chi_square, Rational(1, 16), Generator(Family::psi, 2.0), "Psi"},
    }};
    return members;
}

const NormalizedMember& normalized_member(int rank) {
    if (rank < 1 || rank > kChainLength) {
        throw RejectedInput("chain rank must be in 1..7, got " + std::to_string(rank));
    }
    return normalized_members()[static_cast<std::size_t>(rank - 1)];
}

std::optional<int> parse_member_symbol(std::string_view symbol) {
    for (const auto& m : normalized_members()) {
        if (m.symbol == symbol) return m.rank;
    }
    return std::nullopt;
}

double normalized_value(int rank, const MeasureTable& table) {
    const auto& m = normalized_member(rank);
    return m.coefficient.value() * table[m.base];
}

double normalized_value(int rank, const DistributionPair& pair) {
    const auto& m = normalized_member(rank);
    return m.coefficient.value() * evaluate(m.base, pair);
}

std::array<double, kChainLength> normalized_values(const DistributionPair& pair) {
    const MeasureTable table(pair);
    std::array<double, kChainLength> out{};
    for (int r = 1; r <= kChainLength; ++r) out[r - 1] = normalized_value(r, table);
    return out;
}

}  // namespace divkit
