#include "divkit/differences.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "divkit/errors.hpp"
#include "divkit/parallel.hpp"

namespace divkit {

DifferenceId::DifferenceId(int high, int low) : high_(high), low_(low) {
    if (low < 1 || high > kChainLength || high <= low) {
        throw RejectedInput("difference needs 1 <= low < high <= 7, got (" + std::to_string(high) +
                            ", " + std::to_string(low) + ")");
    }
}

std::string DifferenceId::name() const {
    return std::string(normalized_member(high_).symbol) +
           std::string(normalized_member(low_).symbol);
}

std::optional<DifferenceId> parse_difference(std::string_view name) {
    for (const auto& hi : normalized_members()) {
        if (!name.starts_with(hi.symbol)) continue;
        const auto rest = name.substr(hi.symbol.size());
        if (const auto lo = parse_member_symbol(rest); lo && hi.rank > *lo) {
            return DifferenceId(hi.rank, *lo);
        }
    }
    return std::nullopt;
}

std::vector<DifferenceId> all_differences() {
    std::vector<DifferenceId> out;
    for (int hi = 2; hi <= kChainLength; ++hi) {
        for (int lo = 1; lo < hi; ++lo) out.emplace_back(hi, lo);
    }
    return out;
}

const std::vector<DifferenceId>& d_differences() {
    static const std::vector<DifferenceId> ids = {{7, 4}, {6, 4}, {5, 4}, {4, 3}, {4, 2}, {4, 1}};
    return ids;
}

bool has_closed_form_second(const DifferenceId& id) {
    return std::find(d_differences().begin(), d_differences().end(), id) != d_differences().end();
}

double difference(const DifferenceId& id, const MeasureTable& table) {
    return normalized_value(id.high(), table) - normalized_value(id.low(), table);
}

double difference(const DifferenceId& id, const DistributionPair& pair) {
    return difference(id, MeasureTable(pair));
}

std::string_view to_string(Provenance p) {
    return p == Provenance::paper_verbatim ? "paper_verbatim" : "derived_corrected";
}

double ChainTerm::evaluate(const MeasureTable& table) const {
    double inner = 0.0;
    if (difference) {
        inner = divkit::difference(*difference, table);
    } else {
        for (const auto& [c, id] : combination) inner += c.value() * table[id];
    }
    return coefficient.value() * inner;
}

namespace {

// Short symbol of a base measure as used in the chain vocabulary.
std::string_view symbol(MeasureId id) {
    for (const auto& m : normalized_members()) {
        if (m.base == id) return m.symbol;
    }
    return to_string(id);
}

}  // namespace

std::string ChainTerm::label() const {
    std::ostringstream out;
    if (difference) {
        if (!(coefficient == Rational(1))) out << coefficient.str() << " ";
        out << "D_" << difference->name();
        return out.str();
    }
    bool first = true;
    for (const auto& [c, id] : combination) {
        const bool negative = c.num < 0;
        if (!first) out << (negative ? " - " : " + ");
        else if (negative) out << "-";
        const Rational mag = negative ? -c : c;
        if (!(mag == Rational(1))) out << mag.str() << " ";
        out << symbol(id);
        first = false;
    }
    return out.str();
}

ChainTerm diff_term(Rational coefficient, int high, int low) {
    ChainTerm t;
    t.coefficient = coefficient;
    t.difference = DifferenceId(high, low);
    return t;
}

ChainTerm combo_term(std::vector<std::pair<Rational, MeasureId>> combination) {
    ChainTerm t;
    t.combination = std::move(combination);
    return t;
}

namespace {

// chain ranks
constexpr int kDelta = 1, kI = 2, kH = 3, kD = 4, kJ = 5, kT = 6, kPsi = 7;

// base measures
constexpr MeasureId Delta = MeasureId::triangular;
constexpr MeasureId I = MeasureId::jensen_shannon;
constexpr MeasureId h = MeasureId::hellinger;
constexpr MeasureId d = MeasureId::d_div;
constexpr MeasureId J = MeasureId::j_div;
constexpr MeasureId T = MeasureId::ag_mean;
constexpr MeasureId Psi = MeasureId::sym_chi_square;

using R = Rational;

ChainTerm m(R c, MeasureId id) { return combo_term({{c, id}}); }
ChainTerm m(R c1, MeasureId a, R c2, MeasureId b) { return combo_term({{c1, a}, {c2, b}}); }
ChainTerm m(R c1, MeasureId a, R c2, MeasureId b, R c3, MeasureId e) {
    return combo_term({{c1, a}, {c2, b}, {c3, e}});
}

InequalityChain chain(std::string name, std::vector<ChainTerm> terms,
                      Provenance provenance = Provenance::paper_verbatim, bool superseded = false) {
    return {std::move(name), provenance, superseded, std::move(terms)};
}

std::vector<InequalityChain> build_registry() {
    constexpr auto corrected = Provenance::derived_corrected;
    constexpr auto verbatim = Provenance::paper_verbatim;
    std::vector<InequalityChain> r;

    r.push_back(chain("eq1", {m(R(1, 4), Delta), m(1, I), m(1, h), m(R(1, 8), J), m(1, T),
                              m(R(1, 16), Psi)}));
    r.push_back(chain("eq2", {diff_term(1, kI, kDelta), diff_term(R(2, 3), kH, kDelta),
                              diff_term(R(1, 2), kJ, kDelta), diff_term(R(1, 3), kT, kDelta),
                              diff_term(1, kT, kJ), diff_term(R(2, 3), kT, kH),
                              diff_term(2, kJ, kH), diff_term(R(1, 6), kPsi, kDelta),
                              diff_term(R(1, 5), kPsi, kI), diff_term(R(2, 9), kPsi, kH),
                              diff_term(R(1, 4), kPsi, kJ), diff_term(R(1, 3), kPsi, kT)}));
    r.push_back(chain("eq3", {diff_term(R(2, 3), kH, kDelta), diff_term(2, kH, kI),
                              diff_term(1, kT, kJ)}));
    r.push_back(chain("eq9", {m(R(1, 4), Delta), m(1, I), m(1, h), m(4, d), m(R(1, 8), J),
                              m(1, T), m(R(1, 16), Psi)}));

    const std::vector<ChainTerm> theorem_head = {
        diff_term(1, kH, kDelta),  diff_term(R(4, 5), kD, kDelta), diff_term(4, kD, kH),
        diff_term(R(12, 7), kD, kI), diff_term(3, kH, kI),         diff_term(1, kT, kH),
        diff_term(R(4, 3), kT, kD)};
    auto eq23 = theorem_head;
    eq23.push_back(diff_term(R(1, 4), kPsi, kDelta));
    eq23.push_back(diff_term(R(1, 3), kPsi, kH));
    eq23.push_back(diff_term(R(4, 11), kPsi, kD));
    eq23.push_back(diff_term(R(1, 2), kPsi, kT));
    r.push_back(chain("eq23", eq23));

    r.push_back(chain("eq50", {diff_term(1, kPsi, kDelta), diff_term(R(4, 3), kPsi, kH)}));
    auto eq54 = theorem_head;
    eq54.push_back(diff_term(12, kJ, kD));
    r.push_back(chain("eq54", eq54));
    r.push_back(chain("eq55", {diff_term(R(1, 4), kJ, kH), diff_term(1, kJ, kD)}));

    // remark3_i: the upper member as printed carries 3*Delta; 1*Delta follows from
    // h - Delta/4 <= 4/5 (4d - Delta/4). Both hold; the corrected one is the sharper bound.
    const auto r3i_lower = m(R(16, 7), d, R(3, 7), I);
    r.push_back(chain("remark3_i", {r3i_lower, m(1, h), m(R(64, 20), d, R(3, 20), Delta)}, verbatim,
                      true));
    r.push_back(chain("remark3_i", {r3i_lower, m(1, h), m(R(64, 20), d, R(1, 20), Delta)},
                      corrected));
    r.push_back(chain("remark3_ii", {m(1, h), m(R(1, 4), T, R(3, 4), I)}));
    r.push_back(chain("remark3_iii", {m(1, h), m(R(1, 64), Psi, R(12, 64), Delta)}));
    r.push_back(chain("remark3_iv", {m(4, d), m(R(1, 4), T, R(3, 4), h)}));
    r.push_back(chain("remark3_v", {m(4, d), m(R(1, 192), Psi, R(176, 192), h)}));
    r.push_back(chain("remark3_vi", {m(4, d), m(R(3, 8), J, R(8, 8), h)}));
    r.push_back(chain("remark3_vii", {m(1, T), m(R(3, 176), Psi, R(512, 176), d)}));
    r.push_back(chain("remark3_viii", {m(R(32, 9), d, R(1, 9), T), m(R(1, 8), J)}));
    r.push_back(chain("remark3_ix", {m(4, T, R(3, 16), Delta), m(R(3, 64), Psi, 16, d)}));

    r.push_back(chain("remark3_chain1",
                      {m(1, I), r3i_lower, m(1, h), m(R(64, 20), d, R(1, 20), Delta), m(4, d),
                       m(R(32, 9), d, R(1, 9), T), m(R(1, 8), J)}));
    // As printed, (Psi+12Delta)/64 sits between h and 4d and (3J+8h)/8 closes the chain;
    // neither placement holds. The corrected chain drops both (they are items iii and vi).
    const auto t_upper = m(4, d, R(3, 256), Psi, R(-3, 64), Delta);
    r.push_back(chain("remark3_chain2",
                      {m(1, h), m(R(1, 64), Psi, R(12, 64), Delta), m(4, d),
                       m(R(1, 4), T, R(3, 4), h), m(1, T), t_upper, m(R(3, 8), J, 1, h)},
                      verbatim, true));
    r.push_back(chain("remark3_chain2",
                      {m(1, h), m(4, d), m(R(1, 4), T, R(3, 4), h), m(1, T), t_upper}, corrected));
    r.push_back(chain("remark3_chain3",
                      {m(4, d), m(R(1, 192), Psi, R(176, 192), h), m(R(1, 16), Psi)}));
    r.push_back(chain("remark3_chain4",
                      {m(1, T), m(R(3, 176), Psi, R(512, 176), d), m(R(1, 16), Psi)}));

    // remark4_*: the printed (9h+Delta)/12 and (Psi+6J)/642 are corrected to (8h+Delta)/12
    // (from D_IDelta <= 2/3 D_hDelta) and (Psi+6J)/64 (from 1/4 D_PsiJ <= 1/3 D_PsiT).
    const auto remark4 = [&](R h_coef, R upper_den) {
        return std::vector<ChainTerm>{
            m(R(1, 4), Delta),
            m(1, I),
            m(h_coef, h, R(1, 12), Delta),
            m(1, h),
            m(R(1, 16), J, R(8, 16), I),
            m(R(1, 3), T, R(2, 3), h),
            m(R(1, 8), J),
            m(R(8, 12), T, R(1, 12), Delta),
            m(1, T),
            m(R(1) / upper_den, Psi, R(6) / upper_den, J),
            m(R(1, 16), Psi)};
    };
    r.push_back(chain("remark4_chain1", remark4(R(9, 12), R(642)), verbatim, true));
    r.push_back(chain("remark4_chain1", remark4(R(8, 12), R(64)), corrected));
    r.push_back(chain("remark4_chain2", {m(R(1, 8), J), m(R(1, 192), Psi, 1, h, R(-4, 192), Delta),
                                         m(R(1, 144), Psi, R(128, 144), h), m(R(1, 16), Psi)}));
    return r;
}

}  // namespace

const std::vector<InequalityChain>& chain_registry() {
    static const std::vector<InequalityChain> registry = build_registry();
    return registry;
}

std::vector<InequalityChain> find_chains(std::string_view name) {
    std::vector<InequalityChain> out;
    for (const auto& c : chain_registry()) {
        if (c.name == name) out.push_back(c);
    }
    return out;
}

ChainCheck check_chain(const InequalityChain& chain, const MeasureTable& table, double tol) {
    ChainCheck out;
    out.values.reserve(chain.terms.size());
    for (const auto& t : chain.terms) out.values.push_back(t.evaluate(table));
    out.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
        const double slack = out.values[i + 1] - out.values[i];
        out.slacks.push_back(slack);
        if (slack < out.worst_slack) {
            out.worst_slack = slack;
            out.worst_link = i;
        }
        if (slack < -tol) out.passed = false;
    }
    if (out.slacks.empty()) out.worst_slack = 0.0;
    return out;
}

ChainCheck check_chain(const InequalityChain& chain, const DistributionPair& pair, double tol) {
    return check_chain(chain, MeasureTable(pair), tol);
}

std::vector<ChainReport> run_chains(std::span<const InequalityChain> chains,
                                    std::span<const DistributionPair> pairs, double tol,
                                    std::size_t max_recorded_failures) {
    std::vector<std::optional<MeasureTable>> tables(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) { tables[i].emplace(pairs[i]); });

    std::vector<ChainReport> reports;
    reports.reserve(chains.size());
    for (const auto& c : chains) {
        ChainReport rep;
        rep.name = c.name;
        rep.provenance = c.provenance;
        rep.superseded = c.superseded;
        rep.terms = c.terms.size();
        rep.comparisons = c.comparisons();
        rep.pairs_tested = pairs.size();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto check = check_chain(c, *tables[i], tol);
            if (check.slacks.empty()) continue;
            if (!rep.worst_slack || check.worst_slack < *rep.worst_slack) {
                rep.worst_slack = check.worst_slack;
                rep.worst_link = check.worst_link;
                rep.worst_pair = i;
            }
            for (std::size_t k = 0; k < check.slacks.size(); ++k) {
                if (check.slacks[k] >= -tol) continue;
                ++rep.failure_count;
                if (rep.failures.size() < max_recorded_failures) {
                    rep.failures.push_back({i, k, check.values[k], check.values[k + 1]});
                }
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace divkit
