// Acceptance run: one PASS/FAIL line per criterion, followed by indented info lines.
// With --criterion N only that criterion runs; the exit code is 0 iff every criterion run passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divkit/differences.hpp"
#include "divkit/generators.hpp"
#include "divkit/measures.hpp"
#include "divkit/verification.hpp"
#include "oracle.hpp"

using namespace divkit;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> info;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            info.push_back("failed: " + what);
        }
    }
};

template <typename... Args>
std::string fmt(const char* format, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

constexpr std::size_t kChainDims[] = {2, 5, 10, 20};
constexpr double kFamilyS[] = {-1.0, 0.0, 0.5, 1.0, 2.0};
constexpr double kChainSlack = 1e-12;

const std::vector<DistributionPair>& chain_pairs() {
    static const auto pairs = random_pairs(10000, kChainDims, 20240901);
    return pairs;
}

// 10^3 pairs spread over the four chain dimensions
std::vector<DistributionPair> thousand_pairs(std::uint64_t seed) { return random_pairs(250, kChainDims, seed); }

Outcome ac1() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const auto chains = find_chains("eq9");
    const auto reports = run_chains(chains, chain_pairs(), kChainSlack);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(reports.size() == 1 && reports[0].comparisons == 6, "eq9 has six adjacent comparisons");
    for (const auto& r : reports) {
        o.require(r.passed(), fmt("eq9 failures: %zu", r.failure_count));
        o.info.push_back(fmt("eq9: %zu pairs, worst slack %.3e", r.pairs_tested, r.worst_slack.value_or(0.0)));
    }
    o.require(seconds < 30.0, "runtime under 30 s");
    o.summary = fmt("eq9 chain on 10^4 pairs for n in {2,5,10,20} (%.2f s)", seconds);
    return o;
}

Outcome ac2() {
    Outcome o;
    const std::vector<std::string> names = {
        "eq23",       "eq1",         "eq2",           "eq3",           "eq50",          "eq54",
        "eq55",       "remark3_i",   "remark3_ii",    "remark3_iii",   "remark3_iv",    "remark3_v",
        "remark3_vi", "remark3_vii", "remark3_viii",  "remark3_ix",    "remark3_chain1", "remark3_chain2",
        "remark3_chain3", "remark3_chain4", "remark4_chain1", "remark4_chain2",
    };
    std::vector<InequalityChain> selected;
    for (const auto& name : names) {
        const auto found = find_chains(name);
        o.require(!found.empty(), "chain " + name + " is registered");
        for (const auto& c : found) selected.push_back(c);
    }
    const auto reports = run_chains(selected, chain_pairs(), kChainSlack);
    std::size_t gating = 0, failing = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        if (selected[i].gating()) {
            ++gating;
            if (!r.passed()) ++failing;
            o.require(r.passed(), fmt("%s (%s): %zu failures", r.name.c_str(),
                                      std::string(to_string(r.provenance)).c_str(), r.failure_count));
        } else {
            o.info.push_back(fmt("printed variant of %s (report only): %zu failing links over %zu pairs, worst slack %.3e",
                                 r.name.c_str(), r.failure_count, r.pairs_tested, r.worst_slack.value_or(0.0)));
        }
    }
    o.summary = fmt("%zu gating chains on the eq9 sample set, %zu failing", gating, failing);
    return o;
}

Outcome ac3() {
    Outcome o;
    for (const auto id : kAllGRatios) {
        const auto& info = g_ratio_info(id);
        const double limit = g_limit_at_one(id);
        const double expected = info.paper_limit.value();
        const double rel = std::abs(limit - expected) / expected;
        o.require(rel <= 1e-6, fmt("g_%s limit %.12g vs %s", std::string(info.name).c_str(), limit,
                                   info.paper_limit.str().c_str()));
        o.info.push_back(fmt("g_%s(1) = %.12g, expected %s, relative error %.2e", std::string(info.name).c_str(),
                             limit, info.paper_limit.str().c_str(), rel));
    }
    const auto check = proposition_check(GRatioId::Psid_PsiT, chain_pairs());
    const auto grid = g_monotonicity_scan(GRatioId::Psid_PsiT, GridSpec{});
    o.info.push_back(fmt("sampled sup D_Psid/D_PsiT over %zu random pairs = %.10f; grid max of g = %.10f "
                         "(11/8 = 1.375, 11/4 = 2.75)",
                         check.pairs, check.sampled_sup.value_or(NAN), grid.max_value));
    o.summary = "nine limit constants at x = 1 within 1e-6 relative";
    return o;
}

Outcome ac4() {
    Outcome o;
    const GridSpec wide{1e-6, 1e6, 100000, Spacing::log};
    const AuxFunctionId claimed[] = {
        AuxFunctionId::m1,     AuxFunctionId::m2,     AuxFunctionId::m3,     AuxFunctionId::k1,
        AuxFunctionId::k3,     AuxFunctionId::k4,     AuxFunctionId::k5,     AuxFunctionId::k6,
        AuxFunctionId::k7,     AuxFunctionId::ineq15, AuxFunctionId::ineq16, AuxFunctionId::ineq17,
        AuxFunctionId::ineq18, AuxFunctionId::ineq20, AuxFunctionId::ineq21, AuxFunctionId::ineq22,
    };
    std::size_t passing = 0;
    for (const auto id : claimed) {
        const auto r = nonnegativity_scan(id, wide);
        if (r.pass) ++passing;
        o.require(r.pass, fmt("%s: min %.3e at %.6g", r.function.c_str(), r.min_value, r.argmin));
    }
    o.info.push_back(fmt("%zu of 16 claimed functions nonnegative", passing));

    const auto printed = nonnegativity_scan(AuxFunctionId::k2, wide);
    o.info.push_back(fmt("k2 as printed: pass=%d, min %.6g at x = %.6g, k2(1) = %.6g", printed.pass,
                         printed.min_value, printed.argmin, aux_function(AuxFunctionId::k2, 1.0)));
    o.require(!printed.pass, "k2 as printed fails the scan");
    o.require(std::abs(printed.min_value + 1.0) <= 1e-3 && std::abs(printed.argmin - 1.0) <= 1e-2,
              "k2 as printed has its minimum approx -1 near x = 1");

    const auto const3 = nonnegativity_scan(AuxFunctionId::k2_const3, wide);
    o.info.push_back(fmt("k2 with constant 3: pass=%d, min %.6g at x = %.6g", const3.pass, const3.min_value,
                         const3.argmin));
    o.require(const3.pass, "k2 with constant 3 passes the scan");

    const auto lead2 = nonnegativity_scan(AuxFunctionId::k2_lead2, wide);
    for (const auto id : {AuxFunctionId::k2, AuxFunctionId::k2_const3, AuxFunctionId::k2_lead2}) {
        const auto f = k2_factorization_check(id);
        o.info.push_back(fmt("derivative of g_dh_dI vs prefactor * %s: max relative residual %.3e (%s)",
                             std::string(to_string(id)).c_str(), f.max_relative_residual,
                             f.pass ? "matches" : "does not match"));
    }
    o.info.push_back(fmt("k2 with leading 2x^2: pass=%d, min %.6g at x = %.6g", lead2.pass, lead2.min_value,
                         lead2.argmin));
    o.summary = "nonnegativity scans on log grid [1e-6, 1e6], 10^5 points";
    return o;
}

Outcome ac5() {
    Outcome o;
    const GridSpec grid{1e-3, 1e3, 601, Spacing::log};
    for (Family family : {Family::phi, Family::psi}) {
        for (double s : kFamilyS) {
            const Generator g(family, s);
            double worst = 0.0;
            for (double x : grid.points_vector()) {
                const long double fd =
                    oracle::second_derivative([&](long double t) { return g.value<long double>(t); }, x);
                const double exact = g.second(x);
                worst = std::max(worst, static_cast<double>(std::abs(fd - exact) / exact));
            }
            const auto name = to_string(family) + fmt("(s=%g)", s);
            o.require(worst <= 1e-6, name + fmt(" finite-difference error %.3e", worst));
            o.info.push_back(name + fmt(": worst relative finite-difference error %.3e", worst));
        }
    }
    double worst_one = 0.0;
    for (double s : kFamilyS) {
        worst_one = std::max(worst_one, std::abs(phi_second(s, 1.0) - 2.0) / 2.0);
        worst_one = std::max(worst_one, std::abs(psi_second(s, 1.0) - 0.25) / 0.25);
    }
    o.require(worst_one <= 1e-12, fmt("second derivatives at 1 off by %.3e", worst_one));
    o.info.push_back(fmt("phi''(1) = 2 and psi''(1) = 1/4: worst relative error %.3e", worst_one));
    o.summary = "closed-form second derivatives vs central differences on [1e-3, 1e3]";
    return o;
}

Outcome ac6() {
    Outcome o;
    struct Identity {
        std::string name;
        std::function<double(const DistributionPair&)> family;
        std::function<double(const MeasureTable&)> closed;
    };
    const std::vector<Identity> identities = {
        {"zeta_2 = Psi/2", [](auto& p) { return zeta(2.0, p); }, [](auto& m) { return m[MeasureId::sym_chi_square] / 2; }},
        {"zeta_0 = J", [](auto& p) { return zeta(0.0, p); }, [](auto& m) { return m[MeasureId::j_div]; }},
        {"zeta_1 = J", [](auto& p) { return zeta(1.0, p); }, [](auto& m) { return m[MeasureId::j_div]; }},
        {"zeta_1/2 = 8h", [](auto& p) { return zeta(0.5, p); }, [](auto& m) { return 8 * m[MeasureId::hellinger]; }},
        {"xi_-1 = Delta/4", [](auto& p) { return xi(-1.0, p); }, [](auto& m) { return m[MeasureId::triangular] / 4; }},
        {"xi_0 = I", [](auto& p) { return xi(0.0, p); }, [](auto& m) { return m[MeasureId::jensen_shannon]; }},
        {"xi_1/2 = 4d", [](auto& p) { return xi(0.5, p); }, [](auto& m) { return 4 * m[MeasureId::d_div]; }},
        {"xi_1 = T", [](auto& p) { return xi(1.0, p); }, [](auto& m) { return m[MeasureId::ag_mean]; }},
        {"xi_2 = Psi/16", [](auto& p) { return xi(2.0, p); }, [](auto& m) { return m[MeasureId::sym_chi_square] / 16; }},
    };
    const auto pairs = thousand_pairs(606);
    for (const auto& id : identities) {
        double worst = 0.0;
        for (const auto& pair : pairs) {
            const MeasureTable m(pair);
            const double a = id.family(pair), b = id.closed(m);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
        }
        o.require(worst <= 1e-10, id.name + fmt(": %.3e", worst));
        o.info.push_back(id.name + fmt(": worst relative error %.3e", worst));
    }
    o.summary = "particular cases of both families on 10^3 pairs within 1e-10 relative";
    return o;
}

Outcome ac7() {
    Outcome o;
    const auto pairs = thousand_pairs(707);
    std::size_t zeta_down = 0, zeta_up = 0, xi_up = 0;
    double worst = INFINITY;
    for (const auto& pair : pairs) {
        for (double s = -2.0; s < 0.5 - 1e-9; s += 0.5) {
            const double slack = zeta(s, pair) - zeta(s + 0.5, pair);
            worst = std::min(worst, slack);
            if (slack < -1e-12) ++zeta_down;
        }
        for (double s = 0.5; s < 3.0 - 1e-9; s += 0.5) {
            const double slack = zeta(s + 0.5, pair) - zeta(s, pair);
            worst = std::min(worst, slack);
            if (slack < -1e-12) ++zeta_up;
        }
        for (double s = -1.0; s < 3.0 - 1e-9; s += 0.5) {
            const double slack = xi(s + 0.5, pair) - xi(s, pair);
            worst = std::min(worst, slack);
            if (slack < -1e-12) ++xi_up;
        }
    }
    o.require(zeta_down == 0, fmt("zeta not nonincreasing on s <= 1/2: %zu violations", zeta_down));
    o.require(zeta_up == 0, fmt("zeta not nondecreasing on s >= 1/2: %zu violations", zeta_up));
    o.require(xi_up == 0, fmt("xi not nondecreasing on s >= -1: %zu violations", xi_up));
    o.info.push_back(fmt("worst slack %.3e", worst));
    o.summary = "zeta down then up about s = 1/2, xi up for s >= -1, on 10^3 pairs";
    return o;
}

Outcome ac8() {
    Outcome o;
    const auto first = thousand_pairs(801);
    const auto second = thousand_pairs(802);
    constexpr double lambdas[] = {0.25, 0.5, 0.75};

    auto convex = [&](const std::string& name, const std::function<double(const DistributionPair&)>& f) {
        std::size_t violations = 0;
        double worst = INFINITY;
        for (std::size_t i = 0; i < first.size(); ++i) {
            const double a = f(first[i]), b = f(second[i]);
            for (double lambda : lambdas) {
                const double slack = lambda * a + (1 - lambda) * b - f(mixture(first[i], second[i], lambda));
                worst = std::min(worst, slack);
                if (slack < -1e-10) ++violations;
            }
        }
        o.require(violations == 0, name + fmt(": %zu violations", violations));
        return worst;
    };

    double worst = INFINITY;
    for (const auto& member : normalized_members()) {
        const auto base = member.base;
        worst = std::min(worst, convex(std::string(to_string(base)), [base](auto& p) { return evaluate(base, p); }));
    }
    for (double s : kFamilyS) {
        worst = std::min(worst, convex(fmt("zeta_%g", s), [s](auto& p) { return zeta(s, p); }));
        worst = std::min(worst, convex(fmt("xi_%g", s), [s](auto& p) { return xi(s, p); }));
    }
    for (const auto& id : d_differences()) {
        worst = std::min(worst, convex("D_" + id.name(), [id](auto& p) { return difference(id, p); }));
    }
    o.info.push_back(fmt("worst mixture slack %.3e over 7 measures, 10 family members, 6 differences", worst));
    o.summary = "mixture convexity on 10^3 quadruples, lambda in {0.25, 0.5, 0.75}";
    return o;
}

Outcome ac9() {
    Outcome o;
    const DistributionPair pair(validate(std::vector<double>{0.5, 0.5}), validate(std::vector<double>{0.25, 0.75}));
    const auto p = oracle::widen(pair.p().values());
    const auto q = oracle::widen(pair.q().values());
    const MeasureTable m(pair);

    auto compare = [&](const std::string& name, double computed, double expected) {
        const double err = std::abs(computed - expected);
        o.require(err <= 1e-9, name + fmt(": %.12g vs %.12g", computed, expected));
        return err;
    };
    double worst = 0.0;
    worst = std::max(worst, compare("Delta", m[MeasureId::triangular], static_cast<double>(oracle::triangular(p, q))));
    worst = std::max(worst, compare("Psi", m[MeasureId::sym_chi_square], static_cast<double>(oracle::sym_chi_square(p, q))));
    worst = std::max(worst, compare("chi2", m[MeasureId::chi_square], static_cast<double>(oracle::chi_square(p, q))));
    o.require(std::abs(static_cast<double>(oracle::triangular(p, q)) - 2.0 / 15.0) <= 1e-15 &&
                  std::abs(static_cast<double>(oracle::sym_chi_square(p, q)) - 7.0 / 12.0) <= 1e-15 &&
                  std::abs(static_cast<double>(oracle::chi_square(p, q)) - 1.0 / 3.0) <= 1e-15,
              "oracle reproduces 2/15, 7/12, 1/3");

    const auto expected = oracle::normalized(p, q);
    const auto values = normalized_values(pair);
    constexpr double printed[] = {0.0333333, 0.0338216, 0.0340742, 0.0343000, 0.0343316, 0.0348406, 0.0364583};
    for (int r = 0; r < kChainLength; ++r) {
        const auto symbol = std::string(normalized_member(r + 1).symbol);
        const double oracle_value = static_cast<double>(expected[r]);
        worst = std::max(worst, compare("rank " + std::to_string(r + 1), values[r], oracle_value));
        const double printed_gap = std::abs(printed[r] - oracle_value);
        o.info.push_back(fmt("rank %d (%s): computed %.13f, oracle %.13f, listed %.7f%s", r + 1, symbol.c_str(),
                             values[r], oracle_value, printed[r],
                             printed_gap > 5e-8 ? fmt(" (listed value off by %.2e)", printed_gap).c_str() : ""));
    }
    o.info.push_back(fmt("worst absolute error against the oracle %.3e", worst));
    o.summary = "reference pair P = (1/2, 1/2), Q = (1/4, 3/4) against the direct-summation oracle";
    return o;
}

Outcome ac10() {
    Outcome o;
    constexpr std::size_t dims[] = {2, 3, 4, 5, 6, 7, 8, 9, 10};
    const ScaledDifference lhs{Rational(12), DifferenceId(5, 4)};
    const ScaledDifference rhs{Rational(1, 4), DifferenceId(7, 1)};
    const auto r = counterexample_search(lhs, rhs, 100000, 1, dims);
    o.require(r.both_found(), "both orderings found");
    for (const auto* w : {&r.lhs_less, &r.lhs_greater}) {
        if (!*w) continue;
        const auto& wit = **w;
        o.info.push_back(fmt("%s %s %s at sample %zu (n = %zu): %.6e vs %.6e", lhs.label().c_str(),
                             wit.lhs < wit.rhs ? "<" : ">", rhs.label().c_str(), wit.sample, wit.pair.size(),
                             wit.lhs, wit.rhs));
    }
    o.info.push_back(fmt("samples used: %zu", r.samples_used));
    o.summary = "12 D_Jd and 1/4 D_PsiDelta are incomparable (budget 10^5)";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Outcome()>> criteria = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10};
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
        const auto o = criteria[i]();
        all = all && o.pass;
        std::cout << "AC" << i + 1 << (o.pass ? " PASS: " : " FAIL: ") << o.summary << '\n';
        for (const auto& line : o.info) std::cout << "    " << line << '\n';
        std::cout.flush();
    }
    return all ? 0 : 1;
}
