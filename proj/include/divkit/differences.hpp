#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divkit/distributions.hpp"
#include "divkit/measures.hpp"
#include "divkit/rational.hpp"
#include "divkit/scalar_forms.hpp"

namespace divkit {

/// D_{high,low} = member(high) - member(low) for chain ranks high > low; nonnegative on every pair.
class DifferenceId {
public:
    /// Throws RejectedInput unless 1 <= low < high <= 7.
    DifferenceId(int high, int low);

    int high() const noexcept { return high_; }
    int low() const noexcept { return low_; }

    /// Symbol concatenation, e.g. "PsiDelta", "dh", "Td".
    std::string name() const;

    friend bool operator==(const DifferenceId&, const DifferenceId&) = default;

private:
    int high_;
    int low_;
};

/// Parses a concatenation of two member symbols ("PsiDelta", "dI", ...).
std::optional<DifferenceId> parse_difference(std::string_view name);

/// All 21 differences, ordered by (high, low).
std::vector<DifferenceId> all_differences();

/// The six differences involving d whose generator second derivatives have printed closed forms.
const std::vector<DifferenceId>& d_differences();

double difference(const DifferenceId& id, const DistributionPair& pair);
double difference(const DifferenceId& id, const MeasureTable& table);

/// f''_high(x) - f''_low(x) from the generator families.
template <std::floating_point T>
T difference_generator_second_composed(const DifferenceId& id, T x) {
    return normalized_member(id.high()).generator.second(x) -
           normalized_member(id.low()).generator.second(x);
}

bool has_closed_form_second(const DifferenceId& id);

/// Generator second derivative of a difference: the factored closed form for the six
/// d-differences, the composition otherwise. Throws DomainError for x <= 0.
template <std::floating_point T>
T difference_generator_second(const DifferenceId& id, T x) {
    detail::require_positive(x, "difference_generator_second");
    const T sw = std::sqrt(2 * x + 2);
    const T x32 = forms::x32(x);
    constexpr int d = 4;
    if (id.low() == d || id.high() == d) {
        const int other = id.low() == d ? id.high() : id.low();
        switch (other) {
            case 7: return forms::m1(x).value / (x * x * x * (x + 1) * sw);
            case 6: return forms::m2(x).value / (x * x * (x + 1) * sw);
            case 5: return forms::m3(x).value / (x * x * (x + 1) * sw);
            case 3: return forms::ineq15(x).value / (x32 * (x + 1) * sw);
            case 2: return forms::ineq16(x).value / (x32 * (x + 1) * sw);
            case 1: {
                const T mid = (x + 1) / 2;
                const T bracket = (x32 + 1) / 2 * forms::x32(mid) - x32;
                return 8 / (2 * x32 * (x + 1) * (x + 1) * (x + 1) * sw) * std::sqrt(mid) * bracket;
            }
            default: break;
        }
    }
    return difference_generator_second_composed(id, x);
}

enum class Provenance { paper_verbatim, derived_corrected };

std::string_view to_string(Provenance p);

/// coefficient * (difference | linear combination of base measures)
struct ChainTerm {
    Rational coefficient{1};
    std::optional<DifferenceId> difference;
    std::vector<std::pair<Rational, MeasureId>> combination;

    double evaluate(const MeasureTable& table) const;
    std::string label() const;
};

/// Builders for registry entries.
ChainTerm diff_term(Rational coefficient, int high, int low);
ChainTerm combo_term(std::vector<std::pair<Rational, MeasureId>> combination);

/// An ordered claim term_0 <= term_1 <= ... <= term_k.
struct InequalityChain {
    std::string name;
    Provenance provenance = Provenance::paper_verbatim;
    /// Printed variant kept for discrepancy reporting; a derived_corrected sibling replaces it.
    bool superseded = false;
    std::vector<ChainTerm> terms;

    std::size_t comparisons() const { return terms.empty() ? 0 : terms.size() - 1; }
    /// Whether a failure of this chain counts as a verification failure.
    bool gating() const { return !superseded; }
};

/// Every chain, in a fixed order. Chain names form the public vocabulary
/// (eq1, eq2, eq3, eq9, eq23, eq50, eq54, eq55, remark3_i..remark3_ix, remark3_chain1..4,
/// remark4_chain1, remark4_chain2); a name can map to a verbatim and a corrected variant.
const std::vector<InequalityChain>& chain_registry();

/// All registry entries with the given name (one or two variants). Empty if unknown.
std::vector<InequalityChain> find_chains(std::string_view name);

inline constexpr double kDefaultChainTolerance = 1e-12;

struct ChainCheck {
    std::vector<double> values;  ///< term values
    std::vector<double> slacks;  ///< values[i+1] - values[i]
    std::size_t worst_link = 0;
    double worst_slack = 0.0;
    bool passed = true;          ///< every slack >= -tol
};

ChainCheck check_chain(const InequalityChain& chain, const DistributionPair& pair,
                       double tol = kDefaultChainTolerance);
ChainCheck check_chain(const InequalityChain& chain, const MeasureTable& table,
                       double tol = kDefaultChainTolerance);

struct ChainFailure {
    std::size_t pair_index;
    std::size_t link;
    double lhs;
    double rhs;
};

struct ChainReport {
    std::string name;
    Provenance provenance = Provenance::paper_verbatim;
    bool superseded = false;
    std::size_t terms = 0;
    std::size_t comparisons = 0;
    std::size_t pairs_tested = 0;
    /// minimum over links and pairs of rhs - lhs; absent when no pair was tested
    std::optional<double> worst_slack;
    std::optional<std::size_t> worst_link;
    std::optional<std::size_t> worst_pair;
    std::size_t failure_count = 0;
    std::vector<ChainFailure> failures;  ///< first `max_recorded_failures`, in pair order

    bool passed() const { return failure_count == 0; }
};

/// Evaluates each chain on each pair. Measure tables are computed in parallel; aggregation
/// runs in pair order, so reports are identical for any worker count.
std::vector<ChainReport> run_chains(std::span<const InequalityChain> chains,
                                    std::span<const DistributionPair> pairs,
                                    double tol = kDefaultChainTolerance,
                                    std::size_t max_recorded_failures = 16);

}  // namespace divkit
