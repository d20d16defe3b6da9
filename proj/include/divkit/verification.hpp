#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divkit/differences.hpp"
#include "divkit/distributions.hpp"
#include "divkit/generators.hpp"
#include "divkit/rational.hpp"
#include "divkit/scalar_forms.hpp"

namespace divkit {

/// Auxiliary scalar functions whose nonnegativity carries the convexity and monotonicity
/// arguments. k2 is the expression as printed; k2_const3 raises its constant to 3 and
/// k2_lead2 doubles its x^2 term (the factor the derivative of g_dh_dI actually contains).
enum class AuxFunctionId {
    m1, m2, m3,
    k1, k2, k2_const3, k2_lead2, k3, k4, k5, k6, k7,
    ineq15, ineq16, ineq17, ineq18, ineq20, ineq21, ineq22,
};

inline constexpr std::array kAllAuxFunctions = {
    AuxFunctionId::m1,     AuxFunctionId::m2,        AuxFunctionId::m3,
    AuxFunctionId::k1,     AuxFunctionId::k2,        AuxFunctionId::k2_const3,
    AuxFunctionId::k2_lead2, AuxFunctionId::k3,      AuxFunctionId::k4,
    AuxFunctionId::k5,     AuxFunctionId::k6,        AuxFunctionId::k7,
    AuxFunctionId::ineq15, AuxFunctionId::ineq16,    AuxFunctionId::ineq17,
    AuxFunctionId::ineq18, AuxFunctionId::ineq20,    AuxFunctionId::ineq21,
    AuxFunctionId::ineq22,
};

std::string_view to_string(AuxFunctionId id);
std::optional<AuxFunctionId> parse_aux_function(std::string_view name);

template <std::floating_point T>
forms::Scaled<T> aux_scaled(AuxFunctionId id, T x) {
    detail::require_positive(x, "aux_function");
    switch (id) {
        case AuxFunctionId::m1: return forms::m1(x);
        case AuxFunctionId::m2: return forms::m2(x);
        case AuxFunctionId::m3: return forms::m3(x);
        case AuxFunctionId::k1: return forms::k1(x);
        case AuxFunctionId::k2: return forms::k2_family(x, T(1), T(2));
        case AuxFunctionId::k2_const3: return forms::k2_family(x, T(1), T(3));
        case AuxFunctionId::k2_lead2: return forms::k2_family(x, T(2), T(2));
        case AuxFunctionId::k3: return forms::k3(x);
        case AuxFunctionId::k4: return forms::k4(x);
        case AuxFunctionId::k5: return forms::k5(x);
        case AuxFunctionId::k6: return forms::k6(x);
        case AuxFunctionId::k7: return forms::k7(x);
        case AuxFunctionId::ineq15: return forms::ineq15(x);
        case AuxFunctionId::ineq16: return forms::ineq16(x);
        case AuxFunctionId::ineq17: return forms::ineq17(x);
        case AuxFunctionId::ineq18: return forms::ineq18(x);
        case AuxFunctionId::ineq20: return forms::ineq20(x);
        case AuxFunctionId::ineq21: return forms::ineq21(x);
        case AuxFunctionId::ineq22: return forms::ineq22(x);
    }
    throw DomainError("aux_function: unknown id");
}

/// Value of the printed expression; ineq* ids return lhs - rhs so that the claim reads >= 0.
/// Throws DomainError for x <= 0.
double aux_function(AuxFunctionId id, double x);

struct ScanReport {
    std::string function;
    GridSpec grid;
    double min_value = 0.0;
    double argmin = 0.0;
    double max_value = 0.0;
    double argmax = 0.0;
    /// points violating the claim beyond tolerance
    std::size_t negative_count = 0;
    /// smallest value / max(1, magnitude) over the grid (for g scans: most negative step)
    double worst_violation = 0.0;
    bool pass = true;
};

inline constexpr double kScanTolerance = 1e-9;

/// Evaluates an auxiliary function over the grid in extended precision. A point fails when
/// value < -rel_tol * max(1, magnitude of the cancelling terms).
ScanReport nonnegativity_scan(AuxFunctionId id, const GridSpec& grid,
                              double rel_tol = kScanTolerance);

enum class GRatioId {
    hDelta_dDelta, dDelta_dh, dh_dI, dI_hI, Th_Td, Td_PsiDelta, Psih_Psid, Psid_PsiT, Td_Jd,
};

inline constexpr std::array kAllGRatios = {
    GRatioId::hDelta_dDelta, GRatioId::dDelta_dh,   GRatioId::dh_dI,
    GRatioId::dI_hI,         GRatioId::Th_Td,       GRatioId::Td_PsiDelta,
    GRatioId::Psih_Psid,     GRatioId::Psid_PsiT,   GRatioId::Td_Jd,
};

struct GRatioInfo {
    GRatioId id;
    std::string_view name;
    DifferenceId numerator;
    DifferenceId denominator;
    Rational paper_limit;
};

const GRatioInfo& g_ratio_info(GRatioId id);
std::string_view to_string(GRatioId id);
std::optional<GRatioId> parse_g_ratio(std::string_view name);

/// f''_num(x) / f''_den(x). Throws DomainError for x <= 0 or |x - 1| <= 1e-12.
long double g_ratio_extended(GRatioId id, long double x);
double g_ratio(GRatioId id, double x);

/// The proposition's printed rational expression for the same ratio.
double g_ratio_printed(GRatioId id, double x);

/// Richardson extrapolation of (g(1+h) + g(1-h))/2 over h = 1e-2, 5e-3, 2.5e-3.
/// Throws ExtrapolationError if the symmetric averages stop converging.
double g_limit_at_one(GRatioId id);

/// Points within this distance of 1 are skipped by g scans.
inline constexpr double kGExclusion = 1e-6;

/// Checks g nondecreasing on (0, 1) and nonincreasing on (1, inf) between consecutive grid
/// points (relative slack `slack`). min/max are the sampled extrema of g.
ScanReport g_monotonicity_scan(GRatioId id, const GridSpec& grid, double slack = kScanTolerance);

/// Compares a central-difference derivative of f''_dh/f''_dI against
/// prefactor(x) * candidate(x) on a grid.
struct FactorizationCheck {
    AuxFunctionId candidate;
    double max_relative_residual = 0.0;
    double worst_x = 0.0;
    bool pass = false;
};

inline constexpr double kFactorizationTolerance = 1e-6;

FactorizationCheck k2_factorization_check(AuxFunctionId candidate,
                                          const GridSpec& grid = {0.05, 20.0, 400, Spacing::log});

/// c * D_id
struct ScaledDifference {
    Rational coefficient{1};
    DifferenceId id;

    double evaluate(const MeasureTable& table) const;
    std::string label() const;
};

struct Witness {
    DistributionPair pair;
    std::size_t sample;
    double lhs;
    double rhs;
};

struct CounterexampleResult {
    std::optional<Witness> lhs_less;
    std::optional<Witness> lhs_greater;
    std::size_t samples_used = 0;

    bool both_found() const { return lhs_less && lhs_greater; }
};

inline constexpr double kWitnessMargin = 1e-12;

/// Samples pairs (dimension cycling through `dims`; sample i seeded from (seed, i)) until a
/// pair with lhs < rhs - margin and one with lhs > rhs + margin have both been seen, or the
/// budget runs out. Witnesses are the first in sample order.
CounterexampleResult counterexample_search(const ScaledDifference& lhs, const ScaledDifference& rhs,
                                           std::size_t budget, std::uint64_t seed,
                                           std::span<const std::size_t> dims,
                                           double margin = kWitnessMargin);

/// `samples_per_dim` uniform pairs for each dimension, dimension-major. Pair j is drawn from
/// seed mix_seed(seed, j).
std::vector<DistributionPair> random_pairs(std::size_t samples_per_dim,
                                           std::span<const std::size_t> dims, std::uint64_t seed);

/// D_num <= limit * D_den on sampled pairs, plus the sampled supremum of D_num / D_den over
/// pairs with D_den >= denominator_floor (smaller denominators are dominated by rounding).
struct PropositionCheck {
    GRatioId id;
    std::size_t pairs = 0;
    double worst_slack = 0.0;
    std::size_t failures = 0;
    std::optional<double> sampled_sup;

    bool passed() const { return failures == 0; }
};

PropositionCheck proposition_check(GRatioId id, std::span<const DistributionPair> pairs,
                                   double tol = kDefaultChainTolerance,
                                   double denominator_floor = 1e-9);

}  // namespace divkit
