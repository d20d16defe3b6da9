#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "divkit/distributions.hpp"
#include "divkit/generators.hpp"
#include "divkit/rational.hpp"

namespace divkit {

enum class MeasureId {
    hellinger,       ///< h = 1/2 sum (sqrt p - sqrt q)^2
    triangular,      ///< Delta = sum (p-q)^2/(p+q)
    sym_chi_square,  ///< Psi = chi2(P||Q) + chi2(Q||P)
    chi_square,      ///< chi2(P||Q) = sum (p-q)^2/q; the only asymmetric one
    j_div,           ///< J = sum (p-q) ln(p/q)
    jensen_shannon,  ///< I
    ag_mean,         ///< T, arithmetic-geometric mean divergence
    d_div,           ///< d = 1 - sum ((sqrt p + sqrt q)/2) sqrt((p+q)/2)
    bhattacharyya,   ///< B = sum sqrt(p q)
    harmonic_mean,   ///< W = sum 2pq/(p+q)
};

inline constexpr std::array kAllMeasures = {
    MeasureId::hellinger,      MeasureId::triangular, MeasureId::sym_chi_square,
    MeasureId::chi_square,     MeasureId::j_div,      MeasureId::jensen_shannon,
    MeasureId::ag_mean,        MeasureId::d_div,      MeasureId::bhattacharyya,
    MeasureId::harmonic_mean,
};

std::string_view to_string(MeasureId id);
std::optional<MeasureId> parse_measure_id(std::string_view name);

/// Closed-form value of one measure.
double evaluate(MeasureId id, const DistributionPair& pair);

/// All ten measures of one pair, computed in a single pass.
class MeasureTable {
public:
    explicit MeasureTable(const DistributionPair& pair);

    double operator[](MeasureId id) const { return values_[static_cast<std::size_t>(id)]; }

private:
    std::array<double, kAllMeasures.size()> values_{};
};

/// J-divergence of type s; the logarithmic J form near s in {0, 1}.
double zeta(double s, const DistributionPair& pair);

/// Generalized AG/JS divergence of type s: sum q psi_s(p/q); I near s = 0, T near s = 1.
double xi(double s, const DistributionPair& pair);

/// One of the seven members of the normalized chain
/// Delta/4 <= I <= h <= 4d <= J/8 <= T <= Psi/16.
struct NormalizedMember {
    int rank;                ///< 1..7, chain position
    MeasureId base;
    Rational coefficient;    ///< value = coefficient * evaluate(base)
    Generator generator;     ///< C_f of this generator equals the member; f''(1) = 1/4
    std::string_view symbol; ///< short name used in difference ids ("Delta", "I", "h", ...)
};

inline constexpr int kChainLength = 7;

/// Members in rank order.
const std::array<NormalizedMember, kChainLength>& normalized_members();

/// Throws RejectedInput unless 1 <= rank <= 7.
const NormalizedMember& normalized_member(int rank);

/// Looks a member up by its symbol.
std::optional<int> parse_member_symbol(std::string_view symbol);

double normalized_value(int rank, const DistributionPair& pair);
double normalized_value(int rank, const MeasureTable& table);

/// Ranks 1..7 in order.
std::array<double, kChainLength> normalized_values(const DistributionPair& pair);

}  // namespace divkit
