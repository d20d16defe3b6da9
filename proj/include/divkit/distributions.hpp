#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace divkit {

/// A point of the open simplex: n >= 2 strictly positive entries summing to 1 (within 1e-12).
/// Only obtainable through validate() or sample_uniform_simplex(), so every instance holds
/// the invariant.
class ProbabilityDistribution {
public:
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const ProbabilityDistribution&, const ProbabilityDistribution&) = default;

private:
    explicit ProbabilityDistribution(std::vector<double> v) : values_(std::move(v)) {}

    std::vector<double> values_;

    friend struct DistributionAccess;
};

/// Two distributions of equal length.
class DistributionPair {
public:
    DistributionPair(ProbabilityDistribution p, ProbabilityDistribution q);

    const ProbabilityDistribution& p() const noexcept { return p_; }
    const ProbabilityDistribution& q() const noexcept { return q_; }
    std::size_t size() const noexcept { return p_.size(); }

    /// (q, p)
    DistributionPair swapped() const { return {q_, p_}; }

private:
    ProbabilityDistribution p_;
    ProbabilityDistribution q_;
};

enum class ValidationMode { reject, renormalize };

struct ValidationPolicy {
    ValidationMode mode = ValidationMode::reject;
    double zero_floor = 0.0;  ///< renormalize only; must be < 1/n when nonzero
};

/// Input sum tolerance in reject mode.
inline constexpr double kInputSumTolerance = 1e-9;
/// Sum tolerance guaranteed on every validated distribution.
inline constexpr double kSumTolerance = 1e-12;

/// Validates raw values into a distribution.
///
/// reject: every entry must be finite and > 0 and the sum within 1e-9 of 1.
/// renormalize: entries <= zero_floor are raised to zero_floor, then the vector is rescaled to
/// unit sum; entries pushed below the floor by the rescale are pinned at the floor and the
/// remainder rescaled again. In both modes the rescale is skipped when the sum is already
/// within 1e-12 of 1, which makes validate idempotent.
///
/// Throws RejectedInput on any violation, including length < 2.
ProbabilityDistribution validate(std::span<const double> raw, const ValidationPolicy& policy = {});

/// Uniform sample on the simplex (normalized Exp(1) spacings). Pure function of (n, seed).
ProbabilityDistribution sample_uniform_simplex(std::size_t n, std::uint64_t seed);

/// Pair of independent uniform samples of length n. Pure function of (n, seed).
DistributionPair sample_uniform_pair(std::size_t n, std::uint64_t seed);

/// Entrywise lambda*a + (1-lambda)*b, lambda in [0, 1].
ProbabilityDistribution mixture(const ProbabilityDistribution& a, const ProbabilityDistribution& b,
                                double lambda);
DistributionPair mixture(const DistributionPair& a, const DistributionPair& b, double lambda);

enum class InputFormat { csv, json };

/// Maps "csv" / "json" (case-sensitive) to InputFormat; throws ParseError otherwise.
InputFormat parse_input_format(std::string_view name);

/// Loads distribution pairs from a file.
///
/// CSV: one distribution per row, comma-separated decimals; rows (2k-1, 2k) form pair k.
/// Blank lines and lines starting with '#' are skipped. JSON: {"pairs":[{"p":[...],"q":[...]}]}.
/// Throws ParseError (line number for CSV, 0-based record index for JSON) on syntax or
/// shape errors, RejectedInput (message names the record) when a row fails validation.
std::vector<DistributionPair> load_pairs(const std::filesystem::path& path, InputFormat format,
                                         const ValidationPolicy& policy = {});

/// Same as load_pairs, reading from an in-memory buffer.
std::vector<DistributionPair> parse_pairs(std::string_view text, InputFormat format,
                                          const ValidationPolicy& policy = {});

/// Parses "0.5,0.25,..." into raw values (no validation). Throws ParseError on bad literals.
std::vector<double> parse_csv_row(std::string_view row, std::size_t line = 0);

}  // namespace divkit
