#pragma once

#include <cmath>
#include <vector>

#include "divkit/distributions.hpp"
#include "divkit/verification.hpp"
#include "oracle.hpp"

namespace testing {

inline divkit::DistributionPair make_pair(std::vector<double> p, std::vector<double> q) {
    return {divkit::validate(p), divkit::validate(q)};
}

inline divkit::DistributionPair reference_pair() { return make_pair({0.5, 0.5}, {0.25, 0.75}); }

inline bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

inline oracle::Vec wide_p(const divkit::DistributionPair& pair) { return oracle::widen(pair.p().values()); }
inline oracle::Vec wide_q(const divkit::DistributionPair& pair) { return oracle::widen(pair.q().values()); }

inline std::vector<divkit::DistributionPair> sample(std::size_t per_dim, std::vector<std::size_t> dims,
                                                    std::uint64_t seed) {
    return divkit::random_pairs(per_dim, dims, seed);
}

}  // namespace testing
