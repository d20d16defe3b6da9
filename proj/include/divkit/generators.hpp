#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "divkit/distributions.hpp"
#include "divkit/errors.hpp"

namespace divkit {

/// |s| or |s - 1| at or below this uses the logarithmic form of the removable singularity.
inline constexpr double kBranchThreshold = 1e-8;

namespace detail {

template <std::floating_point T>
void require_positive(T x, const char* fn) {
    if (!(x > T(0)) || !std::isfinite(x)) {
        throw DomainError(std::string(fn) + ": argument must be finite and > 0");
    }
}

template <std::floating_point T>
bool near_zero_branch(T s) {
    return std::abs(s) <= T(kBranchThreshold);
}

template <std::floating_point T>
bool near_one_branch(T s) {
    return std::abs(s - T(1)) <= T(kBranchThreshold);
}

/// (a^t + b^t)/2 - 1 for a = 1 + delta, b = 1 - delta. For small |delta| it is evaluated as
/// e^{tS/2} cosh(tD/2) - 1 with S = ln(ab), D = 2 atanh(delta), which avoids the first-order
/// cancellation; the direct form is accurate elsewhere.
template <std::floating_point T>
T power_mean_gap(T t, T a, T b, T delta) {
    if (std::abs(delta) >= T(0.5)) return (std::pow(a, t) + std::pow(b, t)) / 2 - 1;
    const T sum_log = std::log1p(-delta * delta);
    const T diff_log = 2 * std::atanh(delta);
    const T quarter = std::sinh(t * diff_log / 4);
    return std::expm1(t * sum_log / 2) * std::cosh(t * diff_log / 2) + 2 * quarter * quarter;
}

}  // namespace detail

/// J-type generator: [s(s-1)]^{-1} [x^s + x^{1-s} - (1+x)], or (x-1) ln x at s in {0, 1}.
template <std::floating_point T>
T phi_value(T s, T x) {
    detail::require_positive(x, "phi_value");
    if (detail::near_zero_branch(s) || detail::near_one_branch(s)) return (x - T(1)) * std::log(x);
    return (std::pow(x, s) + std::pow(x, T(1) - s) - (T(1) + x)) / (s * (s - T(1)));
}

/// x^{s-2} + x^{-s-1}
template <std::floating_point T>
T phi_second(T s, T x) {
    detail::require_positive(x, "phi_second");
    return std::pow(x, s - T(2)) + std::pow(x, -s - T(1));
}

/// AG/JS-type generator [s(s-1)]^{-1} [((x^{1-s}+1)/2)((x+1)/2)^s - (x+1)/2].
/// s = 0 gives the Jensen-Shannon generator, s = 1 the arithmetic-geometric one.
template <std::floating_point T>
T psi_value(T s, T x) {
    detail::require_positive(x, "psi_value");
    const T mid = (x + T(1)) / T(2);
    if (detail::near_zero_branch(s)) return x / T(2) * std::log(x) - mid * std::log(mid);
    if (detail::near_one_branch(s)) return mid * std::log(mid / std::sqrt(x));
    const T gap = detail::power_mean_gap(T(1) - s, x / mid, T(1) / mid, (x - T(1)) / (x + T(1)));
    return mid * gap / (s * (s - T(1)));
}

/// ((x^{-s-1} + 1)/8) ((x+1)/2)^{s-2}
template <std::floating_point T>
T psi_second(T s, T x) {
    detail::require_positive(x, "psi_second");
    return (std::pow(x, -s - T(1)) + T(1)) / T(8) * std::pow((x + T(1)) / T(2), s - T(2));
}

enum class Family { phi, psi };

std::string to_string(Family f);

/// A member of one of the two generator families, optionally scaled (e.g. phi_{1/2}/8).
struct Generator {
    Family family = Family::phi;
    double s = 0.0;
    double scale = 1.0;

    Generator() = default;
    Generator(Family family, double s, double scale = 1.0);

    template <std::floating_point T = double>
    T value(T x) const {
        return T(scale) * (family == Family::phi ? phi_value(T(s), x) : psi_value(T(s), x));
    }

    template <std::floating_point T = double>
    T second(T x) const {
        return T(scale) * (family == Family::phi ? phi_second(T(s), x) : psi_second(T(s), x));
    }

    std::string str() const;
};

/// sum_i q_i f(p_i / q_i). Throws DomainError when f fails or returns a non-finite value.
template <typename F>
    requires std::invocable<F&, double>
double csiszar_divergence(F&& f, const DistributionPair& pair) {
    const auto p = pair.p().values();
    const auto q = pair.q().values();
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double term = q[i] * static_cast<double>(f(p[i] / q[i]));
        if (!std::isfinite(term)) {
            throw DomainError("csiszar_divergence: generator is not finite at ratio " +
                              std::to_string(p[i] / q[i]));
        }
        sum += term;
    }
    return sum;
}

inline double csiszar_divergence(const Generator& g, const DistributionPair& pair) {
    return csiszar_divergence([&g](double x) { return g.value(x); }, pair);
}

enum class Spacing { log, linear };

struct GridSpec {
    double x_min = 1e-6;
    double x_max = 1e6;
    std::size_t points = 100000;
    Spacing spacing = Spacing::log;

    /// Throws RejectedInput unless 0 < x_min < x_max and points >= 2.
    void validate() const;
    /// i-th point, i in [0, points); endpoints are exact.
    double point(std::size_t i) const;
    std::vector<double> points_vector() const;
};

/// Ratio bounds m <= f1''/f2'' <= M, estimated on a grid.
struct RatioBounds {
    double m = 0.0;
    double M = 0.0;
    double arg_m = 0.0;
    double arg_M = 0.0;
    GridSpec grid;
};

using ScalarFunction = std::function<double(double)>;

/// Grid estimate of the range of f1_second/f2_second.
///
/// After the scan, each extremum starts from the bracket between its grid neighbours; each of
/// the `refinement` levels rescans the bracket at 256 points and shrinks it around the best one.
/// This is an estimate, not a bound. Throws DomainError if f2_second <= 0 anywhere sampled.
RatioBounds ratio_extrema(const ScalarFunction& f1_second, const ScalarFunction& f2_second,
                          const GridSpec& grid, int refinement = 0);

}  // namespace divkit
