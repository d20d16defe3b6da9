#include "divkit/generators.hpp"

#include <algorithm>
#include <sstream>

#include "divkit/parallel.hpp"

namespace divkit {

std::string to_string(Family f) { return f == Family::phi ? "phi" : "psi"; }

Generator::Generator(Family family_, double s_, double scale_)
    : family(family_), s(s_), scale(scale_) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw RejectedInput("generator scale must be finite and > 0");
    }
    if (!std::isfinite(s)) throw RejectedInput("generator parameter s must be finite");
}

std::string Generator::str() const {
    std::ostringstream out;
    out << to_string(family) << "_{" << s << "}";
    if (scale != 1.0) out << "*" << scale;
    return out.str();
}

void GridSpec::validate() const {
    if (!(x_min > 0.0) || !(x_max > x_min) || !std::isfinite(x_max)) {
        throw RejectedInput("grid needs 0 < x_min < x_max");
    }
    if (points < 2) throw RejectedInput("grid needs at least 2 points");
}

double GridSpec::point(std::size_t i) const {
    if (i == 0) return x_min;
    if (i + 1 >= points) return x_max;
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    if (spacing == Spacing::linear) return x_min + t * (x_max - x_min);
    return std::exp(std::log(x_min) + t * (std::log(x_max) - std::log(x_min)));
}

std::vector<double> GridSpec::points_vector() const {
    std::vector<double> xs(points);
    for (std::size_t i = 0; i < points; ++i) xs[i] = point(i);
    return xs;
}

namespace {

struct Extremum {
    double value;
    double arg;
    std::size_t index;
};

double checked_ratio(const ScalarFunction& f1, const ScalarFunction& f2, double x) {
    const double den = f2(x);
    if (!(den > 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "ratio_extrema: f2'' = " << den << " is not > 0 at x = " << x;
        throw DomainError(msg.str());
    }
    return f1(x) / den;
}

// Rescans [lo, hi] and returns the best point under `better`.
template <typename Better>
Extremum refine(const ScalarFunction& f1, const ScalarFunction& f2, double lo, double hi,
                Extremum best, Better better) {
    constexpr std::size_t kRefinePoints = 256;
    for (std::size_t i = 0; i < kRefinePoints; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (kRefinePoints - 1);
        const double r = checked_ratio(f1, f2, x);
        if (better(r, best.value)) best = {r, x, best.index};
    }
    return best;
}

}  // namespace

RatioBounds ratio_extrema(const ScalarFunction& f1_second, const ScalarFunction& f2_second,
                          const GridSpec& grid, int refinement) {
    grid.validate();
    std::vector<double> ratios(grid.points);
    parallel_for(grid.points, [&](std::size_t i) {
        ratios[i] = checked_ratio(f1_second, f2_second, grid.point(i));
    });

    Extremum lo{ratios[0], grid.point(0), 0};
    Extremum hi = lo;
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        if (ratios[i] < lo.value) lo = {ratios[i], grid.point(i), i};
        if (ratios[i] > hi.value) hi = {ratios[i], grid.point(i), i};
    }

    const auto bracket = [&](std::size_t i) {
        return std::pair{grid.point(i == 0 ? 0 : i - 1),
                         grid.point(std::min(i + 1, grid.points - 1))};
    };
    // Each level rescans the current bracket, then shrinks it to one refined step either side.
    auto lo_bracket = bracket(lo.index);
    auto hi_bracket = bracket(hi.index);
    const auto shrink = [&](std::pair<double, double> br, double arg) {
        const double step = (br.second - br.first) / 255.0;
        return std::pair{std::max(grid.x_min, arg - step), std::min(grid.x_max, arg + step)};
    };
    for (int level = 0; level < refinement; ++level) {
        lo = refine(f1_second, f2_second, lo_bracket.first, lo_bracket.second, lo, std::less<>{});
        hi = refine(f1_second, f2_second, hi_bracket.first, hi_bracket.second, hi,
                    std::greater<>{});
        lo_bracket = shrink(lo_bracket, lo.arg);
        hi_bracket = shrink(hi_bracket, hi.arg);
    }
    return {lo.value, hi.value, lo.arg, hi.arg, grid};
}

}  // namespace divkit
