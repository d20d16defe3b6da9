#pragma once

// Closed-form scalar expressions used by the convexity and monotonicity arguments:
// the m/k auxiliary functions, the bracketed power-mean inequalities, and the printed
// closed forms of the g-ratios. Each auxiliary returns the value together with the
// magnitude of the terms that cancel in it, so scans can use a cancellation-aware tolerance.

#include <algorithm>
#include <cmath>
#include <concepts>

namespace divkit::forms {

template <std::floating_point T>
struct Scaled {
    T value;
    T magnitude;  ///< |positive group| + |negative group|
};

template <std::floating_point T>
Scaled<T> gap(T positive, T negative) {
    return {positive - negative, std::abs(positive) + std::abs(negative)};
}

// Two-link claim a <= b <= c: its weaker link decides.
template <std::floating_point T>
Scaled<T> weaker(Scaled<T> first, Scaled<T> second) {
    const T s1 = first.value / std::max(T(1), first.magnitude);
    const T s2 = second.value / std::max(T(1), second.magnitude);
    return s1 <= s2 ? first : second;
}

template <std::floating_point T>
T x32(T x) {
    return x * std::sqrt(x);
}

template <std::floating_point T>
Scaled<T> m1(T x) {
    const T mid = (x + 1) / 2;
    return gap((x * x * x + 1) / 2 * x32(mid), x32(x) * (x32(x) + 1) / 2);
}

template <std::floating_point T>
Scaled<T> m2(T x) {
    const T mid = (x + 1) / 2;
    return gap((x * x + 1) / 2 * std::sqrt(mid), std::sqrt(x) * (x32(x) + 1) / 2);
}

template <std::floating_point T>
Scaled<T> m3(T x) {
    const T mid = (x + 1) / 2;
    return gap(mid * mid * std::sqrt(mid), std::sqrt(x) * (x32(x) + 1) / 2);
}

template <std::floating_point T>
Scaled<T> k1(T x) {
    const T r = std::sqrt(x);
    const T pos = x * x * x + 1 + 4 * std::sqrt(2 * x * (x + 1)) * (r + 1) * (x + 1);
    const T neg = 8 * x * x * r + 5 * x * x + 8 * x * r + 5 * x + 8 * r;
    return gap(pos, neg);
}

/// General k2 family: lead*x^2 - x^{3/2} + 6x - sqrt(x) + constant - (x+1)(sqrt(x)+1)sqrt(2x+2).
/// As printed: lead = 1, constant = 2.
template <std::floating_point T>
Scaled<T> k2_family(T x, T lead, T constant) {
    const T r = std::sqrt(x);
    const T pos = lead * x * x + 6 * x + constant;
    const T neg = x * r + r + (x + 1) * (r + 1) * std::sqrt(2 * x + 2);
    return gap(pos, neg);
}

template <std::floating_point T>
Scaled<T> k3(T x) {
    const T r = std::sqrt(x);
    const T pos = 2 * (x * x + 1) * (x * x + x + 1) + 2 * r * (x + 1) * (x * x + 7 * x + 1);
    const T neg = (x + 1) * (x * x + 4 * x + 1) * (r + 1) * std::sqrt(2 * x + 2);
    return gap(pos, neg);
}

template <std::floating_point T>
Scaled<T> k4(T x) {
    const T r = std::sqrt(x);
    const T x2 = x * x;
    const T x3 = x2 * x;
    const T x4 = x2 * x2;
    const T p6 = x3 * x3 + 4 * x4 * x + 6 * x4 + 18 * x3 + 6 * x2 + 4 * x + 1;
    const T q4 = x4 + 3 * x3 + 3 * x + 1;
    const T p8 = 1 + 4 * x + 10 * x2 + 52 * x3 + 58 * x4 + 52 * x4 * x + 10 * x3 * x3 +
                 4 * x4 * x3 + x4 * x4;
    const T outer = 12 * r * (r + 1) * (x + 1) * (x + 1);
    const T w = 2 * x + 2;
    const T pos = w * w * std::sqrt(w) * p8 + outer * r * (x2 + 1) * q4;
    const T neg = outer * (x + 1) * p6;
    return gap(pos, neg);
}

template <std::floating_point T>
Scaled<T> k5(T x) {
    const T w = 2 * x + 2;
    const T pos = 8 * (x * x * x * x + 3 * x * x * std::sqrt(x) + 3 * x32(x) + 1);
    const T neg = (x32(x) + 1) * w * w * std::sqrt(w);
    return gap(pos, neg);
}

template <std::floating_point T>
Scaled<T> k6(T x) {
    const T w = 2 * x + 2;
    const T x2 = x * x;
    const T pos = w * w * std::sqrt(w) * (x2 * x2 + 4 * x2 + 1);
    const T neg = 4 * x2 * (3 * x2 * x2 + 4 * x2 * x + 4 * x2 + 7 * x + 6) +
                  4 * std::sqrt(x) * (3 + 4 * x + 4 * x2 + 7 * x2 * x + 6 * x2 * x2);
    return gap(pos, neg);
}

template <std::floating_point T>
Scaled<T> k7(T x) {
    const T r = std::sqrt(x);
    const T w = 2 * x + 2;
    const T pos = 2 * (x * x * x * r + 3 * x * x * r + 4 * x * x + 4 * x * r + 3 * x + 1);
    const T neg = r * w * w * std::sqrt(w);
    return gap(pos, neg);
}

/// (x^{3/2}+1)/2 >= ((x+1)/2)^{3/2}
template <std::floating_point T>
Scaled<T> ineq15(T x) {
    return gap((x32(x) + 1) / 2, x32((x + 1) / 2));
}

/// (x^{3/2}+1)/2 >= sqrt(x) sqrt((x+1)/2)
template <std::floating_point T>
Scaled<T> ineq16(T x) {
    return gap((x32(x) + 1) / 2, std::sqrt(x) * std::sqrt((x + 1) / 2));
}

/// sqrt(x)sqrt((x+1)/2) <= ((sqrt x+1)/2)^2 sqrt((x+1)/2) <= ((x+1)/2)((sqrt x+1)/2)
template <std::floating_point T>
Scaled<T> ineq17(T x) {
    const T a = (std::sqrt(x) + 1) / 2;
    const T root_mid = std::sqrt((x + 1) / 2);
    const T middle = a * a * root_mid;
    return weaker(gap(middle, std::sqrt(x) * root_mid), gap((x + 1) / 2 * a, middle));
}

/// ((x+1)/2)((sqrt x+1)/2) <= (x^{3/2}+1)/2
template <std::floating_point T>
Scaled<T> ineq18(T x) {
    return gap((x32(x) + 1) / 2, (x + 1) / 2 * ((std::sqrt(x) + 1) / 2));
}

/// ((sqrt x+1)/2)^3 <= (x^{3/2}+1)/2
template <std::floating_point T>
Scaled<T> ineq20(T x) {
    const T a = (std::sqrt(x) + 1) / 2;
    return gap((x32(x) + 1) / 2, a * a * a);
}

/// x^{3/2} <= ((sqrt x+1)/2)^3 ((x+1)/2)^{3/2}
template <std::floating_point T>
Scaled<T> ineq21(T x) {
    const T a = (std::sqrt(x) + 1) / 2;
    return gap(a * a * a * x32((x + 1) / 2), x32(x));
}

/// x^{3/2} <= ((sqrt x+1)/2)^3 ((x+1)/2)^{3/2} <= ((x^{3/2}+1)/2)((x+1)/2)^{3/2}
template <std::floating_point T>
Scaled<T> ineq22(T x) {
    const T a = (std::sqrt(x) + 1) / 2;
    const T mid32 = x32((x + 1) / 2);
    const T middle = a * a * a * mid32;
    return weaker(gap(middle, x32(x)), gap((x32(x) + 1) / 2 * mid32, middle));
}

/// Power mean ((x^s + 1)/2)^{1/s}, s != 0.
template <std::floating_point T>
T power_mean(T x, T s) {
    return std::pow((std::pow(x, s) + 1) / 2, 1 / s);
}

/// Prefactor multiplying k2 in the factorized derivative of f''_{dh}/f''_{dI}.
template <std::floating_point T>
T dh_dI_derivative_prefactor(T x) {
    const T r = std::sqrt(x);
    const T bracket = x32(x) + 1 - std::sqrt(2 * x * (x + 1));
    return -(r - 1) * std::sqrt(2 * x + 2) / (4 * r * (x + 1) * bracket * bracket);
}

// Printed closed forms of the nine g-ratios, written out independently of the
// f''-quotient route.

template <std::floating_point T>
T g_hDelta_dDelta(T x) {
    const T w = 2 * x + 2;
    const T x1 = x + 1;
    return std::sqrt(w) * (x1 * x1 * x1 - 8 * x32(x)) /
           (2 * ((x32(x) + 1) * x1 * x1 - 4 * x32(x) * std::sqrt(w)));
}

template <std::floating_point T>
T g_dDelta_dh(T x) {
    const T w = 2 * x + 2;
    const T x1 = x + 1;
    return 2 * (x1 * x1 * (x32(x) + 1) - 4 * x32(x) * std::sqrt(w)) /
           (x1 * x1 * (2 * (x32(x) + 1) - x1 * std::sqrt(w)));
}

template <std::floating_point T>
T g_dh_dI(T x) {
    return (2 * (x32(x) + 1) - (x + 1) * std::sqrt(2 * x + 2)) /
           (2 * ((x32(x) + 1) - std::sqrt(2 * x * (x + 1))));
}

template <std::floating_point T>
T g_dI_hI(T x) {
    const T r = std::sqrt(x);
    return 2 * (x32(x) + 1 - std::sqrt(2 * x * (x + 1))) / (std::sqrt(2 * x + 2) * (r - 1) * (r - 1));
}

template <std::floating_point T>
T g_Th_Td(T x) {
    const T r = std::sqrt(x);
    const T sw = std::sqrt(2 * x + 2);
    return (r - 1) * (r - 1) * (x + r + 1) * sw / ((x * x + 1) * sw - 2 * r * (x32(x) + 1));
}

template <std::floating_point T>
T g_Td_PsiDelta(T x) {
    const T r = std::sqrt(x);
    const T sw = std::sqrt(2 * x + 2);
    const T x2 = x * x;
    return 2 * x * (x + 1) * (x + 1) * ((x2 + 1) * sw - 2 * r * (x32(x) + 1)) /
           ((x - 1) * (x - 1) * sw * (x2 * x2 + 5 * x2 * x + 12 * x2 + 5 * x + 1));
}

template <std::floating_point T>
T g_Psih_Psid(T x) {
    const T w32 = x32(2 * x + 2);
    const T a = x32(x) - 1;
    return a * a * w32 / ((x * x * x + 1) * w32 - 8 * x32(x) * (x32(x) + 1));
}

template <std::floating_point T>
T g_Psid_PsiT(T x) {
    const T w32 = x32(2 * x + 2);
    return (x + 1) * ((x * x * x + 1) * w32 - 8 * x32(x) * (x32(x) + 1)) /
           (w32 * (x - 1) * (x - 1) * (x * x + x + 1));
}

template <std::floating_point T>
T g_Td_Jd(T x) {
    const T r = std::sqrt(x);
    const T w32 = x32(2 * x + 2);
    return 2 * (4 * r * (x + 1) * (x32(x) + 1) - (x * x + 1) * w32) /
           ((x + 1) * (8 * r * (x32(x) + 1) - (x + 1) * w32));
}

}  // namespace divkit::forms
