#pragma once

#include <cmath>
#include <utility>

namespace rstab {

struct ScalarMinimum {
    double x = 0.0;
    double f = 0.0;
};

/// Golden-section search for the minimum of a unimodal function on [a, b].
/// Stops when the bracket is narrower than rel_tol * max(|a|, |b|) + abs_tol.
template <typename F>
[[nodiscard]] ScalarMinimum golden_section_minimize(F&& f, double a, double b, double rel_tol = 1e-10,
                                                    double abs_tol = 0.0, int max_iter = 300) {
    constexpr double kInvPhi = 0.6180339887498949;
    if (b < a)
        std::swap(a, b);
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < max_iter; ++it) {
        if (b - a <= rel_tol * std::max(std::abs(a), std::abs(b)) + abs_tol)
            break;
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

}  // namespace rstab
