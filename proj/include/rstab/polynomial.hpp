#pragma once

// Real polynomials stored as coefficient vectors in descending degree order:
// {a0, a1, ..., an} represents a0*s^n + a1*s^(n-1) + ... + an.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rstab/errors.hpp"

namespace rstab {

using Complex = std::complex<double>;
using Poly = std::vector<double>;

namespace poly {

template <typename T>
[[nodiscard]] T evaluate(std::span<const double> coeffs, T s) {
    T acc{0.0};
    for (double c : coeffs)
        acc = acc * s + c;
    return acc;
}

[[nodiscard]] inline Poly multiply(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        return {};
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

/// Sum of two polynomials of possibly different degree.
[[nodiscard]] inline Poly add(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::max(a.size(), b.size());
    Poly out(n, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[n - a.size() + i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[n - b.size() + i] += b[i];
    return out;
}

/// Drops leading coefficients whose magnitude is below rel_tol * max|coeff|.
[[nodiscard]] inline Poly trim(Poly p, double rel_tol = 0.0) {
    double scale = 0.0;
    for (double c : p)
        scale = std::max(scale, std::abs(c));
    auto first = std::find_if(p.begin(), p.end(), [&](double c) { return std::abs(c) > rel_tol * scale; });
    p.erase(p.begin(), first);
    return p;
}

/// Monic polynomial with the given roots, built by multiplying in one root at a time.
/// The input must be closed under conjugation; the (roundoff-level) imaginary parts
/// of the complex product are discarded.
[[nodiscard]] inline Poly from_roots(std::span<const Complex> roots) {
    std::vector<Complex> acc{Complex{1.0, 0.0}};
    for (const Complex& r : roots) {
        std::vector<Complex> next(acc.size() + 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] += acc[i];
            next[i + 1] -= acc[i] * r;
        }
        acc = std::move(next);
    }
    Poly out(acc.size());
    std::transform(acc.begin(), acc.end(), out.begin(), [](const Complex& c) { return c.real(); });
    return out;
}

/// Roots as eigenvalues of the companion matrix. Leading zeros are stripped first.
[[nodiscard]] inline std::vector<Complex> roots(std::span<const double> coeffs) {
    Poly p = trim(Poly(coeffs.begin(), coeffs.end()));
    if (p.empty())
        throw RepresentationError("roots of the zero polynomial are undefined");
    const std::size_t n = p.size() - 1;
    if (n == 0)
        return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j)
        companion(0, static_cast<Eigen::Index>(j)) = -p[j + 1] / p[0];
    for (std::size_t i = 1; i < n; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<Complex> out;
    out.reserve(n);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        out.push_back(solver.eigenvalues()[i]);
    return out;
}

}  // namespace poly
}  // namespace rstab
