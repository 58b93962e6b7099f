#pragma once

// Reference computations used only by the tests. They go through different numerical
// routes than the library (modal decomposition instead of LU resolvents, Durand-Kerner
// instead of companion eigenvalues, brute-force sweeps instead of refined searches).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

inline double max_real_eig(const Matrix& a) {
    Eigen::EigenSolver<Matrix> es(a, false);
    return es.eigenvalues().real().maxCoeff();
}

inline std::vector<Complex> eig(const Matrix& a) {
    Eigen::EigenSolver<Matrix> es(a, false);
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

/// SISO response through the eigendecomposition A = V L V^-1.
class ModalResponse {
public:
    ModalResponse(const Matrix& a, const Matrix& b, const Matrix& c, double d = 0.0) : d_(d) {
        Eigen::EigenSolver<Matrix> es(a, true);
        lambda_ = es.eigenvalues();
        const CMatrix v = es.eigenvectors();
        cv_ = c.cast<Complex>() * v;
        vib_ = v.fullPivLu().solve(b.cast<Complex>());
    }

    Complex operator()(Complex s) const {
        Complex sum = d_;
        for (Eigen::Index i = 0; i < lambda_.size(); ++i)
            sum += cv_(0, i) * vib_(i, 0) / (s - lambda_(i));
        return sum;
    }

private:
    Eigen::VectorXcd lambda_;
    CMatrix cv_;
    CMatrix vib_;
    double d_;
};

/// Roots of a polynomial given by descending coefficients.
inline std::vector<Complex> durand_kerner(std::vector<double> p, int iters = 2000) {
    while (!p.empty() && p.front() == 0.0)
        p.erase(p.begin());
    const std::size_t n = p.size() - 1;
    if (n == 0)
        return {};
    const double lead = p.front();
    for (double& c : p)
        c /= lead;
    std::vector<Complex> z(n);
    double bound = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
        bound = std::max(bound, std::abs(p[i]));
    const Complex seed(0.4, 0.9);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = (1.0 + bound) * std::pow(seed, static_cast<double>(i));
    const auto eval = [&](Complex s) {
        Complex acc = 0.0;
        for (double c : p)
            acc = acc * s + c;
        return acc;
    };
    for (int it = 0; it < iters; ++it) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    den *= z[i] - z[j];
            const Complex step = eval(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-15)
            break;
    }
    return z;
}

/// Greedy nearest pairing; returns the largest distance between paired roots.
inline double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const Complex& x : a) {
        auto it = std::min_element(b.begin(), b.end(), [&](Complex p, Complex q) { return std::abs(p - x) < std::abs(q - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

struct DenseLocus {
    std::vector<double> omega;
    std::vector<Complex> value;
    double peak = 0.0;
    double x_max = -std::numeric_limits<double>::infinity();
    double x_min = std::numeric_limits<double>::infinity();
    std::vector<double> crossings;  ///< Re M where Im M changes sign (plus omega = 0)
};

template <typename F>
DenseLocus dense_locus(const F& m, double wmin, double wmax, std::size_t n) {
    DenseLocus d;
    d.omega.reserve(n + 1);
    d.value.reserve(n + 1);
    d.omega.push_back(0.0);
    d.value.push_back(m(Complex(0.0, 0.0)));
    const double a = std::log10(wmin), b = std::log10(wmax);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        d.omega.push_back(w);
        d.value.push_back(m(Complex(0.0, w)));
    }
    d.crossings.push_back(d.value[0].real());
    for (std::size_t i = 0; i < d.value.size(); ++i) {
        const Complex z = d.value[i];
        d.peak = std::max(d.peak, std::abs(z));
        d.x_max = std::max(d.x_max, z.real());
        d.x_min = std::min(d.x_min, z.real());
        if (i > 1 && std::signbit(d.value[i - 1].imag()) != std::signbit(z.imag())) {
            const Complex p = d.value[i - 1];
            const double t = p.imag() / (p.imag() - z.imag());
            d.crossings.push_back(p.real() + t * (z.real() - p.real()));
        }
    }
    return d;
}

/// min over a q grid of max over the sampled locus of side*(Re - q w Im); returns signed c.
inline double popov_grid(const DenseLocus& d, double side, const std::vector<double>& qs, double* q_best = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    for (double q : qs) {
        double sup = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < d.omega.size(); ++i)
            sup = std::max(sup, side * (d.value[i].real() - q * d.omega[i] * d.value[i].imag()));
        if (sup < best) {
            best = sup;
            if (q_best)
                *q_best = q;
        }
    }
    return side * best;
}

/// Exact interval by marching delta from 0 in fixed steps, then bisecting the last bracket.
struct SweepResult {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
};

inline SweepResult sweep_exact(const Matrix& h, const Matrix& q, double lo_limit, double hi_limit, double step) {
    const auto stable = [&](double d) { return max_real_eig(h + d * q) < 0.0; };
    const auto refine = [&](double a, double b) {
        for (int i = 0; i < 60; ++i) {
            const double m = 0.5 * (a + b);
            (stable(m) ? a : b) = m;
        }
        return 0.5 * (a + b);
    };
    SweepResult r;
    const auto n_up = static_cast<long>(std::llround(hi_limit / step));
    for (long k = 1; k <= n_up; ++k) {
        if (!stable(static_cast<double>(k) * step)) {
            r.upper = refine(static_cast<double>(k - 1) * step, static_cast<double>(k) * step);
            break;
        }
    }
    const auto n_lo = static_cast<long>(std::llround(-lo_limit / step));
    for (long k = 1; k <= n_lo; ++k) {
        if (!stable(-static_cast<double>(k) * step)) {
            r.lower = refine(-static_cast<double>(k - 1) * step, -static_cast<double>(k) * step);
            break;
        }
    }
    return r;
}

/// Random Hurwitz H with a random rank-1 Qcal = sigma v w^T.
struct RandomSystem {
    Matrix H;
    Matrix Q;
};

inline RandomSystem random_rank_one(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dim(3, 8);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_real_distribution<double> shift(0.1, 1.0);
    std::uniform_real_distribution<double> gain(0.2, 5.0);
    const int n = dim(rng);
    Matrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = nd(rng);
    Matrix h = r - (max_real_eig(r) + shift(rng)) * Matrix::Identity(n, n);
    Eigen::VectorXd v(n), w(n);
    for (int i = 0; i < n; ++i) {
        v(i) = nd(rng);
        w(i) = nd(rng);
    }
    return {h, gain(rng) * v.normalized() * w.normalized().transpose()};
}

}  // namespace oracle
