#pragma once

/**
 * @file lti.hpp
 * Continuous-time LTI algebra: SISO transfer functions in zero/pole/gain and
 * coefficient form, state-space realizations, series and unity-feedback
 * interconnection, spectra and frequency response.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rstab/errors.hpp"
#include "rstab/polynomial.hpp"

namespace rstab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Tolerance used to pair complex roots with their conjugates.
inline constexpr double kConjugateTol = 1e-10;

namespace detail {

inline bool conjugate_closed(std::span<const Complex> roots, double tol) {
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i])
            continue;
        const double scale = std::max(1.0, std::abs(roots[i]));
        if (std::abs(roots[i].imag()) <= tol * scale) {
            used[i] = true;
            continue;
        }
        bool found = false;
        for (std::size_t j = i + 1; j < roots.size() && !found; ++j) {
            if (!used[j] && std::abs(roots[j] - std::conj(roots[i])) <= tol * scale) {
                used[i] = used[j] = true;
                found = true;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

inline std::vector<std::string> default_names(const std::string& prefix, Eigen::Index count) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(count));
    for (Eigen::Index i = 0; i < count; ++i)
        names.push_back(prefix + std::to_string(i + 1));
    return names;
}

}  // namespace detail

/// Rational SISO function held in both zero/pole/gain and coefficient form.
/// Construct through from_zpk(); both forms are kept consistent.
class TransferFunction {
public:
    static TransferFunction from_zpk(std::vector<Complex> zeros, std::vector<Complex> poles, double gain) {
        if (!std::isfinite(gain))
            throw RepresentationError("transfer function gain must be finite");
        if (!detail::conjugate_closed(zeros, kConjugateTol))
            throw RepresentationError("zeros are not closed under complex conjugation");
        if (!detail::conjugate_closed(poles, kConjugateTol))
            throw RepresentationError("poles are not closed under complex conjugation");
        if (zeros.size() > poles.size())
            throw RepresentationError("transfer function is improper (more zeros than poles)");
        TransferFunction tf;
        tf.numerator_ = poly::from_roots(zeros);
        for (double& c : tf.numerator_)
            c *= gain;
        tf.denominator_ = poly::from_roots(poles);
        tf.zeros_ = std::move(zeros);
        tf.poles_ = std::move(poles);
        tf.gain_ = gain;
        return tf;
    }

    [[nodiscard]] const std::vector<Complex>& zeros() const noexcept { return zeros_; }
    [[nodiscard]] const std::vector<Complex>& poles() const noexcept { return poles_; }
    [[nodiscard]] double gain() const noexcept { return gain_; }
    /// Descending coefficients; the denominator is monic.
    [[nodiscard]] const Poly& numerator() const noexcept { return numerator_; }
    [[nodiscard]] const Poly& denominator() const noexcept { return denominator_; }
    [[nodiscard]] std::size_t order() const noexcept { return poles_.size(); }
    [[nodiscard]] bool strictly_proper() const noexcept { return gain_ == 0.0 || zeros_.size() < poles_.size(); }

    /// Coefficient-form evaluation.
    [[nodiscard]] Complex operator()(Complex s) const {
        return poly::evaluate<Complex>(numerator_, s) / poly::evaluate<Complex>(denominator_, s);
    }

    [[nodiscard]] Complex evaluate_zpk(Complex s) const {
        Complex acc{gain_, 0.0};
        for (const Complex& z : zeros_)
            acc *= (s - z);
        for (const Complex& p : poles_)
            acc /= (s - p);
        return acc;
    }

private:
    TransferFunction() = default;

    std::vector<Complex> zeros_;
    std::vector<Complex> poles_;
    double gain_ = 0.0;
    Poly numerator_;
    Poly denominator_;
};

[[nodiscard]] inline TransferFunction tf_from_zpk(std::vector<Complex> zeros, std::vector<Complex> poles, double gain) {
    return TransferFunction::from_zpk(std::move(zeros), std::move(poles), gain);
}

/// Real state-space realization (A, B, C, D) with signal labels. Immutable once built.
class StateSpace {
public:
    StateSpace(Matrix a, Matrix b, Matrix c, Matrix d, std::vector<std::string> state_names = {},
               std::vector<std::string> input_names = {}, std::vector<std::string> output_names = {})
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        const Eigen::Index n = a_.rows();
        if (a_.cols() != n)
            throw DimensionError("state matrix A must be square");
        if (b_.rows() != n)
            throw DimensionError("B must have as many rows as A");
        if (c_.cols() != n)
            throw DimensionError("C must have as many columns as A");
        if (d_.rows() != c_.rows() || d_.cols() != b_.cols())
            throw DimensionError("D must be outputs x inputs");
        state_names_ = state_names.empty() ? detail::default_names("x", n) : std::move(state_names);
        input_names_ = input_names.empty() ? detail::default_names("u", b_.cols()) : std::move(input_names);
        output_names_ = output_names.empty() ? detail::default_names("y", c_.rows()) : std::move(output_names);
        if (std::ssize(state_names_) != n || std::ssize(input_names_) != b_.cols() ||
            std::ssize(output_names_) != c_.rows())
            throw DimensionError("label count does not match system dimensions");
    }

    /// Static gain with no states.
    static StateSpace gain(double k) {
        return {Matrix(0, 0), Matrix(0, 1), Matrix(1, 0), Matrix::Constant(1, 1, k)};
    }

    [[nodiscard]] const Matrix& A() const noexcept { return a_; }
    [[nodiscard]] const Matrix& B() const noexcept { return b_; }
    [[nodiscard]] const Matrix& C() const noexcept { return c_; }
    [[nodiscard]] const Matrix& D() const noexcept { return d_; }
    [[nodiscard]] Eigen::Index states() const noexcept { return a_.rows(); }
    [[nodiscard]] Eigen::Index inputs() const noexcept { return b_.cols(); }
    [[nodiscard]] Eigen::Index outputs() const noexcept { return c_.rows(); }
    [[nodiscard]] bool is_siso() const noexcept { return inputs() == 1 && outputs() == 1; }
    [[nodiscard]] bool strictly_proper() const { return d_.isZero(0.0); }
    [[nodiscard]] const std::vector<std::string>& state_names() const noexcept { return state_names_; }
    [[nodiscard]] const std::vector<std::string>& input_names() const noexcept { return input_names_; }
    [[nodiscard]] const std::vector<std::string>& output_names() const noexcept { return output_names_; }

    /// G(s) = C (sI - A)^-1 B + D via a dense LU solve.
    [[nodiscard]] ComplexMatrix evaluate(Complex s) const {
        const Eigen::Index n = states();
        ComplexMatrix g = d_.cast<Complex>();
        if (n == 0)
            return g;
        ComplexMatrix resolvent = s * ComplexMatrix::Identity(n, n) - a_.cast<Complex>();
        g += c_.cast<Complex>() * resolvent.partialPivLu().solve(b_.cast<Complex>());
        return g;
    }

private:
    Matrix a_, b_, c_, d_;
    std::vector<std::string> state_names_, input_names_, output_names_;
};

/// Samples of a SISO frequency response on an increasing grid of nonnegative frequencies.
struct FrequencyLocus {
    std::vector<double> omega;
    std::vector<Complex> value;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t size() const noexcept { return omega.size(); }
};

// ---------------------------------------------------------------------------
// Spectra

[[nodiscard]] inline std::vector<Complex> eigenvalues(const Matrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("eigenvalues require a square matrix");
    if (a.rows() == 0)
        return {};
    Eigen::EigenSolver<Matrix> solver(a, false);
    if (solver.info() != Eigen::Success)
        throw Error("eigenvalue iteration did not converge");
    std::vector<Complex> out(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    return out;
}

[[nodiscard]] inline double spectral_abscissa(const Matrix& a) {
    double m = -std::numeric_limits<double>::infinity();
    for (const Complex& l : eigenvalues(a))
        m = std::max(m, l.real());
    return m;
}

/// True iff every eigenvalue has real part strictly below -margin.
[[nodiscard]] inline bool is_hurwitz(const Matrix& a, double margin = 0.0) {
    return spectral_abscissa(a) < -margin;
}

[[nodiscard]] inline std::size_t count_unstable(const Matrix& a) {
    const auto ev = eigenvalues(a);
    return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [](const Complex& l) { return l.real() > 0.0; }));
}

// ---------------------------------------------------------------------------
// Realization and interconnection

/// Controllable companion realization of a proper transfer function.
[[nodiscard]] inline StateSpace ss_realize(const TransferFunction& tf) {
    const Poly& den = tf.denominator();
    Poly num = tf.numerator();
    const std::size_t n = den.size() - 1;
    if (num.size() > den.size())
        throw RealizationError("cannot realize an improper transfer function");
    num.insert(num.begin(), den.size() - num.size(), 0.0);

    const double feedthrough = num[0];
    Matrix a = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Matrix b = Matrix::Zero(static_cast<Eigen::Index>(n), 1);
    Matrix c = Matrix::Zero(1, static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        a(0, jj) = -den[j + 1];
        c(0, jj) = num[j + 1] - feedthrough * den[j + 1];
    }
    for (std::size_t i = 1; i < n; ++i)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    if (n > 0)
        b(0, 0) = 1.0;
    return {a, b, c, Matrix::Constant(1, 1, feedthrough)};
}

/// Cascade in which `controller` drives `plant`: the composite realizes plant(s)*controller(s)
/// with state [x_plant; x_controller] and A = [[A_p, B_p C_k], [0, A_k]].
[[nodiscard]] inline StateSpace series(const StateSpace& plant, const StateSpace& controller) {
    if (controller.outputs() != plant.inputs())
        throw DimensionError("series: controller outputs must equal plant inputs");
    const Eigen::Index np = plant.states();
    const Eigen::Index nk = controller.states();
    Matrix a = Matrix::Zero(np + nk, np + nk);
    a.topLeftCorner(np, np) = plant.A();
    a.topRightCorner(np, nk) = plant.B() * controller.C();
    a.bottomRightCorner(nk, nk) = controller.A();
    Matrix b(np + nk, controller.inputs());
    b.topRows(np) = plant.B() * controller.D();
    b.bottomRows(nk) = controller.B();
    Matrix c(plant.outputs(), np + nk);
    c.leftCols(np) = plant.C();
    c.rightCols(nk) = plant.D() * controller.C();
    Matrix d = plant.D() * controller.D();

    std::vector<std::string> names = plant.state_names();
    for (const auto& s : controller.state_names())
        names.push_back("k." + s);
    return {a, b, c, d, names, controller.input_names(), plant.output_names()};
}

/// Negative unity feedback around a strictly proper square loop: H = A - B C.
[[nodiscard]] inline StateSpace feedback_unity(const StateSpace& loop) {
    if (loop.inputs() != loop.outputs())
        throw DimensionError("unity feedback requires as many outputs as inputs");
    if (!loop.strictly_proper())
        throw UnsupportedError("unity feedback with nonzero feedthrough D is not supported");
    return {loop.A() - loop.B() * loop.C(), loop.B(), loop.C(), loop.D(),
            loop.state_names(), loop.input_names(), loop.output_names()};
}

/// Zero/pole/gain form of a SISO realization. Poles are the eigenvalues of A;
/// the numerator C adj(sI - A) B + D det(sI - A) comes from the Faddeev-LeVerrier recursion.
[[nodiscard]] inline TransferFunction tf_from_ss(const StateSpace& sys, double trim_tol = 1e-10) {
    if (!sys.is_siso())
        throw DimensionError("tf_from_ss requires a SISO system");
    const Eigen::Index n = sys.states();
    Poly den(static_cast<std::size_t>(n) + 1, 0.0);
    Poly num(static_cast<std::size_t>(n) + 1, 0.0);
    den[0] = 1.0;
    Matrix adj_term = Matrix::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        num[static_cast<std::size_t>(k)] = (sys.C() * adj_term * sys.B())(0, 0);
        const Matrix an = sys.A() * adj_term;
        const double ck = -an.trace() / static_cast<double>(k);
        den[static_cast<std::size_t>(k)] = ck;
        adj_term = an + ck * Matrix::Identity(n, n);
    }
    const double d = sys.D()(0, 0);
    for (std::size_t i = 0; i < num.size(); ++i)
        num[i] += d * den[i];

    Poly trimmed = poly::trim(num, trim_tol);
    std::vector<Complex> zeros = trimmed.size() > 1 ? poly::roots(trimmed) : std::vector<Complex>{};
    const double gain = trimmed.empty() ? 0.0 : trimmed.front();
    if (trimmed.empty())
        zeros.clear();
    return TransferFunction::from_zpk(std::move(zeros), eigenvalues(sys.A()), gain);
}

// ---------------------------------------------------------------------------
// Frequency response

enum class PolePolicy {
    Throw,    ///< singular (jwI - A) raises PoleOnGridError
    Perturb,  ///< shift the offending frequency by 1e-6 of the local grid step and warn
};

namespace detail {

inline bool resolvent_singular(const StateSpace& sys, double omega) {
    const Eigen::Index n = sys.states();
    if (n == 0)
        return false;
    ComplexMatrix r = Complex{0.0, omega} * ComplexMatrix::Identity(n, n) - sys.A().cast<Complex>();
    Eigen::PartialPivLU<ComplexMatrix> lu(r);
    return !(lu.rcond() > 64.0 * std::numeric_limits<double>::epsilon());
}

}  // namespace detail

/// Samples C (jwI - A)^-1 B + D of a SISO system on a sorted nonnegative grid.
[[nodiscard]] inline FrequencyLocus freq_response(const StateSpace& sys, std::span<const double> grid,
                                                  PolePolicy policy = PolePolicy::Throw) {
    if (!sys.is_siso())
        throw DimensionError("freq_response requires a SISO system");
    FrequencyLocus locus;
    locus.omega.reserve(grid.size());
    locus.value.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double w = grid[i];
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("frequency grid must be finite and nonnegative");
        if (i > 0 && !(w > grid[i - 1]))
            throw std::invalid_argument("frequency grid must be strictly increasing");
        if (detail::resolvent_singular(sys, w)) {
            if (policy == PolePolicy::Throw)
                throw PoleOnGridError(w, "frequency grid hits a pole at omega = " + std::to_string(w));
            double step = 0.0;
            if (i + 1 < grid.size())
                step = grid[i + 1] - w;
            else if (i > 0)
                step = w - grid[i - 1];
            else
                step = std::max(w, 1.0);
            const double shifted = w + 1e-6 * step;
            locus.warnings.push_back("pole on grid at omega = " + std::to_string(w) + "; evaluated at " +
                                     std::to_string(shifted) + " instead");
            w = shifted;
        }
        locus.omega.push_back(w);
        locus.value.push_back(sys.evaluate(Complex{0.0, w})(0, 0));
    }
    return locus;
}

/// n log-spaced points on [wmin, wmax].
[[nodiscard]] inline std::vector<double> logspace(double wmin, double wmax, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = wmin;
        return out;
    }
    const double l0 = std::log10(wmin);
    const double l1 = std::log10(wmax);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

}  // namespace rstab
