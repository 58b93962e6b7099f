#pragma once

/**
 * @file mdelta.hpp
 * Uncertain closed loop H + delta * Qcal with rank-one Qcal = sigma v w^T, and the
 * SISO fixed part M(s) of the equivalent M-Delta loop.
 *
 * Orientation: M is wired as a negative-feedback loop, u = -delta y, so that
 * 1 + delta M(jw) = 0 on the stability boundary. A real-axis intercept x of the
 * Nyquist locus therefore corresponds to delta = -1/x. This fixes M = (H, -sigma v, w^T, 0);
 * the sign is confirmed numerically by the determinant identity
 *   det(jwI - H - delta Qcal) = det(jwI - H) (1 + delta M(jw)).
 */

#include <cmath>
#include <limits>

#include "rstab/aircraft.hpp"
#include "rstab/errors.hpp"
#include "rstab/lti.hpp"

namespace rstab {

/// Effective-rank threshold for sigma_2 / sigma_1.
inline constexpr double kRankOneTol = 1e-8;

struct ClosedLoop {
    Matrix H;     ///< nominal closed-loop state matrix
    Matrix Qcal;  ///< perturbation direction, H~ = H + delta Qcal
};

struct RankOneFactor {
    double sigma = 0.0;
    Vector v;  ///< left singular vector, first significant entry positive
    Vector w;  ///< right singular vector
};

/// Unity negative feedback of plant(s) * controller(s) with the plant matrices
/// perturbed as A_p + delta Q_A, B_p + delta Q_B.
[[nodiscard]] inline ClosedLoop closed_loop_uncertain(const StateSpace& plant, const Matrix& QA, const Matrix& QB,
                                                      const StateSpace& controller) {
    if (!plant.is_siso() || !controller.is_siso())
        throw DimensionError("closed_loop_uncertain expects SISO plant and controller");
    if (!plant.strictly_proper())
        throw UnsupportedError("closed_loop_uncertain requires a strictly proper plant");
    if (QA.rows() != plant.states() || QA.cols() != plant.states() || QB.rows() != plant.states() || QB.cols() != 1)
        throw DimensionError("perturbation matrices do not match the plant");
    const StateSpace closed = feedback_unity(series(plant, controller));

    const Eigen::Index np = plant.states();
    const Eigen::Index nk = controller.states();
    Matrix q = Matrix::Zero(np + nk, np + nk);
    q.topLeftCorner(np, np) = QA - QB * controller.D() * plant.C();
    q.topRightCorner(np, nk) = QB * controller.C();
    return {closed.A(), q};
}

[[nodiscard]] inline ClosedLoop closed_loop_uncertain(const aircraft::UncertainPlant& plant, const StateSpace& controller) {
    return closed_loop_uncertain(plant.nominal, plant.QA, plant.QB, controller);
}

/// Rank-one factorization from the SVD. A zero matrix yields sigma = 0 with v = w = e1.
[[nodiscard]] inline RankOneFactor rank_one_factor(const Matrix& qcal) {
    if (qcal.rows() != qcal.cols() || qcal.rows() == 0)
        throw DimensionError("rank_one_factor expects a nonempty square matrix");
    const Eigen::Index n = qcal.rows();
    RankOneFactor f;
    Eigen::JacobiSVD<Matrix> svd(qcal, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) {
        f.sigma = 0.0;
        f.v = Vector::Unit(n, 0);
        f.w = Vector::Unit(n, 0);
        return f;
    }
    if (n > 1 && s(1) > kRankOneTol * s(0))
        throw UnsupportedError("perturbation has effective rank > 1 (sigma2/sigma1 = " + std::to_string(s(1) / s(0)) +
                               "); only rank-one uncertainty is supported");
    f.sigma = s(0);
    f.v = svd.matrixU().col(0);
    f.w = svd.matrixV().col(0);
    const double vmax = f.v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(f.v(i)) > 1e-12 * vmax) {
            if (f.v(i) < 0.0) {
                f.v = -f.v;
                f.w = -f.w;
            }
            break;
        }
    }
    return f;
}

/// Uncertain closed loop in M-Delta form.
class MDeltaModel {
public:
    MDeltaModel(Matrix h, Matrix qcal) : h_(std::move(h)), qcal_(std::move(qcal)) {
        if (h_.rows() != h_.cols() || h_.rows() != qcal_.rows() || qcal_.rows() != qcal_.cols())
            throw DimensionError("H and Qcal must be square of equal size");
        factor_ = rank_one_factor(qcal_);
        orientation_ = calibrate_orientation();
    }

    explicit MDeltaModel(const ClosedLoop& cl) : MDeltaModel(cl.H, cl.Qcal) {}

    [[nodiscard]] const Matrix& H() const noexcept { return h_; }
    [[nodiscard]] const Matrix& Qcal() const noexcept { return qcal_; }
    [[nodiscard]] double sigma() const noexcept { return factor_.sigma; }
    [[nodiscard]] const Vector& v() const noexcept { return factor_.v; }
    [[nodiscard]] const Vector& w() const noexcept { return factor_.w; }
    [[nodiscard]] const RankOneFactor& factor() const noexcept { return factor_; }
    /// Sign s with M = (H, s sigma v, w^T, 0); -1 for the negative-feedback wiring.
    [[nodiscard]] double orientation() const noexcept { return orientation_; }
    [[nodiscard]] bool null_perturbation() const noexcept { return factor_.sigma == 0.0; }

    [[nodiscard]] Matrix perturbed(double delta) const { return h_ + delta * qcal_; }

    [[nodiscard]] bool nominal_stable(double margin = 0.0) const { return is_hurwitz(h_, margin); }
    [[nodiscard]] bool stable_at(double delta, double margin = 0.0) const { return is_hurwitz(perturbed(delta), margin); }

    /// Max-entry error of sigma v w^T against Qcal.
    [[nodiscard]] double reconstruction_error() const {
        return (factor_.sigma * factor_.v * factor_.w.transpose() - qcal_).cwiseAbs().maxCoeff();
    }

private:
    double calibrate_orientation() const {
        if (factor_.sigma == 0.0)
            return -1.0;
        const Eigen::Index n = h_.rows();
        // probe frequency where M is well away from zero
        double best_ratio = std::numeric_limits<double>::infinity();
        double orientation = -1.0;
        for (double omega : {1.0, 0.1, 10.0, 0.01, 100.0}) {
            const ComplexMatrix r = Complex{0.0, omega} * ComplexMatrix::Identity(n, n) - h_.cast<Complex>();
            Eigen::PartialPivLU<ComplexMatrix> lu(r);
            if (!(lu.rcond() > 1e-12))
                continue;
            const Complex m0 = (factor_.w.cast<Complex>().transpose() *
                                lu.solve((factor_.sigma * factor_.v).cast<Complex>()))(0, 0);
            if (std::abs(m0) < 1e-9)
                continue;
            const Complex det_nominal = lu.determinant();
            for (double sign : {-1.0, 1.0}) {
                const Complex delta = -1.0 / (sign * m0);
                const ComplexMatrix rp = r - delta * qcal_.cast<Complex>();
                const double ratio = std::abs(rp.partialPivLu().determinant() / det_nominal);
                if (ratio < best_ratio) {
                    best_ratio = ratio;
                    orientation = sign;
                }
            }
            break;
        }
        return orientation;
    }

    Matrix h_;
    Matrix qcal_;
    RankOneFactor factor_;
    double orientation_ = -1.0;
};

/// Fixed part M(s) of the M-Delta loop.
[[nodiscard]] inline StateSpace m_transfer(const MDeltaModel& model) {
    const Eigen::Index n = model.H().rows();
    Matrix b = model.orientation() * model.sigma() * model.v();
    Matrix c = model.w().transpose();
    return {model.H(), b, c, Matrix::Zero(1, 1), detail::default_names("x", n), {"u_delta"}, {"y_delta"}};
}

/// State matrix of M closed under u = -delta y.
[[nodiscard]] inline Matrix close_loop(const StateSpace& m, double delta) {
    return m.A() - delta * m.B() * m.C();
}

}  // namespace rstab
