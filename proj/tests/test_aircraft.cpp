#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rstab/aircraft.hpp"
#include "rstab/model_file.hpp"

using namespace rstab;
using namespace rstab::aircraft;

TEST(Dimensionalize, HandComputedEntries) {
    const auto fc = reference_flight_condition();
    const auto dd = dimensionalize(fc, reference_derivatives());
    // 1/2 rho V0 S = 3062.5, 1/2 rho S c = 174.5625
    EXPECT_NEAR(dd.X.u, 3062.5 * 0.05, 1e-9);
    EXPECT_NEAR(dd.Z.w, 3062.5 * -2.8, 1e-9);
    EXPECT_NEAR(dd.Z.q, 3062.5 * 5.7 * -1.2, 1e-9);
    EXPECT_NEAR(dd.Z.wdot, 174.5625 * -0.7, 1e-9);
    EXPECT_NEAR(dd.M.wdot, 174.5625 * 5.7 * 0.38, 1e-9);
    EXPECT_NEAR(dd.M.q, 3062.5 * 5.7 * 5.7 * -0.5, 1e-8);
    EXPECT_NEAR(dd.Z.eta, 306250.0 * -0.04, 1e-8);
    EXPECT_NEAR(dd.M.eta, 306250.0 * 5.7 * 0.16, 1e-7);
}

TEST(Dimensionalize, RejectsNonPositiveFlightCondition) {
    auto fc = reference_flight_condition();
    fc.V0 = 0.0;
    EXPECT_THROW((void)dimensionalize(fc, reference_derivatives()), std::invalid_argument);
}

TEST(Longitudinal, SingularMassMatrix) {
    auto d = reference_derivatives();
    d.Z.wdot = 100.0;  // makes m - Zwdot negative
    const auto fc = reference_flight_condition();
    EXPECT_THROW((void)assemble_longitudinal(fc, dimensionalize(fc, d)), SingularMassError);
}

TEST(Longitudinal, ClosedFormInverseMatchesLu) {
    const auto fc = reference_flight_condition();
    const auto dd = dimensionalize(fc, reference_derivatives());
    const auto lm = assemble_longitudinal(fc, dd);
    const Matrix inv = mass_matrix_inverse(fc, dd);
    EXPECT_LT((inv * lm.mass - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Longitudinal, OpenLoopHasThreeUnstablePoles) {
    const auto plant = build_uncertain_plant(reference_flight_condition(), reference_derivatives());
    const auto eig = oracle::eig(plant.nominal.A());
    int unstable = 0;
    for (const auto& l : eig)
        unstable += l.real() > 0.0;
    EXPECT_EQ(unstable, 3);
    EXPECT_EQ(count_unstable(plant.nominal.A()), 3u);
    EXPECT_EQ(plant.nominal.outputs(), 3);
    EXPECT_EQ(plant.nominal.output_names(), (std::vector<std::string>{"theta", "q", "alpha"}));
}

TEST(Uncertainty, AffineFormMatchesRebuild) {
    const auto fc = reference_flight_condition();
    const auto dd = dimensionalize(fc, reference_derivatives());
    const auto plant = build_uncertain_plant(fc, reference_derivatives());
    for (double delta : {-16.0, -3.0, -0.25, 0.1, 0.5, 2.0}) {
        const StateSpace rebuilt = rebuild_at(fc, dd, delta);
        const Matrix a = plant.nominal.A() + delta * plant.QA;
        const Matrix b = plant.nominal.B() + delta * plant.QB;
        EXPECT_LT((rebuilt.A() - a).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + a.cwiseAbs().maxCoeff())) << delta;
        EXPECT_LT((rebuilt.B() - b).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + b.cwiseAbs().maxCoeff())) << delta;
    }
}

TEST(Uncertainty, PerturbationIsRankOneInPitchRow) {
    const auto plant = build_uncertain_plant(reference_flight_condition(), reference_derivatives());
    Eigen::JacobiSVD<Matrix> svd(plant.QA);
    EXPECT_GT(svd.singularValues()(0), 0.0);
    EXPECT_LT(svd.singularValues()(1), 1e-12 * svd.singularValues()(0));
    for (Eigen::Index r : {0, 1, 3})
        EXPECT_EQ(plant.QA.row(r).cwiseAbs().sum(), 0.0);
    EXPECT_GT(plant.mu, 0.0);
}

TEST(InnerLoop, ReproducesReferenceTransferFunction) {
    const auto plant = augment_uncertain(build_uncertain_plant(reference_flight_condition(), reference_derivatives()),
                                         kReferenceKq, kReferenceKalpha);
    const TransferFunction g = tf_from_ss(plant.nominal);
    // 2.64 (s+0.0164)(s+0.635) / ((s+4.31)(s+0.68)(s^2+0.0136s+0.000327))
    const std::vector<Complex> zeros{-0.0164, -0.635};
    const auto quad = oracle::durand_kerner({1.0, 0.0136, 0.000327});
    const std::vector<Complex> poles{-4.31, -0.68, quad[0], quad[1]};
    ASSERT_EQ(g.zeros().size(), 2u);
    ASSERT_EQ(g.poles().size(), 4u);
    for (const Complex& z : zeros) {
        double best = 1e9;
        for (const Complex& c : g.zeros())
            best = std::min(best, std::abs(c - z) / std::abs(z));
        EXPECT_LT(best, 0.02) << z;
    }
    for (const Complex& p : poles) {
        double best = 1e9;
        for (const Complex& c : g.poles())
            best = std::min(best, std::abs(c - p) / std::abs(p));
        EXPECT_LT(best, 0.02) << p;
    }
    EXPECT_NEAR(g.gain(), 2.64, 0.02 * 2.64);
    EXPECT_TRUE(is_hurwitz(plant.nominal.A()));
}

TEST(InnerLoop, ZeroGainsLeaveAirframeUnchanged) {
    const auto open = build_uncertain_plant(reference_flight_condition(), reference_derivatives());
    const auto aug = augment_uncertain(open, 0.0, 0.0);
    EXPECT_EQ(aug.nominal.A(), open.nominal.A());
    EXPECT_EQ(aug.QA, open.QA);
    EXPECT_EQ(aug.nominal.outputs(), 1);
}

TEST(InnerLoop, UncertaintyCommutesWithFeedback) {
    const auto fc = reference_flight_condition();
    const auto dd = dimensionalize(fc, reference_derivatives());
    const auto aug = augment_uncertain(build_uncertain_plant(fc, reference_derivatives()), kReferenceKq, kReferenceKalpha);
    for (double delta : {-5.0, 0.3}) {
        const StateSpace direct = inner_loop_stabilize(rebuild_at(fc, dd, delta), kReferenceKq, kReferenceKalpha);
        EXPECT_LT((direct.A() - (aug.nominal.A() + delta * aug.QA)).cwiseAbs().maxCoeff(), 1e-12);
    }
}
