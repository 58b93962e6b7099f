#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rstab/analysis.hpp"
#include "rstab/golden.hpp"

using namespace rstab;

namespace {

struct Fixture {
    AircraftModel model = build_aircraft_model(reference_model());
    LocusSummary summary = sample_locus(model.mdelta);
    oracle::DenseLocus dense;

    Fixture() {
        const oracle::ModalResponse m(model.M.A(), model.M.B(), model.M.C());
        dense = oracle::dense_locus(m, 1e-4, 1e4, 1000000);
    }
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Golden, FindsQuadraticMinimum) {
    const auto m = golden_section_minimize([](double x) { return (x - 2.0) * (x - 2.0) + 1.0; }, 5.0, 0.0, 1e-12);
    EXPECT_NEAR(m.x, 2.0, 1e-6);
    EXPECT_NEAR(m.f, 1.0, 1e-12);
    const auto edge = golden_section_minimize([](double x) { return x; }, 1.0, 3.0, 1e-12);
    EXPECT_NEAR(edge.x, 1.0, 1e-9);
}

TEST(Locus, ExtremaMatchDenseSweep) {
    const auto& f = fx();
    // the refined values can only exceed the grid values, and only by a sliver
    EXPECT_GE(f.summary.peak_gain, f.dense.peak * (1.0 - 1e-12));
    EXPECT_LT(rel(f.summary.peak_gain, f.dense.peak), 1e-8);
    EXPECT_GE(f.summary.x_max, f.dense.x_max - 1e-12);
    EXPECT_LT(rel(f.summary.x_max, f.dense.x_max), 1e-8);
    EXPECT_LE(f.summary.x_min, f.dense.x_min + 1e-12);
    EXPECT_LT(rel(f.summary.x_min, f.dense.x_min), 1e-8);
}

TEST(Locus, CrossingsMatchDenseSweep) {
    const auto& f = fx();
    ASSERT_EQ(f.summary.real_axis_crossings.size(), f.dense.crossings.size());
    for (std::size_t i = 0; i < f.dense.crossings.size(); ++i)
        EXPECT_NEAR(f.summary.real_axis_crossings[i].x, f.dense.crossings[i], 1e-6);
    EXPECT_NEAR(f.summary.real_axis_crossings.front().omega, 0.0, 0.0);
}

TEST(Locus, Preconditions) {
    const StateSpace unstable(Matrix::Identity(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Zero(1, 1));
    EXPECT_THROW((void)sample_locus(unstable), NotHurwitzError);
    const StateSpace biproper(-Matrix::Identity(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1));
    EXPECT_THROW((void)sample_locus(biproper), UnsupportedError);
    const StateSpace mimo(-Matrix::Identity(2, 2), Matrix::Identity(2, 2), Matrix::Identity(2, 2), Matrix::Zero(2, 2));
    EXPECT_THROW((void)sample_locus(mimo), DimensionError);
}

TEST(Exact, AgreesWithBruteForceSweep) {
    const auto& f = fx();
    const StabilityInterval iv = exact_bounds(f.model.mdelta, f.summary);
    const auto sweep = oracle::sweep_exact(f.model.mdelta.H(), f.model.mdelta.Qcal(), -100.0, 10.0, 1e-3);
    EXPECT_NEAR(iv.lower, sweep.lower, 1e-5);
    EXPECT_NEAR(iv.upper, sweep.upper, 1e-5);
    const auto& w = std::get<ExactWitness>(iv.witness);
    EXPECT_TRUE(w.certified);
    EXPECT_NEAR(w.crossing_lower, w.bisection_lower, 1e-5);
    EXPECT_NEAR(w.crossing_upper, w.bisection_upper, 1e-5);
}

TEST(Exact, EigenRouteAgrees) {
    const auto& f = fx();
    const StabilityInterval a = exact_bounds(f.model.mdelta, f.summary);
    const StabilityInterval b = exact_bounds_eigen(f.model.mdelta);
    EXPECT_NEAR(a.lower, b.lower, 1e-6);
    EXPECT_NEAR(a.upper, b.upper, 1e-6);
}

TEST(Exact, OneSidedAndNullCases) {
    // M(s) = 1/(s+1): stable for every delta > -1
    const MDeltaModel one_sided(-Matrix::Identity(1, 1), -Matrix::Identity(1, 1));
    const auto s = sample_locus(one_sided);
    const auto iv = exact_bounds(one_sided, s);
    EXPECT_NEAR(iv.lower, -1.0, 1e-6);
    EXPECT_FALSE(iv.upper_bounded());
    const auto pr = positive_real_bounds(s);
    EXPECT_FALSE(pr.upper_bounded());
    EXPECT_NEAR(pr.lower, -1.0, 1e-9);

    const MDeltaModel null(-Matrix::Identity(2, 2), Matrix::Zero(2, 2));
    const auto ns = sample_locus(null);
    const auto niv = exact_bounds(null, ns);
    EXPECT_FALSE(niv.lower_bounded());
    EXPECT_FALSE(niv.upper_bounded());
}

TEST(SmallGain, ReciprocalOfPeak) {
    const auto& f = fx();
    const auto iv = small_gain_bounds(f.summary);
    EXPECT_NEAR(iv.upper, 1.0 / f.dense.peak, 1e-8);
    EXPECT_NEAR(iv.lower, -1.0 / f.dense.peak, 1e-8);
}

TEST(Circle, RadiusMatchesDenseSweep) {
    const auto& f = fx();
    const auto iv = circle_bounds(f.summary);
    const auto& w = std::get<CircleWitness>(iv.witness);
    EXPECT_NEAR(w.center, 0.5 * (f.dense.x_max + f.dense.x_min), 1e-8);
    double r = 0.0;
    for (const auto& z : f.dense.value)
        r = std::max(r, std::abs(z - w.center));
    EXPECT_GE(w.radius, r * (1.0 - 1e-12));
    EXPECT_LT(rel(w.radius, r), 1e-8);
    EXPECT_NEAR(iv.lower, -1.0 / (w.center + w.radius), 1e-12);
    EXPECT_NEAR(iv.upper, -1.0 / (w.center - w.radius), 1e-12);
}

TEST(Circle, OptimizedCenterIsNoWorse) {
    const auto& f = fx();
    const StabilityInterval exact = exact_bounds(f.model.mdelta, f.summary);
    const auto mid = circle_bounds(f.summary);
    const auto opt = circle_bounds(f.summary, {true, exact});
    const auto worse = [&](const StabilityInterval& iv) {
        return std::min(iv.lower / exact.lower, iv.upper / exact.upper);
    };
    EXPECT_GE(worse(opt), worse(mid) - 1e-9);
    EXPECT_TRUE(std::get<CircleWitness>(opt.witness).optimized_center);
}

TEST(PositiveReal, ExtremeRealParts) {
    const auto& f = fx();
    const auto iv = positive_real_bounds(f.summary);
    EXPECT_NEAR(iv.lower, -1.0 / f.dense.x_max, 1e-6);
    EXPECT_NEAR(iv.upper, -1.0 / f.dense.x_min, 1e-8);
}

TEST(Popov, NoWorseThanBruteForceGrid) {
    const auto& f = fx();
    // thin the dense locus for the q-grid search
    oracle::DenseLocus thin;
    for (std::size_t i = 0; i < f.dense.omega.size(); i += 10) {
        thin.omega.push_back(f.dense.omega[i]);
        thin.value.push_back(f.dense.value[i]);
    }
    std::vector<double> qs;
    for (int i = -500; i <= 500; ++i)
        qs.push_back(i / 1000.0);
    double q_plus = 0.0, q_minus = 0.0;
    const double c_plus = oracle::popov_grid(thin, 1.0, qs, &q_plus);
    const double c_minus = oracle::popov_grid(thin, -1.0, qs, &q_minus);

    const auto iv = popov_bounds(f.summary);
    const auto& w = std::get<PopovWitness>(iv.witness);
    EXPECT_LE(w.c_plus, c_plus + 1e-6);
    EXPECT_NEAR(w.c_plus, c_plus, 1e-4);
    EXPECT_NEAR(w.q_plus, q_plus, 2e-3);
    EXPECT_GE(w.c_minus, c_minus - 1e-6);
    EXPECT_NEAR(w.c_minus, c_minus, 1e-4);

    // the returned lines really bound the dense locus
    for (std::size_t i = 0; i < f.dense.omega.size(); ++i) {
        const double x = f.dense.value[i].real();
        const double y = f.dense.omega[i] * f.dense.value[i].imag();
        EXPECT_LE(x - w.q_plus * y, w.c_plus + 1e-9);
        EXPECT_GE(x - w.q_minus * y, w.c_minus - 1e-9);
    }
}

TEST(Popov, VerticalLinesReproducePositiveReal) {
    const auto& f = fx();
    PopovOptions opt;
    opt.vertical_only = true;
    const auto pv = popov_bounds(f.summary, opt);
    const auto pr = positive_real_bounds(f.summary);
    EXPECT_NEAR(pv.lower, pr.lower, 1e-6 * std::abs(pr.lower));
    EXPECT_NEAR(pv.upper, pr.upper, 1e-6 * std::abs(pr.upper));
}

TEST(Verify, DetectsInflatedUpperBound) {
    const auto& f = fx();
    StabilityInterval iv = exact_bounds(f.model.mdelta, f.summary);
    iv.upper = 1.0;
    const auto rep = verify_interval(f.model.mdelta, iv, 100);
    EXPECT_FALSE(rep.passed);
    ASSERT_FALSE(rep.interior_failures.empty());
    const double first_bad = *std::min_element(
        rep.interior_failures.begin(), rep.interior_failures.end(),
        [](double a, double b) { return (a > 0 ? a : 1e9) < (b > 0 ? b : 1e9); });
    EXPECT_GT(first_bad, 0.5128);
    EXPECT_LT(first_bad, 0.7);
}

TEST(Verify, ExactBoundsAreTight) {
    const auto& f = fx();
    const StabilityInterval iv = exact_bounds(f.model.mdelta, f.summary);
    const auto rep = verify_interval(f.model.mdelta, iv, 100);
    EXPECT_TRUE(rep.passed);
    StabilityInterval narrow = iv;
    narrow.upper = 0.45;
    EXPECT_FALSE(verify_interval(f.model.mdelta, narrow, 10).passed);  // stable just outside
}

TEST(Verify, ZeroSamplesIsVacuous) {
    const auto& f = fx();
    StabilityInterval iv = small_gain_bounds(f.summary);
    iv.upper = 100.0;
    const auto rep = verify_interval(f.model.mdelta, iv, 0);
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.checked, 0u);
    EXPECT_FALSE(rep.messages.empty());
}
