#pragma once

/**
 * @file analysis.hpp
 * End-to-end pipeline for the uncertain-c.g. aircraft: model definition ->
 * augmented uncertain plant -> closed loop with the outer controller -> M-Delta
 * model -> locus -> stability intervals.
 */

#include <string>
#include <vector>

#include "rstab/aircraft.hpp"
#include "rstab/criteria.hpp"
#include "rstab/lti.hpp"
#include "rstab/mdelta.hpp"
#include "rstab/model_file.hpp"

namespace rstab {

struct AircraftModel {
    ModelDefinition definition;
    aircraft::DimensionalDerivatives dimensional;
    aircraft::UncertainPlant open_loop;  ///< outputs (theta, q, alpha)
    aircraft::UncertainPlant augmented;  ///< inner loop closed, output theta
    StateSpace controller;
    MDeltaModel mdelta;
    StateSpace M;
    double Kq = 0.0;
    double Kalpha = 0.0;
};

[[nodiscard]] inline AircraftModel build_aircraft_model(const ModelDefinition& def, double Kq = aircraft::kReferenceKq,
                                                        double Kalpha = aircraft::kReferenceKalpha) {
    auto dd = aircraft::dimensionalize(def.flight, def.derivatives);
    auto open = aircraft::UncertainPlant{aircraft::to_state_space(aircraft::assemble_longitudinal(def.flight, dd), def.flight.V0),
                                         Matrix{}, Matrix{}, 0.0};
    auto pm = aircraft::perturbation_matrices(def.flight, dd);
    open.QA = std::move(pm.QA);
    open.QB = std::move(pm.QB);
    open.mu = pm.mu;
    auto augmented = aircraft::augment_uncertain(open, Kq, Kalpha);
    StateSpace controller = ss_realize(def.controller.transfer_function());
    MDeltaModel md(closed_loop_uncertain(augmented, controller));
    StateSpace m = m_transfer(md);
    return {def, dd, std::move(open), std::move(augmented), std::move(controller), std::move(md), std::move(m), Kq, Kalpha};
}

struct AnalysisOptions {
    SamplingOptions sampling;
    std::vector<Criterion> criteria{std::begin(kAllCriteria), std::end(kAllCriteria)};
    bool optimize_center = false;
    double stability_margin = 0.0;
    std::size_t verify_samples = 50;
};

struct AnalysisResult {
    LocusSummary summary;
    StabilityInterval exact;                  ///< always computed
    std::vector<StabilityInterval> intervals;  ///< selected criteria in table order
    std::vector<VerificationReport> verification;

    [[nodiscard]] bool all_verified() const {
        for (const auto& v : verification)
            if (!v.passed)
                return false;
        return true;
    }

    [[nodiscard]] const StabilityInterval* find(Criterion c) const {
        for (const auto& iv : intervals)
            if (iv.criterion == c)
                return &iv;
        return nullptr;
    }
};

[[nodiscard]] inline StabilityInterval compute_criterion(Criterion c, const MDeltaModel& model, const LocusSummary& s,
                                                         const StabilityInterval& exact, const AnalysisOptions& opt) {
    switch (c) {
    case Criterion::exact: return exact;
    case Criterion::small_gain: return small_gain_bounds(s);
    case Criterion::circle: {
        CircleOptions co;
        co.optimize_center = opt.optimize_center;
        co.reference = exact;
        return circle_bounds(s, co);
    }
    case Criterion::positive_real: return positive_real_bounds(s);
    case Criterion::popov: return popov_bounds(s);
    }
    (void)model;
    return exact;
}

/// Runs the selected criteria on an M-Delta model. Throws NotHurwitzError when the
/// nominal closed loop is unstable.
[[nodiscard]] inline AnalysisResult analyze(const MDeltaModel& model, const AnalysisOptions& opt = {}) {
    if (!model.nominal_stable(opt.stability_margin))
        throw NotHurwitzError("nominal closed loop is unstable (max Re eig(H) = " +
                              std::to_string(spectral_abscissa(model.H())) + "); robust stability analysis aborted");
    AnalysisResult r{sample_locus(model, opt.sampling), {}, {}, {}};
    ExactOptions eo;
    eo.margin = opt.stability_margin;
    r.exact = exact_bounds(model, r.summary, eo);
    for (Criterion c : kAllCriteria) {
        if (std::find(opt.criteria.begin(), opt.criteria.end(), c) == opt.criteria.end())
            continue;
        r.intervals.push_back(compute_criterion(c, model, r.summary, r.exact, opt));
    }
    VerifyOptions vo;
    vo.margin = opt.stability_margin;
    for (const auto& iv : r.intervals)
        r.verification.push_back(verify_interval(model, iv, opt.verify_samples, vo));
    return r;
}

}  // namespace rstab
