#pragma once

/**
 * @file criteria.hpp
 * Stability intervals for a scalar real uncertainty delta closing the loop
 * u = -delta y around a stable SISO M(s).
 *
 * Every frequency-domain criterion produces two real-axis intercepts: a positive one
 * p giving the lower bound -1/p, and a negative one n giving the upper bound -1/n.
 *
 *   small gain     : origin-centred circle enclosing the Nyquist locus
 *   circle         : real-axis-centred enclosing circle
 *   positive real  : vertical lines through the extreme real parts
 *   Popov          : lines Re M - q w Im M = c bounding the Popov plot
 *   exact          : real-axis crossings of the locus, certified on eig(H + delta Qcal)
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rstab/errors.hpp"
#include "rstab/golden.hpp"
#include "rstab/lti.hpp"
#include "rstab/mdelta.hpp"

namespace rstab {

enum class Criterion { exact, small_gain, circle, positive_real, popov };

inline constexpr Criterion kAllCriteria[] = {Criterion::exact, Criterion::small_gain, Criterion::circle,
                                             Criterion::positive_real, Criterion::popov};

/// Short identifier used on the command line and in machine-readable output.
[[nodiscard]] constexpr std::string_view criterion_id(Criterion c) {
    switch (c) {
    case Criterion::exact: return "exact";
    case Criterion::small_gain: return "smallgain";
    case Criterion::circle: return "circle";
    case Criterion::positive_real: return "posreal";
    case Criterion::popov: return "popov";
    }
    return "";
}

[[nodiscard]] constexpr std::string_view criterion_title(Criterion c) {
    switch (c) {
    case Criterion::exact: return "Exact";
    case Criterion::small_gain: return "Small gain";
    case Criterion::circle: return "Circle";
    case Criterion::positive_real: return "Positive real";
    case Criterion::popov: return "Popov";
    }
    return "";
}

[[nodiscard]] inline std::optional<Criterion> parse_criterion(std::string_view s) {
    for (Criterion c : kAllCriteria)
        if (criterion_id(c) == s)
            return c;
    return std::nullopt;
}

struct ExactWitness {
    double crossing_lower = -std::numeric_limits<double>::infinity();  ///< -1/x from the locus
    double crossing_upper = std::numeric_limits<double>::infinity();
    double bisection_lower = -std::numeric_limits<double>::infinity();  ///< eigenvalue bisection
    double bisection_upper = std::numeric_limits<double>::infinity();
    double omega_lower = 0.0;  ///< crossing frequency of the destabilizing mode
    double omega_upper = 0.0;
    bool certified = true;  ///< both routes agree within the bisection tolerance
};

struct SmallGainWitness {
    double radius = 0.0;
    double omega_peak = 0.0;
};

struct CircleWitness {
    double center = 0.0;
    double radius = 0.0;
    bool optimized_center = false;
};

struct PositiveRealWitness {
    double x_max = 0.0;
    double x_min = 0.0;
};

struct PopovWitness {
    double q_plus = 0.0;   ///< slope parameter of the right line
    double c_plus = 0.0;   ///< its real-axis intercept
    double q_minus = 0.0;  ///< slope parameter of the left line
    double c_minus = 0.0;
};

using Witness = std::variant<ExactWitness, SmallGainWitness, CircleWitness, PositiveRealWitness, PopovWitness>;

struct StabilityInterval {
    Criterion criterion = Criterion::exact;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    double positive_intercept = 0.0;  ///< lower = -1/positive_intercept when bounded
    double negative_intercept = 0.0;  ///< upper = -1/negative_intercept when bounded
    Witness witness;

    [[nodiscard]] bool lower_bounded() const noexcept { return std::isfinite(lower); }
    [[nodiscard]] bool upper_bounded() const noexcept { return std::isfinite(upper); }
    [[nodiscard]] bool contains(double delta) const noexcept { return delta >= lower && delta <= upper; }
};

/// Interval from the two real-axis intercepts; an intercept on the wrong side of the
/// origin leaves that side unbounded.
[[nodiscard]] inline StabilityInterval interval_from_intercepts(Criterion c, double positive, double negative,
                                                                Witness witness) {
    StabilityInterval out;
    out.criterion = c;
    out.positive_intercept = positive;
    out.negative_intercept = negative;
    out.lower = positive > 0.0 ? -1.0 / positive : -std::numeric_limits<double>::infinity();
    out.upper = negative < 0.0 ? -1.0 / negative : std::numeric_limits<double>::infinity();
    out.witness = std::move(witness);
    return out;
}

// ---------------------------------------------------------------------------
// Locus sampling

struct Crossing {
    double omega = 0.0;
    double x = 0.0;
};

struct SamplingOptions {
    double wmin = 1e-4;
    double wmax = 1e4;
    std::size_t n = 4000;
    /// Golden-section bracket width, in decades of omega, at which extrema are accepted.
    double refine_tol = 1e-9;
};

struct LocusSummary {
    StateSpace M;
    FrequencyLocus locus;               ///< base grid plus omega = 0 plus refined points
    std::vector<double> popov_ordinate;  ///< omega * Im M(j omega)
    double x_max = 0.0;
    double x_min = 0.0;
    double omega_x_max = 0.0;
    double omega_x_min = 0.0;
    double peak_gain = 0.0;
    double omega_peak = 0.0;
    std::vector<Crossing> real_axis_crossings;
    double refine_tol = 1e-9;

    [[nodiscard]] Complex evaluate(double omega) const { return M.evaluate(Complex{0.0, omega})(0, 0); }
};

struct Extremum {
    double omega = 0.0;
    double value = -std::numeric_limits<double>::infinity();
    Complex response{};
};

namespace detail {

/// Maximum of g(omega, M(j omega)) over the samples, with every discrete local maximum
/// polished by golden-section search between its neighbours. Refined points are appended
/// to `added` when it is non-null.
template <typename G>
Extremum refine_sup(const LocusSummary& s, const std::vector<double>& omega, const std::vector<Complex>& value, G&& g,
                    std::vector<std::pair<double, Complex>>* added = nullptr) {
    const std::size_t n = omega.size();
    Extremum best;
    if (n == 0)
        return best;
    std::vector<double> gv(n);
    for (std::size_t i = 0; i < n; ++i) {
        gv[i] = g(omega[i], value[i]);
        if (gv[i] > best.value)
            best = {omega[i], gv[i], value[i]};
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool left_ok = i == 0 || gv[i] >= gv[i - 1];
        if (!left_ok || gv[i] < gv[i + 1])
            continue;
        const double a = i == 0 ? omega[0] : omega[i - 1];
        const double b = omega[i + 1];
        ScalarMinimum m;
        if (a <= 0.0) {
            const auto neg = [&](double w) { return -g(w, s.evaluate(w)); };
            m = golden_section_minimize(neg, a, b, 0.0, s.refine_tol * b);
        } else {
            const auto neg = [&](double lw) {
                const double w = std::pow(10.0, lw);
                return -g(w, s.evaluate(w));
            };
            m = golden_section_minimize(neg, std::log10(a), std::log10(b), 0.0, s.refine_tol);
            m.x = std::pow(10.0, m.x);
        }
        const Complex r = s.evaluate(m.x);
        const double val = g(m.x, r);
        if (added)
            added->emplace_back(m.x, r);
        if (val > best.value)
            best = {m.x, val, r};
    }
    return best;
}

inline void merge_points(FrequencyLocus& locus, std::vector<std::pair<double, Complex>> pts) {
    for (std::size_t i = 0; i < locus.size(); ++i)
        pts.emplace_back(locus.omega[i], locus.value[i]);
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    locus.omega.clear();
    locus.value.clear();
    for (const auto& [w, v] : pts) {
        if (!locus.omega.empty() && !(w > locus.omega.back()))
            continue;
        locus.omega.push_back(w);
        locus.value.push_back(v);
    }
}

}  // namespace detail

/// Frequency sweep of a stable, strictly proper SISO M on {0} U logspace(wmin, wmax, n),
/// with real-axis crossings located by bisection and the extrema of Re M and |M| polished.
[[nodiscard]] inline LocusSummary sample_locus(const StateSpace& M, const SamplingOptions& opt = {}) {
    if (!M.is_siso())
        throw DimensionError("sample_locus requires a SISO system");
    if (!M.strictly_proper())
        throw UnsupportedError("sample_locus requires a strictly proper system");
    if (!(opt.wmin > 0.0) || !(opt.wmax > opt.wmin) || opt.n < 2)
        throw std::invalid_argument("sample_locus: need 0 < wmin < wmax and n >= 2");
    if (M.states() > 0 && !is_hurwitz(M.A()))
        throw NotHurwitzError("the fixed part M is not stable (max Re eig = " + std::to_string(spectral_abscissa(M.A())) +
                              "); the graphical criteria presume a stable nominal loop");

    LocusSummary s{M, {}, {}, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, {}, opt.refine_tol};
    std::vector<double> grid{0.0};
    const auto base = logspace(opt.wmin, opt.wmax, opt.n);
    grid.insert(grid.end(), base.begin(), base.end());
    s.locus = freq_response(M, grid, PolePolicy::Perturb);

    std::vector<std::pair<double, Complex>> added;

    // Real-axis crossings. omega = 0 always counts.
    const auto& om = s.locus.omega;
    const auto& val = s.locus.value;
    s.real_axis_crossings.push_back({om[0], val[0].real()});
    for (std::size_t i = 1; i + 1 < om.size(); ++i) {
        const double ia = val[i].imag();
        const double ib = val[i + 1].imag();
        if (ia == 0.0) {
            s.real_axis_crossings.push_back({om[i], val[i].real()});
            continue;
        }
        if (ia * ib >= 0.0)
            continue;
        double a = om[i], b = om[i + 1];
        double fa = ia;
        Complex mid{};
        double wm = 0.5 * (a + b);
        for (int it = 0; it < 200; ++it) {
            wm = 0.5 * (a + b);
            mid = s.evaluate(wm);
            if (std::abs(mid.imag()) < 1e-13 || (b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * b)
                break;
            if ((mid.imag() < 0.0) == (fa < 0.0)) {
                a = wm;
                fa = mid.imag();
            } else {
                b = wm;
            }
        }
        s.real_axis_crossings.push_back({wm, mid.real()});
        added.emplace_back(wm, mid);
    }

    detail::refine_sup(s, om, val, [](double, Complex z) { return z.real(); }, &added);
    detail::refine_sup(s, om, val, [](double, Complex z) { return -z.real(); }, &added);
    detail::refine_sup(s, om, val, [](double, Complex z) { return std::abs(z); }, &added);
    detail::merge_points(s.locus, std::move(added));

    s.x_max = -std::numeric_limits<double>::infinity();
    s.x_min = std::numeric_limits<double>::infinity();
    s.popov_ordinate.resize(s.locus.size());
    for (std::size_t i = 0; i < s.locus.size(); ++i) {
        const Complex z = s.locus.value[i];
        s.popov_ordinate[i] = s.locus.omega[i] * z.imag();
        if (z.real() > s.x_max) {
            s.x_max = z.real();
            s.omega_x_max = s.locus.omega[i];
        }
        if (z.real() < s.x_min) {
            s.x_min = z.real();
            s.omega_x_min = s.locus.omega[i];
        }
        if (std::abs(z) > s.peak_gain) {
            s.peak_gain = std::abs(z);
            s.omega_peak = s.locus.omega[i];
        }
    }
    return s;
}

[[nodiscard]] inline LocusSummary sample_locus(const MDeltaModel& model, const SamplingOptions& opt = {}) {
    return sample_locus(m_transfer(model), opt);
}

// ---------------------------------------------------------------------------
// Exact interval

struct ExactOptions {
    double margin = 0.0;        ///< is_hurwitz margin used by the eigenvalue checks
    double bracket_rel = 1e-3;  ///< relative half-width of the certification bracket
    double tol = 1e-6;          ///< bisection tolerance on delta
};

namespace detail {

/// Bisection for the stability boundary between a stable point `a` and an unstable point `b`.
inline double bisect_boundary(const MDeltaModel& model, double a, double b, double tol, double margin) {
    while (std::abs(b - a) > tol) {
        const double mid = 0.5 * (a + b);
        if (model.stable_at(mid, margin))
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

struct SideResult {
    double bound = std::numeric_limits<double>::infinity();  // magnitude-signed later
    double crossing = std::numeric_limits<double>::infinity();
    double bisection = std::numeric_limits<double>::infinity();
    double omega = 0.0;
    bool certified = true;
    bool bounded = false;
};

inline SideResult exact_side(const MDeltaModel& model, std::vector<std::pair<double, double>> candidates,
                             const ExactOptions& opt) {
    // candidates: (delta, omega), all of one sign; process nearest to the origin first
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return std::abs(a.first) < std::abs(b.first); });
    SideResult r;
    for (const auto& [delta, omega] : candidates) {
        const double outside = delta * (1.0 + opt.bracket_rel);
        if (model.stable_at(outside, opt.margin))
            continue;  // the locus touches the real axis here but the mode does not cross
        double inside = delta * (1.0 - opt.bracket_rel);
        bool certified = true;
        if (!model.stable_at(inside, opt.margin)) {
            // Something destabilizes earlier than the crossing predicts; march in from zero.
            certified = false;
            double step = std::abs(delta) * opt.bracket_rel;
            double prev = 0.0;
            double x = step * (delta > 0 ? 1.0 : -1.0);
            while (model.stable_at(x, opt.margin)) {
                prev = x;
                x += step * (delta > 0 ? 1.0 : -1.0);
            }
            inside = prev;
            const double b = detail::bisect_boundary(model, inside, x, opt.tol, opt.margin);
            r = {b, delta, b, omega, false, true};
            return r;
        }
        const double b = detail::bisect_boundary(model, inside, outside, opt.tol, opt.margin);
        certified = std::abs(b - delta) <= opt.tol + 1e-9 * std::abs(delta);
        r = {certified ? delta : b, delta, b, omega, certified, true};
        return r;
    }
    return r;
}

}  // namespace detail

/// Exact interval from the real-axis crossings of M(j omega). Each candidate -1/x is
/// certified by eigenvalue bisection on H + delta Qcal; the nearest destabilizing
/// candidate on each side of zero bounds the interval.
[[nodiscard]] inline StabilityInterval exact_bounds(const MDeltaModel& model, const LocusSummary& summary,
                                                    const ExactOptions& opt = {}) {
    ExactWitness wit;
    if (model.null_perturbation())
        return interval_from_intercepts(Criterion::exact, 0.0, 0.0, wit);

    const double scale = std::max(summary.peak_gain, std::numeric_limits<double>::min());
    std::vector<std::pair<double, double>> pos, neg;
    for (const auto& c : summary.real_axis_crossings) {
        if (std::abs(c.x) <= 1e-12 * scale)
            continue;
        const double delta = -1.0 / c.x;
        (delta > 0.0 ? pos : neg).emplace_back(delta, c.omega);
    }
    const auto up = detail::exact_side(model, std::move(pos), opt);
    const auto lo = detail::exact_side(model, std::move(neg), opt);

    wit.certified = up.certified && lo.certified;
    double positive_intercept = 0.0, negative_intercept = 0.0;
    if (lo.bounded) {
        wit.crossing_lower = lo.crossing;
        wit.bisection_lower = lo.bisection;
        wit.omega_lower = lo.omega;
        positive_intercept = -1.0 / lo.bound;
    }
    if (up.bounded) {
        wit.crossing_upper = up.crossing;
        wit.bisection_upper = up.bisection;
        wit.omega_upper = up.omega;
        negative_intercept = -1.0 / up.bound;
    }
    StabilityInterval out = interval_from_intercepts(Criterion::exact, positive_intercept, negative_intercept, wit);
    if (lo.bounded)
        out.lower = lo.bound;
    if (up.bounded)
        out.upper = up.bound;
    return out;
}

struct EigenScanOptions {
    double lower_limit = -100.0;
    double upper_limit = 10.0;
    double step = 1e-2;
    double tol = 1e-9;
    double margin = 0.0;
};

/// Exact interval by marching delta outward from zero on eig(H + delta Qcal) and bisecting
/// at the first loss of stability. Sides that stay stable up to the limit are unbounded.
[[nodiscard]] inline StabilityInterval exact_bounds_eigen(const MDeltaModel& model, const EigenScanOptions& opt = {}) {
    const auto side = [&](double limit) -> std::optional<double> {
        const double dir = limit > 0 ? 1.0 : -1.0;
        double prev = 0.0;
        for (double x = dir * opt.step; dir * x <= dir * limit + 1e-12; x += dir * opt.step) {
            if (!model.stable_at(x, opt.margin))
                return detail::bisect_boundary(model, prev, x, opt.tol, opt.margin);
            prev = x;
        }
        return std::nullopt;
    };
    ExactWitness wit;
    const auto up = side(opt.upper_limit);
    const auto lo = side(opt.lower_limit);
    if (up)
        wit.bisection_upper = *up;
    if (lo)
        wit.bisection_lower = *lo;
    return interval_from_intercepts(Criterion::exact, lo ? -1.0 / *lo : 0.0, up ? -1.0 / *up : 0.0, wit);
}

// ---------------------------------------------------------------------------
// Frequency-domain criteria

[[nodiscard]] inline StabilityInterval small_gain_bounds(const LocusSummary& s) {
    const double r = s.peak_gain;
    return interval_from_intercepts(Criterion::small_gain, r, -r, SmallGainWitness{r, s.omega_peak});
}

/// Radius of the smallest circle centred at (center, 0) enclosing the locus.
[[nodiscard]] inline double enclosing_radius(const LocusSummary& s, double center, bool refine = true) {
    const auto dist = [center](double, Complex z) { return std::abs(z - center); };
    if (refine)
        return detail::refine_sup(s, s.locus.omega, s.locus.value, dist).value;
    double r = 0.0;
    for (const Complex& z : s.locus.value)
        r = std::max(r, std::abs(z - center));
    return r;
}

struct CircleOptions {
    bool optimize_center = false;
    /// Reference interval (normally the exact one) against which the optimized centre
    /// measures conservatism. Without it the smaller of |lower| and upper is maximized.
    std::optional<StabilityInterval> reference;
};

[[nodiscard]] inline StabilityInterval circle_bounds(const LocusSummary& s, const CircleOptions& opt = {}) {
    double center = 0.5 * (s.x_max + s.x_min);
    if (opt.optimize_center && s.x_max > s.x_min) {
        // worse of the two bounds, as a fraction of the reference bound when available
        const auto worse = [&](double xc) {
            const double r = enclosing_radius(s, xc, false);
            const StabilityInterval iv = interval_from_intercepts(Criterion::circle, xc + r, xc - r, CircleWitness{});
            double lo = -iv.lower;
            double up = iv.upper;
            if (opt.reference) {
                if (opt.reference->lower_bounded())
                    lo /= -opt.reference->lower;
                if (opt.reference->upper_bounded())
                    up /= opt.reference->upper;
            }
            return std::min(lo, up);
        };
        // far-off centres approach the positive real bounds, so search well past the locus
        const double span = s.x_max - s.x_min;
        const auto m = golden_section_minimize([&](double xc) { return -worse(xc); }, s.x_min - 10.0 * span,
                                               s.x_max + 10.0 * span, 0.0, 1e-9 * span);
        center = m.x;
    }
    const double radius = enclosing_radius(s, center);
    return interval_from_intercepts(Criterion::circle, center + radius, center - radius,
                                    CircleWitness{center, radius, opt.optimize_center});
}

[[nodiscard]] inline StabilityInterval positive_real_bounds(const LocusSummary& s) {
    return interval_from_intercepts(Criterion::positive_real, s.x_max, s.x_min, PositiveRealWitness{s.x_max, s.x_min});
}

struct PopovOptions {
    double q_min = 1e-4;
    double q_max = 1e4;
    std::size_t per_decade = 10;
    double rel_tol = 1e-6;
    /// Restrict to vertical lines (q = 0); reproduces the positive real bounds.
    bool vertical_only = false;
};

namespace detail {

struct PopovLine {
    double q = 0.0;
    double c = 0.0;
};

/// min over q of sup over omega of side * (Re M - q w Im M); the returned c is in
/// unsigned form, i.e. the line Re M - q w Im M = c.
inline PopovLine popov_line(const LocusSummary& s, double side, const PopovOptions& opt) {
    std::vector<double> omega = s.locus.omega;
    std::vector<Complex> value = s.locus.value;

    std::vector<double> qs{0.0};
    const double decades = std::log10(opt.q_max / opt.q_min);
    const auto nq = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(opt.per_decade))) + 1;
    for (double q : logspace(opt.q_min, opt.q_max, nq)) {
        qs.push_back(q);
        qs.push_back(-q);
    }
    std::sort(qs.begin(), qs.end());

    const auto sup_at = [&](double q) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < omega.size(); ++i)
            m = std::max(m, side * (value[i].real() - q * omega[i] * value[i].imag()));
        return m;
    };

    PopovLine best{0.0, std::numeric_limits<double>::infinity()};
    double prev = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 10; ++iter) {
        std::size_t k = 0;
        double fk = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < qs.size(); ++i) {
            const double f = sup_at(qs[i]);
            if (f < fk) {
                fk = f;
                k = i;
            }
        }
        const double a = qs[k == 0 ? 0 : k - 1];
        const double b = qs[std::min(k + 1, qs.size() - 1)];
        ScalarMinimum m = golden_section_minimize(sup_at, a, b, opt.rel_tol * 1e-2, 1e-12 * std::max(std::abs(a), std::abs(b)));
        if (fk <= m.f)
            m = {qs[k], fk};

        // polish the active frequencies of this line on the true response
        std::vector<std::pair<double, Complex>> added;
        const double q = m.x;
        const auto f = [&](double w, Complex z) { return side * (z.real() - q * w * z.imag()); };
        detail::refine_sup(s, omega, value, f, &added);
        for (const auto& [w, z] : added) {
            omega.push_back(w);
            value.push_back(z);
        }
        const double refined = sup_at(q);
        best = {q, refined};
        if (std::abs(refined - prev) <= 1e-12 * std::max(1.0, std::abs(refined)))
            break;
        prev = refined;
    }
    return {best.q, side * best.c};
}

}  // namespace detail

/// Popov lines: c+ = min_q sup_w (Re M - q w Im M) on the right, c- = max_q inf_w (...) on the left.
[[nodiscard]] inline StabilityInterval popov_bounds(const LocusSummary& s, const PopovOptions& opt = {}) {
    PopovWitness wit{0.0, s.x_max, 0.0, s.x_min};
    if (!opt.vertical_only) {
        const auto right = detail::popov_line(s, 1.0, opt);
        const auto left = detail::popov_line(s, -1.0, opt);
        // q = 0 is the vertical line through the refined extreme real part
        if (right.c < wit.c_plus)
            std::tie(wit.q_plus, wit.c_plus) = std::pair{right.q, right.c};
        if (left.c > wit.c_minus)
            std::tie(wit.q_minus, wit.c_minus) = std::pair{left.q, left.c};
    }
    return interval_from_intercepts(Criterion::popov, wit.c_plus, wit.c_minus, wit);
}

// ---------------------------------------------------------------------------
// Soundness audit

struct VerificationReport {
    Criterion criterion = Criterion::exact;
    bool passed = true;
    std::size_t checked = 0;
    std::vector<double> interior_failures;  ///< deltas inside the interval that are unstable
    std::vector<double> exterior_failures;  ///< exact interval only: deltas just outside that are stable
    std::vector<std::string> messages;
};

struct VerifyOptions {
    double margin = 0.0;
    double outside_rel = 1e-3;
    double unbounded_cap = 1e3;  ///< sampling stand-in for an unbounded side
};

[[nodiscard]] inline VerificationReport verify_interval(const MDeltaModel& model, const StabilityInterval& iv,
                                                        std::size_t n_samples, const VerifyOptions& opt = {}) {
    VerificationReport rep;
    rep.criterion = iv.criterion;
    if (n_samples == 0) {
        rep.messages.emplace_back("warning: zero samples requested; verification is vacuous");
        return rep;
    }
    if (iv.lower == 0.0 && iv.upper == 0.0) {
        rep.messages.emplace_back("degenerate interval [0, 0]; nothing to verify");
        return rep;
    }
    const double lo = iv.lower_bounded() ? iv.lower : -opt.unbounded_cap;
    const double up = iv.upper_bounded() ? iv.upper : opt.unbounded_cap;
    if (!iv.lower_bounded() || !iv.upper_bounded())
        rep.messages.emplace_back("unbounded side sampled up to |delta| = " + std::to_string(opt.unbounded_cap));
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double delta = lo + (up - lo) * static_cast<double>(k + 1) / static_cast<double>(n_samples + 1);
        ++rep.checked;
        if (!model.stable_at(delta, opt.margin)) {
            rep.passed = false;
            rep.interior_failures.push_back(delta);
        }
    }
    if (!rep.interior_failures.empty())
        rep.messages.push_back(std::string(criterion_id(iv.criterion)) +
                               ": closed loop unstable inside the interval at delta = " +
                               std::to_string(rep.interior_failures.front()));
    if (iv.criterion == Criterion::exact) {
        for (double bound : {iv.lower, iv.upper}) {
            if (!std::isfinite(bound))
                continue;
            const double outside = bound + (bound > 0 ? 1.0 : -1.0) * opt.outside_rel * std::abs(bound);
            ++rep.checked;
            if (model.stable_at(outside, opt.margin)) {
                rep.passed = false;
                rep.exterior_failures.push_back(outside);
                rep.messages.push_back("exact: closed loop still stable just outside the bound at delta = " +
                                       std::to_string(outside));
            }
        }
    }
    return rep;
}

}  // namespace rstab
