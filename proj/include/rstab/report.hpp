#pragma once

// Table and machine-readable rendering of stability intervals.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rstab/criteria.hpp"
#include "rstab/errors.hpp"
#include "rstab/model_file.hpp"

namespace rstab {

/// Six significant figures, or "unbounded".
[[nodiscard]] inline std::string format_bound(double x) {
    if (!std::isfinite(x))
        return "unbounded";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

/// Witness fields as ordered key/value pairs.
[[nodiscard]] inline std::vector<std::pair<std::string, double>> witness_fields(const Witness& w) {
    struct Visitor {
        std::vector<std::pair<std::string, double>> operator()(const ExactWitness& e) const {
            return {{"crossing_lower", e.crossing_lower}, {"crossing_upper", e.crossing_upper},
                    {"bisection_lower", e.bisection_lower}, {"bisection_upper", e.bisection_upper},
                    {"omega_lower", e.omega_lower},         {"omega_upper", e.omega_upper},
                    {"certified", e.certified ? 1.0 : 0.0}};
        }
        std::vector<std::pair<std::string, double>> operator()(const SmallGainWitness& s) const {
            return {{"r_sg", s.radius}, {"omega_peak", s.omega_peak}};
        }
        std::vector<std::pair<std::string, double>> operator()(const CircleWitness& c) const {
            return {{"x_c", c.center}, {"r_c", c.radius}, {"optimized", c.optimized_center ? 1.0 : 0.0}};
        }
        std::vector<std::pair<std::string, double>> operator()(const PositiveRealWitness& p) const {
            return {{"x_max", p.x_max}, {"x_min", p.x_min}};
        }
        std::vector<std::pair<std::string, double>> operator()(const PopovWitness& p) const {
            return {{"q_plus", p.q_plus}, {"c_plus", p.c_plus}, {"q_minus", p.q_minus}, {"c_minus", p.c_minus}};
        }
    };
    return std::visit(Visitor{}, w);
}

[[nodiscard]] inline std::string render_table(const std::vector<StabilityInterval>& intervals) {
    std::ostringstream os;
    os << "Stability bounds on the c.g. shift Delta (m)\n";
    os << std::left << std::setw(15) << "Analysis" << std::right << std::setw(12) << "lower" << std::setw(12) << "upper"
       << "   witnesses\n";
    os << std::string(15 + 12 + 12 + 40, '-') << "\n";
    for (const auto& iv : intervals) {
        os << std::left << std::setw(15) << criterion_title(iv.criterion) << std::right << std::setw(12)
           << format_bound(iv.lower) << std::setw(12) << format_bound(iv.upper) << "  ";
        for (const auto& [k, v] : witness_fields(iv.witness)) {
            if (iv.criterion == Criterion::exact && (k.rfind("omega", 0) == 0 || k.rfind("bisection", 0) == 0))
                continue;
            os << " " << k << "=" << format_bound(v);
        }
        os << "\n";
    }
    return os.str();
}

[[nodiscard]] inline std::string format_csv_value(double x) {
    if (std::isnan(x))
        return "nan";
    if (!std::isfinite(x))
        return "unbounded";
    return format_double(x);
}

/// criterion,lower,upper,positive_intercept,negative_intercept,witness
/// with witness as semicolon-separated key=value pairs.
[[nodiscard]] inline std::string render_csv(const std::vector<StabilityInterval>& intervals) {
    std::ostringstream os;
    os << "criterion,lower,upper,positive_intercept,negative_intercept,witness\n";
    for (const auto& iv : intervals) {
        os << criterion_id(iv.criterion) << "," << format_csv_value(iv.lower) << "," << format_csv_value(iv.upper) << ","
           << format_double(iv.positive_intercept) << "," << format_double(iv.negative_intercept) << ",";
        bool first = true;
        for (const auto& [k, v] : witness_fields(iv.witness)) {
            os << (first ? "" : ";") << k << "=" << format_csv_value(v);
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

inline double parse_csv_value(const std::string& s, std::size_t line, const std::string& field, double unbounded) {
    const auto t = std::string(trim(s));
    if (t == "unbounded")
        return unbounded;
    auto v = parse_double(t);
    if (!v)
        throw ParseError(line, field, "line " + std::to_string(line) + ": bad value '" + t + "' for " + field);
    return *v;
}

}  // namespace detail

/// Reads intervals back from render_csv() output. Witness records are restored for the
/// interval bounds only; per-criterion witness details are not re-parsed.
[[nodiscard]] inline std::vector<StabilityInterval> parse_csv(const std::string& text) {
    std::vector<StabilityInterval> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.rfind("criterion,", 0) == 0 || line.front() == '#')
            continue;
        const auto cols = detail::split(line, ',');
        if (cols.size() < 3)
            throw ParseError(lineno, "", "line " + std::to_string(lineno) + ": expected at least 3 columns");
        const auto crit = parse_criterion(std::string(detail::trim(cols[0])));
        if (!crit)
            throw ParseError(lineno, "criterion", "line " + std::to_string(lineno) + ": unknown criterion '" + cols[0] + "'");
        StabilityInterval iv;
        iv.criterion = *crit;
        iv.lower = detail::parse_csv_value(cols[1], lineno, "lower", -std::numeric_limits<double>::infinity());
        iv.upper = detail::parse_csv_value(cols[2], lineno, "upper", std::numeric_limits<double>::infinity());
        iv.positive_intercept = iv.lower_bounded() ? -1.0 / iv.lower : 0.0;
        iv.negative_intercept = iv.upper_bounded() ? -1.0 / iv.upper : 0.0;
        switch (iv.criterion) {
        case Criterion::exact: iv.witness = ExactWitness{}; break;
        case Criterion::small_gain: iv.witness = SmallGainWitness{}; break;
        case Criterion::circle: iv.witness = CircleWitness{}; break;
        case Criterion::positive_real: iv.witness = PositiveRealWitness{}; break;
        case Criterion::popov: iv.witness = PopovWitness{}; break;
        }
        out.push_back(iv);
    }
    return out;
}

}  // namespace rstab
