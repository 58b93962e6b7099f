#pragma once

/**
 * @file model_file.hpp
 * Plain-text model definitions.
 *
 *     # comment
 *     [flight_condition]
 *     V0 = 100
 *     ...
 *     [dimensionless_derivatives]
 *     X_u = 0.050
 *     ...
 *     [controller]                       # optional
 *     gain  = 3.14
 *     zeros = -5.14, -0.615, -0.0171
 *     poles = -0.356, -0.0175, -3.61+0.7536j, -3.61-0.7536j
 *     [derived]                          # optional, ignored on input
 *
 * g, gamma_e and alpha_e default to 9.81 m/s^2, 0 and 0 when absent; every other
 * flight-condition field and all fifteen derivatives are required.
 */

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rstab/aircraft.hpp"
#include "rstab/errors.hpp"
#include "rstab/lti.hpp"

namespace rstab {

struct ControllerSpec {
    std::vector<Complex> zeros;
    std::vector<Complex> poles;
    double gain = 0.0;

    [[nodiscard]] TransferFunction transfer_function() const { return tf_from_zpk(zeros, poles, gain); }
};

/// Loop-shaping controller 3.14 (s+5.14)(s+0.615)(s+0.0171) / ((s+0.356)(s+0.0175)(s^2+7.22s+13.6)).
[[nodiscard]] inline ControllerSpec reference_controller() {
    const double re = -7.22 / 2.0;
    const double im = std::sqrt(13.6 - re * re);
    return {{-5.14, -0.615, -0.0171}, {-0.356, -0.0175, Complex{re, im}, Complex{re, -im}}, 3.14};
}

struct ModelDefinition {
    aircraft::FlightCondition flight;
    aircraft::DimensionlessDerivatives derivatives;
    ControllerSpec controller = reference_controller();
};

[[nodiscard]] inline ModelDefinition reference_model() {
    return {aircraft::reference_flight_condition(), aircraft::reference_derivatives(), reference_controller()};
}

/// Shortest round-trip decimal for a double.
[[nodiscard]] inline std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), res.ptr};
}

[[nodiscard]] inline std::string format_complex(Complex z) {
    if (z.imag() == 0.0)
        return format_double(z.real());
    std::string s = format_double(z.real());
    if (z.imag() >= 0.0)
        s += '+';
    return s + format_double(z.imag()) + "j";
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

/// Accepts "a", "bj", "a+bj", "a-bj" (i is accepted for j).
inline std::optional<Complex> parse_complex(std::string_view s) {
    s = trim(s);
    if (s.empty())
        return std::nullopt;
    if (s.back() != 'j' && s.back() != 'i') {
        auto v = parse_double(s);
        if (!v)
            return std::nullopt;
        return Complex{*v, 0.0};
    }
    s.remove_suffix(1);
    // split at the last sign that is not part of an exponent and not leading
    std::size_t split = std::string_view::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) {
        auto im = parse_double(s);
        if (!im)
            return std::nullopt;
        return Complex{0.0, *im};
    }
    auto re = parse_double(s.substr(0, split));
    auto im = parse_double(s.substr(split));
    if (!re || !im)
        return std::nullopt;
    return Complex{*re, *im};
}

inline std::vector<Complex> parse_complex_list(std::string_view s, std::size_t line, const std::string& key) {
    std::vector<Complex> out;
    s = trim(s);
    if (s.empty())
        return out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto item = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        auto z = parse_complex(item);
        if (!z)
            throw ParseError(line, key, "line " + std::to_string(line) + ": cannot parse '" + std::string(trim(item)) +
                                            "' as a number in field '" + key + "'");
        out.push_back(*z);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

[[nodiscard]] inline ModelDefinition parse_model(std::string_view text) {
    using aircraft::DerivativeSet;
    ModelDefinition def;
    def.flight = aircraft::FlightCondition{};
    def.derivatives = aircraft::DimensionlessDerivatives{};

    std::map<std::string, double*, std::less<>> flight_fields{
        {"V0", &def.flight.V0},   {"m", &def.flight.m},   {"Iy", &def.flight.Iy},
        {"rho", &def.flight.rho}, {"S", &def.flight.S},   {"c", &def.flight.c},
        {"g", &def.flight.g},     {"gamma_e", &def.flight.gamma_e}, {"alpha_e", &def.flight.alpha_e},
    };
    const std::vector<std::string> optional_flight{"g", "gamma_e", "alpha_e"};

    std::map<std::string, double*, std::less<>> deriv_fields;
    const auto add_family = [&](const std::string& prefix, DerivativeSet& set) {
        deriv_fields[prefix + "_u"] = &set.u;
        deriv_fields[prefix + "_w"] = &set.w;
        deriv_fields[prefix + "_wdot"] = &set.wdot;
        deriv_fields[prefix + "_q"] = &set.q;
        deriv_fields[prefix + "_eta"] = &set.eta;
    };
    add_family("X", def.derivatives.X);
    add_family("Z", def.derivatives.Z);
    add_family("M", def.derivatives.M);

    std::map<std::string, bool, std::less<>> seen;
    bool controller_seen = false;
    ControllerSpec controller;
    bool have_gain = false, have_zeros = false, have_poles = false;

    std::string section;
    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(lineno, "", "line " + std::to_string(lineno) + ": malformed section header");
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (section != "flight_condition" && section != "dimensionless_derivatives" && section != "controller" &&
                section != "derived")
                throw ParseError(lineno, section, "line " + std::to_string(lineno) + ": unknown section [" + section + "]");
            if (section == "controller")
                controller_seen = true;
            continue;
        }
        if (section == "derived")
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(lineno, "", "line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        const auto bad_value = [&]() {
            return ParseError(lineno, key, "line " + std::to_string(lineno) + ": cannot parse value '" +
                                               std::string(value) + "' for field '" + key + "'");
        };

        if (section == "controller") {
            if (key == "gain") {
                auto v = detail::parse_double(value);
                if (!v)
                    throw bad_value();
                controller.gain = *v;
                have_gain = true;
            } else if (key == "zeros") {
                controller.zeros = detail::parse_complex_list(value, lineno, key);
                have_zeros = true;
            } else if (key == "poles") {
                controller.poles = detail::parse_complex_list(value, lineno, key);
                have_poles = true;
            } else {
                throw ParseError(lineno, key, "line " + std::to_string(lineno) + ": unknown controller field '" + key + "'");
            }
            continue;
        }

        auto& fields = section == "flight_condition" ? flight_fields : deriv_fields;
        if (section.empty())
            throw ParseError(lineno, key, "line " + std::to_string(lineno) + ": field '" + key + "' outside any section");
        auto it = fields.find(key);
        if (it == fields.end())
            throw ParseError(lineno, key, "line " + std::to_string(lineno) + ": unknown field '" + key + "' in [" +
                                              section + "]");
        if (seen[key])
            throw ParseError(lineno, key, "line " + std::to_string(lineno) + ": duplicate field '" + key + "'");
        auto v = detail::parse_double(value);
        if (!v || !std::isfinite(*v))
            throw bad_value();
        *it->second = *v;
        seen[key] = true;
    }

    for (const auto& [name, ptr] : flight_fields) {
        const bool optional = std::find(optional_flight.begin(), optional_flight.end(), name) != optional_flight.end();
        if (!optional && !seen[name])
            throw ParseError(0, name, "missing required field '" + name + "' in [flight_condition]");
    }
    for (const auto& [name, ptr] : deriv_fields)
        if (!seen[name])
            throw ParseError(0, name, "missing required field '" + name + "' in [dimensionless_derivatives]");
    try {
        def.flight.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, "", e.what());
    }

    if (controller_seen) {
        if (!have_gain || !have_zeros || !have_poles)
            throw ParseError(0, !have_gain ? "gain" : (!have_zeros ? "zeros" : "poles"),
                             "[controller] requires gain, zeros and poles");
        try {
            (void)controller.transfer_function();
        } catch (const RepresentationError& e) {
            throw ParseError(0, "controller", std::string("invalid controller: ") + e.what());
        }
        def.controller = std::move(controller);
    } else {
        def.controller = reference_controller();
    }
    return def;
}

[[nodiscard]] inline ModelDefinition load_model(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_model(ss.str());
}

/// Serializes a model definition; parse_model(write_model(d)) reproduces d bit for bit.
[[nodiscard]] inline std::string write_model(const ModelDefinition& def) {
    std::ostringstream os;
    const auto& f = def.flight;
    os << "[flight_condition]\n";
    os << "V0 = " << format_double(f.V0) << "\n";
    os << "m = " << format_double(f.m) << "\n";
    os << "Iy = " << format_double(f.Iy) << "\n";
    os << "rho = " << format_double(f.rho) << "\n";
    os << "S = " << format_double(f.S) << "\n";
    os << "c = " << format_double(f.c) << "\n";
    os << "g = " << format_double(f.g) << "\n";
    os << "gamma_e = " << format_double(f.gamma_e) << "\n";
    os << "alpha_e = " << format_double(f.alpha_e) << "\n";
    os << "\n[dimensionless_derivatives]\n";
    const auto family = [&](const char* p, const aircraft::DerivativeSet& s) {
        os << p << "_u = " << format_double(s.u) << "\n";
        os << p << "_w = " << format_double(s.w) << "\n";
        os << p << "_wdot = " << format_double(s.wdot) << "\n";
        os << p << "_q = " << format_double(s.q) << "\n";
        os << p << "_eta = " << format_double(s.eta) << "\n";
    };
    family("X", def.derivatives.X);
    family("Z", def.derivatives.Z);
    family("M", def.derivatives.M);
    os << "\n[controller]\n";
    os << "gain = " << format_double(def.controller.gain) << "\n";
    const auto list = [&](const std::vector<Complex>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i ? ", " : "") << format_complex(v[i]);
        os << "\n";
    };
    os << "zeros = ";
    list(def.controller.zeros);
    os << "poles = ";
    list(def.controller.poles);
    return os.str();
}

}  // namespace rstab
