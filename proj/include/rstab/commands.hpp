#pragma once

// Implementations of the `model`, `analyze`, `plot` and `verify` subcommands. Each
// returns the process exit code and writes human-readable text to `out`/`err`.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rstab/analysis.hpp"
#include "rstab/criteria.hpp"
#include "rstab/model_file.hpp"
#include "rstab/plot.hpp"
#include "rstab/report.hpp"

namespace rstab {

enum class OutputFormat { csv, svg, both };

struct CommandConfig {
    std::optional<std::string> model_path;  ///< reference model when empty
    double Kq = aircraft::kReferenceKq;
    double Kalpha = aircraft::kReferenceKalpha;
    SamplingOptions sampling;
    std::vector<Criterion> criteria{std::begin(kAllCriteria), std::end(kAllCriteria)};
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::both;
    double stability_margin = 0.0;
    bool optimize_center = false;
};

enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitUnstable = 2, kExitInputError = 3 };

/// "2.64 (s+0.0164)(s+0.635) / ((s+4.31)(s+0.68)(s^2+0.0136s+0.000327))"
[[nodiscard]] inline std::string format_zpk(const TransferFunction& tf, int digits = 4) {
    const auto num = [digits](double v) {
        std::ostringstream os;
        os << std::setprecision(digits) << v;
        return os.str();
    };
    const auto signed_term = [&](double v) { return (v < 0 ? "-" : "+") + num(std::abs(v)); };
    const auto factors = [&](std::vector<Complex> roots) {
        std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        std::string s;
        for (const Complex& r : roots) {
            if (std::abs(r.imag()) <= kConjugateTol * std::max(1.0, std::abs(r))) {
                s += "(s" + signed_term(-r.real()) + ")";
            } else if (r.imag() > 0.0) {
                s += "(s^2" + signed_term(-2.0 * r.real()) + "s" + signed_term(std::norm(r)) + ")";
            }
        }
        return s.empty() ? std::string("1") : s;
    };
    return num(tf.gain()) + " " + factors(tf.zeros()) + " / (" + factors(tf.poles()) + ")";
}

namespace detail {

inline std::string matrix_text(const Matrix& m, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << std::setw(precision + 7) << m(i, j);
        os << "]\n";
    }
    return os.str();
}

/// One line per row, full precision, rows separated by ';'.
inline std::string matrix_dump(const Matrix& m) {
    std::string s;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i)
            s += "; ";
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            s += (j ? " " : "") + format_double(m(i, j));
    }
    return s;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot write '" + path.string() + "'");
    f << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline AnalysisOptions analysis_options(const CommandConfig& cfg) {
    AnalysisOptions o;
    o.sampling = cfg.sampling;
    o.criteria = cfg.criteria;
    o.optimize_center = cfg.optimize_center;
    o.stability_margin = cfg.stability_margin;
    return o;
}

}  // namespace detail

[[nodiscard]] inline ModelDefinition load_definition(const CommandConfig& cfg) {
    return cfg.model_path ? load_model(*cfg.model_path) : reference_model();
}

/// Prints the model chain and writes <out>/model.txt, which is itself a valid model file.
inline int cmd_model(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const AircraftModel am = build_aircraft_model(load_definition(cfg), cfg.Kq, cfg.Kalpha);
        const TransferFunction g = tf_from_ss(am.augmented.nominal);
        const TransferFunction k = am.definition.controller.transfer_function();

        out << "Open-loop airframe (x = [u, w, q, theta], outputs theta, q, alpha)\n";
        out << "A =\n" << detail::matrix_text(am.open_loop.nominal.A());
        out << "B =\n" << detail::matrix_text(am.open_loop.nominal.B());
        out << "C =\n" << detail::matrix_text(am.open_loop.nominal.C());
        out << "D =\n" << detail::matrix_text(am.open_loop.nominal.D());
        out << "unstable open-loop eigenvalues: " << count_unstable(am.open_loop.nominal.A()) << "\n\n";
        out << "Inner loop Kq = " << am.Kq << ", Kalpha = " << am.Kalpha << "\n";
        out << "augmented A =\n" << detail::matrix_text(am.augmented.nominal.A());
        out << "Q_A =\n" << detail::matrix_text(am.open_loop.QA);
        out << "Q_B =\n" << detail::matrix_text(am.open_loop.QB);
        out << "mu = " << am.open_loop.mu << "\n\n";
        out << "G(s) (eta -> theta) = " << format_zpk(g) << "\n";
        out << "K(s) = " << format_zpk(k) << "\n\n";
        out << "H =\n" << detail::matrix_text(am.mdelta.H());
        out << "Qcal =\n" << detail::matrix_text(am.mdelta.Qcal());
        out << "sigma = " << std::setprecision(10) << am.mdelta.sigma() << "\n";
        out << "v = " << detail::matrix_dump(am.mdelta.v().transpose()) << "\n";
        out << "w = " << detail::matrix_dump(am.mdelta.w().transpose()) << "\n";
        out << "nominal closed loop " << (am.mdelta.nominal_stable() ? "stable" : "UNSTABLE")
            << " (max Re eig(H) = " << spectral_abscissa(am.mdelta.H()) << ")\n";

        std::ostringstream dump;
        dump << "# rstab model dump; the [derived] section is ignored on input\n";
        dump << write_model(am.definition);
        dump << "\n[derived]\n";
        dump << "Kq = " << format_double(am.Kq) << "\nKalpha = " << format_double(am.Kalpha) << "\n";
        dump << "A = " << detail::matrix_dump(am.open_loop.nominal.A()) << "\n";
        dump << "B = " << detail::matrix_dump(am.open_loop.nominal.B()) << "\n";
        dump << "C = " << detail::matrix_dump(am.open_loop.nominal.C()) << "\n";
        dump << "D = " << detail::matrix_dump(am.open_loop.nominal.D()) << "\n";
        dump << "A_aug = " << detail::matrix_dump(am.augmented.nominal.A()) << "\n";
        dump << "Q_A = " << detail::matrix_dump(am.open_loop.QA) << "\n";
        dump << "Q_B = " << detail::matrix_dump(am.open_loop.QB) << "\n";
        dump << "mu = " << format_double(am.open_loop.mu) << "\n";
        dump << "H = " << detail::matrix_dump(am.mdelta.H()) << "\n";
        dump << "Qcal = " << detail::matrix_dump(am.mdelta.Qcal()) << "\n";
        dump << "sigma = " << format_double(am.mdelta.sigma()) << "\n";
        dump << "v = " << detail::matrix_dump(am.mdelta.v().transpose()) << "\n";
        dump << "w = " << detail::matrix_dump(am.mdelta.w().transpose()) << "\n";
        dump << "G_zpk = " << format_zpk(g, 17) << "\n";
        detail::write_file(std::filesystem::path(cfg.out_dir) / "model.txt", dump.str());
        return kExitOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

inline int cmd_analyze(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const AircraftModel am = build_aircraft_model(load_definition(cfg), cfg.Kq, cfg.Kalpha);
        const AnalysisOptions opt = detail::analysis_options(cfg);
        const AnalysisResult r = analyze(am.mdelta, opt);
        std::ostringstream report;
        report << render_table(r.intervals);
        report << "\nSoundness check (" << opt.verify_samples << " interior samples per interval)\n";
        for (const auto& v : r.verification) {
            report << "  " << std::left << std::setw(10) << criterion_id(v.criterion) << (v.passed ? "PASS" : "FAIL");
            for (const auto& m : v.messages)
                report << "  " << m;
            report << "\n";
        }
        for (const auto& w : r.summary.locus.warnings)
            report << "warning: " << w << "\n";
        out << report.str();
        detail::write_file(std::filesystem::path(cfg.out_dir) / "report.txt", report.str());
        detail::write_file(std::filesystem::path(cfg.out_dir) / "report.csv", render_csv(r.intervals));
        return r.all_verified() ? kExitOk : kExitVerificationFailed;
    } catch (const NotHurwitzError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

/// Writes locus_<figure>.csv and/or fig_<figure>.svg. With `from_csv`, re-renders the
/// SVG from an existing locus CSV without recomputing anything.
inline int cmd_plot(const CommandConfig& cfg, const std::vector<Figure>& figures, const std::optional<std::string>& from_csv,
                    std::ostream& out, std::ostream& err) {
    try {
        const std::filesystem::path dir(cfg.out_dir);
        if (from_csv) {
            const PlotData p = parse_plot_csv(detail::read_file(*from_csv));
            const auto path = dir / ("fig_" + std::string(figure_id(p.figure)) + ".svg");
            detail::write_file(path, render_svg(p));
            out << "wrote " << path.string() << "\n";
            return kExitOk;
        }
        const AircraftModel am = build_aircraft_model(load_definition(cfg), cfg.Kq, cfg.Kalpha);
        AnalysisOptions opt = detail::analysis_options(cfg);
        opt.criteria.clear();
        for (Figure f : figures)
            opt.criteria.push_back(figure_criterion(f));
        opt.verify_samples = 0;
        const AnalysisResult r = analyze(am.mdelta, opt);
        for (Figure f : figures) {
            const PlotData p = make_plot(f, r.summary, *r.find(figure_criterion(f)));
            const std::string id(figure_id(f));
            if (cfg.format != OutputFormat::svg) {
                detail::write_file(dir / ("locus_" + id + ".csv"), write_plot_csv(p));
                out << "wrote " << (dir / ("locus_" + id + ".csv")).string() << "\n";
            }
            if (cfg.format != OutputFormat::csv) {
                // rendered from the CSV round trip so both paths give identical bytes
                detail::write_file(dir / ("fig_" + id + ".svg"), render_svg(parse_plot_csv(write_plot_csv(p))));
                out << "wrote " << (dir / ("fig_" + id + ".svg")).string() << "\n";
            }
        }
        return kExitOk;
    } catch (const NotHurwitzError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

/// Audits intervals either recomputed from the model or read from a results CSV.
inline int cmd_verify(const CommandConfig& cfg, std::size_t n_samples, const std::optional<std::string>& results_path,
                      std::ostream& out, std::ostream& err) {
    try {
        const AircraftModel am = build_aircraft_model(load_definition(cfg), cfg.Kq, cfg.Kalpha);
        if (!am.mdelta.nominal_stable(cfg.stability_margin)) {
            err << "error: nominal closed loop is unstable; nothing to verify\n";
            return kExitUnstable;
        }
        std::vector<StabilityInterval> intervals;
        if (results_path) {
            intervals = parse_csv(detail::read_file(*results_path));
        } else {
            AnalysisOptions opt = detail::analysis_options(cfg);
            opt.verify_samples = 0;
            intervals = analyze(am.mdelta, opt).intervals;
        }
        if (n_samples == 0)
            err << "warning: --samples 0 makes every verification vacuous\n";
        VerifyOptions vo;
        vo.margin = cfg.stability_margin;
        bool all = true;
        out << std::left << std::setw(12) << "criterion" << std::setw(12) << "lower" << std::setw(12) << "upper"
            << std::setw(9) << "samples" << std::setw(10) << "interior" << std::setw(10) << "exterior" << "result\n";
        for (const auto& iv : intervals) {
            const auto rep = verify_interval(am.mdelta, iv, n_samples, vo);
            all = all && rep.passed;
            const bool ext_applies = iv.criterion == Criterion::exact && n_samples > 0;
            out << std::left << std::setw(12) << criterion_id(iv.criterion) << std::setw(12) << format_bound(iv.lower)
                << std::setw(12) << format_bound(iv.upper) << std::setw(9) << n_samples << std::setw(10)
                << (rep.interior_failures.empty() ? "ok" : "FAIL") << std::setw(10)
                << (ext_applies ? (rep.exterior_failures.empty() ? "ok" : "FAIL") : "-") << (rep.passed ? "PASS" : "FAIL")
                << "\n";
            for (const auto& m : rep.messages)
                out << "    " << m << "\n";
        }
        return all ? kExitOk : kExitVerificationFailed;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace rstab
