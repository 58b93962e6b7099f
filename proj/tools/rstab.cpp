// rstab: robust stability bounds for the uncertain-c.g. aircraft model.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rstab/commands.hpp"

namespace {

void add_common(CLI::App* app, rstab::CommandConfig& cfg, std::string& model) {
    app->add_option("--model", model, "model file (default: built-in reference aircraft)");
    app->add_option("--kq", cfg.Kq, "inner-loop pitch-rate gain")->capture_default_str();
    app->add_option("--kalpha", cfg.Kalpha, "inner-loop angle-of-attack gain")->capture_default_str();
    app->add_option("--wmin", cfg.sampling.wmin, "lowest frequency, rad/s")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--wmax", cfg.sampling.wmax, "highest frequency, rad/s")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--npoints", cfg.sampling.n, "log-spaced frequency points")->capture_default_str()->check(CLI::Range(2, 10000000));
    app->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    app->add_option("--stability-margin", cfg.stability_margin, "require max Re(eig) < -margin")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
}

std::vector<rstab::Criterion> parse_criteria(const std::vector<std::string>& names) {
    std::vector<rstab::Criterion> out;
    for (const auto& n : names) {
        if (n == "all")
            return {std::begin(rstab::kAllCriteria), std::end(rstab::kAllCriteria)};
        auto c = rstab::parse_criterion(n);
        if (!c)
            throw CLI::ValidationError("--criteria", "unknown criterion '" + n + "' (exact, smallgain, circle, posreal, popov, all)");
        out.push_back(*c);
    }
    if (out.empty())
        throw CLI::ValidationError("--criteria", "criterion set is empty");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust stability bounds for an aircraft with uncertain centre of gravity"};
    app.require_subcommand(1);

    rstab::CommandConfig cfg;
    std::string model;
    std::vector<std::string> criteria;
    std::vector<std::string> figures;
    std::string format = "both";
    std::string from_csv;
    std::string results;
    std::size_t samples = 100;

    auto* model_cmd = app.add_subcommand("model", "print the model chain and write model.txt");
    add_common(model_cmd, cfg, model);

    auto* analyze_cmd = app.add_subcommand("analyze", "compute stability intervals; writes report.txt and report.csv");
    add_common(analyze_cmd, cfg, model);
    analyze_cmd->add_option("--criteria", criteria, "comma-separated: exact,smallgain,circle,posreal,popov")->delimiter(',');
    analyze_cmd->add_flag("--optimize-center", cfg.optimize_center, "search the circle centre instead of the locus midpoint");

    auto* plot_cmd = app.add_subcommand("plot", "write locus_<figure>.csv and fig_<figure>.svg");
    add_common(plot_cmd, cfg, model);
    plot_cmd->add_option("--figure", figures, "nyquist_smallgain, nyquist_circle, nyquist_posreal, popov or all")->delimiter(',');
    plot_cmd->add_option("--format", format, "csv, svg or both")->capture_default_str()->check(CLI::IsMember({"csv", "svg", "both"}));
    plot_cmd->add_option("--from-csv", from_csv, "re-render an existing locus CSV")->check(CLI::ExistingFile);
    plot_cmd->add_flag("--optimize-center", cfg.optimize_center, "search the circle centre instead of the locus midpoint");

    auto* verify_cmd = app.add_subcommand("verify", "sample every interval and check closed-loop stability");
    add_common(verify_cmd, cfg, model);
    verify_cmd->add_option("--samples", samples, "interior samples per interval")->capture_default_str();
    verify_cmd->add_option("--results", results, "report.csv to audit instead of recomputing")->check(CLI::ExistingFile);
    verify_cmd->add_option("--criteria", criteria, "comma-separated criterion list")->delimiter(',');
    verify_cmd->add_flag("--optimize-center", cfg.optimize_center, "search the circle centre instead of the locus midpoint");

    try {
        app.parse(argc, argv);
        if (cfg.sampling.wmin >= cfg.sampling.wmax)
            throw CLI::ValidationError("--wmin", "frequency window must satisfy wmin < wmax");
        if (!criteria.empty())
            cfg.criteria = parse_criteria(criteria);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (!model.empty())
        cfg.model_path = model;

    try {
        if (*model_cmd)
            return rstab::cmd_model(cfg, std::cout, std::cerr);
        if (*analyze_cmd)
            return rstab::cmd_analyze(cfg, std::cout, std::cerr);
        if (*plot_cmd) {
            cfg.format = format == "csv" ? rstab::OutputFormat::csv
                         : format == "svg" ? rstab::OutputFormat::svg
                                           : rstab::OutputFormat::both;
            std::vector<rstab::Figure> figs;
            for (const auto& f : figures) {
                if (f == "all") {
                    figs.assign(std::begin(rstab::kAllFigures), std::end(rstab::kAllFigures));
                    break;
                }
                auto parsed = rstab::parse_figure(f);
                if (!parsed) {
                    std::cerr << "error: unknown figure '" << f << "'\n";
                    return rstab::kExitInputError;
                }
                figs.push_back(*parsed);
            }
            if (figs.empty())
                figs.assign(std::begin(rstab::kAllFigures), std::end(rstab::kAllFigures));
            return rstab::cmd_plot(cfg, figs, from_csv.empty() ? std::nullopt : std::optional(from_csv), std::cout,
                                   std::cerr);
        }
        if (*verify_cmd)
            return rstab::cmd_verify(cfg, samples, results.empty() ? std::nullopt : std::optional(results), std::cout,
                                     std::cerr);
    } catch (const rstab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rstab::kExitInputError;
    }
    return rstab::kExitOk;
}
