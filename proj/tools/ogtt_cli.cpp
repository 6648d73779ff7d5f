// ogtt: synthesise OGTT cohorts, fit the damped-oscillator model per patient,
// classify patients on (A, alpha) and write a run report.
//
//   ogtt synth    [options]   cohort.csv + truth.csv
//   ogtt fit      [options]   summaries.jsonl, fit_curves.csv, marginals.csv, ...
//   ogtt classify [options]   scatter.csv, boundary.csv, svm_model.json, accuracy.txt
//   ogtt report   [options]   report.txt
//
// Every option can also be given in a key = value file passed with --config.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ogtt/ogtt.hpp"

namespace {

void add_distribution(CLI::App& app, ogtt::RunConfig& cfg, ogtt::Label label, std::vector<double>& store) {
    const auto& d = cfg.cohort.classes[ogtt::label_index(label)];
    store = {d.A.center,     d.A.spread,     d.alpha.center, d.alpha.spread,   d.omega.center,
             d.omega.spread, d.delta.center, d.delta.spread, d.fasting.center, d.fasting.spread};
    app.add_option(fmt::format("--dist-{}", ogtt::to_string(label)), store,
                   "synthetic cluster: A, alpha, omega, delta, G0 as center/spread pairs")
        ->expected(10)
        ->group("Synthesis");
}

void apply_distribution(ogtt::RunConfig& cfg, ogtt::Label label, const std::vector<double>& v) {
    auto& d = cfg.cohort.classes[ogtt::label_index(label)];
    d.A = {v[0], v[1]};
    d.alpha = {v[2], v[3]};
    d.omega = {v[4], v[5]};
    d.delta = {v[6], v[7]};
    d.fasting = {v[8], v[9]};
}

} // namespace

int main(int argc, char** argv) {
    ogtt::RunConfig cfg;
    CLI::App app{"Bayesian damped-oscillator fits of OGTT data with SVM classification"};
    app.set_config("--config", "", "key = value configuration file");
    app.require_subcommand(1, 1);

    app.add_option("--input", cfg.input, "cohort CSV (omit to synthesise a cohort)");
    app.add_option("--output", cfg.output_dir, "output directory")->capture_default_str();
    app.add_option("--summaries", cfg.summaries, "summaries.jsonl for classify/report (default <output>/summaries.jsonl)");
    app.add_option("--seed", cfg.seed, "global seed")->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
    app.add_flag("--export-chains,!--no-export-chains", cfg.export_chains, "write kept MCMC samples per patient");
    app.add_flag("--svg,!--no-svg", cfg.svg, "render SVG figures next to the CSV data");

    std::string likelihood = "unscaled";
    app.add_option("--gamma", cfg.noise.gamma, "observation noise standard deviation (mg/dl)")
        ->capture_default_str()->group("Model");
    app.add_option("--likelihood", likelihood, "Gaussian exponent: unscaled (|r|^2/gamma^2) or conventional (|r|^2/(2 gamma^2))")
        ->check(CLI::IsMember({"unscaled", "conventional"}))->capture_default_str()->group("Model");
    app.add_option("--prior-a-lower-factor", cfg.prior.A_lower_factor)->capture_default_str()->group("Model");
    app.add_option("--prior-a-upper-factor", cfg.prior.A_upper_factor)->capture_default_str()->group("Model");
    app.add_option("--prior-a-upper-offset", cfg.prior.A_upper_offset)->capture_default_str()->group("Model");
    app.add_option("--prior-alpha-max", cfg.prior.alpha_max)->capture_default_str()->group("Model");
    app.add_option("--prior-omega-max", cfg.prior.omega_max)->capture_default_str()->group("Model");
    app.add_option("--prior-delta-bound", cfg.prior.delta_bound)->capture_default_str()->group("Model");

    app.add_option("--map-starts", cfg.optimizer.starts)->capture_default_str()->group("MAP");
    app.add_option("--map-max-iter", cfg.optimizer.max_iterations)->capture_default_str()->group("MAP");
    app.add_option("--map-tol", cfg.optimizer.tolerance)->capture_default_str()->group("MAP");

    app.add_option("--walkers", cfg.sampler.walkers)->capture_default_str()->group("Sampler");
    app.add_option("--stretch", cfg.sampler.stretch)->capture_default_str()->group("Sampler");
    app.add_option("--iterations", cfg.sampler.iterations)->capture_default_str()->group("Sampler");
    app.add_option("--burn-in", cfg.sampler.burn_in)->capture_default_str()->group("Sampler");
    app.add_option("--thin", cfg.sampler.thin)->capture_default_str()->group("Sampler");

    app.add_option("--svm-c", cfg.svm.C)->capture_default_str()->group("SVM");
    app.add_flag("--svm-standardize,!--no-svm-standardize", cfg.svm.standardize)->group("SVM");
    app.add_option("--svm-tol", cfg.svm.tolerance)->capture_default_str()->group("SVM");

    std::vector<int> counts(cfg.cohort.counts.begin(), cfg.cohort.counts.end());
    app.add_option("--counts", counts, "class counts H IFG IGT IFG-IGT T2DM")->expected(5)->group("Synthesis");
    app.add_option("--synth-gamma", cfg.cohort.gamma, "noise added to synthetic concentrations")
        ->capture_default_str()->group("Synthesis");
    std::vector<std::vector<double>> dists(ogtt::kAllLabels.size());
    for (ogtt::Label l : ogtt::kAllLabels)
        add_distribution(app, cfg, l, dists[ogtt::label_index(l)]);

    auto* synth = app.add_subcommand("synth", "generate a synthetic cohort");
    auto* fit = app.add_subcommand("fit", "MAP + MCMC fit of every patient");
    auto* classify = app.add_subcommand("classify", "linear SVM on MAP (A, alpha)");
    auto* report = app.add_subcommand("report", "text report from earlier stage outputs");
    for (auto* sub : {synth, fit, classify, report})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    cfg.noise.convention =
        likelihood == "unscaled" ? ogtt::LikelihoodConvention::Unscaled : ogtt::LikelihoodConvention::Conventional;
    for (std::size_t i = 0; i < 5; ++i)
        cfg.cohort.counts[i] = counts[i];
    for (ogtt::Label l : ogtt::kAllLabels)
        apply_distribution(cfg, l, dists[ogtt::label_index(l)]);

    try {
        if (synth->parsed()) {
            const auto patients = ogtt::synth_command(cfg);
            std::cout << "wrote " << patients.size() << " patients to " << cfg.output_dir << "\n";
        } else if (fit->parsed()) {
            const auto result = ogtt::fit_command(cfg);
            std::cout << "fitted " << result.fits.size() << " patients into " << cfg.output_dir << "\n";
        } else if (classify->parsed()) {
            const auto result = ogtt::classify_command(cfg);
            std::cout << "training accuracy: " << result.accuracy << "\n";
        } else if (report->parsed()) {
            std::cout << ogtt::report_command(cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
