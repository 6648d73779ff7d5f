#ifndef OGTT_PIPELINE_HPP
#define OGTT_PIPELINE_HPP

// End-to-end stages: synth -> fit -> classify -> report. Stages talk through
// files in one output directory:
//
//   cohort.csv        cohort actually fitted (same dialect as the input)
//   truth.csv         generating parameters (synthetic cohorts only)
//   run_config.ini    effective configuration, readable back with --config
//   summaries.jsonl   one posterior summary per patient
//   fit_curves.csv    MAP curve on t = 0..120 min next to the observed deviations
//   marginals.csv     marginal densities on a 256-point grid
//   chains/<id>.csv   kept MCMC samples (optional)
//   scatter.csv, boundary.csv, svm_model.json, accuracy.txt   classification
//   report.txt        human-readable run report
//
// Seeds: every random stream derives from RunConfig::seed via derive_seed with
// the stage tags below and the zero-based patient index.

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ogtt/bayes.hpp"
#include "ogtt/cohort.hpp"
#include "ogtt/ensemble.hpp"
#include "ogtt/posterior.hpp"
#include "ogtt/svg.hpp"
#include "ogtt/svm.hpp"

namespace ogtt {

namespace fs = std::filesystem;

enum SeedStage : std::uint64_t { kStageCohort = 1, kStageMap = 2, kStageMcmc = 3 };

struct RunConfig {
    std::string input;  // cohort CSV; empty means synthesise from `cohort`
    CohortSpec cohort = CohortSpec::reference();
    NoiseModel noise;
    PriorSettings prior;
    OptimizerConfig optimizer;
    SamplerConfig sampler;
    SvmConfig svm;
    std::string output_dir = "out";
    std::string summaries;  // classify/report input; defaults to <output_dir>/summaries.jsonl
    std::uint64_t seed = 20240101;
    int threads = 0;  // 0: hardware concurrency
    bool export_chains = false;
    bool svg = false;

    bool synthesize() const { return input.empty(); }
    fs::path out() const { return fs::path(output_dir); }
    fs::path summaries_path() const { return summaries.empty() ? out() / "summaries.jsonl" : fs::path(summaries); }
};

inline std::string_view to_string(LikelihoodConvention c) {
    return c == LikelihoodConvention::Unscaled ? "unscaled" : "conventional";
}

/// Effective configuration as `key = value` lines; keys match the CLI long options.
inline std::string format_config(const RunConfig& c) {
    std::string s;
    auto line = [&](std::string_view k, const auto& v) { s += fmt::format("{} = {}\n", k, v); };
    auto dist = [&](const ClassDistribution& d) {
        return fmt::format("[{}, {}, {}, {}, {}, {}, {}, {}, {}, {}]", d.A.center, d.A.spread, d.alpha.center,
                           d.alpha.spread, d.omega.center, d.omega.spread, d.delta.center, d.delta.spread,
                           d.fasting.center, d.fasting.spread);
    };
    if (!c.input.empty())
        line("input", fmt::format("\"{}\"", c.input));
    line("output", fmt::format("\"{}\"", c.output_dir));
    line("seed", c.seed);
    line("gamma", c.noise.gamma);
    line("likelihood", to_string(c.noise.convention));
    line("prior-a-lower-factor", c.prior.A_lower_factor);
    line("prior-a-upper-factor", c.prior.A_upper_factor);
    line("prior-a-upper-offset", c.prior.A_upper_offset);
    line("prior-alpha-max", c.prior.alpha_max);
    line("prior-omega-max", c.prior.omega_max);
    line("prior-delta-bound", c.prior.delta_bound);
    line("map-starts", c.optimizer.starts);
    line("map-max-iter", c.optimizer.max_iterations);
    line("map-tol", c.optimizer.tolerance);
    line("walkers", c.sampler.walkers);
    line("stretch", c.sampler.stretch);
    line("iterations", c.sampler.iterations);
    line("burn-in", c.sampler.burn_in);
    line("thin", c.sampler.thin);
    line("svm-c", c.svm.C);
    line("svm-standardize", c.svm.standardize);
    line("svm-tol", c.svm.tolerance);
    if (c.synthesize()) {
        const auto& k = c.cohort.counts;
        line("counts", fmt::format("[{}, {}, {}, {}, {}]", k[0], k[1], k[2], k[3], k[4]));
        line("synth-gamma", c.cohort.gamma);
        for (Label l : kAllLabels)
            line(fmt::format("dist-{}", to_string(l)), dist(c.cohort.classes[label_index(l)]));
    }
    line("export-chains", c.export_chains);
    line("svg", c.svg);
    return s;
}

struct PatientFit {
    OgttRecord record;
    DeviationData data;
    PriorBox box;
    MapResult map;
    PosteriorSummary summary;
    std::string chain_csv;  // filled only when chains are exported
};

struct CohortInput {
    std::vector<OgttRecord> records;
    std::vector<SyntheticPatient> synthetic;  // empty for file input
};

inline CohortInput load_cohort(const RunConfig& cfg) {
    CohortInput in;
    if (cfg.synthesize()) {
        CohortSpec spec = cfg.cohort;
        spec.seed = derive_seed(cfg.seed, kStageCohort);
        in.synthetic = synthesize_cohort(spec);
        in.records = records_of(in.synthetic);
    } else {
        std::ifstream f(cfg.input);
        if (!f)
            throw MissingArtifact(cfg.input);
        try {
            in.records = parse_cohort(f);
        } catch (const MalformedRow& e) {
            throw MalformedRow(e.line(), e.detail(), cfg.input);
        } catch (const EmptyInput& e) {
            throw EmptyInput(fmt::format("{}: {}", cfg.input, e.what()));
        }
    }
    return in;
}

/// Runs `fn(i)` for i in [0, n) on a bounded pool of threads.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(n, 1));
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            fn(i);
    };
    if (workers <= 1) {
        body();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(body);
    for (auto& t : pool)
        t.join();
}

inline PatientFit fit_patient(const OgttRecord& record, std::size_t index, const RunConfig& cfg) {
    PatientFit fit;
    fit.record = record;
    fit.data = shift(record);
    fit.box = PriorBox::from_data(fit.data, cfg.prior);

    OptimizerConfig opt = cfg.optimizer;
    opt.seed = derive_seed(cfg.seed, kStageMap, index);
    fit.map = map_estimate(fit.data, fit.box, cfg.noise, opt);

    SamplerConfig sc = cfg.sampler;
    sc.seed = derive_seed(cfg.seed, kStageMcmc, index);
    const auto samples = run(fit.data, fit.box, cfg.noise, sc, fit.map.params);
    fit.summary = summarize(samples, fit.map, fit.box);

    if (cfg.export_chains) {
        std::string csv = "walker,iteration,A,alpha,omega,delta,log_post\n";
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const auto& u = samples.samples[k];
            csv += fmt::format("{},{},{},{},{},{},{}\n", samples.walker[k], samples.iteration[k], u[0], u[1], u[2],
                               u[3], samples.log_density[k]);
        }
        fit.chain_csv = std::move(csv);
    }
    return fit;
}

/// Fits every record concurrently; results keep input order.
inline std::vector<PatientFit> fit_cohort(std::span<const OgttRecord> records, const RunConfig& cfg) {
    std::vector<PatientFit> fits(records.size());
    std::vector<std::exception_ptr> errors(records.size());
    parallel_for(records.size(), cfg.threads, [&](std::size_t i) {
        try {
            fits[i] = fit_patient(records[i], i, cfg);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i])
            continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            throw Error(fmt::format("patient {}: {}", records[i].patient_id, e.what()));
        }
    }
    return fits;
}

inline nlohmann::ordered_json summary_json(const PatientFit& f) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["patient_id"] = f.record.patient_id;
    j["label"] = std::string(to_string(f.record.label));
    j["data"] = f.data.y;
    ordered_json prior, map, cm, ci, modes;
    const auto mv = f.map.params.to_array();
    for (std::size_t i = 0; i < kParamCount; ++i) {
        const auto& p = f.summary.params[i];
        prior[kParamNames[i]] = {f.box[i].lo, f.box[i].hi};
        map[kParamNames[i]] = mv[i];
        cm[kParamNames[i]] = p.cm;
        ci[kParamNames[i]] = {p.credible.lo, p.credible.hi};
        modes[kParamNames[i]] = p.mode_count;
    }
    j["prior"] = prior;
    j["map"] = map;
    j["map_log_posterior"] = f.map.log_posterior;
    j["cm"] = cm;
    j["credible_95"] = ci;
    j["mode_counts"] = modes;
    j["alpha_relative_width"] = concentration_report(f.summary, kAlpha).relative_width;
    j["acceptance_rate"] = f.summary.acceptance_rate;
    j["samples"] = f.summary.sample_count;
    return j;
}

namespace detail {

inline void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw Error("cannot write " + p.string());
    f << content;
}

inline std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f)
        throw MissingArtifact(p.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline std::string marker_for(Label l) {
    switch (l) {
    case Label::Healthy: return "circle";
    case Label::IFG: return "ring";
    case Label::IGT: return "triangle";
    case Label::IFG_IGT: return "diamond";
    case Label::T2DM: return "square";
    }
    return "circle";
}

inline std::string fit_figure(std::span<const PatientFit> fits) {
    // Up to four healthy and four non-healthy patients, in cohort order.
    std::vector<svg::Panel> panels;
    int healthy = 0, ill = 0;
    for (const auto& f : fits) {
        int& n = f.record.label == Label::Healthy ? healthy : ill;
        if (n >= 4)
            continue;
        ++n;
        svg::Panel p;
        p.title = fmt::format("{} {}", f.record.patient_id, to_string(f.record.label));
        p.x_label = "t (min)";
        p.y_label = "g (mg/dl)";
        svg::Series curve;
        for (int t = 0; t <= 120; ++t) {
            curve.x.push_back(t);
            curve.y.push_back(evaluate(f.map.params, t));
        }
        svg::Series pts;
        pts.markers = true;
        pts.color = "#d62728";
        pts.x.assign(kSampleTimes.begin(), kSampleTimes.end());
        pts.y.assign(f.data.y.begin(), f.data.y.end());
        p.series = {curve, pts};
        panels.push_back(std::move(p));
    }
    return svg::render(panels, 4);
}

inline std::string marginal_figure(std::span<const PatientFit> fits) {
    std::vector<svg::Panel> panels;
    int healthy = 0, ill = 0;
    for (const auto& f : fits) {
        int& n = f.record.label == Label::Healthy ? healthy : ill;
        if (n >= 4)
            continue;
        const auto& a = f.summary.params[kAlpha];
        if (a.density.grid.empty())
            continue;
        ++n;
        svg::Panel p;
        p.title = fmt::format("{} {}", f.record.patient_id, to_string(f.record.label));
        p.x_label = "alpha (1/min)";
        p.y_label = "density";
        svg::Series s;
        s.x = a.density.grid;
        s.y = a.density.smoothed;
        p.series = {s};
        p.vlines = {{a.map, "#000000"}, {a.cm, "#2ca02c"}};
        panels.push_back(std::move(p));
    }
    return svg::render(panels, 4);
}

} // namespace detail

struct FitResult {
    std::vector<PatientFit> fits;
    std::vector<SyntheticPatient> synthetic;
};

/// Fits every patient and writes cohort.csv, summaries.jsonl, fit_curves.csv,
/// marginals.csv and run_config.ini (plus truth.csv and chains when applicable).
inline FitResult fit_command(const RunConfig& cfg) {
    auto cohort = load_cohort(cfg);
    fs::create_directories(cfg.out());

    FitResult result;
    result.synthetic = std::move(cohort.synthetic);
    result.fits = fit_cohort(cohort.records, cfg);

    std::ostringstream cohort_csv;
    serialize_cohort(cohort_csv, cohort.records);
    detail::write_file(cfg.out() / "cohort.csv", cohort_csv.str());
    if (!result.synthetic.empty() || cfg.synthesize()) {
        std::ostringstream truth;
        write_truth_sidecar(truth, result.synthetic);
        detail::write_file(cfg.out() / "truth.csv", truth.str());
    }
    detail::write_file(cfg.out() / "run_config.ini", format_config(cfg));

    std::string summaries;
    std::string curves = "patient_id,t,g_map,g_data\n";
    std::string marginals = "patient_id,param,x,histogram,smoothed\n";
    for (const auto& f : result.fits) {
        summaries += summary_json(f).dump() + "\n";
        for (int t = 0; t <= 120; ++t) {
            std::string data;
            for (std::size_t k = 0; k < kSampleTimes.size(); ++k)
                if (kSampleTimes[k] == t)
                    data = fmt::format("{}", f.data.y[k]);
            curves += fmt::format("{},{},{},{}\n", f.record.patient_id, t, evaluate(f.map.params, t), data);
        }
        for (std::size_t i = 0; i < kParamCount; ++i) {
            const auto& d = f.summary.params[i].density;
            for (std::size_t g = 0; g < d.grid.size(); ++g)
                marginals += fmt::format("{},{},{},{},{}\n", f.record.patient_id, kParamNames[i], d.grid[g],
                                         d.histogram[g], d.smoothed[g]);
        }
    }
    detail::write_file(cfg.out() / "summaries.jsonl", summaries);
    detail::write_file(cfg.out() / "fit_curves.csv", curves);
    detail::write_file(cfg.out() / "marginals.csv", marginals);

    if (cfg.export_chains) {
        fs::create_directories(cfg.out() / "chains");
        for (const auto& f : result.fits)
            detail::write_file(cfg.out() / "chains" / (f.record.patient_id + ".csv"), f.chain_csv);
    }
    if (cfg.svg) {
        detail::write_file(cfg.out() / "fits.svg", detail::fit_figure(result.fits));
        detail::write_file(cfg.out() / "marginals_alpha.svg", detail::marginal_figure(result.fits));
    }
    return result;
}

/// Writes cohort.csv and truth.csv for a synthetic cohort.
inline std::vector<SyntheticPatient> synth_command(const RunConfig& cfg) {
    CohortSpec spec = cfg.cohort;
    spec.seed = derive_seed(cfg.seed, kStageCohort);
    auto patients = synthesize_cohort(spec);
    fs::create_directories(cfg.out());
    std::ostringstream cohort, truth;
    serialize_cohort(cohort, records_of(patients));
    write_truth_sidecar(truth, patients);
    detail::write_file(cfg.out() / "cohort.csv", cohort.str());
    detail::write_file(cfg.out() / "truth.csv", truth.str());
    return patients;
}

struct SummaryRecord {
    std::string patient_id;
    Label label = Label::Healthy;
    ParamVector map{};
    double alpha_relative_width = 0.0;
    int alpha_modes = 0;
    double acceptance_rate = 0.0;
};

/// Reads the summaries.jsonl written by fit_command.
inline std::vector<SummaryRecord> read_summaries(const fs::path& path) {
    std::ifstream f(path);
    if (!f)
        throw MissingArtifact(path.string());
    std::vector<SummaryRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty())
            continue;
        try {
            const auto j = nlohmann::json::parse(line);
            SummaryRecord r;
            r.patient_id = j.at("patient_id").get<std::string>();
            const auto label = parse_label(j.at("label").get<std::string>());
            if (!label)
                throw MalformedRow(line_no, "unknown label");
            r.label = *label;
            for (std::size_t i = 0; i < kParamCount; ++i)
                r.map[i] = j.at("map").at(kParamNames[i]).get<double>();
            r.alpha_relative_width = j.at("alpha_relative_width").get<double>();
            r.alpha_modes = j.at("mode_counts").at("alpha").get<int>();
            r.acceptance_rate = j.at("acceptance_rate").get<double>();
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw MalformedRow(line_no, std::string("summary record: ") + e.what());
        }
    }
    return out;
}

struct ClassifyResult {
    SvmModel model;
    double accuracy = 0.0;
    std::vector<LabeledPoint> points;
    std::vector<Prediction> predictions;
    std::optional<Segment> boundary;
};

/// Trains the SVM on MAP (A, alpha) and writes scatter.csv, boundary.csv,
/// svm_model.json and accuracy.txt.
inline ClassifyResult classify_command(const RunConfig& cfg) {
    const auto summaries = read_summaries(cfg.summaries_path());
    if (summaries.size() < 2)
        throw DegenerateClasses("classify: need at least two patients");
    ClassifyResult r;
    for (const auto& s : summaries)
        r.points.push_back({s.map[kAmplitude], s.map[kAlpha], binary_class(s.label)});
    r.model = train(r.points, cfg.svm);
    r.accuracy = accuracy(r.model, r.points);

    Interval A_range{INFINITY, -INFINITY}, alpha_range{INFINITY, -INFINITY};
    for (const auto& p : r.points) {
        A_range = {std::min(A_range.lo, p.A), std::max(A_range.hi, p.A)};
        alpha_range = {std::min(alpha_range.lo, p.alpha), std::max(alpha_range.hi, p.alpha)};
    }
    auto pad = [](Interval iv) {
        const double m = iv.width() > 0.0 ? 0.05 * iv.width() : 1.0;
        return Interval{iv.lo - m, iv.hi + m};
    };
    A_range = pad(A_range);
    alpha_range = pad(alpha_range);
    r.boundary = export_boundary(r.model, A_range, alpha_range);

    fs::create_directories(cfg.out());
    std::string scatter = "patient_id,A,alpha,label,predicted\n";
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        r.predictions.push_back(classify(r.model, r.points[i].A, r.points[i].alpha));
        scatter += fmt::format("{},{},{},{},{}\n", summaries[i].patient_id, r.points[i].A, r.points[i].alpha,
                               to_string(summaries[i].label), r.predictions[i].label > 0 ? "H" : "condition");
    }
    std::string boundary = "A,alpha\n";
    if (r.boundary) {
        boundary += fmt::format("{},{}\n", r.boundary->from[0], r.boundary->from[1]);
        boundary += fmt::format("{},{}\n", r.boundary->to[0], r.boundary->to[1]);
    }
    const auto line = boundary_line(r.model);
    nlohmann::ordered_json mj;
    mj["w"] = r.model.w;
    mj["b"] = r.model.b;
    mj["C"] = r.model.C;
    mj["standardization"] = {{"mean", r.model.standardization.mean}, {"scale", r.model.standardization.scale}};
    mj["boundary_original"] = {{"a_A", line.a_A}, {"a_alpha", line.a_alpha}, {"c", line.c}};
    mj["training"] = {{"points", r.points.size()},
                      {"iterations", r.model.iterations},
                      {"converged", r.model.converged},
                      {"primal_objective", r.model.primal_objective},
                      {"dual_objective", r.model.dual_objective},
                      {"accuracy", r.accuracy}};
    detail::write_file(cfg.out() / "scatter.csv", scatter);
    detail::write_file(cfg.out() / "boundary.csv", boundary);
    detail::write_file(cfg.out() / "svm_model.json", mj.dump(2) + "\n");
    detail::write_file(cfg.out() / "accuracy.txt", fmt::format("{}\n", r.accuracy));

    if (cfg.svg) {
        svg::Panel p;
        p.title = fmt::format("SVM on (A, alpha): training accuracy {:.3f}", r.accuracy);
        p.x_label = "A (mg/dl)";
        p.y_label = "alpha (1/min)";
        for (Label l : kAllLabels) {
            svg::Series s;
            s.markers = true;
            s.marker = detail::marker_for(l);
            s.color = l == Label::Healthy ? "#1f77b4" : "#d62728";
            for (std::size_t i = 0; i < summaries.size(); ++i) {
                if (summaries[i].label != l)
                    continue;
                s.x.push_back(r.points[i].A);
                s.y.push_back(r.points[i].alpha);
            }
            p.series.push_back(std::move(s));
        }
        if (r.boundary) {
            svg::Series s;
            s.color = "#000000";
            s.x = {r.boundary->from[0], r.boundary->to[0]};
            s.y = {r.boundary->from[1], r.boundary->to[1]};
            p.series.push_back(std::move(s));
        }
        detail::write_file(cfg.out() / "classification.svg", svg::render({p}, 1, 560, 420));
    }
    return r;
}

/// Assembles report.txt from the artifacts of earlier stages. Classification
/// artifacts are required only when the cohort is nonempty.
inline std::string report_command(const RunConfig& cfg) {
    const fs::path summaries_path = cfg.summaries_path();
    std::vector<fs::path> required{summaries_path, cfg.out() / "run_config.ini"};
    if (fs::exists(summaries_path) && fs::file_size(summaries_path) > 0) {
        for (const char* name : {"svm_model.json", "scatter.csv", "boundary.csv", "accuracy.txt"})
            required.push_back(cfg.out() / name);
    }
    for (const auto& p : required)
        if (!fs::exists(p))
            throw MissingArtifact(p.string());

    const auto summaries = read_summaries(summaries_path);
    std::string r;
    r += "OGTT oscillator fit report\n";
    r += "==========================\n\n";
    r += fmt::format("patients: {}\n", summaries.size());
    std::map<Label, int> counts;
    for (const auto& s : summaries)
        ++counts[s.label];
    for (Label l : kAllLabels)
        r += fmt::format("  {:<8} {}\n", to_string(l), counts[l]);

    if (!summaries.empty()) {
        std::vector<double> acc, widths;
        int unimodal = 0, concentrated = 0, both = 0;
        for (const auto& s : summaries) {
            acc.push_back(s.acceptance_rate);
            widths.push_back(s.alpha_relative_width);
            const bool uni = s.alpha_modes == 1;
            const bool narrow = s.alpha_relative_width < 0.5;
            unimodal += uni;
            concentrated += narrow;
            both += uni && narrow;
        }
        std::sort(acc.begin(), acc.end());
        std::sort(widths.begin(), widths.end());
        const auto n = static_cast<double>(summaries.size());
        r += "\nsampler acceptance rate\n";
        r += fmt::format("  min {:.4f}  median {:.4f}  max {:.4f}\n", acc.front(), sorted_quantile(acc, 0.5),
                         acc.back());
        r += "\nalpha marginal concentration\n";
        r += fmt::format("  unimodal smoothed marginal:        {} / {} ({:.1f}%)\n", unimodal, summaries.size(),
                         100.0 * unimodal / n);
        r += fmt::format("  relative 95% credible width < 0.5: {} / {} ({:.1f}%)\n", concentrated, summaries.size(),
                         100.0 * concentrated / n);
        r += fmt::format("  both:                              {} / {} ({:.1f}%)\n", both, summaries.size(),
                         100.0 * both / n);
        r += fmt::format("  median relative width:             {:.4f}\n", sorted_quantile(widths, 0.5));

        const auto model = nlohmann::json::parse(detail::read_file(cfg.out() / "svm_model.json"));
        r += "\nclassification (healthy vs any condition, MAP A and alpha)\n";
        r += fmt::format("  training accuracy: {}\n", model.at("training").at("accuracy").get<double>());
        const auto& line = model.at("boundary_original");
        r += fmt::format("  boundary: {} * A + {} * alpha + {} = 0\n", line.at("a_A").get<double>(),
                         line.at("a_alpha").get<double>(), line.at("c").get<double>());
    } else {
        r += "\nempty cohort: no fits, classification not run\n";
    }

    r += "\nconfiguration\n-------------\n";
    r += detail::read_file(cfg.out() / "run_config.ini");
    detail::write_file(cfg.out() / "report.txt", r);
    return r;
}

} // namespace ogtt

#endif // OGTT_PIPELINE_HPP
