#ifndef OGTT_COHORT_HPP
#define OGTT_COHORT_HPP

// OGTT records, the fasting-level shift, CSV interchange and synthetic cohorts.
//
// CSV dialect: comma separated, '.' decimal point, header
//     patient_id,label,g0,g30,g60,g90,g120
// Concentrations are in mg/dl.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "ogtt/error.hpp"
#include "ogtt/oscillator.hpp"
#include "ogtt/random.hpp"

namespace ogtt {

enum class Label { Healthy, IFG, IGT, IFG_IGT, T2DM };

inline constexpr std::array<Label, 5> kAllLabels{Label::Healthy, Label::IFG, Label::IGT, Label::IFG_IGT,
                                                 Label::T2DM};

inline constexpr std::string_view to_string(Label l) {
    switch (l) {
    case Label::Healthy: return "H";
    case Label::IFG: return "IFG";
    case Label::IGT: return "IGT";
    case Label::IFG_IGT: return "IFG-IGT";
    case Label::T2DM: return "T2DM";
    }
    return "?";
}

inline std::optional<Label> parse_label(std::string_view s) {
    for (Label l : kAllLabels)
        if (to_string(l) == s)
            return l;
    return std::nullopt;
}

inline constexpr std::size_t label_index(Label l) { return static_cast<std::size_t>(l); }

struct OgttRecord {
    std::string patient_id;
    Label label = Label::Healthy;
    std::array<double, 5> glucose{};  // t = 0, 30, 60, 90, 120 min

    friend bool operator==(const OgttRecord&, const OgttRecord&) = default;
};

struct DeviationData {
    std::array<double, 4> y{};  // g_30, g_60, g_90, g_120
    double g_min = 0.0;         // min |y_i|
    double g_max = 0.0;         // max |y_i|
};

inline DeviationData make_deviation(const std::array<double, 4>& y) {
    DeviationData d;
    d.y = y;
    d.g_min = std::abs(y[0]);
    d.g_max = std::abs(y[0]);
    for (double v : y) {
        d.g_min = std::min(d.g_min, std::abs(v));
        d.g_max = std::max(d.g_max, std::abs(v));
    }
    return d;
}

/// g_t = G_t - G_0 for t = 30, 60, 90, 120.
inline DeviationData shift(const OgttRecord& r) {
    std::array<double, 4> y{};
    for (std::size_t i = 0; i < 4; ++i)
        y[i] = r.glucose[i + 1] - r.glucose[0];
    return make_deviation(y);
}

inline constexpr std::string_view kCohortHeader = "patient_id,label,g0,g30,g60,g90,g120";

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string_view trim_line(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (first != last && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last)
        return std::nullopt;
    return v;
}

} // namespace detail

/// Reads a cohort in the CSV dialect above. Blank lines are skipped.
inline std::vector<OgttRecord> parse_cohort(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::trim_line(line).empty()) {
            have_header = true;
            break;
        }
    }
    if (!have_header)
        throw EmptyInput("cohort input is empty");
    std::string_view header = detail::trim_line(line);
    if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF")
        header.remove_prefix(3);
    if (header != kCohortHeader)
        throw MalformedRow(line_no, "expected header '" + std::string(kCohortHeader) + "'");

    std::vector<OgttRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        const auto row = detail::trim_line(line);
        if (row.empty())
            continue;
        const auto cols = detail::split_commas(row);
        if (cols.size() != 7)
            throw MalformedRow(line_no, fmt::format("expected 7 columns, got {}", cols.size()));
        OgttRecord r;
        r.patient_id = std::string(cols[0]);
        if (r.patient_id.empty())
            throw MalformedRow(line_no, "empty patient_id");
        const auto label = parse_label(cols[1]);
        if (!label)
            throw MalformedRow(line_no, "unknown label '" + std::string(cols[1]) + "'");
        r.label = *label;
        for (std::size_t i = 0; i < 5; ++i) {
            const auto v = detail::parse_double(cols[i + 2]);
            if (!v)
                throw MalformedRow(line_no, "non-numeric concentration '" + std::string(cols[i + 2]) + "'");
            if (!(*v > 0.0) || !std::isfinite(*v))
                throw MalformedRow(line_no, "concentrations must be positive and finite");
            r.glucose[i] = *v;
        }
        records.push_back(std::move(r));
    }
    return records;
}

/// Writes the CSV dialect; doubles use the shortest round-trip representation.
inline void serialize_cohort(std::ostream& out, std::span<const OgttRecord> records) {
    out << kCohortHeader << '\n';
    for (const auto& r : records) {
        out << fmt::format("{},{},{},{},{},{},{}\n", r.patient_id, to_string(r.label), r.glucose[0], r.glucose[1],
                           r.glucose[2], r.glucose[3], r.glucose[4]);
    }
}

// ---------------------------------------------------------------------------
// Synthetic cohorts
// ---------------------------------------------------------------------------

struct ParamDistribution {
    double center = 0.0;
    double spread = 0.0;  // standard deviation of the normal draw
};

/// Truncated-normal parameter clusters for one diagnostic class.
struct ClassDistribution {
    ParamDistribution A;
    ParamDistribution alpha;
    ParamDistribution omega;
    ParamDistribution delta;
    ParamDistribution fasting;  // G0, mg/dl
};

/// Support the synthetic draws are truncated to. omega stays below 2 pi / 30 - 0.15 so
/// the 30-minute alias (2 pi / 30 - omega) falls outside the default omega prior.
struct SynthesisLimits {
    double A_min = 5.0;
    double A_max = 300.0;
    double alpha_min = 0.002;
    double alpha_max = 0.095;
    double omega_min = 0.005;
    double omega_max = 0.058;
    double delta_min = -3.0;
    double delta_max = 3.0;
    double fasting_min = 60.0;
    double fasting_max = 160.0;
    double concentration_floor = 1.0;
};

struct CohortSpec {
    std::array<int, 5> counts{51, 4, 15, 7, 3};
    std::array<ClassDistribution, 5> classes{};
    SynthesisLimits limits{};
    double gamma = 5.0;
    std::uint64_t seed = 0;

    /// Class sizes of the reference cohort with clusters laid out so that healthy
    /// patients sit at lower amplitude and faster damping than the other classes.
    static CohortSpec reference() {
        CohortSpec s;
        //                     A            alpha            omega             delta         G0
        s.classes[0] = {{75.0, 12.0}, {0.030, 0.005}, {0.040, 0.005}, {1.2, 0.15}, {88.0, 6.0}};   // H
        s.classes[1] = {{95.0, 12.0}, {0.020, 0.004}, {0.038, 0.005}, {1.2, 0.15}, {110.0, 5.0}};  // IFG
        s.classes[2] = {{115.0, 15.0}, {0.014, 0.004}, {0.030, 0.005}, {1.3, 0.15}, {92.0, 6.0}};  // IGT
        s.classes[3] = {{125.0, 15.0}, {0.012, 0.004}, {0.028, 0.005}, {1.3, 0.15}, {112.0, 5.0}}; // IFG-IGT
        s.classes[4] = {{150.0, 20.0}, {0.008, 0.003}, {0.022, 0.004}, {1.4, 0.15}, {135.0, 10.0}};// T2DM
        return s;
    }

    int total() const {
        int n = 0;
        for (int c : counts)
            n += c;
        return n;
    }

    void validate() const {
        for (int c : counts)
            if (c < 0)
                throw std::invalid_argument("CohortSpec: negative class count");
        if (!(gamma >= 0.0))
            throw std::invalid_argument("CohortSpec: gamma must be nonnegative");
    }
};

struct SyntheticPatient {
    OgttRecord record;
    OscillatorParams truth;
};

namespace detail {

inline double draw_truncated(Rng& rng, const ParamDistribution& d, double lo, double hi) {
    if (d.spread <= 0.0)
        return std::clamp(d.center, lo, hi);
    std::normal_distribution<double> normal(d.center, d.spread);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double v = normal(rng);
        if (v >= lo && v <= hi)
            return v;
    }
    return std::clamp(d.center, lo, hi);
}

} // namespace detail

/// Generates a labelled cohort. Patients are ordered by class (H, IFG, IGT, IFG-IGT, T2DM)
/// and numbered P01, P02, ... Deterministic for a fixed spec.
inline std::vector<SyntheticPatient> synthesize_cohort(const CohortSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const auto& lim = spec.limits;
    const int total = spec.total();
    const int width = std::max(2, static_cast<int>(std::to_string(total).size()));

    std::vector<SyntheticPatient> out;
    out.reserve(static_cast<std::size_t>(total));
    int index = 0;
    for (Label label : kAllLabels) {
        const auto& dist = spec.classes[label_index(label)];
        for (int k = 0; k < spec.counts[label_index(label)]; ++k) {
            ++index;
            SyntheticPatient p;
            p.truth.A = detail::draw_truncated(rng, dist.A, lim.A_min, lim.A_max);
            p.truth.alpha = detail::draw_truncated(rng, dist.alpha, lim.alpha_min, lim.alpha_max);
            p.truth.omega = detail::draw_truncated(rng, dist.omega, lim.omega_min, lim.omega_max);
            p.truth.delta = detail::draw_truncated(rng, dist.delta, lim.delta_min, lim.delta_max);
            const double g0 = detail::draw_truncated(rng, dist.fasting, lim.fasting_min, lim.fasting_max);

            p.record.patient_id = fmt::format("P{:0{}}", index, width);
            p.record.label = label;
            p.record.glucose[0] = g0;
            std::normal_distribution<double> noise(0.0, 1.0);
            for (std::size_t i = 0; i < 4; ++i) {
                const double eps = spec.gamma > 0.0 ? spec.gamma * noise(rng) : 0.0;
                p.record.glucose[i + 1] =
                    std::max(lim.concentration_floor, g0 + evaluate(p.truth, kSampleTimes[i]) + eps);
            }
            out.push_back(std::move(p));
        }
    }
    return out;
}

inline std::vector<OgttRecord> records_of(std::span<const SyntheticPatient> patients) {
    std::vector<OgttRecord> out;
    out.reserve(patients.size());
    for (const auto& p : patients)
        out.push_back(p.record);
    return out;
}

inline constexpr std::string_view kTruthHeader = "patient_id,A,alpha,omega,delta";

/// Sidecar with the generating parameters of each synthetic patient.
inline void write_truth_sidecar(std::ostream& out, std::span<const SyntheticPatient> patients) {
    out << kTruthHeader << '\n';
    for (const auto& p : patients)
        out << fmt::format("{},{},{},{},{}\n", p.record.patient_id, p.truth.A, p.truth.alpha, p.truth.omega,
                           p.truth.delta);
}

} // namespace ogtt

#endif // OGTT_COHORT_HPP
