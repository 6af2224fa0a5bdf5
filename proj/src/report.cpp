#include "ppm/report.hpp"

#include <cmath>
#include <sstream>

#include "ppm/simulate.hpp"
#include "ppm/text.hpp"

namespace ppm {

namespace {

namespace fs = std::filesystem;
using text::format_double;

class Csv {
public:
    explicit Csv(std::initializer_list<std::string> header) {
        bool first = true;
        for (const auto& h : header) {
            out_ << (first ? "" : ",") << h;
            first = false;
        }
        out_ << '\n';
    }
    Csv& row(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const auto& c : cells) {
            out_ << (first ? "" : ",") << c;
            first = false;
        }
        out_ << '\n';
        return *this;
    }
    Csv& row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
        return *this;
    }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

std::string f(double v) { return format_double(v); }

void write(const fs::path& path, const std::string& content) { text::write_file_atomic(path, content); }

void write_dataset(const fs::path& path, const Dataset& d) {
    std::ostringstream os;
    write_dataset_csv(d, os);
    write(path, os.str());
}

// Density histogram of several sample sets on shared bins.
std::string histogram(const std::vector<std::string>& names,
                      const std::vector<const std::vector<double>*>& samples, double lo, double hi,
                      std::size_t bins) {
    std::vector<std::string> header{"bin_lower", "bin_upper"};
    header.insert(header.end(), names.begin(), names.end());
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    const double w = (hi - lo) / static_cast<double>(bins);
    std::vector<std::vector<double>> counts(samples.size(), std::vector<double>(bins, 0.0));
    for (std::size_t k = 0; k < samples.size(); ++k) {
        for (double v : *samples[k]) {
            const double pos = (v - lo) / w;
            if (pos < 0.0 || pos >= static_cast<double>(bins)) continue;
            counts[k][static_cast<std::size_t>(pos)] += 1.0;
        }
    }
    for (std::size_t b = 0; b < bins; ++b) {
        os << f(lo + w * static_cast<double>(b)) << ',' << f(lo + w * static_cast<double>(b + 1));
        for (std::size_t k = 0; k < samples.size(); ++k)
            os << ',' << f(counts[k][b] / (static_cast<double>(samples[k]->size()) * w));
        os << '\n';
    }
    return os.str();
}

Json summary_json(const PredictiveSummary& s) {
    Json j;
    j["x"] = s.x;
    j["mean"] = s.mean;
    j["median"] = s.median;
    j["sd"] = s.sd;
    j["pi_lower"] = s.pi.lower;
    j["pi_upper"] = s.pi.upper;
    j["level"] = s.pi.level;
    return j;
}

Json decomposition_json(const ClassificationUncertainty& u) {
    Json j;
    j["mu_bar"] = u.mu_bar;
    j["sigma_mu"] = u.sigma_mu;
    j["aleatoric"] = u.aleatoric;
    j["epistemic"] = u.epistemic;
    return j;
}

}  // namespace

void write_report(const fs::path& dir, const experiments::Settings& s, const Json& run_config) {
    namespace ex = experiments;
    fs::create_directories(dir);
    Json report;
    report["run_config"] = run_config;

    const Dataset data = simulate_dataset(100, 3.25, 0.2, 0.1, s.seed);
    write_dataset(dir / "running_example.csv", data);
    report["running_example"] = {{"n", data.size()}, {"theta1", 3.25}, {"theta2", 0.2}, {"sigma", 0.1}};

    {
        const auto r = ex::threshold_compounds(s);
        write(dir / "threshold_compounds.csv",
              histogram({"compound_a", "compound_b"}, {&r.a.samples, &r.b.samples}, -2.0, 14.0, 160));
        report["threshold_compounds"] = {{"threshold", r.threshold},
                                         {"p_above_a", r.p_a},
                                         {"p_above_b", r.p_b},
                                         {"n_samples", r.a.samples.size()}};
    }
    {
        const auto r = ex::mean_function_averaging(data, s);
        Csv intervals({"x", "model", "mean", "median", "pi_lower", "pi_upper"});
        Csv widths({"x", "quadratic", "exp2", "exp3", "averaged"});
        std::vector<std::string> ids;
        for (const auto& m : r.models) ids.push_back(m.id);
        ids.push_back("averaged");
        for (std::size_t m = 0; m < r.summaries.size(); ++m)
            for (const auto& p : r.summaries[m])
                intervals.row({f(p.x), ids[m], f(p.mean), f(p.median), f(p.pi.lower), f(p.pi.upper)});
        for (std::size_t g = 0; g < r.widths.x.size(); ++g)
            widths.row({f(r.widths.x[g]), f(r.widths.widths[0][g]), f(r.widths.widths[1][g]),
                        f(r.widths.widths[2][g]), f(r.widths.averaged[g])});
        write(dir / "mean_function_intervals.csv", intervals.str());
        write(dir / "mean_function_widths.csv", widths.str());
        Json j;
        j["models"] = ids;
        Json diags = Json::array();
        for (const auto& d : r.diagnostics) diags.push_back(to_json(d));
        j["diagnostics"] = diags;
        report["mean_function_averaging"] = j;
    }
    {
        const auto r = ex::parameter_uncertainty(data, s);
        write_dataset(dir / "parameter_uncertainty_data.csv", r.subsample);
        Csv csv({"x", "bayes_lower", "bayes_upper", "plug_in_lower", "plug_in_upper", "width_ratio"});
        for (std::size_t g = 0; g < r.x.size(); ++g)
            csv.row({f(r.x[g]), f(r.bayes[g].lower), f(r.bayes[g].upper), f(r.plug_in[g].lower),
                     f(r.plug_in[g].upper), f(r.bayes[g].width() / r.plug_in[g].width())});
        write(dir / "parameter_uncertainty.csv", csv.str());
        report["parameter_uncertainty"] = {{"n", r.subsample.size()},
                                           {"theta_plug_in", r.theta_hat},
                                           {"median_width_ratio", r.median_width_ratio},
                                           {"bayes_wider_everywhere", r.bayes_wider_everywhere},
                                           {"tail_x", r.tail_x},
                                           {"tail_threshold", r.tail_threshold},
                                           {"p_tail_bayes", r.p_tail_bayes},
                                           {"p_tail_plug_in", r.p_tail_plug_in},
                                           {"diagnostics", to_json(r.diagnostics)}};
    }
    {
        const auto r = ex::measurement_error(data, s);
        write_dataset(dir / "measurement_error_data.csv", r.data);
        std::vector<std::string> names{"baseline", "test_error", "pooled"};
        std::vector<const std::vector<double>*> sets{&r.baseline.samples, &r.test_error.samples,
                                                     &r.pooled.samples};
        for (const auto& p : r.per_dataset) {
            names.push_back(p.provenance.model_id);
            sets.push_back(&p.samples);
        }
        write(dir / "measurement_error.csv", histogram(names, sets, -0.4, 1.2, 80));
        report["measurement_error"] = {{"test_x", r.test_x.value},
                                       {"test_x_se", r.test_x.standard_error},
                                       {"n_input_draws", r.test_error.samples.size()},
                                       {"generated_datasets", r.generated.size()},
                                       {"baseline_sd", r.baseline_sd},
                                       {"test_error_sd", r.test_error_sd},
                                       {"pooled_sd", r.pooled_sd},
                                       {"diagnostics", to_json(r.diagnostics)}};
    }
    {
        const auto r = ex::truncation(data, s);
        write(dir / "truncation.csv", histogram({"untruncated", "truncated"},
                                                {&r.untruncated.samples, &r.truncated.samples},
                                                -0.4, 0.8, 60));
        report["truncation"] = {{"x", r.x},
                                {"negative_fraction_untruncated", r.negative_untruncated},
                                {"negative_fraction_truncated", r.negative_truncated},
                                {"diagnostics", to_json(r.diagnostics)}};
    }
    {
        const auto c = ex::link_curves();
        Csv csv({"u", "logit", "probit", "cauchit", "cloglog"});
        for (std::size_t i = 0; i < c.u.size(); ++i)
            csv.row({f(c.u[i]), f(c.p[0][i]), f(c.p[1][i]), f(c.p[2][i]), f(c.p[3][i])});
        write(dir / "link_functions.csv", csv.str());
    }
    {
        const auto r = ex::variance_function(s);
        write_dataset(dir / "variance_function_data.csv", r.data);
        Csv csv({"x", "model", "mean", "pi_lower", "pi_upper"});
        Json j;
        Json models = Json::array();
        for (std::size_t m = 0; m < r.models.size(); ++m) {
            for (const auto& p : r.summaries[m])
                csv.row({f(p.x), r.models[m].id, f(p.mean), f(p.pi.lower), f(p.pi.upper)});
            models.push_back({{"id", r.models[m].id},
                              {"training_coverage", r.coverage[m]},
                              {"diagnostics", to_json(r.diagnostics[m])}});
        }
        j["models"] = models;
        write(dir / "variance_function.csv", csv.str());
        report["variance_function"] = j;
    }
    {
        const auto r = ex::seed_ensemble(data, s);
        Json members = Json::array();
        for (std::size_t k = 0; k < r.seeds.size(); ++k) {
            Json m = summary_json(r.members[k]);
            m["seed"] = r.seeds[k];
            members.push_back(m);
        }
        report["seed_ensemble"] = {{"members", members}, {"pooled", summary_json(r.pooled)}};
    }
    {
        const auto r = ex::classification(s);
        write_dataset(dir / "classification_data.csv", r.data);
        Csv points({"x1", "x2", "y", "mu_bar", "sigma_mu", "aleatoric", "epistemic"});
        for (const auto& p : r.points)
            points.row({f(p.x[0]), f(p.x[1]), f(p.y), f(p.u.mu_bar), f(p.u.sigma_mu), f(p.u.aleatoric),
                        f(p.u.epistemic)});
        write(dir / "classification_points.csv", points.str());
        Csv band({"x1", "lower", "median", "upper", "width"});
        for (const auto& b : r.band) band.row({f(b.x1), f(b.lower), f(b.median), f(b.upper), f(b.width())});
        write(dir / "decision_boundary_band.csv", band.str());
        write(dir / "matched_pair.csv",
              histogram({"compound_a", "compound_b"}, {&r.pair.pred_a.p_draws, &r.pair.pred_b.p_draws},
                        0.0, 1.0, 100));
        Json a = decomposition_json(r.pair_a);
        a["x"] = r.pair.a;
        a["y_predictive"] = r.pair.pred_a.y_predictive;
        Json b = decomposition_json(r.pair_b);
        b["x"] = r.pair.b;
        b["y_predictive"] = r.pair.pred_b.y_predictive;
        report["classification"] = {{"matched_pair", {{"a", a}, {"b", b}, {"epistemic_ratio", r.epistemic_ratio}}},
                                    {"band_width_center", r.center_width},
                                    {"band_width_lower_edge", r.edge_width_lo},
                                    {"band_width_upper_edge", r.edge_width_hi},
                                    {"diagnostics", to_json(r.diagnostics)}};
    }
    write(dir / "report.json", report.dump(2) + "\n");
}

}  // namespace ppm
