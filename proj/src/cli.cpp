#include "ppm/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "ppm/error.hpp"
#include "ppm/inference.hpp"
#include "ppm/json_io.hpp"
#include "ppm/prediction.hpp"
#include "ppm/report.hpp"
#include "ppm/simulate.hpp"
#include "ppm/text.hpp"
#include "ppm/uncertainty.hpp"

namespace ppm::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : Error {
    using Error::Error;
};

// Converts input-validation failures into usage errors.
template <class F>
auto checked(F&& load) -> decltype(load()) {
    try {
        return load();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

std::uint64_t effective_seed(std::uint64_t flag) {
    const char* env = std::getenv("PPM_SEED");
    if (!env || !*env) return flag;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("PPM_SEED is not an unsigned integer: ") + env);
    }
}

// Command name, every option except --threads (which never changes output),
// the effective seed and the version.
Json run_config(const CLI::App& cmd, std::uint64_t seed) {
    Json flags;
    for (const CLI::Option* opt : cmd.get_options()) {
        const std::string name = opt->get_name(false, true);
        if (name.empty() || name == "--help" || name == "--threads") continue;
        const std::string key = name.substr(name.find_first_not_of('-'));
        if (opt->count() == 0) {
            if (opt->get_default_str().empty()) continue;
            flags[key] = opt->get_default_str();
        } else if (opt->get_type_size() == 0) {
            flags[key] = true;
        } else {
            const auto& res = opt->results();
            if (res.size() == 1)
                flags[key] = res.front();
            else
                flags[key] = res;
        }
    }
    Json j;
    j["command"] = cmd.get_name();
    j["flags"] = flags;
    j["seed"] = seed;
    j["version"] = kVersion;
    return j;
}

void write_json(const fs::path& path, const Json& j) { text::write_file_atomic(path, j.dump(2) + "\n"); }

Dataset load_dataset(const fs::path& path) {
    return checked([&] { return read_dataset_csv(path); });
}

ModelSpec load_model(const fs::path& path) {
    return checked([&] { return read_model_json(path); });
}

PosteriorDraws load_draws(const fs::path& path, const ModelSpec& model) {
    return checked([&] {
        std::ifstream in(path);
        if (!in) throw DomainError("cannot open draws file " + path.string());
        auto d = read_draws_csv(in);
        if (d.names() != model.parameter_names())
            throw DomainError(path.string() + ": columns do not match the parameters of model '" +
                              model.id + "'");
        return d;
    });
}

std::string draws_csv(const PosteriorDraws& d) {
    std::ostringstream os;
    write_draws_csv(d, os);
    return os.str();
}

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
    fs::path out = p;
    out.replace_extension();
    out += suffix;
    return out;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::size_t n = 100;
    double theta1 = 3.25;
    double theta2 = 0.2;
    double sigma = 0.1;
    std::uint64_t seed = 1;
    bool classification = false;
    std::vector<double> coef{0.0, 1.5, -1.5};
    std::size_t subsample_k = 0;
    bool random_x = false;
    double x_se_min = 0.0;
    double x_se_max = 0.0;
    double y_se = 0.0;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
    const auto seed = effective_seed(a.seed);
    Dataset d = checked([&] {
        if (a.classification) {
            if (a.coef.size() != 3) throw DomainError("--coef needs three values");
            return simulate_classification(a.n, {a.coef[0], a.coef[1], a.coef[2]}, seed);
        }
        auto data = simulate_dataset(a.n, a.theta1, a.theta2, a.sigma, seed,
                                     a.random_x ? XLayout::Random : XLayout::Grid);
        if (a.x_se_max > 0.0 || a.y_se > 0.0)
            data = with_standard_errors(std::move(data), a.x_se_min, a.x_se_max, a.y_se,
                                        derive_seed(seed, 1));
        return data;
    });
    if (a.subsample_k > 0) d = checked([&] { return subsample_every_kth(d, a.subsample_k); });
    std::ostringstream os;
    write_dataset_csv(d, os);
    text::write_file_atomic(a.out, os.str());
    return 0;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
    std::string data;
    std::string model;
    std::string out;
    std::string diagnostics;
    FitConfig config;
    std::uint64_t seed = 1;
    bool plug_in = false;
    std::size_t starts = 20;
    bool allow_unconverged = false;
    double rhat_limit = 1.05;
};

int cmd_fit(FitArgs a, const CLI::App& cmd) {
    a.config.seed = effective_seed(a.seed);
    const Json rc = run_config(cmd, a.config.seed);
    const auto model = load_model(a.model);
    const auto data = load_dataset(a.data);
    const fs::path diag_path = a.diagnostics.empty() ? with_suffix(a.out, ".diagnostics.json") : fs::path(a.diagnostics);

    Json out;
    out["run_config"] = rc;
    out["model"] = to_json(model);
    out["dataset"] = {{"path", a.data}, {"n", data.size()}};

    if (a.plug_in) {
        PlugInConfig pc;
        pc.starts = a.starts;
        pc.seed = a.config.seed;
        const auto theta = checked([&] { return plug_in_fit(model, data, pc); });
        const auto point = PosteriorDraws::point_mass(model.parameter_names(), theta);
        text::write_file_atomic(a.out, draws_csv(point));
        Json est;
        const auto names = model.parameter_names();
        for (std::size_t j = 0; j < names.size(); ++j) est[names[j]] = theta[j];
        out["plug_in"] = est;
        out["log_posterior"] = log_posterior(model, data, theta);
        write_json(diag_path, out);
        return 0;
    }

    try {
        a.config.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    try {
        const auto draws = fit(model, data, a.config);
        text::write_file_atomic(a.out, draws_csv(draws));
        out["n_draws"] = draws.n_draws();
        if (draws.diagnostics()) out["diagnostics"] = to_json(*draws.diagnostics());
        const bool unconverged = draws.diagnostics() && !draws.diagnostics()->rhat.empty() &&
                                 !(draws.diagnostics()->max_rhat() <= a.rhat_limit);
        out["converged"] = !unconverged;
        write_json(diag_path, out);
        if (unconverged && !a.allow_unconverged) {
            std::cerr << "ppm fit: max R-hat " << draws.diagnostics()->max_rhat() << " exceeds "
                      << a.rhat_limit << " (use --allow-unconverged to accept)\n";
            return 1;
        }
        return 0;
    } catch (const FitError& e) {
        out["error"] = e.what();
        if (e.diagnostics()) out["diagnostics"] = to_json(*e.diagnostics());
        write_json(diag_path, out);
        throw;
    }
}

// ----------------------------------------------------------------- predict

struct PredictArgs {
    std::vector<std::string> models;
    std::vector<std::string> draws;
    std::vector<double> x;
    std::vector<double> grid;
    double level = 0.95;
    std::size_t samples = 4000;
    std::optional<double> threshold;
    std::string direction = "above";
    std::optional<double> truncate_lower;
    std::optional<double> truncate_upper;
    std::optional<double> x_se;
    std::size_t n_x = 1000;
    std::string combine = "average";
    std::vector<double> weights;
    std::uint64_t seed = 1;
    std::string out;
    std::string samples_out;
};

Json summary_json(const PredictiveDistribution& p, double level, const PredictArgs& a) {
    const auto s = summarize(p, level);
    Json j;
    j["x"] = s.x;
    j["mean"] = s.mean;
    j["median"] = s.median;
    j["sd"] = s.sd;
    j["pi_lower"] = s.pi.lower;
    j["pi_upper"] = s.pi.upper;
    j["level"] = level;
    if (a.threshold)
        j["p_exceeds"] = {{"threshold", *a.threshold},
                          {"direction", a.direction},
                          {"value", prob_exceeds(p, *a.threshold,
                                                 a.direction == "above" ? Direction::Above : Direction::Below)}};
    j["n_samples"] = p.samples.size();
    return j;
}

int cmd_predict(const PredictArgs& a, const CLI::App& cmd) {
    const auto seed = effective_seed(a.seed);
    const Json rc = run_config(cmd, seed);
    if (a.models.size() != a.draws.size())
        throw UsageError("--model and --draws must be given the same number of times");
    if (a.x.empty() == a.grid.empty()) throw UsageError("give exactly one of --x or --grid");
    if (!(a.level > 0.0 && a.level < 1.0)) throw UsageError("--level must lie in (0, 1)");
    if (a.samples < 100) throw UsageError("--samples must be at least 100");

    std::vector<double> xs = a.x;
    if (!a.grid.empty()) {
        if (a.grid.size() != 3 || !(a.grid[0] <= a.grid[1]) || a.grid[2] < 1 || a.grid[2] != std::floor(a.grid[2]))
            throw UsageError("--grid takes LO HI N with LO <= HI and integer N >= 1");
        const auto n = static_cast<std::size_t>(a.grid[2]);
        for (std::size_t i = 0; i <= n; ++i)
            xs.push_back(i == n ? a.grid[1] : a.grid[0] + (a.grid[1] - a.grid[0]) * static_cast<double>(i) / static_cast<double>(n));
    }

    std::vector<ModelSpec> models;
    std::vector<PosteriorDraws> draws;
    for (std::size_t m = 0; m < a.models.size(); ++m) {
        auto model = load_model(a.models[m]);
        if (model.is_classification()) throw UsageError("predict needs regression models; use decompose");
        if (model.mean.n_features != 1) throw UsageError("model '" + model.id + "' does not take a scalar x");
        if (a.truncate_lower || a.truncate_upper) {
            Truncation t = model.truncation.value_or(Truncation{});
            if (a.truncate_lower) t.lower = *a.truncate_lower;
            if (a.truncate_upper) t.upper = *a.truncate_upper;
            if (!(t.lower < t.upper)) throw UsageError("truncation bounds must satisfy lower < upper");
            model.truncation = t;
        }
        draws.push_back(load_draws(a.draws[m], model));
        models.push_back(std::move(model));
    }
    if (a.combine != "average" && a.combine != "pool") throw UsageError("--combine must be average or pool");
    if (a.combine == "pool")
        for (const auto& m : models)
            if (to_json(m) != to_json(models.front()))
                throw UsageError("--combine pool needs the same model spec for every --draws file");
    std::optional<std::vector<double>> weights;
    if (!a.weights.empty()) {
        if (a.weights.size() != models.size()) throw UsageError("--weights needs one value per model");
        weights = a.weights;
    }
    if (a.x_se && !(*a.x_se >= 0.0)) throw UsageError("--x-se must be non-negative");

    RandomSource rng(seed);
    std::vector<std::vector<PredictiveDistribution>> per_model(models.size());
    for (std::size_t m = 0; m < models.size(); ++m) {
        const std::size_t per_draw = (a.samples + draws[m].n_draws() - 1) / draws[m].n_draws();
        for (double x : xs) {
            PredictiveDistribution p =
                a.x_se ? propagate_test_error(models[m], draws[m], {x, *a.x_se}, std::max(a.n_x, a.samples), rng)
                       : posterior_predictive(models[m], draws[m], x, per_draw, rng);
            p.provenance.model_id = models[m].id;
            per_model[m].push_back(std::move(p));
        }
    }

    std::vector<PredictiveDistribution> combined;
    for (std::size_t g = 0; g < xs.size(); ++g) {
        if (models.size() == 1) {
            combined.push_back(per_model[0][g]);
            continue;
        }
        std::vector<PredictiveDistribution> at;
        for (const auto& row : per_model) at.push_back(row[g]);
        combined.push_back(checked([&] { return average_predictions(at, weights); }));
    }

    Json out;
    out["run_config"] = rc;
    Json ids = Json::array();
    for (const auto& m : models) ids.push_back(m.id);
    out["models"] = ids;
    out["combine"] = models.size() > 1 ? a.combine : "none";
    out["level"] = a.level;
    if (a.threshold) {
        out["threshold"] = *a.threshold;
        out["direction"] = a.direction;
    }
    if (a.x_se) out["x_se"] = *a.x_se;
    Json queries = Json::array();
    for (const auto& p : combined) queries.push_back(summary_json(p, a.level, a));
    out["queries"] = queries;
    if (models.size() > 1) {
        Json per = Json::object();
        for (std::size_t m = 0; m < models.size(); ++m) {
            Json rows = Json::array();
            for (const auto& p : per_model[m]) rows.push_back(summary_json(p, a.level, a));
            per[models[m].id + (per.contains(models[m].id) ? "_" + std::to_string(m) : "")] = rows;
        }
        out["per_model"] = per;
        const auto table = checked([&] { return pi_width_curve(per_model, a.level); });
        Json t;
        t["x"] = table.x;
        t["models"] = table.model_ids;
        t["widths"] = table.widths;
        t["averaged"] = table.averaged;
        out["width_table"] = t;
    }
    write_json(a.out, out);

    if (!a.samples_out.empty()) {
        const bool tagged = models.size() > 1;
        std::ostringstream os;
        os << (tagged ? "x,sample,source\n" : "x,sample\n");
        for (const auto& p : combined)
            for (std::size_t i = 0; i < p.samples.size(); ++i) {
                os << text::format_double(p.x) << ',' << text::format_double(p.samples[i]);
                if (tagged) os << ',' << p.source_ids[p.sources[i]];
                os << '\n';
            }
        text::write_file_atomic(a.samples_out, os.str());
    }
    return 0;
}

// --------------------------------------------------------------- decompose

struct DecomposeArgs {
    std::string model;
    std::string draws;
    std::vector<std::string> queries;
    bool matched_pair = false;
    double target_mu = 0.75;
    double sigma_ratio = 2.0;
    std::vector<double> x1_range{-3.0, 3.0};
    std::vector<double> boundary_grid;
    std::string band_out;
    double level = 0.95;
    std::string out;
};

Json decomposition_json(std::span<const double> x, const ClassPrediction& pred) {
    const auto u = decompose_uncertainty(pred.p_draws);
    Json j;
    j["x"] = std::vector<double>(x.begin(), x.end());
    j["mu_bar"] = u.mu_bar;
    j["sigma_mu"] = u.sigma_mu;
    j["aleatoric"] = u.aleatoric;
    j["epistemic"] = u.epistemic;
    j["y_predictive"] = pred.y_predictive;
    return j;
}

int cmd_decompose(const DecomposeArgs& a, const CLI::App& cmd) {
    const Json rc = run_config(cmd, 0);
    const auto model = load_model(a.model);
    if (!model.is_classification()) throw UsageError("decompose needs a classification (Bernoulli) model");
    const auto draws = load_draws(a.draws, model);
    if (a.queries.empty() && !a.matched_pair && a.boundary_grid.empty())
        throw UsageError("nothing to do: give --query, --matched-pair or --boundary-grid");

    Json out;
    out["run_config"] = rc;
    out["model"] = model.id;
    Json queries = Json::array();
    for (const auto& q : a.queries) {
        std::vector<double> x;
        for (const auto& tok : text::split(q, ',')) x.push_back(checked([&] { return text::parse_double(tok); }));
        const auto pred = checked([&] { return classify_predictive(model, draws, x); });
        queries.push_back(decomposition_json(x, pred));
    }
    out["queries"] = queries;

    if (a.matched_pair) {
        if (a.x1_range.size() != 2) throw UsageError("--x1-range takes two values");
        const auto pair = checked(
            [&] { return find_matched_pair(model, draws, a.target_mu, a.sigma_ratio, a.x1_range[0], a.x1_range[1]); });
        Json pa = decomposition_json(pair.a, pair.pred_a);
        Json pb = decomposition_json(pair.b, pair.pred_b);
        out["matched_pair"] = {{"a", pa},
                               {"b", pb},
                               {"sigma_ratio", pb["sigma_mu"].get<double>() / pa["sigma_mu"].get<double>()},
                               {"epistemic_ratio", pb["epistemic"].get<double>() / pa["epistemic"].get<double>()}};
    }

    if (!a.boundary_grid.empty()) {
        const auto& g = a.boundary_grid;
        if (g.size() != 3 || !(g[0] < g[1]) || g[2] < 1 || g[2] != std::floor(g[2]))
            throw UsageError("--boundary-grid takes LO HI N with LO < HI and integer N >= 1");
        std::vector<double> x1;
        const auto n = static_cast<std::size_t>(g[2]);
        for (std::size_t i = 0; i <= n; ++i)
            x1.push_back(i == n ? g[1] : g[0] + (g[1] - g[0]) * static_cast<double>(i) / static_cast<double>(n));
        const auto band = checked([&] { return decision_boundary_band(draws, model, x1, a.level); });
        std::ostringstream os;
        os << "x1,lower,median,upper,width\n";
        for (const auto& b : band)
            os << text::format_double(b.x1) << ',' << text::format_double(b.lower) << ','
               << text::format_double(b.median) << ',' << text::format_double(b.upper) << ','
               << text::format_double(b.width()) << '\n';
        const fs::path band_path = a.band_out.empty() ? with_suffix(a.out, ".band.csv") : fs::path(a.band_out);
        text::write_file_atomic(band_path, os.str());
        out["boundary_band"] = {{"path", band_path.string()}, {"level", a.level}, {"rows", band.size()}};
    }
    write_json(a.out, out);
    return 0;
}

// ------------------------------------------------------------------ report

struct ReportArgs {
    std::string out_dir;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

int cmd_report(const ReportArgs& a, const CLI::App& cmd) {
    experiments::Settings s;
    s.seed = effective_seed(a.seed);
    s.threads = a.threads;
    write_report(a.out_dir, s, run_config(cmd, s.seed));
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Probabilistic predictive models: fit, predict and decompose uncertainty", "ppm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Simulate the running example or a two-feature classification set");
    s->add_option("--n", sim.n, "Number of rows")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--theta1", sim.theta1, "Rate parameter")->capture_default_str();
    s->add_option("--theta2", sim.theta2, "Intercept")->capture_default_str();
    s->add_option("--sigma", sim.sigma, "Noise sd (0 for noiseless)")->capture_default_str()->check(CLI::NonNegativeNumber);
    s->add_option("--seed", sim.seed, "Noise seed")->capture_default_str();
    s->add_flag("--classification", sim.classification, "Two-feature logistic data instead");
    s->add_option("--coef", sim.coef, "Classification coefficients c0 c1 c2")->expected(3)->capture_default_str();
    s->add_option("--subsample-k", sim.subsample_k, "Keep rows k, 2k, 3k, ...");
    s->add_flag("--random-x", sim.random_x, "Uniform random x instead of an even grid");
    s->add_option("--x-se-min", sim.x_se_min, "Smallest x standard error")->check(CLI::NonNegativeNumber);
    s->add_option("--x-se-max", sim.x_se_max, "Largest x standard error")->check(CLI::NonNegativeNumber);
    s->add_option("--y-se", sim.y_se, "Constant y standard error")->check(CLI::NonNegativeNumber);
    s->add_option("--out", sim.out, "Output CSV")->required();

    FitArgs fa;
    auto* f = app.add_subcommand("fit", "Fit a model by MCMC (or plug-in MAP)");
    f->add_option("--data", fa.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
    f->add_option("--model", fa.model, "Model spec JSON")->required()->check(CLI::ExistingFile);
    f->add_option("--out", fa.out, "Draws CSV")->required();
    f->add_option("--diagnostics", fa.diagnostics, "Diagnostics JSON (default: <out>.diagnostics.json)");
    f->add_option("--chains", fa.config.chains)->capture_default_str()->check(CLI::PositiveNumber);
    f->add_option("--warmup", fa.config.warmup)->capture_default_str()->check(CLI::PositiveNumber);
    f->add_option("--samples", fa.config.samples)->capture_default_str()->check(CLI::PositiveNumber);
    f->add_option("--thin", fa.config.thin)->capture_default_str()->check(CLI::PositiveNumber);
    f->add_option("--initial-scale", fa.config.initial_scale)->capture_default_str();
    f->add_option("--target-accept", fa.config.target_accept)->capture_default_str();
    f->add_option("--seed", fa.seed, "Master seed; chain c uses seed + c")->capture_default_str();
    f->add_option("--threads", fa.config.threads, "Worker threads (0 = all cores)")->capture_default_str();
    f->add_flag("--plug-in", fa.plug_in, "Write the MAP estimate as a single-row CSV");
    f->add_option("--starts", fa.starts, "Optimizer starts for --plug-in")->capture_default_str();
    f->add_flag("--allow-unconverged", fa.allow_unconverged, "Exit 0 even when R-hat exceeds the limit");
    f->add_option("--rhat-limit", fa.rhat_limit)->capture_default_str();

    PredictArgs pa;
    auto* p = app.add_subcommand("predict", "Predictive summaries from fitted draws");
    p->add_option("--model", pa.models, "Model spec JSON (repeat for averaging)")->required()->check(CLI::ExistingFile);
    p->add_option("--draws", pa.draws, "Draws CSV, one per --model")->required()->check(CLI::ExistingFile);
    p->add_option("--x", pa.x, "Query inputs");
    p->add_option("--grid", pa.grid, "LO HI N: N+1 evenly spaced inputs")->expected(3);
    p->add_option("--level", pa.level, "Interval level")->capture_default_str();
    p->add_option("--samples", pa.samples, "Predictive samples per query and model")->capture_default_str();
    p->add_option("--threshold", pa.threshold, "Report P(y beyond threshold)");
    p->add_option("--direction", pa.direction)->capture_default_str()->check(CLI::IsMember({"above", "below"}));
    p->add_option("--truncate-lower", pa.truncate_lower, "Lower outcome bound");
    p->add_option("--truncate-upper", pa.truncate_upper, "Upper outcome bound");
    p->add_option("--x-se", pa.x_se, "Standard error of the query inputs");
    p->add_option("--n-x", pa.n_x, "Input draws when --x-se is given")->capture_default_str();
    p->add_option("--combine", pa.combine, "average (model averaging) or pool (seed ensemble)")
        ->capture_default_str()
        ->check(CLI::IsMember({"average", "pool"}));
    p->add_option("--weights", pa.weights, "Model weights for --combine average");
    p->add_option("--seed", pa.seed)->capture_default_str();
    p->add_option("--out", pa.out, "Summary JSON")->required();
    p->add_option("--samples-out", pa.samples_out, "Predictive samples CSV");

    DecomposeArgs da;
    auto* d = app.add_subcommand("decompose", "Outcome/parameter uncertainty of a classifier");
    d->add_option("--model", da.model)->required()->check(CLI::ExistingFile);
    d->add_option("--draws", da.draws)->required()->check(CLI::ExistingFile);
    d->add_option("--query", da.queries, "Comma-separated features, e.g. 0.5,-1");
    d->add_flag("--matched-pair", da.matched_pair, "Find two inputs with equal mean and spread ratio");
    d->add_option("--target-mu", da.target_mu)->capture_default_str();
    d->add_option("--sigma-ratio", da.sigma_ratio)->capture_default_str();
    d->add_option("--x1-range", da.x1_range)->expected(2)->capture_default_str();
    d->add_option("--boundary-grid", da.boundary_grid, "LO HI N over x1")->expected(3);
    d->add_option("--band-out", da.band_out, "Boundary band CSV (default: <out>.band.csv)");
    d->add_option("--level", da.level)->capture_default_str();
    d->add_option("--out", da.out, "Decomposition JSON")->required();

    ReportArgs ra;
    auto* r = app.add_subcommand("report", "Run every demonstration into one directory");
    r->add_option("--out-dir", ra.out_dir)->required();
    r->add_option("--seed", ra.seed)->capture_default_str();
    r->add_option("--threads", ra.threads, "Worker threads (0 = all cores)")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (s->parsed()) return cmd_simulate(sim);
        if (f->parsed()) return cmd_fit(fa, *f);
        if (p->parsed()) return cmd_predict(pa, *p);
        if (d->parsed()) return cmd_decompose(da, *d);
        if (r->parsed()) return cmd_report(ra, *r);
    } catch (const UsageError& e) {
        std::cerr << "ppm: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ppm: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace ppm::cli
