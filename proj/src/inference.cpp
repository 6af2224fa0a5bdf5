#include "ppm/inference.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "ppm/parallel.hpp"
#include "ppm/random.hpp"
#include "ppm/special.hpp"
#include "ppm/text.hpp"

namespace ppm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_data(const ModelSpec& model, const Dataset& data) {
    if (data.empty()) throw DomainError("dataset is empty");
    data.validate();
    if (data.n_features != model.mean.n_features)
        throw DomainError("dataset has " + std::to_string(data.n_features) +
                          " features, model expects " + std::to_string(model.mean.n_features));
    if (model.is_classification())
        for (double y : data.y)
            if (y != 0.0 && y != 1.0) throw DomainError("classification outcomes must be 0 or 1");
}

double log_prior(const ModelSpec& model, std::span<const double> theta) {
    double lp = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        lp += log_density(model.priors[j], theta[j]);
        if (lp == kNegInf) return kNegInf;
    }
    return lp;
}

}  // namespace

void FitConfig::validate() const {
    if (chains < 1) throw DomainError("fit needs at least one chain");
    if (warmup < 1 || samples < 1) throw DomainError("warmup and sampling iterations must be >= 1");
    if (thin < 1) throw DomainError("thin must be >= 1");
    if (!(initial_scale > 0.0)) throw DomainError("initial proposal scale must be positive");
    if (!(target_accept > 0.0 && target_accept < 1.0))
        throw DomainError("target acceptance must lie in (0, 1)");
}

double Diagnostics::max_rhat() const {
    double m = 0.0;
    for (double r : rhat) m = std::max(m, r);
    return m;
}

std::vector<std::string> Diagnostics::flagged() const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < rhat.size(); ++j)
        if (!(rhat[j] <= kFlagThreshold)) out.push_back(names[j]);
    return out;
}

PosteriorDraws::PosteriorDraws(std::vector<std::string> names, std::vector<double> values,
                               std::vector<std::size_t> chain,
                               std::optional<Diagnostics> diagnostics)
    : names_(std::move(names)),
      values_(std::move(values)),
      chain_(std::move(chain)),
      diagnostics_(std::move(diagnostics)) {
    if (names_.empty()) throw DomainError("posterior draws need at least one parameter");
    if (values_.size() != chain_.size() * names_.size())
        throw DomainError("posterior draw matrix does not match chain labels");
    for (auto c : chain_) n_chains_ = std::max(n_chains_, c + 1);
}

PosteriorDraws PosteriorDraws::point_mass(std::vector<std::string> names, std::vector<double> theta) {
    return {std::move(names), std::move(theta), {0}};
}

std::vector<double> PosteriorDraws::column(std::size_t j) const {
    std::vector<double> out(n_draws());
    for (std::size_t i = 0; i < n_draws(); ++i) out[i] = value(i, j);
    return out;
}

double log_likelihood(const ModelSpec& model, const Dataset& data, std::span<const double> theta) {
    if (data.empty()) throw DomainError("dataset is empty");
    if (theta.size() != model.parameter_count())
        throw DomainError("parameter vector has " + std::to_string(theta.size()) +
                          " entries, model expects " + std::to_string(model.parameter_count()));
    const auto theta_mu = model.mean_parameters(theta);
    const auto theta_sigma = model.variance_parameters(theta);
    const double t_const = model.family == Family::StudentT
                               ? std::lgamma(0.5 * (model.df + 1.0)) - std::lgamma(0.5 * model.df) -
                                     0.5 * std::log(model.df * special::kPi)
                               : 0.0;
    double ll = 0.0;
    try {
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double u = eval_mean(model.mean, theta_mu, data.features(i));
            const double y = data.y[i];
            if (model.family == Family::Bernoulli) {
                if (model.mean_link == LinkKind::Logit) {
                    ll -= special::softplus(y == 1.0 ? -u : u);
                } else {
                    const double p = apply_link(model.mean_link, u);
                    ll += y == 1.0 ? std::log(p) : std::log1p(-p);
                }
                continue;
            }
            const double mu = apply_link(model.mean_link, u);
            if (model.variance->form == VarianceForm::Constant && !(theta_sigma[0] > 0.0))
                return kNegInf;
            const double sigma = eval_sigma(*model.variance, theta_sigma, mu);
            if (model.family == Family::StudentT) {
                const double z = (y - mu) / sigma;
                ll += t_const - std::log(sigma) - 0.5 * (model.df + 1.0) * std::log1p(z * z / model.df);
            } else {
                ll += normal_log_density(y, mu, sigma);
            }
        }
    } catch (const EvaluationError&) {
        return kNegInf;
    } catch (const DomainError&) {
        return kNegInf;
    }
    return std::isfinite(ll) ? ll : kNegInf;
}

double log_posterior(const ModelSpec& model, const Dataset& data, std::span<const double> theta) {
    if (data.empty()) throw DomainError("dataset is empty");
    if (theta.size() != model.parameter_count())
        throw DomainError("parameter vector has " + std::to_string(theta.size()) +
                          " entries, model expects " + std::to_string(model.parameter_count()));
    const double lp = log_prior(model, theta);
    if (lp == kNegInf) return kNegInf;
    const double ll = log_likelihood(model, data, theta);
    if (ll == kNegInf) return kNegInf;
    return lp + ll;
}

namespace {

struct ChainResult {
    std::vector<double> values;
    std::size_t accepted = 0;
};

// Principal axes of the draws in rows [from, to) of `trace`, scaled so that
// column k has length sd_k.  Empty when the sample covariance is degenerate.
std::vector<double> principal_axes(const std::vector<double>& trace, std::size_t p,
                                   std::size_t from, std::size_t to) {
    const std::size_t n = to - from;
    if (n < 2 * p + 2) return {};
    Eigen::MatrixXd x(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) x(i, j) = trace[(from + i) * p + j];
    const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) return {};
    const auto& values = eig.eigenvalues();
    if (!values.allFinite() || !(values.minCoeff() > 1e-12 * std::max(1.0, values.maxCoeff())))
        return {};
    std::vector<double> axes(p * p);
    for (std::size_t k = 0; k < p; ++k)
        for (std::size_t j = 0; j < p; ++j)
            axes[k * p + j] = eig.eigenvectors()(j, k) * std::sqrt(values(k));
    return axes;
}

ChainResult run_chain(const ModelSpec& model, const Dataset& data, const FitConfig& config,
                      std::size_t chain) {
    const std::size_t p = model.parameter_count();
    RandomSource rng(config.seed + chain);

    std::vector<double> theta(p);
    double lp = kNegInf;
    for (int attempt = 0; attempt < 1000 && lp == kNegInf; ++attempt) {
        for (std::size_t j = 0; j < p; ++j) theta[j] = sample_one(model.priors[j], rng);
        lp = log_posterior(model, data, theta);
    }
    if (lp == kNegInf)
        throw FitError("chain " + std::to_string(chain) +
                       ": no prior draw with finite posterior density after 1000 attempts");

    // Update directions, one per row; coordinate axes until the warmup
    // covariance is known.
    std::vector<double> axes(p * p, 0.0);
    for (std::size_t k = 0; k < p; ++k) axes[k * p + k] = 1.0;
    std::vector<double> log_scale(p, std::log(config.initial_scale));
    std::size_t clock = 0;

    // Axes are re-estimated at these warmup iterations from the draws since
    // the previous estimate.
    const std::size_t w = config.warmup;
    const std::size_t rotations[] = {3 * w / 10, 6 * w / 10, 8 * w / 10};
    std::size_t next_rotation = 0;
    std::size_t window_start = 3 * w / 20;
    std::vector<double> trace;
    trace.reserve(w * p);

    ChainResult out;
    out.values.reserve(config.samples * p);
    std::vector<double> proposal(p);
    const std::size_t total = config.warmup + config.samples * config.thin;
    for (std::size_t it = 0; it < total; ++it) {
        const bool warming = it < config.warmup;
        if (next_rotation < std::size(rotations) && it == rotations[next_rotation]) {
            auto rotated = principal_axes(trace, p, window_start, it);
            if (!rotated.empty()) {
                axes = std::move(rotated);
                log_scale.assign(p, std::log(2.4));
                clock = 0;
            }
            window_start = it;
            ++next_rotation;
        }
        const double gain = warming ? std::pow(static_cast<double>(++clock), -0.6) : 0.0;
        for (std::size_t k = 0; k < p; ++k) {
            const double step = std::exp(log_scale[k]) * rng.normal();
            for (std::size_t j = 0; j < p; ++j) proposal[j] = theta[j] + step * axes[k * p + j];
            const double lp_new = log_posterior(model, data, proposal);
            const double log_ratio = lp_new - lp;
            const bool accept = std::log(rng.uniform()) < log_ratio;
            if (accept) {
                theta = proposal;
                lp = lp_new;
                if (!warming) ++out.accepted;
            }
            if (warming) {
                const double alpha = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
                log_scale[k] = std::clamp(log_scale[k] + gain * (alpha - config.target_accept),
                                          -30.0, 10.0);
            }
        }
        if (warming) trace.insert(trace.end(), theta.begin(), theta.end());
        if (!warming && (it - config.warmup + 1) % config.thin == 0)
            out.values.insert(out.values.end(), theta.begin(), theta.end());
    }
    return out;
}

}  // namespace

PosteriorDraws fit(const ModelSpec& model, const Dataset& data, const FitConfig& config) {
    config.validate();
    model.validate();
    check_data(model, data);

    std::vector<ChainResult> results(config.chains);
    parallel_for(config.chains, config.threads,
                 [&](std::size_t c) { results[c] = run_chain(model, data, config, c); });

    const auto names = model.parameter_names();
    const std::size_t p = names.size();
    std::vector<double> values;
    std::vector<std::size_t> chain;
    values.reserve(config.chains * config.samples * p);
    Diagnostics diag;
    diag.names = names;
    for (std::size_t c = 0; c < config.chains; ++c) {
        values.insert(values.end(), results[c].values.begin(), results[c].values.end());
        chain.insert(chain.end(), config.samples, c);
        diag.acceptance.push_back(static_cast<double>(results[c].accepted) /
                                  static_cast<double>(config.samples * config.thin * p));
    }

    if (std::all_of(diag.acceptance.begin(), diag.acceptance.end(), [](double a) { return a == 0.0; })) {
        diag.rhat.assign(p, std::numeric_limits<double>::quiet_NaN());
        diag.ess_bulk.assign(p, std::numeric_limits<double>::quiet_NaN());
        throw FitError("all chains stuck: no proposal accepted after warmup", diag);
    }

    PosteriorDraws raw(names, values, chain);
    if (config.chains >= 2) {
        try {
            const auto d = diagnostics(raw);
            diag.rhat = d.rhat;
            diag.ess_bulk = d.ess_bulk;
        } catch (const DiagnosticsError& e) {
            diag.rhat.assign(p, std::numeric_limits<double>::quiet_NaN());
            diag.ess_bulk.assign(p, std::numeric_limits<double>::quiet_NaN());
            throw FitError(std::string("diagnostics failed: ") + e.what(), diag);
        }
    }
    return {names, std::move(values), std::move(chain), std::move(diag)};
}

namespace {

// Maps an unconstrained coordinate onto a prior's support.
struct SupportTransform {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    double to_constrained(double phi) const {
        const bool lo = std::isfinite(lower), hi = std::isfinite(upper);
        if (lo && hi) return lower + (upper - lower) * apply_link(LinkKind::Logit, phi);
        if (lo) return lower + std::exp(phi);
        if (hi) return upper - std::exp(phi);
        return phi;
    }
    double to_unconstrained(double theta) const {
        const bool lo = std::isfinite(lower), hi = std::isfinite(upper);
        if (lo && hi) {
            const double q = (theta - lower) / (upper - lower);
            return std::log(q) - std::log1p(-q);
        }
        if (lo) return std::log(theta - lower);
        if (hi) return std::log(upper - theta);
        return theta;
    }
};

struct SimplexResult {
    std::vector<double> x;
    double f;
    bool converged;
    std::size_t evaluations;
};

template <typename Objective>
SimplexResult nelder_mead(Objective&& f, std::vector<double> x0, double step,
                          std::size_t max_evaluations) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };
    for (std::size_t j = 0; j < n; ++j) pts[j + 1][j] += step;
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (evals < max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> p2;
            std::vector<double> f2;
            for (auto i : order) {
                p2.push_back(pts[i]);
                f2.push_back(fv[i]);
            }
            pts.swap(p2);
            fv.swap(f2);
        }
        double diameter = 0.0, norm = 0.0;
        for (std::size_t j = 0; j < n; ++j) norm = std::max(norm, std::fabs(pts[0][j]));
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                diameter = std::max(diameter, std::fabs(pts[i][j] - pts[0][j]));
        if (std::isfinite(fv[0]) && fv[n] - fv[0] <= 1e-13 * (std::fabs(fv[0]) + 1e-13) &&
            diameter <= 1e-9 * (1.0 + norm))
            return {pts[0], fv[0], true, evals};

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - pts[n][j]);
        const double fr = eval(xr);
        if (fr < fv[0]) {
            for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (centroid[j] - pts[n][j]);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[n] = xe;
                fv[n] = fe;
            } else {
                pts[n] = xr;
                fv[n] = fr;
            }
            continue;
        }
        if (fr < fv[n - 1]) {
            pts[n] = xr;
            fv[n] = fr;
            continue;
        }
        const bool outside = fr < fv[n];
        for (std::size_t j = 0; j < n; ++j)
            xc[j] = outside ? centroid[j] + 0.5 * (xr[j] - centroid[j])
                            : centroid[j] + 0.5 * (pts[n][j] - centroid[j]);
        const double fc = eval(xc);
        if (fc < std::min(fr, fv[n])) {
            pts[n] = xc;
            fv[n] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
            fv[i] = eval(pts[i]);
        }
    }
    const auto best = std::min_element(fv.begin(), fv.end()) - fv.begin();
    return {pts[static_cast<std::size_t>(best)], fv[static_cast<std::size_t>(best)], false, evals};
}

}  // namespace

std::vector<double> plug_in_fit(const ModelSpec& model, const Dataset& data,
                                const PlugInConfig& config) {
    model.validate();
    check_data(model, data);
    if (config.starts == 0) throw DomainError("plug_in_fit needs at least one start");

    const std::size_t p = model.parameter_count();
    std::vector<SupportTransform> transforms(p);
    for (std::size_t j = 0; j < p; ++j)
        if (model.priors[j].family() == Family::TruncatedNormal)
            transforms[j] = {model.priors[j].lower(), model.priors[j].upper()};

    std::vector<double> theta(p);
    auto constrain = [&](const std::vector<double>& phi) {
        for (std::size_t j = 0; j < p; ++j) theta[j] = transforms[j].to_constrained(phi[j]);
        return theta;
    };
    auto objective = [&](const std::vector<double>& phi) {
        const double lp = log_posterior(model, data, constrain(phi));
        return lp == kNegInf ? std::numeric_limits<double>::infinity() : -lp;
    };

    RandomSource rng(config.seed);
    std::optional<SimplexResult> best;
    bool any_converged = false;
    for (std::size_t s = 0; s < config.starts; ++s) {
        std::vector<double> phi(p);
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
            for (std::size_t j = 0; j < p; ++j)
                phi[j] = transforms[j].to_unconstrained(sample_one(model.priors[j], rng));
            ok = std::isfinite(objective(phi));
        }
        if (!ok) continue;

        auto result = nelder_mead(objective, phi, 0.5, config.max_evaluations);
        // Restart from the optimum until the restart stops improving.
        for (std::size_t r = 0; r < config.restarts && result.converged; ++r) {
            auto again = nelder_mead(objective, result.x, 0.05, config.max_evaluations);
            const bool improved = again.f < result.f - 1e-12 * (std::fabs(result.f) + 1e-12);
            if (again.f <= result.f) result = again;
            if (!improved) break;
        }
        if (!result.converged) continue;
        any_converged = true;
        if (!best || result.f < best->f) best = std::move(result);
    }
    if (!any_converged)
        throw FitError("plug-in optimisation did not converge from any of " +
                       std::to_string(config.starts) + " starts");
    return constrain(best->x);
}

std::vector<PosteriorDraws> fit_ensemble(const ModelSpec& model, const Dataset& data,
                                         const std::vector<std::uint64_t>& seeds,
                                         const FitConfig& config) {
    if (seeds.size() < 2) throw DomainError("fit_ensemble needs at least two seeds");
    std::vector<std::optional<PosteriorDraws>> slots(seeds.size());
    parallel_for(seeds.size(), config.threads, [&](std::size_t i) {
        FitConfig member = config;
        member.seed = seeds[i];
        member.threads = 1;
        try {
            slots[i].emplace(fit(model, data, member));
        } catch (const FitError& e) {
            throw FitError("seed " + std::to_string(seeds[i]) + ": " + e.what(), e.diagnostics());
        }
    });
    std::vector<PosteriorDraws> out;
    out.reserve(seeds.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

void write_draws_csv(const PosteriorDraws& draws, std::ostream& out) {
    for (const auto& n : draws.names()) out << n << ',';
    out << "chain\n";
    for (std::size_t i = 0; i < draws.n_draws(); ++i) {
        for (double v : draws.row(i)) out << text::format_double(v) << ',';
        out << draws.chain(i) << '\n';
    }
}

PosteriorDraws read_draws_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DomainError("draws CSV is empty");
    auto names = text::split(line, ',');
    const bool has_chain = !names.empty() && names.back() == "chain";
    if (has_chain) names.pop_back();
    if (names.empty()) throw DomainError("draws CSV has no parameter columns");
    std::vector<double> values;
    std::vector<std::size_t> chain;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cells = text::split(line, ',');
        if (cells.size() != names.size() + (has_chain ? 1 : 0))
            throw DomainError("draws CSV row has the wrong number of cells");
        for (std::size_t j = 0; j < names.size(); ++j) values.push_back(text::parse_double(cells[j]));
        chain.push_back(has_chain ? static_cast<std::size_t>(text::parse_double(cells.back())) : 0);
    }
    if (chain.empty()) throw DomainError("draws CSV has no rows");
    return {std::move(names), std::move(values), std::move(chain)};
}

}  // namespace ppm
