#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppm/dataset.hpp"
#include "ppm/error.hpp"
#include "ppm/model.hpp"

namespace ppm {

struct FitConfig {
    std::size_t chains = 4;
    std::size_t warmup = 1000;
    std::size_t samples = 1000;
    /// Sweeps per retained draw after warmup.
    std::size_t thin = 1;
    double initial_scale = 0.1;
    double target_accept = 0.30;
    /// Chain c runs on seed + c.
    std::uint64_t seed = 1;
    /// Worker threads for chains (0 = hardware).  Never changes results.
    unsigned threads = 1;

    void validate() const;
};

/// Convergence summary.  R-hat is the rank-normalised split R-hat (maximum
/// of the bulk and folded variants) and ESS the bulk effective sample size.
struct Diagnostics {
    std::vector<std::string> names;
    std::vector<double> rhat;
    std::vector<double> ess_bulk;
    /// Per-chain acceptance rate over the sampling phase; empty when unknown.
    std::vector<double> acceptance;

    static constexpr double kFlagThreshold = 1.01;

    double max_rhat() const;
    /// Parameters whose R-hat exceeds kFlagThreshold.
    std::vector<std::string> flagged() const;
};

class FitError : public Error {
public:
    FitError(const std::string& what, std::optional<Diagnostics> diagnostics = std::nullopt)
        : Error(what), diagnostics_(std::move(diagnostics)) {}

    const std::optional<Diagnostics>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::optional<Diagnostics> diagnostics_;
};

/// Retained posterior draws, one row per draw, with the originating chain.
/// Immutable once built.
class PosteriorDraws {
public:
    PosteriorDraws(std::vector<std::string> names, std::vector<double> values,
                   std::vector<std::size_t> chain, std::optional<Diagnostics> diagnostics = {});

    /// A single point treated as a one-draw posterior.
    static PosteriorDraws point_mass(std::vector<std::string> names, std::vector<double> theta);

    std::size_t n_draws() const noexcept { return chain_.size(); }
    std::size_t n_params() const noexcept { return names_.size(); }
    std::size_t n_chains() const noexcept { return n_chains_; }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * n_params(), n_params()};
    }
    std::size_t chain(std::size_t i) const { return chain_[i]; }
    double value(std::size_t i, std::size_t j) const { return values_[i * n_params() + j]; }
    std::vector<double> column(std::size_t j) const;
    const std::optional<Diagnostics>& diagnostics() const noexcept { return diagnostics_; }

    friend bool operator==(const PosteriorDraws& a, const PosteriorDraws& b) {
        return a.names_ == b.names_ && a.values_ == b.values_ && a.chain_ == b.chain_;
    }

private:
    std::vector<std::string> names_;
    std::vector<double> values_;
    std::vector<std::size_t> chain_;
    std::size_t n_chains_ = 0;
    std::optional<Diagnostics> diagnostics_;
};

/// Log likelihood plus log prior.  Out-of-support parameters give -inf.
/// Throws DomainError for an empty dataset or a wrong-length theta.
double log_posterior(const ModelSpec& model, const Dataset& data, std::span<const double> theta);

/// Log likelihood alone (no prior term).
double log_likelihood(const ModelSpec& model, const Dataset& data, std::span<const double> theta);

/// Adaptive componentwise random-walk Metropolis.
PosteriorDraws fit(const ModelSpec& model, const Dataset& data, const FitConfig& config);

struct PlugInConfig {
    std::size_t starts = 20;
    std::uint64_t seed = 20210611;
    std::size_t max_evaluations = 20000;
    std::size_t restarts = 8;
};

/// Maximum a-posteriori estimate by multi-start Nelder-Mead.
std::vector<double> plug_in_fit(const ModelSpec& model, const Dataset& data,
                                const PlugInConfig& config = {});

/// Needs at least two chains of equal length >= 4 and non-constant draws.
Diagnostics diagnostics(const PosteriorDraws& draws);

/// R-hat and bulk ESS from explicit chains (chains[c][i]).
double split_rhat(const std::vector<std::vector<double>>& chains);
double ess_bulk(const std::vector<std::vector<double>>& chains);

/// One independent fit per seed, in seed order.  Needs at least two seeds.
std::vector<PosteriorDraws> fit_ensemble(const ModelSpec& model, const Dataset& data,
                                         const std::vector<std::uint64_t>& seeds,
                                         const FitConfig& config);

/// CSV with the parameter names plus a "chain" column.
void write_draws_csv(const PosteriorDraws& draws, std::ostream& out);
/// Accepts files with or without the chain column (single-row plug-in files).
PosteriorDraws read_draws_csv(std::istream& in);

}  // namespace ppm
