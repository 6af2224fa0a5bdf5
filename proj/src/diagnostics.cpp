#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppm/inference.hpp"
#include "ppm/special.hpp"

namespace ppm {

namespace {

using Chains = std::vector<std::vector<double>>;

void check_chains(const Chains& chains) {
    if (chains.size() < 2) throw DiagnosticsError("diagnostics need at least two chains");
    const auto n = chains.front().size();
    if (n < 4) throw DiagnosticsError("diagnostics need at least four draws per chain");
    for (const auto& c : chains)
        if (c.size() != n) throw DiagnosticsError("chains must have equal length");
}

Chains split(const Chains& chains) {
    Chains out;
    for (const auto& c : chains) {
        const std::size_t half = c.size() / 2;
        out.emplace_back(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(half));
        out.emplace_back(c.end() - static_cast<std::ptrdiff_t>(half), c.end());
    }
    return out;
}

// Pooled ranks (ties averaged) mapped through the normal quantile with the
// Blom offset.
Chains rank_normalize(const Chains& chains) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t c = 0; c < chains.size(); ++c)
        for (double v : chains[c]) all.emplace_back(v, all.size());
    const std::size_t total = all.size();
    std::vector<double> ranks(total);
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < total;) {
        std::size_t j = i;
        while (j + 1 < total && all[j + 1].first == all[i].first) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[all[k].second] = r;
        i = j + 1;
    }
    Chains out = chains;
    std::size_t idx = 0;
    for (auto& c : out)
        for (auto& v : c)
            v = special::normal_quantile((ranks[idx++] - 0.375) / (static_cast<double>(total) + 0.25));
    return out;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double classic_rhat(const Chains& chains) {
    const double n = static_cast<double>(chains.front().size());
    const double m = static_cast<double>(chains.size());
    std::vector<double> means, vars;
    for (const auto& c : chains) {
        const double mu = mean_of(c);
        double ss = 0.0;
        for (double v : c) ss += (v - mu) * (v - mu);
        means.push_back(mu);
        vars.push_back(ss / (n - 1.0));
    }
    const double w = mean_of(vars);
    if (!(w > 0.0)) throw DiagnosticsError("chains have zero within-chain variance");
    const double grand = mean_of(means);
    double b = 0.0;
    for (double mu : means) b += (mu - grand) * (mu - grand);
    b *= n / (m - 1.0);
    const double var_plus = (n - 1.0) / n * w + b / n;
    return std::sqrt(var_plus / w);
}

// Multi-chain ESS with Geyer's initial monotone sequence estimator.
double classic_ess(const Chains& chains) {
    const std::size_t m = chains.size();
    const std::size_t n = chains.front().size();
    std::vector<double> means(m), acov0(m);
    for (std::size_t c = 0; c < m; ++c) means[c] = mean_of(chains[c]);
    auto acov_mean = [&](std::size_t lag) {
        double total = 0.0;
        for (std::size_t c = 0; c < m; ++c) {
            double s = 0.0;
            const auto& x = chains[c];
            for (std::size_t i = 0; i + lag < n; ++i) s += (x[i] - means[c]) * (x[i + lag] - means[c]);
            total += s / static_cast<double>(n);
        }
        return total / static_cast<double>(m);
    };
    const double nd = static_cast<double>(n);
    const double mean_var = acov_mean(0) * nd / (nd - 1.0);
    double var_plus = mean_var * (nd - 1.0) / nd;
    if (m > 1) {
        const double grand = mean_of(means);
        double b = 0.0;
        for (double mu : means) b += (mu - grand) * (mu - grand);
        var_plus += b / static_cast<double>(m - 1);
    }
    if (!(var_plus > 0.0)) throw DiagnosticsError("chains have zero variance");

    std::vector<double> rho(n, 0.0);
    double rho_even = 1.0;
    double rho_odd = 1.0 - (mean_var - acov_mean(1)) / var_plus;
    rho[0] = rho_even;
    rho[1] = rho_odd;
    std::size_t s = 1;
    while (s + 4 < n && rho_even + rho_odd > 0.0) {
        rho_even = 1.0 - (mean_var - acov_mean(s + 1)) / var_plus;
        rho_odd = 1.0 - (mean_var - acov_mean(s + 2)) / var_plus;
        if (rho_even + rho_odd >= 0.0) {
            rho[s + 1] = rho_even;
            rho[s + 2] = rho_odd;
        }
        s += 2;
    }
    const std::size_t max_s = s;
    if (rho_even > 0.0 && max_s + 1 < n) rho[max_s + 1] = rho_even;
    for (std::size_t k = 1; k + 3 <= max_s; k += 2) {
        if (rho[k + 1] + rho[k + 2] > rho[k - 1] + rho[k]) {
            rho[k + 1] = 0.5 * (rho[k - 1] + rho[k]);
            rho[k + 2] = rho[k + 1];
        }
    }
    const double total = static_cast<double>(m * n);
    double tau = -1.0;
    for (std::size_t k = 0; k < max_s; ++k) tau += 2.0 * rho[k];
    if (max_s + 1 < n) tau += rho[max_s + 1];
    return std::min(total / tau, total * std::log10(total));
}

Chains folded(const Chains& chains) {
    std::vector<double> all;
    for (const auto& c : chains) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    const std::size_t k = all.size();
    const double median = k % 2 ? all[k / 2] : 0.5 * (all[k / 2 - 1] + all[k / 2]);
    Chains out = chains;
    for (auto& c : out)
        for (auto& v : c) v = std::fabs(v - median);
    return out;
}

}  // namespace

double split_rhat(const std::vector<std::vector<double>>& chains) {
    check_chains(chains);
    const auto halves = split(chains);
    const double bulk = classic_rhat(rank_normalize(halves));
    double tail = 1.0;
    try {
        tail = classic_rhat(rank_normalize(folded(halves)));
    } catch (const DiagnosticsError&) {
        // Folded draws can be constant (e.g. two-point posteriors); bulk still holds.
    }
    return std::max(bulk, tail);
}

double ess_bulk(const std::vector<std::vector<double>>& chains) {
    check_chains(chains);
    return classic_ess(rank_normalize(split(chains)));
}

Diagnostics diagnostics(const PosteriorDraws& draws) {
    if (draws.n_chains() < 2) throw DiagnosticsError("diagnostics need at least two chains");
    Diagnostics d;
    d.names = draws.names();
    for (std::size_t j = 0; j < draws.n_params(); ++j) {
        Chains chains(draws.n_chains());
        for (std::size_t i = 0; i < draws.n_draws(); ++i) chains[draws.chain(i)].push_back(draws.value(i, j));
        for (const auto& c : chains)
            if (c.empty()) throw DiagnosticsError("every chain needs at least one draw");
        // Raw variance check: rank normalisation would hide constant chains.
        bool constant = true;
        for (const auto& c : chains)
            for (double v : c)
                if (v != chains.front().front()) constant = false;
        if (constant)
            throw DiagnosticsError("parameter " + draws.names()[j] + " has zero variance across chains");
        d.rhat.push_back(split_rhat(chains));
        d.ess_bulk.push_back(ess_bulk(chains));
    }
    if (draws.diagnostics()) d.acceptance = draws.diagnostics()->acceptance;
    return d;
}

}  // namespace ppm
