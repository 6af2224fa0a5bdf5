#include "ppm/json_io.hpp"

#include <cmath>
#include <fstream>

#include "ppm/error.hpp"

namespace ppm {

namespace {

double number(const Json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) throw DomainError(std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

std::string string_field(const Json& j, const char* key, std::string fallback = {}) {
    if (!j.contains(key)) {
        if (fallback.empty()) throw DomainError(std::string("missing \"") + key + "\"");
        return fallback;
    }
    const auto& v = j.at(key);
    if (!v.is_string()) throw DomainError(std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const DistributionSpec& spec) {
    Json j;
    j["family"] = std::string(to_string(spec.family()));
    j["mu"] = spec.mu();
    if (spec.family() != Family::Bernoulli) j["sigma"] = spec.sigma();
    if (spec.family() == Family::StudentT) j["df"] = spec.df();
    if (spec.family() == Family::TruncatedNormal) {
        if (std::isfinite(spec.lower())) j["lower"] = spec.lower();
        if (std::isfinite(spec.upper())) j["upper"] = spec.upper();
    }
    return j;
}

DistributionSpec distribution_from_json(const Json& j) {
    if (!j.is_object()) throw DomainError("distribution must be a JSON object");
    const auto family = family_from_string(string_field(j, "family"));
    const double inf = std::numeric_limits<double>::infinity();
    switch (family) {
        case Family::Normal: return DistributionSpec::normal(number(j, "mu", 0.0), number(j, "sigma", 1.0));
        case Family::StudentT:
            return DistributionSpec::student_t(number(j, "mu", 0.0), number(j, "sigma", 1.0),
                                               number(j, "df", 0.0));
        case Family::Bernoulli: return DistributionSpec::bernoulli(number(j, "mu", 0.5));
        case Family::TruncatedNormal:
            return DistributionSpec::truncated_normal(number(j, "mu", 0.0), number(j, "sigma", 1.0),
                                                      number(j, "lower", -inf), number(j, "upper", inf));
    }
    throw DomainError("unknown distribution family");
}

Json to_json(const ModelSpec& model) {
    Json j;
    j["id"] = model.id;
    Json dist;
    dist["family"] = std::string(to_string(model.family));
    if (model.family == Family::StudentT) dist["df"] = model.df;
    j["distribution"] = dist;
    Json mean;
    mean["form"] = std::string(to_string(model.mean.form));
    mean["link"] = std::string(to_string(model.mean_link));
    mean["features"] = model.mean.n_features;
    j["mean"] = mean;
    if (model.variance) {
        Json var;
        var["form"] = std::string(to_string(model.variance->form));
        var["link"] = std::string(to_string(model.variance->link));
        j["variance"] = var;
    }
    Json priors = Json::array();
    for (const auto& p : model.priors) priors.push_back(to_json(p));
    j["priors"] = priors;
    if (model.truncation) {
        Json t;
        if (std::isfinite(model.truncation->lower)) t["lower"] = model.truncation->lower;
        if (std::isfinite(model.truncation->upper)) t["upper"] = model.truncation->upper;
        j["truncation"] = t;
    }
    return j;
}

ModelSpec model_from_json(const Json& j) {
    try {
        if (!j.is_object()) throw DomainError("model spec must be a JSON object");
        ModelSpec m;
        m.id = j.contains("id") ? string_field(j, "id") : "model";
        const Json dist = j.contains("distribution") ? j.at("distribution") : Json::object();
        m.family = family_from_string(string_field(dist, "family", "Normal"));
        m.df = number(dist, "df", 0.0);
        if (!j.contains("mean")) throw DomainError("missing \"mean\"");
        const auto& mean = j.at("mean");
        m.mean.form = mean_form_from_string(string_field(mean, "form"));
        m.mean.n_features = static_cast<std::size_t>(number(mean, "features", 1.0));
        m.mean_link = link_from_string(string_field(mean, "link", "identity"));
        if (j.contains("variance")) {
            const auto& var = j.at("variance");
            VarianceFunctionSpec v;
            v.form = variance_form_from_string(string_field(var, "form"));
            v.link = link_from_string(
                string_field(var, "link", v.form == VarianceForm::LinearInMu ? "softplus" : "identity"));
            m.variance = v;
        } else if (m.family != Family::Bernoulli) {
            m.variance = VarianceFunctionSpec{};
        }
        if (j.contains("priors")) {
            if (!j.at("priors").is_array()) throw DomainError("\"priors\" must be an array");
            for (const auto& p : j.at("priors")) m.priors.push_back(distribution_from_json(p));
        } else {
            m.priors = default_priors(m.mean, m.variance);
        }
        if (j.contains("truncation")) {
            const auto& t = j.at("truncation");
            Truncation tr;
            tr.lower = number(t, "lower", tr.lower);
            tr.upper = number(t, "upper", tr.upper);
            m.truncation = tr;
        }
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed model spec: ") + e.what());
    }
}

ModelSpec read_model_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open model spec " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(path.string() + ": " + e.what());
    }
    return model_from_json(j);
}

Json to_json(const Diagnostics& d) {
    Json j;
    Json params = Json::array();
    for (std::size_t k = 0; k < d.names.size(); ++k) {
        Json p;
        p["name"] = d.names[k];
        p["rhat"] = nullable(k < d.rhat.size() ? d.rhat[k] : NAN);
        p["ess_bulk"] = nullable(k < d.ess_bulk.size() ? d.ess_bulk[k] : NAN);
        params.push_back(p);
    }
    j["parameters"] = params;
    j["max_rhat"] = nullable(d.rhat.empty() ? NAN : d.max_rhat());
    j["flagged"] = d.flagged();
    j["acceptance"] = d.acceptance;
    return j;
}

}  // namespace ppm
