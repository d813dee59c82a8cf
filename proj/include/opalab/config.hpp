#pragma once

// Declarative experiment configuration: strict JSON in, validated plan out.
// Unknown keys are hard errors so that a typo cannot silently run a
// different experiment than the one the author believed they wrote.

#include <complex>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "precision.hpp"
#include "target.hpp"
#include "weights.hpp"

namespace opalab {

struct weight_spec {
    weight_family family = weight_family::dirichlet;
    double alpha = 0.0;                 // dirichlet only
    std::vector<double> values;         // table only

    template <class P> weight_model<P> instantiate() const {
        if (family == weight_family::dirichlet)
            return weight_model<P>::dirichlet(typename P::real(alpha));
        std::vector<typename P::real> v(values.begin(), values.end());
        return weight_model<P>::table(std::move(v));
    }
};

struct experiment_config {
    weight_spec weight;
    std::vector<std::complex<double>> zeros;

    std::size_t n_start = 0;
    std::size_t n_end = 0;
    std::size_t n_step = 1;

    unsigned precision_bits = 53;

    bool has_subsequence = false;
    double subsequence_eps = 0.0;
    std::size_t subsequence_max_scan = 100000;

    std::string output_dir = "out";
    bool want_csv = true;
    bool want_json = true;

    std::uint64_t seeds = 0;

    std::vector<std::size_t> n_values() const {
        std::vector<std::size_t> out;
        for (std::size_t n = n_start; n <= n_end; n += n_step) {
            out.push_back(n);
            if (n_step == 0 || n > n_end - n_step) break;  // overflow guard
        }
        return out;
    }

    template <class P> target_polynomial<P> instantiate_target() const {
        std::vector<typename P::cplx> zs;
        zs.reserve(zeros.size());
        for (const auto& z : zeros)
            zs.emplace_back(typename P::real(z.real()), typename P::real(z.imag()));
        return target_polynomial<P>(std::move(zs));
    }
};

namespace detail {

inline void require_keys(const nlohmann::json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        throw config_error(std::string(where) + " must be a JSON object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) { known = true; break; }
        if (!known)
            throw config_error("unknown key \"" + item.key() + "\" in " + where);
    }
}

inline const nlohmann::json& require_field(const nlohmann::json& obj, const char* where,
                                           const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw config_error(std::string(where) + " is missing required key \"" + key + "\"");
    return *it;
}

inline double number_field(const nlohmann::json& v, const std::string& what) {
    if (!v.is_number()) throw config_error(what + " must be a number");
    return v.get<double>();
}

inline std::size_t index_field(const nlohmann::json& v, const std::string& what) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw config_error(what + " must be a non-negative integer");
    return static_cast<std::size_t>(v.get<std::int64_t>());
}

}  // namespace detail

inline weight_spec parse_weight_spec(const nlohmann::json& j) {
    weight_spec out;
    const auto& kind = detail::require_field(j, "weight", "kind");
    if (!kind.is_string()) throw config_error("weight.kind must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "dirichlet") {
        detail::require_keys(j, "weight", {"kind", "alpha"});
        out.family = weight_family::dirichlet;
        out.alpha = detail::number_field(detail::require_field(j, "weight", "alpha"),
                                         "weight.alpha");
    } else if (k == "table") {
        detail::require_keys(j, "weight", {"kind", "values"});
        out.family = weight_family::table;
        const auto& vals = detail::require_field(j, "weight", "values");
        if (!vals.is_array() || vals.empty())
            throw config_error("weight.values must be a nonempty array");
        for (const auto& v : vals)
            out.values.push_back(detail::number_field(v, "weight.values entry"));
    } else {
        throw config_error("weight.kind must be \"dirichlet\" or \"table\", got \"" + k + "\"");
    }
    // Fail on unusable weights here, before any n-sweep begins.
    try {
        out.instantiate<p53>().require_usable_for_opa();
    } catch (const std::exception& e) {
        throw config_error(std::string("weight: ") + e.what());
    }
    return out;
}

inline experiment_config parse_config(const nlohmann::json& j) {
    detail::require_keys(j, "config",
                         {"weight", "zeros", "n_range", "precision", "subsequence",
                          "outputs", "seeds"});
    experiment_config cfg;

    cfg.weight = parse_weight_spec(detail::require_field(j, "config", "weight"));

    const auto& zeros = detail::require_field(j, "config", "zeros");
    if (!zeros.is_array() || zeros.empty())
        throw config_error("zeros must be a nonempty array of {re, im} objects");
    for (const auto& z : zeros) {
        detail::require_keys(z, "zeros entry", {"re", "im"});
        cfg.zeros.emplace_back(detail::number_field(detail::require_field(z, "zeros entry", "re"),
                                                    "zeros.re"),
                               detail::number_field(detail::require_field(z, "zeros entry", "im"),
                                                    "zeros.im"));
    }
    // Validate the target eagerly: bad zero lists must be rejected before
    // any compute, with the target invariants' own messages.
    try {
        cfg.instantiate_target<p53>();
    } catch (const std::exception& e) {
        throw config_error(std::string("zeros: ") + e.what());
    }

    const auto& nr = detail::require_field(j, "config", "n_range");
    detail::require_keys(nr, "n_range", {"start", "end", "step"});
    cfg.n_start = detail::index_field(detail::require_field(nr, "n_range", "start"),
                                      "n_range.start");
    cfg.n_end = detail::index_field(detail::require_field(nr, "n_range", "end"), "n_range.end");
    if (auto it = nr.find("step"); it != nr.end())
        cfg.n_step = detail::index_field(*it, "n_range.step");
    if (cfg.n_step == 0) throw config_error("n_range.step must be at least 1");
    if (cfg.n_end < cfg.n_start) throw config_error("n_range is empty (end < start)");

    if (cfg.weight.family == weight_family::table) {
        const std::size_t needed = cfg.n_end + cfg.zeros.size() + 1;
        if (cfg.weight.values.size() < needed)
            throw config_error("weight.values has " +
                               std::to_string(cfg.weight.values.size()) +
                               " entries but the sweep needs n_range.end + degree + 1 = " +
                               std::to_string(needed));
    }

    if (auto it = j.find("precision"); it != j.end()) {
        detail::require_keys(*it, "precision", {"bits"});
        const std::size_t bits =
            detail::index_field(detail::require_field(*it, "precision", "bits"),
                                "precision.bits");
        if (bits != 53 && bits != 113 && bits != 256)
            throw config_error("precision.bits must be one of 53, 113, 256");
        cfg.precision_bits = static_cast<unsigned>(bits);
    }

    if (auto it = j.find("subsequence"); it != j.end()) {
        detail::require_keys(*it, "subsequence", {"eps", "max_scan"});
        cfg.has_subsequence = true;
        cfg.subsequence_eps =
            detail::number_field(detail::require_field(*it, "subsequence", "eps"),
                                 "subsequence.eps");
        if (!(cfg.subsequence_eps > 0.0))
            throw config_error("subsequence.eps must be positive");
        if (auto ms = it->find("max_scan"); ms != it->end())
            cfg.subsequence_max_scan = detail::index_field(*ms, "subsequence.max_scan");
        if (cfg.subsequence_max_scan == 0)
            throw config_error("subsequence.max_scan must be at least 1");
    }

    if (auto it = j.find("outputs"); it != j.end()) {
        detail::require_keys(*it, "outputs", {"dir", "formats"});
        if (auto d = it->find("dir"); d != it->end()) {
            if (!d->is_string()) throw config_error("outputs.dir must be a string");
            cfg.output_dir = d->get<std::string>();
        }
        if (auto f = it->find("formats"); f != it->end()) {
            if (!f->is_array() || f->empty())
                throw config_error("outputs.formats must be a nonempty array");
            cfg.want_csv = cfg.want_json = false;
            for (const auto& fmt : *f) {
                if (!fmt.is_string())
                    throw config_error("outputs.formats entries must be strings");
                const std::string s = fmt.get<std::string>();
                if (s == "csv") cfg.want_csv = true;
                else if (s == "json") cfg.want_json = true;
                else throw config_error("outputs.formats entries must be \"csv\" or \"json\"");
            }
        }
    }

    if (auto it = j.find("seeds"); it != j.end())
        cfg.seeds = static_cast<std::uint64_t>(detail::index_field(*it, "seeds"));

    return cfg;
}

inline experiment_config parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

inline experiment_config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace opalab
