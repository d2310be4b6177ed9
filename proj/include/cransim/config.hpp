// SPDX-License-Identifier: Apache-2.0
//
// cransim: downlink simulator for clustered cloud-RAN antenna domains
// Copyright (C) 2026 The cransim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CRANSIM_CONFIG_HPP
#define CRANSIM_CONFIG_HPP

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cransim {

enum class Coordination { GC, LC, NC };
enum class Precoder { ZFBF, CB };

inline std::string to_string(Coordination c)
{
    switch (c) {
    case Coordination::GC: return "GC";
    case Coordination::LC: return "LC";
    case Coordination::NC: return "NC";
    }
    return "?";
}

inline std::string to_string(Precoder p) { return p == Precoder::ZFBF ? "ZFBF" : "CB"; }

// Configuration error; `field()` names the offending key when there is one.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string &what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const std::string &field() const { return field_; }

private:
    std::string field_;
};

inline Coordination parse_coordination(std::string_view s)
{
    if (s == "GC") return Coordination::GC;
    if (s == "LC") return Coordination::LC;
    if (s == "NC") return Coordination::NC;
    throw ConfigError("coordination", "expected GC, LC or NC, got '" + std::string(s) + "'");
}

inline Precoder parse_precoder(std::string_view s)
{
    if (s == "ZFBF") return Precoder::ZFBF;
    if (s == "CB") return Precoder::CB;
    throw ConfigError("precoder", "expected ZFBF or CB, got '" + std::string(s) + "'");
}

// Every tunable of one simulated antenna domain. Optional fields are derived
// from the others by `resolve()`; after resolution all of them hold values.
struct ScenarioConfig
{
    int n_rrh = 24;
    int m_ant = 4;
    int n_users = 48;
    std::optional<int> users_per_rrh; // default ceil(K / N)

    double side_m = 250.0;
    double alpha = 3.76; // path-loss slope is 10 * alpha dB per decade
    double shadow_sigma_db = 8.0;
    double rician_k = 1.0;
    double rho_t = 0.5;
    double rho_r = 0.5;
    std::optional<double> rho_t_prime; // default rho_t^M

    std::optional<int> n_clusters;
    std::optional<int> cluster_size;
    Coordination coordination = Coordination::GC;
    Precoder precoder = Precoder::ZFBF;

    double p_rrh_dbm = 20.0;
    double noise_dbm = -120.0;
    bool external_interference = true;
    std::optional<int> n_out; // default 3N
    std::optional<int> m_out; // default M
    std::optional<int> k_out; // default N_out * M_out / 2

    double pf_hz = 0.0;
    double w_sym = 14000.0;

    int n_drops = 200;
    std::uint64_t master_seed = 1;
    bool paired = true;
    std::string sweep_axis; // empty, p_rrh_dbm, pf_hz, n_users or cluster_size
    std::vector<double> sweep_values;
    std::vector<std::string> variants; // used by the compare verb

    int wmmse_max_iter = 100;
    double wmmse_tol = 1e-5;

    // Names of optional fields filled in by resolve() rather than set by the user.
    std::vector<std::string> derived;

    // Accessors for derived values; valid after resolve().
    int served_per_rrh() const { return users_per_rrh.value(); }
    int clusters() const { return n_clusters.value(); }
    int rrhs_per_cluster() const { return cluster_size.value(); }
    int ext_rrhs() const { return n_out.value(); }
    int ext_ant() const { return m_out.value(); }
    int ext_users() const { return k_out.value(); }
    double inter_rrh_corr() const { return rho_t_prime.value(); }
    int ext_served_per_rrh() const
    {
        return ext_rrhs() == 0 ? 0 : (ext_users() + ext_rrhs() - 1) / ext_rrhs();
    }

    double p_rrh_w() const { return std::pow(10.0, (p_rrh_dbm - 30.0) / 10.0); }
    double noise_w() const { return std::pow(10.0, (noise_dbm - 30.0) / 10.0); }
};

namespace detail {

inline void require(bool ok, const char *field, const std::string &what)
{
    if (!ok)
        throw ConfigError(field, what);
}

} // namespace detail

// Fills derived fields and checks every invariant. Throws ConfigError.
inline ScenarioConfig resolve(ScenarioConfig cfg)
{
    using detail::require;
    auto fill = [&cfg](auto &field, auto value, const char *name) {
        if (!field) {
            field = value;
            cfg.derived.emplace_back(name);
        }
    };
    require(cfg.n_rrh >= 1, "n_rrh", "must be >= 1");
    require(cfg.m_ant >= 1, "m_ant", "must be >= 1");
    require(cfg.n_users >= 1, "n_users", "must be >= 1");
    require(cfg.n_users <= cfg.n_rrh * cfg.m_ant, "n_users", "K must not exceed N*M");

    fill(cfg.users_per_rrh, (cfg.n_users + cfg.n_rrh - 1) / cfg.n_rrh, "users_per_rrh");
    require(*cfg.users_per_rrh >= 1 && *cfg.users_per_rrh <= cfg.m_ant, "users_per_rrh", "J must satisfy 1 <= J <= M");
    require(cfg.n_users <= cfg.n_rrh * *cfg.users_per_rrh, "users_per_rrh", "K must not exceed N*J");

    require(cfg.side_m > 0.0, "side_m", "must be positive");
    require(cfg.alpha > 0.0, "alpha", "must be positive");
    require(cfg.shadow_sigma_db >= 0.0, "shadow_sigma_db", "must be >= 0");
    require(cfg.rician_k >= 0.0, "rician_k", "must be >= 0");
    require(cfg.rho_t >= 0.0 && cfg.rho_t <= 1.0, "rho_t", "must lie in [0, 1]");
    require(cfg.rho_r >= 0.0 && cfg.rho_r <= 1.0, "rho_r", "must lie in [0, 1]");
    fill(cfg.rho_t_prime, std::pow(cfg.rho_t, cfg.m_ant), "rho_t_prime");
    require(*cfg.rho_t_prime >= 0.0 && *cfg.rho_t_prime <= cfg.rho_t, "rho_t_prime", "must satisfy 0 <= rho_t_prime <= rho_t");

    const int n = cfg.n_rrh;
    switch (cfg.coordination) {
    case Coordination::GC:
        require(!cfg.n_clusters || *cfg.n_clusters == 1, "n_clusters", "GC requires C = 1");
        require(!cfg.cluster_size || *cfg.cluster_size == n, "cluster_size", "GC requires B = N");
        fill(cfg.n_clusters, 1, "n_clusters");
        fill(cfg.cluster_size, n, "cluster_size");
        break;
    case Coordination::NC:
        require(!cfg.n_clusters || *cfg.n_clusters == n, "n_clusters", "NC requires C = N");
        require(!cfg.cluster_size || *cfg.cluster_size == 1, "cluster_size", "NC requires B = 1");
        fill(cfg.n_clusters, n, "n_clusters");
        fill(cfg.cluster_size, 1, "cluster_size");
        break;
    case Coordination::LC:
        require(cfg.n_clusters || cfg.cluster_size, "cluster_size", "LC requires cluster_size or n_clusters");
        if (cfg.cluster_size)
            require(*cfg.cluster_size >= 1, "cluster_size", "must be >= 1");
        if (cfg.n_clusters)
            require(*cfg.n_clusters >= 1, "n_clusters", "must be >= 1");
        if (!cfg.n_clusters)
            fill(cfg.n_clusters, n / *cfg.cluster_size, "n_clusters");
        if (!cfg.cluster_size)
            fill(cfg.cluster_size, n / *cfg.n_clusters, "cluster_size");
        require(*cfg.n_clusters * *cfg.cluster_size == n, "n_clusters", "C·B ≠ N");
        break;
    }

    require(cfg.noise_dbm > -400.0, "noise_dbm", "must be a finite power level");
    fill(cfg.n_out, 3 * n, "n_out");
    fill(cfg.m_out, cfg.m_ant, "m_out");
    require(*cfg.n_out >= 0, "n_out", "must be >= 0");
    require(*cfg.m_out >= 1, "m_out", "must be >= 1");
    fill(cfg.k_out, (*cfg.n_out * *cfg.m_out) / 2, "k_out");
    require(*cfg.k_out >= 0 && *cfg.k_out <= *cfg.n_out * *cfg.m_out, "k_out", "must satisfy 0 <= K_out <= N_out*M_out");
    require(cfg.ext_served_per_rrh() <= *cfg.m_out, "k_out", "external tier needs ceil(K_out/N_out) <= M_out");
    if (cfg.external_interference && cfg.coordination == Coordination::LC && cfg.precoder == Precoder::ZFBF)
        require(*cfg.n_out % *cfg.cluster_size == 0, "n_out", "external LC tier needs N_out divisible by B");

    require(cfg.pf_hz >= 0.0, "pf_hz", "must be >= 0");
    require(cfg.w_sym > 0.0, "w_sym", "must be positive");
    require(cfg.n_users * cfg.pf_hz < cfg.w_sym, "pf_hz", "overhead K*PF must stay below W");

    require(cfg.n_drops >= 1, "n_drops", "must be >= 1");
    require(cfg.wmmse_max_iter >= 1, "wmmse_max_iter", "must be >= 1");
    require(cfg.wmmse_tol > 0.0, "wmmse_tol", "must be positive");
    const auto &ax = cfg.sweep_axis;
    require(ax.empty() || ax == "p_rrh_dbm" || ax == "pf_hz" || ax == "n_users" || ax == "cluster_size",
            "sweep_axis", "expected one of p_rrh_dbm, pf_hz, n_users, cluster_size");
    require(ax.empty() || !cfg.sweep_values.empty(), "sweep_values", "a sweep axis needs at least one value");
    return cfg;
}

namespace detail {

template <typename T>
T scalar_as(const YAML::Node &node, const std::string &key)
{
    try {
        return node.as<T>();
    } catch (const YAML::Exception &) {
        throw ConfigError(key, "cannot parse value '" + node.Scalar() + "'");
    }
}

template <typename T>
std::vector<T> list_as(const YAML::Node &node, const std::string &key)
{
    if (node.IsScalar()) // "0, 10, 20" is accepted as a shorthand
    {
        std::vector<T> out;
        std::stringstream ss(node.Scalar());
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b == std::string::npos)
                continue;
            out.push_back(scalar_as<T>(YAML::Node(item.substr(b, e - b + 1)), key));
        }
        return out;
    }
    if (!node.IsSequence())
        throw ConfigError(key, "expected a list");
    std::vector<T> out;
    for (const auto &item : node)
        out.push_back(scalar_as<T>(item, key));
    return out;
}

} // namespace detail

// Applies a single `key = value` assignment. Unknown keys are rejected.
inline void set_field(ScenarioConfig &cfg, const std::string &key, const YAML::Node &v)
{
    using detail::scalar_as;
    if (!v.IsSequence() && !v.IsScalar())
        throw ConfigError(key, "expected a scalar or a list");
    if (key == "n_rrh") cfg.n_rrh = scalar_as<int>(v, key);
    else if (key == "m_ant") cfg.m_ant = scalar_as<int>(v, key);
    else if (key == "n_users") cfg.n_users = scalar_as<int>(v, key);
    else if (key == "users_per_rrh") cfg.users_per_rrh = scalar_as<int>(v, key);
    else if (key == "side_m") cfg.side_m = scalar_as<double>(v, key);
    else if (key == "alpha") cfg.alpha = scalar_as<double>(v, key);
    else if (key == "shadow_sigma_db") cfg.shadow_sigma_db = scalar_as<double>(v, key);
    else if (key == "rician_k") cfg.rician_k = scalar_as<double>(v, key);
    else if (key == "rho_t") cfg.rho_t = scalar_as<double>(v, key);
    else if (key == "rho_r") cfg.rho_r = scalar_as<double>(v, key);
    else if (key == "rho_t_prime") cfg.rho_t_prime = scalar_as<double>(v, key);
    else if (key == "n_clusters") cfg.n_clusters = scalar_as<int>(v, key);
    else if (key == "cluster_size") cfg.cluster_size = scalar_as<int>(v, key);
    else if (key == "coordination") cfg.coordination = parse_coordination(scalar_as<std::string>(v, key));
    else if (key == "precoder") cfg.precoder = parse_precoder(scalar_as<std::string>(v, key));
    else if (key == "p_rrh_dbm") cfg.p_rrh_dbm = scalar_as<double>(v, key);
    else if (key == "noise_dbm") cfg.noise_dbm = scalar_as<double>(v, key);
    else if (key == "external_interference") cfg.external_interference = scalar_as<bool>(v, key);
    else if (key == "n_out") cfg.n_out = scalar_as<int>(v, key);
    else if (key == "m_out") cfg.m_out = scalar_as<int>(v, key);
    else if (key == "k_out") cfg.k_out = scalar_as<int>(v, key);
    else if (key == "pf_hz") cfg.pf_hz = scalar_as<double>(v, key);
    else if (key == "w_sym") cfg.w_sym = scalar_as<double>(v, key);
    else if (key == "n_drops") cfg.n_drops = scalar_as<int>(v, key);
    else if (key == "master_seed") cfg.master_seed = scalar_as<std::uint64_t>(v, key);
    else if (key == "paired") cfg.paired = scalar_as<bool>(v, key);
    else if (key == "sweep_axis") cfg.sweep_axis = scalar_as<std::string>(v, key);
    else if (key == "sweep_values") cfg.sweep_values = detail::list_as<double>(v, key);
    else if (key == "variants") cfg.variants = detail::list_as<std::string>(v, key);
    else if (key == "wmmse_max_iter") cfg.wmmse_max_iter = scalar_as<int>(v, key);
    else if (key == "wmmse_tol") cfg.wmmse_tol = scalar_as<double>(v, key);
    else throw ConfigError(key, "unknown configuration key");
}

// Parses a flat `key: value` document. Absent keys keep their defaults.
inline ScenarioConfig parse_config(const std::string &text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception &e) {
        throw ConfigError("", std::string("parse failure: ") + e.what());
    }
    ScenarioConfig cfg;
    if (root.IsNull())
        return resolve(cfg);
    if (!root.IsMap())
        throw ConfigError("", "parse failure: expected a flat key/value mapping");
    for (const auto &kv : root)
        set_field(cfg, kv.first.as<std::string>(), kv.second);
    return resolve(cfg);
}

inline ScenarioConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

// Returns a copy of `base` with one sweep axis set to `value`, re-resolved.
// Derived quantities that depend on the swept one (J, C, K_out ...) are recomputed
// unless the user pinned them explicitly.
// Clears every field that resolve() derived, so it can be derived again.
inline ScenarioConfig unresolve(ScenarioConfig cfg)
{
    for (const auto &name : cfg.derived) {
        if (name == "users_per_rrh") cfg.users_per_rrh.reset();
        else if (name == "rho_t_prime") cfg.rho_t_prime.reset();
        else if (name == "n_clusters") cfg.n_clusters.reset();
        else if (name == "cluster_size") cfg.cluster_size.reset();
        else if (name == "n_out") cfg.n_out.reset();
        else if (name == "m_out") cfg.m_out.reset();
        else if (name == "k_out") cfg.k_out.reset();
    }
    cfg.derived.clear();
    return cfg;
}

inline ScenarioConfig with_axis_value(const ScenarioConfig &base, const std::string &axis, double value)
{
    ScenarioConfig cfg = unresolve(base);
    if (axis == "p_rrh_dbm")
        cfg.p_rrh_dbm = value;
    else if (axis == "pf_hz")
        cfg.pf_hz = value;
    else if (axis == "n_users")
        cfg.n_users = static_cast<int>(std::lround(value));
    else if (axis == "cluster_size") {
        cfg.cluster_size = static_cast<int>(std::lround(value));
        cfg.n_clusters.reset();
    } else if (!axis.empty())
        throw ConfigError("sweep_axis", "unknown axis '" + axis + "'");
    return resolve(cfg);
}

} // namespace cransim

#endif
