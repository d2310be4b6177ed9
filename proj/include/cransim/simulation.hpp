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

#ifndef CRANSIM_SIMULATION_HPP
#define CRANSIM_SIMULATION_HPP

#include "association.hpp"
#include "channel.hpp"
#include "clustering.hpp"
#include "config.hpp"
#include "metrics.hpp"
#include "precoding.hpp"
#include "scenario.hpp"

#include <cstdint>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cransim {

inline constexpr const char *kVersionTag = "cransim 0.1.0";
inline constexpr int kMaxDrawAttempts = 4;

// Every draw attempt of a drop produced a singular ZF channel.
class DropRejected : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct TierResult
{
    Association assoc;
    Clustering clus;
};

struct DropResult
{
    RateReport report;
    TierResult inside;
    TierResult outside;
    PrecodeResult precoders;
    std::uint64_t seed = 0; // seed of the accepted draw
    int redraws = 0;
    std::optional<Deployment> deployment;
    std::optional<ChannelSet> channels;
};

struct DropOptions
{
    bool keep_deployment = false;
    bool keep_channels = false;
};

namespace detail {

// Association, clustering and precoding for one tier. `external` selects the
// external-tier rules: CB always runs per RRH there.
inline CMatrix precode_tier(const CMatrix &h, int n_rrh, int m_ant, int per_rrh, const ScenarioConfig &cfg,
                            bool external, TierResult &tier, std::vector<WmmseDiagnostics> &diags)
{
    const double p = cfg.p_rrh_w();
    const double noise = cfg.noise_w();
    Coordination mode = cfg.coordination;
    if (external && cfg.precoder == Precoder::CB)
        mode = Coordination::NC;

    if (cfg.precoder == Precoder::ZFBF && mode == Coordination::GC) {
        tier.clus = cluster_trivial(n_rrh, Coordination::GC);
        return zfbf_tier(h, m_ant, tier.clus, tier.assoc, p, true);
    }

    tier.assoc = associate(h, n_rrh, m_ant, per_rrh);
    WmmseOptions opt{cfg.wmmse_max_iter, cfg.wmmse_tol};
    if (mode == Coordination::LC) {
        const int b = cfg.rrhs_per_cluster();
        IsolatedRateEvaluator eval{h, m_ant, tier.assoc, cfg.precoder, p, noise, per_rrh, opt};
        tier.clus = cluster_greedy(n_rrh, n_rrh / b, b, eval);
    } else {
        tier.clus = cluster_trivial(n_rrh, mode);
    }
    if (cfg.precoder == Precoder::ZFBF)
        return zfbf_tier(h, m_ant, tier.clus, tier.assoc, p, false);
    return wmmse_tier(h, m_ant, tier.clus, tier.assoc, p, noise, per_rrh, opt, diags);
}

inline DropResult run_drop_once(const ScenarioConfig &cfg, std::uint64_t seed, const DropOptions &opt)
{
    DropResult r;
    r.seed = seed;
    Deployment dep = drop_deployment(cfg, seed);
    ChannelSet ch = synthesize(dep, cfg, seed);

    r.precoders.w = precode_tier(ch.h, cfg.n_rrh, cfg.m_ant, cfg.served_per_rrh(), cfg, false, r.inside,
                                 r.precoders.scopes);
    if (cfg.external_interference && ch.h_out.size() > 0)
        r.precoders.w_out = precode_tier(ch.h_out, cfg.ext_rrhs(), cfg.ext_ant(), cfg.ext_served_per_rrh(), cfg,
                                         true, r.outside, r.precoders.scopes_out);

    r.report = rate_report(sinr_all(ch, r.precoders, cfg), cfg);
    if (opt.keep_deployment)
        r.deployment = std::move(dep);
    if (opt.keep_channels)
        r.channels = std::move(ch);
    return r;
}

} // namespace detail

// One Monte-Carlo drop: deployment, channels, association, clustering, precoding
// (in-AD and external) and rate evaluation. A draw with a singular ZF channel is
// redrawn from a derived sub-seed; DropRejected after kMaxDrawAttempts failures.
inline DropResult run_drop(const ScenarioConfig &cfg, std::uint64_t drop_seed, const DropOptions &opt = {})
{
    for (int attempt = 0; attempt < kMaxDrawAttempts; ++attempt) {
        const std::uint64_t seed = attempt == 0 ? drop_seed : derive_seed({drop_seed, 0xD1, std::uint64_t(attempt)});
        try {
            DropResult r = detail::run_drop_once(cfg, seed, opt);
            r.redraws = attempt;
            return r;
        } catch (const SingularChannelError &) {
        }
    }
    throw DropRejected("run_drop: every draw produced a singular channel");
}

// A scheme to compare: coordination regime, cluster size for LC, precoder and an
// optional external-interference override. Text form: GC-ZFBF, LC8-CB, NC-ZFBF/noext.
struct Variant
{
    Coordination coordination = Coordination::GC;
    std::optional<int> cluster_size;
    Precoder precoder = Precoder::ZFBF;
    std::optional<bool> external;
    std::string label;
};

inline Variant parse_variant(const std::string &text)
{
    static const std::regex re(R"(^(GC|NC|LC)(\d*)-(ZFBF|CB)(/(ext|noext))?$)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw ConfigError("variants", "cannot parse variant '" + text + "' (expected e.g. GC-ZFBF, LC8-CB/noext)");
    Variant v;
    v.label = text;
    v.coordination = parse_coordination(m[1].str());
    if (m[2].length() > 0) {
        if (v.coordination != Coordination::LC)
            throw ConfigError("variants", "only LC takes a cluster size: '" + text + "'");
        v.cluster_size = std::stoi(m[2].str());
    }
    v.precoder = parse_precoder(m[3].str());
    if (m[5].matched)
        v.external = m[5].str() == "ext";
    return v;
}

inline ScenarioConfig apply_variant(const ScenarioConfig &base, const Variant &v)
{
    ScenarioConfig cfg = unresolve(base);
    cfg.coordination = v.coordination;
    cfg.precoder = v.precoder;
    if (v.coordination != Coordination::LC) {
        cfg.cluster_size.reset();
        cfg.n_clusters.reset();
    } else if (v.cluster_size) {
        cfg.cluster_size = v.cluster_size;
        cfg.n_clusters.reset();
    }
    if (v.external)
        cfg.external_interference = *v.external;
    return resolve(cfg);
}

inline std::string variant_label(const ScenarioConfig &cfg)
{
    std::string s = to_string(cfg.coordination);
    if (cfg.coordination == Coordination::LC)
        s += std::to_string(cfg.rrhs_per_cluster());
    s += "-" + to_string(cfg.precoder);
    s += cfg.external_interference ? "/ext" : "/noext";
    return s;
}

} // namespace cransim

#endif
