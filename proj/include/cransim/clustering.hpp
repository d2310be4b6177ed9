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

#ifndef CRANSIM_CLUSTERING_HPP
#define CRANSIM_CLUSTERING_HPP

#include "association.hpp"
#include "channel.hpp"
#include "config.hpp"

#include <algorithm>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cransim {

struct Clustering
{
    std::vector<std::vector<int>> clusters; // each sorted ascending
    std::vector<int> member_of;             // per RRH

    int size() const { return static_cast<int>(clusters.size()); }
};

// Scores a candidate RRH set (with the users associated to it). An empty
// optional marks the candidate as infeasible, e.g. ZFBF with more users than antennas.
template <typename F>
concept ClusterRateEvaluator = std::invocable<F &, const std::vector<int> &> &&
    std::convertible_to<std::invoke_result_t<F &, const std::vector<int> &>, std::optional<double>>;

inline Clustering make_clustering(std::vector<std::vector<int>> clusters, int n_rrh)
{
    Clustering c;
    c.member_of.assign(n_rrh, -1);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        std::sort(clusters[i].begin(), clusters[i].end());
        for (int r : clusters[i]) {
            if (r < 0 || r >= n_rrh || c.member_of[r] != -1)
                throw std::invalid_argument("make_clustering: clusters must partition the RRH set");
            c.member_of[r] = static_cast<int>(i);
        }
    }
    c.clusters = std::move(clusters);
    return c;
}

inline Clustering cluster_trivial(int n_rrh, Coordination mode)
{
    std::vector<std::vector<int>> sets;
    if (mode == Coordination::GC) {
        sets.emplace_back();
        for (int r = 0; r < n_rrh; ++r)
            sets.back().push_back(r);
    } else if (mode == Coordination::NC) {
        for (int r = 0; r < n_rrh; ++r)
            sets.push_back({r});
    } else {
        throw std::invalid_argument("cluster_trivial: LC needs greedy clustering");
    }
    return make_clustering(std::move(sets), n_rrh);
}

inline Clustering cluster_trivial(const ScenarioConfig &cfg) { return cluster_trivial(cfg.n_rrh, cfg.coordination); }

// Greedy sum-rate clustering. Clusters are grown one RRH at a time; at every step
// the unassigned RRH whose addition gives the largest rate_eval is accepted (ties
// go to the lower index). A new cluster is seeded with the best singleton.
template <ClusterRateEvaluator Eval>
Clustering cluster_greedy(int n_rrh, int n_clusters, int cluster_size, Eval &&rate_eval)
{
    if (n_clusters < 1 || cluster_size < 1 || n_clusters * cluster_size != n_rrh)
        throw std::invalid_argument("cluster_greedy: requires C·B = N");

    std::vector<int> unassigned(n_rrh);
    for (int r = 0; r < n_rrh; ++r)
        unassigned[r] = r;

    std::vector<std::vector<int>> sets;
    for (int c = 0; c < n_clusters; ++c) {
        std::vector<int> current;
        // The last cluster is forced once the remaining RRHs exactly fill it.
        if (static_cast<int>(unassigned.size()) == cluster_size) {
            sets.push_back(unassigned);
            unassigned.clear();
            break;
        }
        while (static_cast<int>(current.size()) < cluster_size) {
            std::optional<double> best_rate;
            int best = -1;
            std::vector<int> candidate = current;
            candidate.push_back(-1);
            for (int r : unassigned) {
                candidate.back() = r;
                const std::optional<double> rate = rate_eval(static_cast<const std::vector<int> &>(candidate));
                if (rate && (!best_rate || *rate > *best_rate)) {
                    best_rate = rate;
                    best = r;
                }
            }
            if (best < 0)
                throw std::runtime_error("cluster_greedy: no feasible RRH to extend the cluster");
            current.push_back(best);
            std::erase(unassigned, best);
        }
        sets.push_back(std::move(current));
    }
    return make_clustering(std::move(sets), n_rrh);
}

template <ClusterRateEvaluator Eval>
Clustering cluster_greedy(const ChannelSet &, const Association &, const ScenarioConfig &cfg, Eval &&rate_eval)
{
    return cluster_greedy(cfg.n_rrh, cfg.clusters(), cfg.rrhs_per_cluster(), std::forward<Eval>(rate_eval));
}

} // namespace cransim

#endif
