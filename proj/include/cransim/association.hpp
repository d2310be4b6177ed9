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

#ifndef CRANSIM_ASSOCIATION_HPP
#define CRANSIM_ASSOCIATION_HPP

#include "channel.hpp"
#include "config.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace cransim {

struct Association
{
    std::vector<std::vector<int>> served; // per RRH, in selection order
    std::vector<int> owner;               // per user; -1 if unassigned

    bool empty() const { return served.empty(); }
};

// Channel quality of user k toward RRH n: squared norm of its M-entry channel.
inline double association_metric(const CMatrix &h, int m_ant, int rrh, int user)
{
    return h.row(user).segment(static_cast<Eigen::Index>(rrh) * m_ant, m_ant).squaredNorm();
}

// RRH-centric greedy association. RRHs are visited in ascending index; each takes
// the `per_rrh` unassigned users with the largest metric (ties: lower user index).
inline Association associate(const CMatrix &h, int n_rrh, int m_ant, int per_rrh)
{
    const int k = static_cast<int>(h.rows());
    Association a;
    a.served.resize(n_rrh);
    a.owner.assign(k, -1);

    std::vector<int> unassigned(k);
    std::iota(unassigned.begin(), unassigned.end(), 0);
    for (int n = 0; n < n_rrh && !unassigned.empty(); ++n) {
        std::vector<std::pair<double, int>> scored;
        scored.reserve(unassigned.size());
        for (int u : unassigned)
            scored.emplace_back(association_metric(h, m_ant, n, u), u);
        const auto take = std::min<std::size_t>(per_rrh, scored.size());
        std::partial_sort(scored.begin(), scored.begin() + take, scored.end(), [](const auto &x, const auto &y) {
            return x.first != y.first ? x.first > y.first : x.second < y.second;
        });
        for (std::size_t i = 0; i < take; ++i) {
            a.served[n].push_back(scored[i].second);
            a.owner[scored[i].second] = n;
        }
        std::erase_if(unassigned, [&](int u) { return a.owner[u] >= 0; });
    }
    return a;
}

inline Association associate(const ChannelSet &ch, const ScenarioConfig &cfg)
{
    return associate(ch.h, cfg.n_rrh, cfg.m_ant, cfg.served_per_rrh());
}

} // namespace cransim

#endif
