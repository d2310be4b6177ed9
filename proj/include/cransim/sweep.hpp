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

#ifndef CRANSIM_SWEEP_HPP
#define CRANSIM_SWEEP_HPP

#include "config.hpp"
#include "metrics.hpp"
#include "simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cransim {

struct DropRecord
{
    int index = 0;
    std::uint64_t seed = 0;
    double sum_rate = 0.0;
    double adjusted_sum_rate = 0.0;
    int redraws = 0;
    std::vector<std::vector<int>> clusters;
};

struct PointResult
{
    double axis_value = 0.0;
    SampleStats raw;
    SampleStats adjusted;
    int drops = 0;    // completed drops
    int rejected = 0; // drop slots that failed every draw attempt
    int redraws = 0;  // singular draws replaced inside completed drops
    std::vector<DropRecord> records; // completed drops in drop-index order

    std::vector<double> sum_rates() const
    {
        std::vector<double> v;
        for (const auto &r : records)
            v.push_back(r.sum_rate);
        return v;
    }
    std::vector<double> adjusted_rates() const
    {
        std::vector<double> v;
        for (const auto &r : records)
            v.push_back(r.adjusted_sum_rate);
        return v;
    }
};

struct SweepResult
{
    std::string variant;
    std::string axis; // "none" for a single operating point
    std::vector<PointResult> points;
    ScenarioConfig config; // resolved configuration of the first point
    std::uint64_t master_seed = 0;
    std::string version = kVersionTag;
};

struct RunOptions
{
    int parallel = 1;
    bool paired = true;
    int variant_index = 0; // mixed into drop seeds when not paired
};

// Stable per-drop seed, independent of execution order and thread count.
inline std::uint64_t drop_seed(std::uint64_t master, std::size_t axis_index, std::size_t drop_index)
{
    return derive_seed({master, axis_index, drop_index});
}

namespace detail {

// Runs `count` independent jobs on `threads` workers; job i writes only slot i.
template <typename Job>
void parallel_for(int count, int threads, Job &&job)
{
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto &th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace detail

inline PointResult run_point(const ScenarioConfig &cfg, std::size_t axis_index, double axis_value,
                             const RunOptions &opt)
{
    std::vector<std::optional<DropRecord>> slots(cfg.n_drops);
    detail::parallel_for(cfg.n_drops, opt.parallel, [&](int d) {
        std::uint64_t seed = drop_seed(cfg.master_seed, axis_index, d);
        if (!opt.paired)
            seed = derive_seed({seed, 0x5A, std::uint64_t(opt.variant_index)});
        try {
            const DropResult r = run_drop(cfg, seed);
            slots[d] = DropRecord{d, r.seed, r.report.sum_rate, r.report.adjusted_sum_rate, r.redraws,
                                  r.inside.clus.clusters};
        } catch (const DropRejected &) {
        }
    });

    PointResult p;
    p.axis_value = axis_value;
    for (int d = 0; d < cfg.n_drops; ++d) {
        if (!slots[d]) {
            ++p.rejected;
            continue;
        }
        p.redraws += slots[d]->redraws;
        p.records.push_back(std::move(*slots[d]));
    }
    p.drops = static_cast<int>(p.records.size());
    if (p.rejected * 10 > cfg.n_drops)
        throw DropRejected("run_point: more than 10% of drops were rejected as singular");
    const auto raw = p.sum_rates();
    const auto adj = p.adjusted_rates();
    p.raw = sample_stats(raw);
    p.adjusted = sample_stats(adj);
    return p;
}

// Runs every sweep point of `cfg` (or its single operating point without an axis).
inline SweepResult run_sweep(const ScenarioConfig &cfg, const RunOptions &opt = {})
{
    SweepResult s;
    s.master_seed = cfg.master_seed;
    s.axis = cfg.sweep_axis.empty() ? "none" : cfg.sweep_axis;
    if (cfg.sweep_axis.empty()) {
        s.config = cfg;
        s.points.push_back(run_point(cfg, 0, 0.0, opt));
    } else {
        for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
            const ScenarioConfig pc = with_axis_value(cfg, cfg.sweep_axis, cfg.sweep_values[i]);
            if (i == 0)
                s.config = pc;
            s.points.push_back(run_point(pc, i, cfg.sweep_values[i], opt));
        }
    }
    s.variant = variant_label(s.config);
    return s;
}

// Runs the same sweep for several schemes. With pairing, drop d of point a sees the
// same deployment and fading in every scheme.
inline std::vector<SweepResult> run_compare(const ScenarioConfig &cfg, const std::vector<std::string> &variants,
                                            RunOptions opt = {})
{
    if (variants.empty())
        throw ConfigError("variants", "compare needs at least one variant");
    std::vector<SweepResult> out;
    for (std::size_t v = 0; v < variants.size(); ++v) {
        const Variant var = parse_variant(variants[v]);
        opt.variant_index = static_cast<int>(v);
        SweepResult s = run_sweep(apply_variant(cfg, var), opt);
        s.variant = var.label;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace cransim

#endif
