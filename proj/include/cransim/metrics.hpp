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

#ifndef CRANSIM_METRICS_HPP
#define CRANSIM_METRICS_HPP

#include "channel.hpp"
#include "config.hpp"
#include "precoding.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cransim {

struct InterferenceSplit
{
    double intra = 0.0;    // from in-AD streams other than the user's own
    double external = 0.0; // from the external tier
    double noise = 0.0;
};

struct RateReport
{
    std::vector<double> sinr;
    std::vector<double> rate;
    std::vector<InterferenceSplit> interference_split;
    double sum_rate = 0.0;
    double adjusted_sum_rate = 0.0;
    double omega = 0.0;
};

class OverheadError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

struct SinrResult
{
    std::vector<double> sinr;
    std::vector<InterferenceSplit> split;
};

// Per-user SINR with intra-AD and external interference. Power is carried by the
// precoder columns. The external term is skipped when `external` is false or the
// external matrices are empty.
inline SinrResult sinr_all(const CMatrix &h, const CMatrix &w, const CMatrix &h_cross, const CMatrix &w_out,
                           double noise, bool external)
{
    if (h.cols() != w.rows() || h.rows() != w.cols())
        throw std::invalid_argument("sinr_all: H and W dimensions do not match");
    const bool use_ext = external && h_cross.size() > 0 && w_out.size() > 0;
    if (use_ext && (h_cross.cols() != w_out.rows() || h_cross.rows() != h.rows()))
        throw std::invalid_argument("sinr_all: H_cross and W_out dimensions do not match");

    const CMatrix hw = h * w;
    CMatrix ext;
    if (use_ext)
        ext = h_cross * w_out;

    SinrResult r;
    r.sinr.resize(h.rows());
    r.split.resize(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        const double sig = std::norm(hw(k, k));
        auto &sp = r.split[k];
        for (Eigen::Index j = 0; j < hw.cols(); ++j)
            if (j != k)
                sp.intra += std::norm(hw(k, j));
        sp.external = use_ext ? ext.row(k).squaredNorm() : 0.0;
        sp.noise = noise;
        r.sinr[k] = sig / (sp.intra + sp.external + sp.noise);
    }
    return r;
}

inline SinrResult sinr_all(const ChannelSet &ch, const PrecodeResult &pre, const ScenarioConfig &cfg)
{
    return sinr_all(ch.h, pre.w, ch.h_cross, pre.w_out, cfg.noise_w(), cfg.external_interference);
}

inline double sum_rate(std::span<const double> sinr)
{
    double s = 0.0;
    for (double g : sinr) {
        if (!(g >= 0.0))
            throw std::invalid_argument("sum_rate: SINR must be non-negative");
        s += std::log2(1.0 + g);
    }
    return s;
}

// Rate discounted by the piloting overhead Omega = K * PF out of W symbols/s.
inline double adjusted_sum_rate(double raw, int n_users, double pf_hz, double w_sym)
{
    const double omega = static_cast<double>(n_users) * pf_hz;
    if (!(omega < w_sym))
        throw OverheadError("adjusted_sum_rate: piloting overhead K*PF exceeds the symbol budget W");
    return (w_sym - omega) / w_sym * raw;
}

inline double adjusted_sum_rate(double raw, const ScenarioConfig &cfg)
{
    return adjusted_sum_rate(raw, cfg.n_users, cfg.pf_hz, cfg.w_sym);
}

inline RateReport rate_report(const SinrResult &s, const ScenarioConfig &cfg)
{
    RateReport r;
    r.sinr = s.sinr;
    r.interference_split = s.split;
    r.rate.reserve(s.sinr.size());
    for (double g : s.sinr)
        r.rate.push_back(std::log2(1.0 + g));
    r.sum_rate = sum_rate(r.sinr);
    r.omega = cfg.n_users * cfg.pf_hz;
    r.adjusted_sum_rate = adjusted_sum_rate(r.sum_rate, cfg);
    return r;
}

// Empirical CDF: sorted values paired with i/n.
inline std::vector<std::pair<double, double>> ecdf(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("ecdf: empty input");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(v.size());
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.emplace_back(v[i], static_cast<double>(i + 1) / n);
    return out;
}

struct SampleStats
{
    double mean = 0.0;
    double std_dev = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

inline SampleStats sample_stats(std::span<const double> v)
{
    SampleStats s;
    s.count = v.size();
    if (v.empty())
        return s;
    double sum = 0.0;
    for (double x : v)
        sum += x;
    s.mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v)
            ss += (x - s.mean) * (x - s.mean);
        s.std_dev = std::sqrt(ss / static_cast<double>(v.size() - 1));
        s.std_error = s.std_dev / std::sqrt(static_cast<double>(v.size()));
    }
    return s;
}

} // namespace cransim

#endif
