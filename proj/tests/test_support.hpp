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
#ifndef CRANSIM_TEST_SUPPORT_HPP
#define CRANSIM_TEST_SUPPORT_HPP

#include <cransim/linalg.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef CRANSIM_FIXTURE_DIR
#error "CRANSIM_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace cransim::test {

inline const nlohmann::json &oracle()
{
    static const nlohmann::json data = [] {
        std::ifstream in(std::string(CRANSIM_FIXTURE_DIR) + "/oracle.json");
        if (!in)
            throw std::runtime_error("cannot open oracle.json");
        return nlohmann::json::parse(in);
    }();
    return data;
}

inline std::uint64_t seed(std::uint64_t i) { return derive_seed({0x7E57, i}); }

inline double mean(const std::vector<double> &v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

// Largest vertical gap between the empirical CDF of `v` and U(lo, hi).
inline double ks_uniform(std::vector<double> v, double lo, double hi)
{
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = (v[i] - lo) / (hi - lo);
        d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
    }
    return d;
}

// Magnitude of the centred complex correlation coefficient.
inline double complex_correlation(const std::vector<cplx> &a, const std::vector<cplx> &b)
{
    const double n = static_cast<double>(a.size());
    cplx ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    cplx cov = 0.0;
    double va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * std::conj(b[i] - mb);
        va += std::norm(a[i] - ma);
        vb += std::norm(b[i] - mb);
    }
    return std::abs(cov) / std::sqrt(va * vb);
}

} // namespace cransim::test

#endif
