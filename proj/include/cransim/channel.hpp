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

#ifndef CRANSIM_CHANNEL_HPP
#define CRANSIM_CHANNEL_HPP

#include "config.hpp"
#include "linalg.hpp"
#include "scenario.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace cransim {

// Channel matrices of one drop, as linear amplitude gains.
//   h       K x (N M)          in-AD users from in-AD antennas
//   h_cross K x (N_out M_out)  in-AD users from external antennas
//   h_out   K_out x (N_out M_out) external users from external antennas
// The external matrices are empty when external interference is disabled.
struct ChannelSet
{
    CMatrix h;
    CMatrix h_cross;
    CMatrix h_out;
    RMatrix r_tx;
    RMatrix r_rx;
    RMatrix r_tx_out;
    RMatrix r_rx_out;
};

struct RicianParams
{
    double mu;
    double sigma;
};

// 3GPP LTE macro path loss in dB; `slope_db` is 10 * alpha.
inline double path_loss_db(double d_m, double slope_db = 37.6)
{
    if (!(d_m >= 1.0))
        throw std::domain_error("path_loss_db: distance must be >= 1 m");
    return 36.3 + slope_db * std::log10(d_m);
}

inline RicianParams rician_params(double k_factor)
{
    if (!(k_factor >= 0.0))
        throw std::invalid_argument("rician_params: Rician factor must be >= 0");
    if (std::isinf(k_factor))
        return {1.0, 0.0};
    return {std::sqrt(k_factor / (k_factor + 1.0)), std::sqrt(1.0 / (2.0 * k_factor + 2.0))};
}

// Raw (unrepaired) correlation matrices; the public builders below repair them.
namespace detail {

inline RMatrix tx_correlation_raw(const RMatrix &d_rrh, double d_min, int m, double rho, double rho_inter)
{
    const Eigen::Index n = d_rrh.rows();
    RMatrix r(n * m, n * m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double inter = i == j ? 0.0 : std::pow(rho_inter, std::ceil(d_rrh(i, j) / d_min));
            for (int p = 0; p < m; ++p)
                for (int q = 0; q < m; ++q)
                    r(i * m + p, j * m + q) = i == j ? std::pow(rho, std::abs(p - q)) : inter;
        }
    return r;
}

inline RMatrix rx_correlation_raw(const RMatrix &d_user, double d_min, double rho)
{
    const Eigen::Index k = d_user.rows();
    RMatrix r(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            r(i, j) = i == j ? 1.0 : std::pow(rho, std::ceil(d_user(i, j) / d_min));
    return r;
}

} // namespace detail

// Transmit correlation over `n` co-located M-antenna arrays: exponential model
// inside each array, rho'^ceil(d_ij / d_min) between arrays i and j. PSD-repaired.
inline RMatrix tx_correlation(const RMatrix &d_rrh, double d_min, int m, double rho, double rho_inter)
{
    return repair_psd(detail::tx_correlation_raw(d_rrh, d_min, m, rho, rho_inter));
}

// Receive correlation rho^ceil(d_ij / d_min) between users. PSD-repaired.
inline RMatrix rx_correlation(const RMatrix &d_user, double d_min, double rho)
{
    return repair_psd(detail::rx_correlation_raw(d_user, d_min, rho));
}

inline RMatrix build_tx_correlation(const Deployment &dep, const ScenarioConfig &cfg)
{
    return tx_correlation(dep.d_rrh_rrh, dep.d_min_rrh, cfg.m_ant, cfg.rho_t, cfg.inter_rrh_corr());
}

inline RMatrix build_rx_correlation(const Deployment &dep, const ScenarioConfig &cfg)
{
    return rx_correlation(dep.d_user_user, dep.d_min_user, cfg.rho_r);
}

namespace detail {

// One Kronecker-coloured, shadowed and path-attenuated link matrix.
// d is (transmitting nodes) x (users); result is users x (nodes * m).
inline CMatrix colored_link(const RMatrix &d, int m, const RMatrix &sqrt_rx, const RMatrix &sqrt_tx,
                            const ScenarioConfig &cfg, std::uint64_t seed)
{
    const Eigen::Index n = d.rows();
    const Eigen::Index k = d.cols();
    std::mt19937_64 rng(seed);
    const auto [mu, sigma] = rician_params(cfg.rician_k);

    CMatrix hw(k, n * m);
    if (sigma > 0.0) {
        std::normal_distribution<double> re(mu, sigma), im(0.0, sigma);
        for (Eigen::Index r = 0; r < k; ++r)
            for (Eigen::Index c = 0; c < n * m; ++c) {
                const double a = re(rng);
                hw(r, c) = cplx(a, im(rng));
            }
    } else {
        hw.setConstant(cplx(mu, 0.0));
    }
    // Real coloring matrices: colour real and imaginary parts separately.
    const RMatrix re_part = sqrt_rx * hw.real() * sqrt_tx;
    const RMatrix im_part = sqrt_rx * hw.imag() * sqrt_tx;
    CMatrix h(k, n * m);
    h.real() = re_part;
    h.imag() = im_part;

    std::normal_distribution<double> shadow(0.0, cfg.shadow_sigma_db > 0.0 ? cfg.shadow_sigma_db : 1.0);
    const double slope = 10.0 * cfg.alpha;
    for (Eigen::Index node = 0; node < n; ++node)
        for (Eigen::Index user = 0; user < k; ++user) {
            const double zeta_db = cfg.shadow_sigma_db > 0.0 ? shadow(rng) : 0.0;
            const double gain_db = zeta_db - path_loss_db(d(node, user), slope);
            const double amp = std::pow(10.0, gain_db / 20.0);
            h.block(user, node * m, 1, m) *= amp;
        }
    return h;
}

} // namespace detail

// Draws the channels of one drop. Each of the three link groups uses its own
// RNG stream, so in-AD channels are identical with external interference on or off.
inline ChannelSet synthesize(const Deployment &dep, const ScenarioConfig &cfg, std::uint64_t seed)
{
    ChannelSet ch;
    auto tx = repair_and_sqrt(
        detail::tx_correlation_raw(dep.d_rrh_rrh, dep.d_min_rrh, cfg.m_ant, cfg.rho_t, cfg.inter_rrh_corr()));
    auto rx = repair_and_sqrt(detail::rx_correlation_raw(dep.d_user_user, dep.d_min_user, cfg.rho_r));
    ch.r_tx = std::move(tx.repaired);
    ch.r_rx = std::move(rx.repaired);
    const RMatrix &sq_tx = tx.root;
    const RMatrix &sq_rx = rx.root;
    ch.h = detail::colored_link(dep.d_rrh_user, cfg.m_ant, sq_rx, sq_tx, cfg, derive_seed({seed, 0x30}));

    if (cfg.external_interference && cfg.ext_rrhs() > 0) {
        auto tx_out = repair_and_sqrt(detail::tx_correlation_raw(dep.d_out_rrh_out_rrh, dep.d_min_out_rrh,
                                                                 cfg.ext_ant(), cfg.rho_t, cfg.inter_rrh_corr()));
        auto rx_out =
            repair_and_sqrt(detail::rx_correlation_raw(dep.d_out_user_out_user, dep.d_min_out_user, cfg.rho_r));
        ch.r_tx_out = std::move(tx_out.repaired);
        ch.r_rx_out = std::move(rx_out.repaired);
        const RMatrix &sq_tx_out = tx_out.root;
        const RMatrix &sq_rx_out = rx_out.root;
        ch.h_cross = detail::colored_link(dep.d_out_rrh_user, cfg.ext_ant(), sq_rx, sq_tx_out, cfg,
                                          derive_seed({seed, 0x40}));
        ch.h_out = detail::colored_link(dep.d_out_rrh_out_user, cfg.ext_ant(), sq_rx_out, sq_tx_out, cfg,
                                        derive_seed({seed, 0x50}));
    }
    return ch;
}

} // namespace cransim

#endif
