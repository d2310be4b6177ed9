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

#ifndef CRANSIM_PRECODING_HPP
#define CRANSIM_PRECODING_HPP

#include "association.hpp"
#include "channel.hpp"
#include "clustering.hpp"
#include "config.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cransim {

class SingularChannelError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct WmmseDiagnostics
{
    int iterations = 0;
    double objective = 0.0;     // sum_k (w_k MSE_k - ln w_k) at the returned beamformers
    bool converged = false;
    std::vector<double> history; // objective before each beamformer update, then final
};

// Precoders of one drop with power embedded in the column scaling.
struct PrecodeResult
{
    CMatrix w;     // (N M) x K
    CMatrix w_out; // (N_out M_out) x K_out, empty without external interference
    std::vector<WmmseDiagnostics> scopes;     // CB only, one per coordination scope
    std::vector<WmmseDiagnostics> scopes_out; // CB only, external tier

    int iterations() const
    {
        int it = 0;
        for (const auto &d : scopes)
            it = std::max(it, d.iterations);
        return it;
    }
    double objective() const
    {
        double f = 0.0;
        for (const auto &d : scopes)
            f += d.objective;
        return f;
    }
    bool converged() const
    {
        return std::all_of(scopes.begin(), scopes.end(), [](const auto &d) { return d.converged; });
    }
};

struct WmmseOptions
{
    int max_iter = 100;
    double tol = 1e-5;          // relative objective change
    double power_tol = 1e-12;   // relative, for the multiplier bisection
};

// ---------------------------------------------------------------------------
// Zero-forcing

constexpr double kMaxGramCondition = 1e12;

// Joint ZF precoder for one cluster: columns of the right pseudo-inverse of h_c,
// normalised to unit norm and scaled to p_budget / K_c each.
// Rows of h_c are equilibrated first; this leaves the column directions unchanged
// and the conditioning check then measures geometry rather than path-loss spread.
inline CMatrix zfbf_cluster(const CMatrix &h_c, double p_budget)
{
    const Eigen::Index kc = h_c.rows();
    const Eigen::Index na = h_c.cols();
    if (kc == 0)
        return CMatrix(na, 0);
    if (kc > na)
        throw std::invalid_argument("zfbf_cluster: more users than antennas");

    CMatrix ht = h_c;
    for (Eigen::Index k = 0; k < kc; ++k) {
        const double nrm = ht.row(k).norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw SingularChannelError("zfbf_cluster: zero or non-finite channel row");
        ht.row(k) /= nrm;
    }

    const CMatrix gram = ht * ht.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
    if (es.info() != Eigen::Success)
        throw InternalError("zfbf_cluster: eigen-decomposition failed");
    const RVector &lam = es.eigenvalues();
    if (!(lam(0) > 0.0) || lam(kc - 1) / lam(0) > kMaxGramCondition)
        throw SingularChannelError("zfbf_cluster: singular channel (Gram condition number above 1e12)");

    const CMatrix gram_inv = es.eigenvectors() * lam.cwiseInverse().cast<cplx>().asDiagonal() *
                             es.eigenvectors().adjoint();
    CMatrix w = ht.adjoint() * gram_inv;
    const double scale = std::sqrt(p_budget / static_cast<double>(kc));
    for (Eigen::Index k = 0; k < kc; ++k)
        w.col(k) *= scale / w.col(k).norm();
    return w;
}

namespace detail {

inline std::vector<int> scope_users(const std::vector<int> &rrhs, const Association &assoc)
{
    std::vector<int> users;
    for (int r : rrhs)
        users.insert(users.end(), assoc.served[r].begin(), assoc.served[r].end());
    std::sort(users.begin(), users.end());
    return users;
}

inline std::vector<int> scope_antennas(const std::vector<int> &rrhs, int m_ant)
{
    std::vector<int> ant;
    ant.reserve(rrhs.size() * m_ant);
    for (int r : rrhs)
        for (int m = 0; m < m_ant; ++m)
            ant.push_back(r * m_ant + m);
    return ant;
}

inline CMatrix sub_matrix(const CMatrix &h, const std::vector<int> &rows, const std::vector<int> &cols)
{
    CMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            s(i, j) = h(rows[i], cols[j]);
    return s;
}

// Sum of log2(1 + SINR) for the users of an isolated scope, given its h * W.
inline double isolated_sum_rate(const CMatrix &hw, double noise)
{
    double rate = 0.0;
    for (Eigen::Index k = 0; k < hw.rows(); ++k) {
        const double sig = std::norm(hw(k, k));
        const double tot = hw.row(k).squaredNorm();
        rate += std::log2(1.0 + sig / (tot - sig + noise));
    }
    return rate;
}

} // namespace detail

// Per-cluster ZF over one tier. With `serve_all` (global coordination) the single
// cluster serves every user and no association is consulted.
inline CMatrix zfbf_tier(const CMatrix &h, int m_ant, const Clustering &clus, const Association &assoc,
                         double p_rrh, bool serve_all)
{
    const Eigen::Index k = h.rows();
    CMatrix w = CMatrix::Zero(h.cols(), k);
    for (const auto &cl : clus.clusters) {
        std::vector<int> users;
        if (serve_all) {
            for (int u = 0; u < k; ++u)
                users.push_back(u);
        } else {
            users = detail::scope_users(cl, assoc);
        }
        if (users.empty())
            continue;
        const auto ant = detail::scope_antennas(cl, m_ant);
        const CMatrix wc = zfbf_cluster(detail::sub_matrix(h, users, ant), static_cast<double>(cl.size()) * p_rrh);
        for (std::size_t j = 0; j < users.size(); ++j)
            for (std::size_t a = 0; a < ant.size(); ++a)
                w(ant[a], users[j]) = wc(a, j);
    }
    return w;
}

inline PrecodeResult zfbf_all(const ChannelSet &ch, const Clustering &clus, const Association &assoc,
                              const ScenarioConfig &cfg)
{
    PrecodeResult r;
    r.w = zfbf_tier(ch.h, cfg.m_ant, clus, assoc, cfg.p_rrh_w(), cfg.coordination == Coordination::GC);
    return r;
}

// ---------------------------------------------------------------------------
// Weighted-MMSE coordinated beamforming

struct ScopeBeamformers
{
    CMatrix w; // (B M) x K_s, column k supported on its owner's M antennas
    WmmseDiagnostics diag;
};

namespace detail {

// Minimises sum_k ||(A + mu I)^{-1} b_k||-type weighted MSE for one RRH subject to
// sum_k ||v_k||^2 <= p_max; returns the beamformers as columns.
inline CMatrix power_constrained_update(const CMatrix &a, const CMatrix &rhs, double p_max, double power_tol)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    if (es.info() != Eigen::Success)
        throw InternalError("wmmse: eigen-decomposition failed");
    const RVector &lam = es.eigenvalues();
    const CMatrix proj = es.eigenvectors().adjoint() * rhs;
    const RVector phi = proj.rowwise().squaredNorm();
    const double phi_sum = phi.sum();
    if (phi_sum == 0.0)
        return CMatrix::Zero(rhs.rows(), rhs.cols());

    const double tiny = 1e-12 * std::max(lam.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    auto power = [&](double mu) {
        double p = 0.0;
        for (Eigen::Index i = 0; i < lam.size(); ++i) {
            const double den = lam(i) + mu;
            if (mu == 0.0 && lam(i) <= tiny)
                continue; // null-space directions carry no right-hand side
            p += phi(i) / (den * den);
        }
        return p;
    };

    double mu = 0.0;
    if (power(0.0) > p_max) {
        double lo = 0.0;
        double hi = std::sqrt(phi_sum / p_max);
        if (power(hi) > p_max * (1.0 + 1e-12))
            throw InternalError("wmmse: multiplier bisection bracket failure");
        for (int it = 0; it < 200 && power(hi) < p_max * (1.0 - power_tol); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (power(mid) > p_max)
                lo = mid;
            else
                hi = mid;
        }
        mu = hi;
    }

    RVector inv(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        inv(i) = (mu == 0.0 && lam(i) <= tiny) ? 0.0 : 1.0 / (lam(i) + mu);
    return es.eigenvectors() * (inv.cast<cplx>().asDiagonal() * proj);
}

} // namespace detail

// WMMSE over one coordination scope (single-antenna users, per-RRH power limits).
//   h_scope  K_s x (B M)   channels of the scope's users from the scope's antennas
//   owner    K_s           local RRH index (0..B-1) serving each user
// Interference from outside the scope is not part of the optimisation.
inline ScopeBeamformers wmmse_scope(const CMatrix &h_scope, int m_ant, const std::vector<int> &owner, double p_rrh,
                                    double noise, int init_per_rrh, const WmmseOptions &opt = {})
{
    const Eigen::Index ks = h_scope.rows();
    const Eigen::Index n_ant = h_scope.cols();
    const int b = static_cast<int>(n_ant / m_ant);
    if (static_cast<Eigen::Index>(owner.size()) != ks)
        throw std::invalid_argument("wmmse_scope: owner size mismatch");

    ScopeBeamformers out;
    out.w = CMatrix::Zero(n_ant, ks);
    if (ks == 0) {
        out.diag.converged = true;
        return out;
    }

    // Noise-normalised channels keep every quantity near unit scale.
    const CMatrix hn = h_scope / std::sqrt(noise);
    std::vector<bool> active(ks);
    for (Eigen::Index k = 0; k < ks; ++k) {
        const auto own = h_scope.row(k).segment(owner[k] * m_ant, m_ant);
        active[k] = own.norm() >= 1e-15;
        if (active[k])
            out.w.block(owner[k] * m_ant, k, m_ant, 1) =
                std::sqrt(p_rrh / init_per_rrh) * own.adjoint() / own.norm();
    }

    CMatrix best_w = out.w;
    double best_f = std::numeric_limits<double>::infinity();
    RVector u_mag2(ks), weight(ks);
    CVector u(ks);
    double f_prev = std::numeric_limits<double>::quiet_NaN();

    for (int it = 0;; ++it) {
        const CMatrix s = hn * out.w;
        double f = 0.0;
        for (Eigen::Index k = 0; k < ks; ++k) {
            if (!active[k]) {
                u(k) = 0.0;
                weight(k) = 0.0;
                continue;
            }
            const double total = s.row(k).squaredNorm() + 1.0;
            u(k) = s(k, k) / total;
            const double mse = 1.0 - std::norm(s(k, k)) / total;
            weight(k) = 1.0 / mse;
            f += weight(k) * mse - std::log(weight(k));
        }
        out.diag.history.push_back(f);
        if (f < best_f) {
            best_f = f;
            best_w = out.w;
        }
        if (it > 0 && std::abs(f_prev - f) <= opt.tol * std::max(std::abs(f_prev), 1.0)) {
            out.diag.converged = true;
            break;
        }
        if (it == opt.max_iter)
            break;
        f_prev = f;

        CMatrix next = CMatrix::Zero(n_ant, ks);
        for (int r = 0; r < b; ++r) {
            CMatrix a = CMatrix::Zero(m_ant, m_ant);
            for (Eigen::Index j = 0; j < ks; ++j) {
                if (!active[j])
                    continue;
                const auto row = hn.row(j).segment(r * m_ant, m_ant);
                a.noalias() += (weight(j) * std::norm(u(j))) * (row.adjoint() * row);
            }
            std::vector<Eigen::Index> mine;
            for (Eigen::Index k = 0; k < ks; ++k)
                if (active[k] && owner[k] == r)
                    mine.push_back(k);
            if (mine.empty())
                continue;
            CMatrix rhs(m_ant, mine.size());
            for (std::size_t i = 0; i < mine.size(); ++i)
                rhs.col(i) = hn.row(mine[i]).segment(r * m_ant, m_ant).adjoint() * (u(mine[i]) * weight(mine[i]));
            const CMatrix v = detail::power_constrained_update(0.5 * (a + a.adjoint()), rhs, p_rrh, opt.power_tol);
            for (std::size_t i = 0; i < mine.size(); ++i)
                next.block(r * m_ant, mine[i], m_ant, 1) = v.col(i);
        }
        out.w = std::move(next);
        out.diag.iterations = it + 1;
    }

    out.w = best_w;
    out.diag.objective = best_f;
    return out;
}

inline ScopeBeamformers wmmse_cluster(const CMatrix &h, int m_ant, const std::vector<int> &rrhs,
                                      const Association &assoc, double p_rrh, double noise, int per_rrh,
                                      const WmmseOptions &opt, std::vector<int> *users_out = nullptr)
{
    const auto users = detail::scope_users(rrhs, assoc);
    const auto ant = detail::scope_antennas(rrhs, m_ant);
    std::vector<int> owner(users.size());
    for (std::size_t i = 0; i < users.size(); ++i) {
        const auto it = std::find(rrhs.begin(), rrhs.end(), assoc.owner[users[i]]);
        owner[i] = static_cast<int>(it - rrhs.begin());
    }
    if (users_out)
        *users_out = users;
    return wmmse_scope(detail::sub_matrix(h, users, ant), m_ant, owner, p_rrh, noise, per_rrh, opt);
}

// CB over one tier: one WMMSE run per cluster, scattered into the global precoder.
inline CMatrix wmmse_tier(const CMatrix &h, int m_ant, const Clustering &clus, const Association &assoc,
                          double p_rrh, double noise, int per_rrh, const WmmseOptions &opt,
                          std::vector<WmmseDiagnostics> &diags)
{
    CMatrix w = CMatrix::Zero(h.cols(), h.rows());
    for (const auto &cl : clus.clusters) {
        std::vector<int> users;
        auto res = wmmse_cluster(h, m_ant, cl, assoc, p_rrh, noise, per_rrh, opt, &users);
        const auto ant = detail::scope_antennas(cl, m_ant);
        for (std::size_t j = 0; j < users.size(); ++j)
            for (std::size_t a = 0; a < ant.size(); ++a)
                w(ant[a], users[j]) = res.w(a, j);
        diags.push_back(std::move(res.diag));
    }
    return w;
}

inline PrecodeResult wmmse_cb(const ChannelSet &ch, const Clustering &clus, const Association &assoc,
                              const ScenarioConfig &cfg, int max_iter, double tol)
{
    PrecodeResult r;
    WmmseOptions opt;
    opt.max_iter = max_iter;
    opt.tol = tol;
    r.w = wmmse_tier(ch.h, cfg.m_ant, clus, assoc, cfg.p_rrh_w(), cfg.noise_w(), cfg.served_per_rrh(), opt,
                     r.scopes);
    return r;
}

inline PrecodeResult wmmse_cb(const ChannelSet &ch, const Clustering &clus, const Association &assoc,
                              const ScenarioConfig &cfg)
{
    return wmmse_cb(ch, clus, assoc, cfg, cfg.wmmse_max_iter, cfg.wmmse_tol);
}

// ---------------------------------------------------------------------------
// Cluster scoring for greedy clustering: internal sum rate of the candidate set
// in isolation under the configured precoder.

struct IsolatedRateEvaluator
{
    const CMatrix &h;
    int m_ant;
    const Association &assoc;
    Precoder precoder;
    double p_rrh;
    double noise;
    int per_rrh;
    WmmseOptions opt;

    std::optional<double> operator()(const std::vector<int> &rrhs) const
    {
        const auto users = detail::scope_users(rrhs, assoc);
        if (users.empty())
            return 0.0;
        const auto ant = detail::scope_antennas(rrhs, m_ant);
        const CMatrix sub = detail::sub_matrix(h, users, ant);
        if (precoder == Precoder::ZFBF) {
            if (users.size() > ant.size())
                return std::nullopt;
            try {
                const CMatrix w = zfbf_cluster(sub, static_cast<double>(rrhs.size()) * p_rrh);
                return detail::isolated_sum_rate(sub * w, noise);
            } catch (const SingularChannelError &) {
                return std::nullopt;
            }
        }
        const auto res = wmmse_cluster(h, m_ant, rrhs, assoc, p_rrh, noise, per_rrh, opt);
        return detail::isolated_sum_rate(sub * res.w, noise);
    }
};

} // namespace cransim

#endif
