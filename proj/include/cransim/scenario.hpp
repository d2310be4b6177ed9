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

#ifndef CRANSIM_SCENARIO_HPP
#define CRANSIM_SCENARIO_HPP

#include "config.hpp"
#include "linalg.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace cransim {

struct Point
{
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point &) const = default;
};

inline double distance(const Point &a, const Point &b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Node positions of one drop. The AD occupies [0, side]^2; external nodes live in
// the ring [-side, 2 side]^2 minus the AD.
struct Deployment
{
    std::vector<Point> rrh_pos;
    std::vector<Point> user_pos;
    std::vector<Point> out_rrh_pos;
    std::vector<Point> out_user_pos;

    RMatrix d_rrh_user;         // N x K
    RMatrix d_out_rrh_user;     // N_out x K
    RMatrix d_out_rrh_out_user; // N_out x K_out
    RMatrix d_rrh_rrh;          // N x N
    RMatrix d_user_user;        // K x K
    RMatrix d_out_rrh_out_rrh;  // N_out x N_out
    RMatrix d_out_user_out_user; // K_out x K_out

    double d_min_rrh = std::numeric_limits<double>::infinity();
    double d_min_user = std::numeric_limits<double>::infinity();
    double d_min_out_rrh = std::numeric_limits<double>::infinity();
    double d_min_out_user = std::numeric_limits<double>::infinity();

    bool operator==(const Deployment &o) const
    {
        return rrh_pos == o.rrh_pos && user_pos == o.user_pos && out_rrh_pos == o.out_rrh_pos &&
               out_user_pos == o.out_user_pos && d_rrh_user == o.d_rrh_user && d_out_rrh_user == o.d_out_rrh_user &&
               d_out_rrh_out_user == o.d_out_rrh_out_user && d_rrh_rrh == o.d_rrh_rrh &&
               d_user_user == o.d_user_user && d_out_rrh_out_rrh == o.d_out_rrh_out_rrh &&
               d_out_user_out_user == o.d_out_user_out_user;
    }
};

inline bool inside_ad(const Point &p, double side) { return p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side; }

inline bool inside_ring(const Point &p, double side)
{
    const bool in_super = p.x >= -side && p.x <= 2.0 * side && p.y >= -side && p.y <= 2.0 * side;
    const bool in_core = p.x > 0.0 && p.x < side && p.y > 0.0 && p.y < side;
    return in_super && !in_core;
}

inline RMatrix cross_distances(const std::vector<Point> &a, const std::vector<Point> &b)
{
    RMatrix d(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            d(i, j) = distance(a[i], b[j]);
    return d;
}

// Smallest off-diagonal entry of a square distance matrix; +inf below two points.
inline double min_pairwise(const RMatrix &d)
{
    double m = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = i + 1; j < d.cols(); ++j)
            m = std::min(m, d(i, j));
    return m;
}

namespace detail {

constexpr double kMinLinkDistance = 1.0; // keeps 36.3 + 37.6 log10(d) >= 36.3 dB

// Draws `count` points with `draw`, redrawing any point that coincides with an
// earlier one of the same set or sits closer than 1 m to a node in `keep_away`.
template <typename Draw>
std::vector<Point> draw_points(std::size_t count, Draw &&draw, const std::vector<Point> &keep_away)
{
    std::vector<Point> pts;
    pts.reserve(count);
    while (pts.size() < count) {
        const Point p = draw();
        bool ok = true;
        for (const auto &q : keep_away)
            if (distance(p, q) < kMinLinkDistance) {
                ok = false;
                break;
            }
        for (const auto &q : pts)
            if (ok && distance(p, q) == 0.0)
                ok = false;
        if (ok)
            pts.push_back(p);
    }
    return pts;
}

} // namespace detail

// Random deployment for one drop. In-AD nodes and external nodes come from separate
// RNG streams, so the in-AD part does not depend on the external tier settings.
inline Deployment drop_deployment(const ScenarioConfig &cfg, std::uint64_t seed)
{
    const double side = cfg.side_m;
    Deployment dep;

    std::mt19937_64 rng_in(derive_seed({seed, 0x10}));
    std::uniform_real_distribution<double> u_in(0.0, side);
    auto draw_in = [&] { double x = u_in(rng_in); return Point{x, u_in(rng_in)}; };
    dep.rrh_pos = detail::draw_points(cfg.n_rrh, draw_in, {});
    dep.user_pos = detail::draw_points(cfg.n_users, draw_in, dep.rrh_pos);

    std::mt19937_64 rng_out(derive_seed({seed, 0x20}));
    std::uniform_real_distribution<double> u_out(-side, 2.0 * side);
    auto draw_ring = [&] {
        for (;;) {
            double x = u_out(rng_out);
            Point p{x, u_out(rng_out)};
            if (inside_ring(p, side))
                return p;
        }
    };
    dep.out_rrh_pos = detail::draw_points(cfg.ext_rrhs(), draw_ring, dep.user_pos);
    dep.out_user_pos = detail::draw_points(cfg.ext_users(), draw_ring, dep.out_rrh_pos);

    dep.d_rrh_user = cross_distances(dep.rrh_pos, dep.user_pos);
    dep.d_out_rrh_user = cross_distances(dep.out_rrh_pos, dep.user_pos);
    dep.d_out_rrh_out_user = cross_distances(dep.out_rrh_pos, dep.out_user_pos);
    dep.d_rrh_rrh = cross_distances(dep.rrh_pos, dep.rrh_pos);
    dep.d_user_user = cross_distances(dep.user_pos, dep.user_pos);
    dep.d_out_rrh_out_rrh = cross_distances(dep.out_rrh_pos, dep.out_rrh_pos);
    dep.d_out_user_out_user = cross_distances(dep.out_user_pos, dep.out_user_pos);

    dep.d_min_rrh = min_pairwise(dep.d_rrh_rrh);
    dep.d_min_user = min_pairwise(dep.d_user_user);
    dep.d_min_out_rrh = min_pairwise(dep.d_out_rrh_out_rrh);
    dep.d_min_out_user = min_pairwise(dep.d_out_user_out_user);
    return dep;
}

} // namespace cransim

#endif
