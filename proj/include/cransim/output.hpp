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

#ifndef CRANSIM_OUTPUT_HPP
#define CRANSIM_OUTPUT_HPP

#include "config.hpp"
#include "metrics.hpp"
#include "simulation.hpp"
#include "sweep.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cransim {

class OutputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline std::string fmt_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline nlohmann::ordered_json config_to_json(const ScenarioConfig &c)
{
    nlohmann::ordered_json j;
    j["n_rrh"] = c.n_rrh;
    j["m_ant"] = c.m_ant;
    j["n_users"] = c.n_users;
    j["users_per_rrh"] = c.served_per_rrh();
    j["side_m"] = c.side_m;
    j["alpha"] = c.alpha;
    j["shadow_sigma_db"] = c.shadow_sigma_db;
    j["rician_k"] = c.rician_k;
    j["rho_t"] = c.rho_t;
    j["rho_r"] = c.rho_r;
    j["rho_t_prime"] = c.inter_rrh_corr();
    j["n_clusters"] = c.clusters();
    j["cluster_size"] = c.rrhs_per_cluster();
    j["coordination"] = to_string(c.coordination);
    j["precoder"] = to_string(c.precoder);
    j["p_rrh_dbm"] = c.p_rrh_dbm;
    j["noise_dbm"] = c.noise_dbm;
    j["external_interference"] = c.external_interference;
    j["n_out"] = c.ext_rrhs();
    j["m_out"] = c.ext_ant();
    j["k_out"] = c.ext_users();
    j["pf_hz"] = c.pf_hz;
    j["w_sym"] = c.w_sym;
    j["n_drops"] = c.n_drops;
    j["master_seed"] = c.master_seed;
    j["paired"] = c.paired;
    j["sweep_axis"] = c.sweep_axis;
    j["sweep_values"] = c.sweep_values;
    j["variants"] = c.variants;
    j["wmmse_max_iter"] = c.wmmse_max_iter;
    j["wmmse_tol"] = c.wmmse_tol;
    return j;
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path &p)
{
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw OutputError("cannot open '" + p.string() + "' for writing");
    return out;
}

inline void close_out(std::ofstream &out, const std::filesystem::path &p)
{
    out.close();
    if (!out)
        throw OutputError("failed writing '" + p.string() + "'");
}

inline std::string file_label(const std::string &variant)
{
    std::string s;
    for (char c : variant)
        s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-') ? c : '_';
    return s;
}

constexpr const char *kPlotScript = R"PY(#!/usr/bin/env python3
"""Plots sweep.csv (ergodic sum-rate per scheme over the swept axis) and the ECDF files."""
import csv
import glob
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "sweep.csv"))))
axis = rows[0]["axis"]
variants = sorted(set(r["variant"] for r in rows))

for column, suffix in (("mean_sum_rate", "raw"), ("mean_adjusted_sum_rate", "adjusted")):
    fig, ax = plt.subplots()
    for v in variants:
        pts = [r for r in rows if r["variant"] == v]
        x = [float(r["axis_value"]) for r in pts]
        y = [float(r[column]) for r in pts]
        err = [2.0 * float(r["std_error"]) for r in pts]
        ax.errorbar(x, y, yerr=err, marker="o", capsize=3, label=v)
    ax.set_xlabel(axis)
    ax.set_ylabel("ergodic sum-rate [bit/s/Hz]")
    ax.grid(True)
    ax.legend()
    fig.savefig(os.path.join(here, "sweep_%s.png" % suffix), dpi=150)

files = sorted(glob.glob(os.path.join(here, "ecdf_*.csv")))
if files:
    fig, ax = plt.subplots()
    for f in files:
        data = list(csv.DictReader(open(f)))
        ax.step([float(r["sum_rate"]) for r in data], [float(r["probability"]) for r in data],
                where="post", label=os.path.basename(f)[5:-4])
    ax.set_xlabel("sum-rate [bit/s/Hz]")
    ax.set_ylabel("ECDF")
    ax.grid(True)
    ax.legend(fontsize="small")
    fig.savefig(os.path.join(here, "ecdf.png"), dpi=150)
)PY";

} // namespace detail

struct EmitOptions
{
    bool ecdf = true;
};

// Writes sweep.csv, one ecdf_<variant>_<point>.csv per point (a single scheme
// drops the variant part), run.json and plot_results.py into `out_dir`.
inline std::vector<std::filesystem::path> emit(const std::vector<SweepResult> &results,
                                               const std::filesystem::path &out_dir, const EmitOptions &opt = {})
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw OutputError("cannot create '" + out_dir.string() + "': " + ec.message());
    std::vector<fs::path> written;

    const fs::path csv_path = out_dir / "sweep.csv";
    auto csv = detail::open_out(csv_path);
    csv << "variant,axis,axis_value,mean_sum_rate,mean_adjusted_sum_rate,std_error,adjusted_std_error,drops,"
           "rejected,redraws\n";
    for (const auto &s : results)
        for (const auto &p : s.points)
            csv << s.variant << ',' << s.axis << ',' << fmt_num(p.axis_value) << ',' << fmt_num(p.raw.mean) << ','
                << fmt_num(p.adjusted.mean) << ',' << fmt_num(p.raw.std_error) << ','
                << fmt_num(p.adjusted.std_error) << ',' << p.drops << ',' << p.rejected << ',' << p.redraws << '\n';
    detail::close_out(csv, csv_path);
    written.push_back(csv_path);

    if (opt.ecdf) {
        for (const auto &s : results)
            for (std::size_t i = 0; i < s.points.size(); ++i) {
                const auto &p = s.points[i];
                if (p.records.empty())
                    continue;
                std::string name = "ecdf_";
                if (results.size() > 1)
                    name += detail::file_label(s.variant) + "_";
                name += std::to_string(i) + ".csv";
                const fs::path path = out_dir / name;
                auto f = detail::open_out(path);
                f << "sum_rate,probability\n";
                const auto raw = p.sum_rates();
                for (const auto &[v, prob] : ecdf(raw))
                    f << fmt_num(v) << ',' << fmt_num(prob) << '\n';
                detail::close_out(f, path);
                written.push_back(path);
            }
    }

    nlohmann::ordered_json run;
    run["version"] = results.empty() ? std::string(kVersionTag) : results.front().version;
    run["master_seed"] = results.empty() ? 0 : results.front().master_seed;
    for (const auto &s : results) {
        nlohmann::ordered_json v;
        v["variant"] = s.variant;
        v["axis"] = s.axis;
        std::vector<double> values;
        for (const auto &p : s.points)
            values.push_back(p.axis_value);
        v["axis_values"] = values;
        v["config"] = config_to_json(s.config);
        run["runs"].push_back(v);
    }
    const fs::path json_path = out_dir / "run.json";
    auto jf = detail::open_out(json_path);
    jf << run.dump(2) << '\n';
    detail::close_out(jf, json_path);
    written.push_back(json_path);

    const fs::path plot_path = out_dir / "plot_results.py";
    auto pf = detail::open_out(plot_path);
    pf << detail::kPlotScript;
    detail::close_out(pf, plot_path);
    written.push_back(plot_path);
    return written;
}

inline std::filesystem::path write_drops_csv(const SweepResult &s, const std::filesystem::path &out_dir)
{
    const auto path = out_dir / "drops.csv";
    auto f = detail::open_out(path);
    f << "point,drop,seed,sum_rate,adjusted_sum_rate,redraws,clusters\n";
    for (std::size_t i = 0; i < s.points.size(); ++i)
        for (const auto &r : s.points[i].records) {
            std::string cl;
            for (std::size_t c = 0; c < r.clusters.size(); ++c) {
                if (c)
                    cl += '|';
                for (std::size_t m = 0; m < r.clusters[c].size(); ++m)
                    cl += (m ? " " : "") + std::to_string(r.clusters[c][m]);
            }
            f << i << ',' << r.index << ',' << r.seed << ',' << fmt_num(r.sum_rate) << ','
              << fmt_num(r.adjusted_sum_rate) << ',' << r.redraws << ',' << cl << '\n';
        }
    detail::close_out(f, path);
    return path;
}

// One JSON record per line: channel matrices of a drop as [re, im] pairs, row-major,
// with their shapes and row/column meaning.
inline nlohmann::ordered_json channel_record(int drop, std::uint64_t seed, const ChannelSet &ch)
{
    auto mat = [](const CMatrix &m, const char *rows, const char *cols) {
        nlohmann::ordered_json j;
        j["rows"] = m.rows();
        j["cols"] = m.cols();
        j["row_index"] = rows;
        j["col_index"] = cols;
        nlohmann::json data = nlohmann::json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                data.push_back({m(r, c).real(), m(r, c).imag()});
        j["data"] = std::move(data);
        return j;
    };
    nlohmann::ordered_json j;
    j["drop"] = drop;
    j["seed"] = seed;
    j["h"] = mat(ch.h, "user", "rrh*m_ant+antenna");
    j["h_cross"] = mat(ch.h_cross, "user", "out_rrh*m_out+antenna");
    return j;
}

} // namespace cransim

#endif
