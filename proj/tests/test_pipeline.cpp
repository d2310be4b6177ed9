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
#include "test_support.hpp"

#include <cransim/metrics.hpp>
#include <cransim/output.hpp>
#include <cransim/simulation.hpp>
#include <cransim/sweep.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace cransim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t line_count(const fs::path &p)
{
    const std::string s = slurp(p);
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

fs::path scratch_dir(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / ("cransim_test_" + name);
    fs::remove_all(dir);
    return dir;
}

} // namespace

// ---------------------------------------------------------------------------
// SINR and rates

TEST(Sinr, ScalarLink)
{
    CMatrix h(1, 1), w(1, 1);
    h << 1.0;
    w << std::sqrt(4.0);
    const auto s = sinr_all(h, w, {}, {}, 0.5, true);
    EXPECT_DOUBLE_EQ(s.sinr[0], 8.0);
    EXPECT_DOUBLE_EQ(s.split[0].intra, 0.0);
    EXPECT_DOUBLE_EQ(s.split[0].external, 0.0);
    EXPECT_DOUBLE_EQ(s.split[0].noise, 0.5);
}

TEST(Sinr, SplitsInterferenceBySource)
{
    CMatrix h(2, 2), w(2, 2), hc(2, 1), wo(1, 1);
    h << 1.0, 0.5, 0.25, 2.0;
    w = CMatrix::Identity(2, 2);
    hc << 0.1, 0.2;
    wo << 1.0;
    const auto s = sinr_all(h, w, hc, wo, 0.01, true);
    EXPECT_DOUBLE_EQ(s.split[0].intra, 0.25);
    EXPECT_NEAR(s.split[0].external, 0.01, 1e-15);
    EXPECT_NEAR(s.sinr[1], 4.0 / (0.0625 + 0.04 + 0.01), 1e-12);
    EXPECT_THROW(sinr_all(h, CMatrix::Identity(3, 2), hc, wo, 0.01, true), std::invalid_argument);
}

TEST(Sinr, GlobalZeroForcingIsNoiseLimited)
{
    const auto cfg = parse_config("external_interference: false\n");
    const auto r = run_drop(cfg, test::seed(1), {false, true});
    const CMatrix hw = r.channels->h * r.precoders.w;
    for (Eigen::Index k = 0; k < hw.rows(); ++k)
        EXPECT_NEAR(r.report.sinr[k] / (std::norm(hw(k, k)) / cfg.noise_w()), 1.0, 1e-9);
}

TEST(Sinr, ExternalInterferenceOnlyLowersSinr)
{
    for (const char *scheme : {"GC-ZFBF", "LC4-ZFBF", "NC-CB"}) {
        const auto base = parse_config("");
        const auto on = run_drop(apply_variant(base, parse_variant(std::string(scheme) + "/ext")), test::seed(2));
        const auto off = run_drop(apply_variant(base, parse_variant(std::string(scheme) + "/noext")), test::seed(2));
        for (std::size_t k = 0; k < on.report.sinr.size(); ++k)
            EXPECT_LE(on.report.sinr[k], off.report.sinr[k]) << scheme << " user " << k;
    }
}

TEST(SumRate, Examples)
{
    const std::vector<double> zeros(5, 0.0), ones(48, 1.0), mixed{1.0, 3.0}, bad{1.0, -0.5};
    EXPECT_DOUBLE_EQ(sum_rate(zeros), 0.0);
    EXPECT_DOUBLE_EQ(sum_rate(mixed), test::oracle()["sum_rate_1_3"].get<double>());
    EXPECT_DOUBLE_EQ(sum_rate(ones), 48.0);
    EXPECT_THROW(sum_rate(bad), std::invalid_argument);
}

TEST(AdjustedRate, OverheadLaw)
{
    EXPECT_DOUBLE_EQ(adjusted_sum_rate(87.5, 48, 0.0, 14000.0), 87.5);
    EXPECT_NEAR(adjusted_sum_rate(100.0, 48, 100.0, 14000.0), test::oracle()["adjusted_k48_pf100"].get<double>(),
                1e-12);
    EXPECT_THROW(adjusted_sum_rate(10.0, 10, 1400.0, 14000.0), OverheadError);
    EXPECT_THROW(adjusted_sum_rate(10.0, 10, 1500.0, 14000.0), OverheadError);
}

TEST(AdjustedRate, MonotoneInPilotFrequency)
{
    double prev = std::numeric_limits<double>::infinity();
    for (double pf = 0.0; pf < 290.0; pf += 10.0) {
        const double v = adjusted_sum_rate(120.0, 48, pf, 14000.0);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(Ecdf, SmallExamples)
{
    const std::vector<double> one{5.0}, two{2.0, 1.0}, none;
    EXPECT_EQ(ecdf(one), (std::vector<std::pair<double, double>>{{5.0, 1.0}}));
    EXPECT_EQ(ecdf(two), (std::vector<std::pair<double, double>>{{1.0, 0.5}, {2.0, 1.0}}));
    EXPECT_THROW(ecdf(none), std::invalid_argument);
}

TEST(Ecdf, UniformSampleTracksIdentity)
{
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(10000);
    for (auto &x : v)
        x = u(rng);
    double dev = 0.0, prev = 0.0;
    for (const auto &[x, p] : ecdf(v)) {
        dev = std::max({dev, std::abs(p - x), std::abs(prev - x)});
        prev = p;
    }
    EXPECT_LT(dev, 0.03);
}

TEST(Stats, MeanAndStandardError)
{
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto s = sample_stats(v);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.std_dev, std::sqrt(5.0 / 3.0), 1e-15);
    EXPECT_NEAR(s.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_EQ(s.count, 4u);
}

// ---------------------------------------------------------------------------
// Drop harness

TEST(Harness, SingleUserZeroForcingIsMatchedFilter)
{
    const auto cfg = parse_config("n_rrh: 1\nm_ant: 2\nn_users: 1\nexternal_interference: false\n");
    const auto r = run_drop(cfg, test::seed(3), {false, true});
    const double expected = cfg.p_rrh_w() * r.channels->h.row(0).squaredNorm() / cfg.noise_w();
    EXPECT_NEAR(r.report.sinr[0] / expected, 1.0, 1e-12);
}

TEST(Harness, SameSeedGivesIdenticalReport)
{
    for (const char *scheme : {"GC-ZFBF", "LC4-ZFBF", "NC-CB"}) {
        const auto cfg = apply_variant(parse_config(""), parse_variant(scheme));
        const auto a = run_drop(cfg, 77), b = run_drop(cfg, 77);
        EXPECT_EQ(a.report.sinr, b.report.sinr) << scheme;
        EXPECT_EQ(a.report.sum_rate, b.report.sum_rate) << scheme;
        EXPECT_EQ(a.inside.clus.clusters, b.inside.clus.clusters) << scheme;
    }
}

TEST(Harness, SingleRrhRegimesCoincide)
{
    for (const char *prec : {"ZFBF", "CB"}) {
        const std::string common =
            std::string("n_rrh: 1\nn_users: 2\nexternal_interference: false\nprecoder: ") + prec + "\n";
        const auto gc = run_drop(parse_config(common + "coordination: GC\n"), 5);
        const auto nc = run_drop(parse_config(common + "coordination: NC\n"), 5);
        EXPECT_EQ(gc.report.sum_rate, nc.report.sum_rate) << prec;
    }
}

TEST(Harness, ReportCarriesOverhead)
{
    const auto cfg = parse_config("pf_hz: 100\nexternal_interference: false\n");
    const auto r = run_drop(cfg, 8);
    EXPECT_DOUBLE_EQ(r.report.omega, 4800.0);
    EXPECT_NEAR(r.report.adjusted_sum_rate, r.report.sum_rate * 9200.0 / 14000.0, 1e-12 * r.report.sum_rate);
    double total = 0.0;
    for (double x : r.report.rate)
        total += x;
    EXPECT_NEAR(total, r.report.sum_rate, 1e-9);
}

TEST(Harness, ParallelismDoesNotChangeResults)
{
    const auto cfg = parse_config("coordination: LC\ncluster_size: 4\nn_drops: 6\n");
    const auto serial = run_point(cfg, 0, 0.0, {1, true, 0});
    const auto threaded = run_point(cfg, 0, 0.0, {3, true, 0});
    ASSERT_EQ(serial.records.size(), threaded.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        EXPECT_EQ(serial.records[i].seed, threaded.records[i].seed);
        EXPECT_EQ(serial.records[i].sum_rate, threaded.records[i].sum_rate);
        EXPECT_EQ(serial.records[i].clusters, threaded.records[i].clusters);
    }
    EXPECT_EQ(serial.raw.mean, threaded.raw.mean);
}

TEST(Harness, PairingSharesDropSeedsAcrossSchemes)
{
    const auto cfg = parse_config("n_drops: 3\n");
    const auto paired = run_compare(cfg, {"GC-ZFBF", "NC-ZFBF"}, {1, true, 0});
    const auto unpaired = run_compare(cfg, {"GC-ZFBF", "NC-ZFBF"}, {1, false, 0});
    for (int d = 0; d < 3; ++d) {
        EXPECT_EQ(paired[0].points[0].records[d].seed, paired[1].points[0].records[d].seed);
        EXPECT_NE(unpaired[0].points[0].records[d].seed, unpaired[1].points[0].records[d].seed);
    }
    EXPECT_EQ(paired[0].variant, "GC-ZFBF");
}

// ---------------------------------------------------------------------------
// Sweeps

TEST(Sweep, PowerSweepIsIncreasingWithoutExternalInterference)
{
    const auto cfg = parse_config("external_interference: false\nn_drops: 8\nsweep_axis: p_rrh_dbm\n"
                                  "sweep_values: [0, 10, 20, 30]\n");
    const auto s = run_sweep(cfg);
    ASSERT_EQ(s.points.size(), 4u);
    for (std::size_t i = 1; i < s.points.size(); ++i)
        EXPECT_GT(s.points[i].raw.mean, s.points[i - 1].raw.mean);
    EXPECT_EQ(s.axis, "p_rrh_dbm");
}

TEST(Sweep, ZeroPilotPointHasNoOverhead)
{
    const auto cfg = parse_config("external_interference: false\nn_drops: 4\nsweep_axis: pf_hz\n"
                                  "sweep_values: [0, 100, 200]\n");
    const auto s = run_sweep(cfg);
    EXPECT_EQ(s.points[0].adjusted.mean, s.points[0].raw.mean);
    EXPECT_LT(s.points[1].adjusted.mean, s.points[0].adjusted.mean);
    EXPECT_LT(s.points[2].adjusted.mean, s.points[1].adjusted.mean);
}

TEST(Sweep, MoreUsersRaiseCoordinatedBeamformingRate)
{
    const auto cfg = parse_config("precoder: CB\nm_ant: 8\nn_drops: 6\nsweep_axis: n_users\n"
                                  "sweep_values: [24, 48]\n");
    const auto s = run_sweep(cfg);
    EXPECT_GT(s.points[1].raw.mean, s.points[0].raw.mean);
}

// ---------------------------------------------------------------------------
// Output files

TEST(Emit, FileShapesAndReproducibility)
{
    const auto cfg = parse_config("external_interference: false\nn_drops: 5\nsweep_axis: p_rrh_dbm\n"
                                  "sweep_values: [0, 10, 20, 30]\n");
    const auto a = scratch_dir("emit_a"), b = scratch_dir("emit_b");
    emit({run_sweep(cfg)}, a);
    emit({run_sweep(cfg, {1, true, 0})}, b);

    EXPECT_EQ(line_count(a / "sweep.csv"), 5u);
    for (int i = 0; i < 4; ++i) {
        const auto name = "ecdf_" + std::to_string(i) + ".csv";
        EXPECT_EQ(line_count(a / name), 6u) << name;
        EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
    }
    EXPECT_EQ(slurp(a / "sweep.csv"), slurp(b / "sweep.csv"));
    EXPECT_EQ(slurp(a / "run.json"), slurp(b / "run.json"));
    EXPECT_TRUE(fs::exists(a / "plot_results.py"));

    const auto header = slurp(a / "sweep.csv").substr(0, slurp(a / "sweep.csv").find('\n'));
    EXPECT_EQ(header, "variant,axis,axis_value,mean_sum_rate,mean_adjusted_sum_rate,std_error,adjusted_std_error,"
                      "drops,rejected,redraws");
}

TEST(Emit, ProvenanceMirrorsConfigFields)
{
    const auto cfg = parse_config("n_drops: 2\nmaster_seed: 9\n");
    const auto dir = scratch_dir("emit_json");
    emit(run_compare(cfg, {"GC-ZFBF", "NC-ZFBF"}), dir);
    const auto run = nlohmann::json::parse(slurp(dir / "run.json"));
    EXPECT_EQ(run["master_seed"].get<std::uint64_t>(), 9u);
    ASSERT_EQ(run["runs"].size(), 2u);
    const auto &c = run["runs"][0]["config"];
    for (const char *key : {"n_rrh", "m_ant", "n_users", "users_per_rrh", "rho_t_prime", "p_rrh_dbm", "noise_dbm",
                            "n_out", "k_out", "pf_hz", "w_sym", "n_drops", "master_seed", "coordination"})
        EXPECT_TRUE(c.contains(key)) << key;
    EXPECT_EQ(c["n_rrh"].get<int>(), 24);
    EXPECT_TRUE(fs::exists(dir / "ecdf_GC-ZFBF_0.csv"));
    EXPECT_TRUE(fs::exists(dir / "ecdf_NC-ZFBF_0.csv"));
}

TEST(Emit, UnwritableDirectoryIsReported)
{
    const auto cfg = parse_config("n_drops: 1\nexternal_interference: false\n");
    const auto blocker = scratch_dir("emit_blocker");
    std::ofstream(blocker.string()) << "x";
    EXPECT_THROW(emit({run_sweep(cfg)}, blocker / "sub"), OutputError);
    fs::remove(blocker);
}
