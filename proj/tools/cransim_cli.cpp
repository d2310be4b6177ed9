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

// Command-line front end: run | sweep | compare.

#include <cransim.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Common
{
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> drops;
    int parallel = 1;
    bool paired = false;
};

void add_common(CLI::App *cmd, Common &c)
{
    cmd->add_option("--config", c.config, "Scenario config file (flat key: value)")->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "Output directory");
    cmd->add_option("--seed", c.seed, "Master seed override");
    cmd->add_option("--drops", c.drops, "Monte-Carlo drops per point")->check(CLI::PositiveNumber);
    cmd->add_option("--parallel", c.parallel, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--paired", c.paired, "Share drop seeds across compared schemes");
}

cransim::ScenarioConfig load(const Common &c)
{
    auto cfg = c.config.empty() ? cransim::parse_config("") : cransim::load_config(c.config);
    if (c.seed)
        cfg.master_seed = *c.seed;
    if (c.drops)
        cfg.n_drops = *c.drops;
    if (c.paired)
        cfg.paired = true;
    return cransim::resolve(cfg);
}

void report(const std::vector<cransim::SweepResult> &results)
{
    for (const auto &s : results)
        for (const auto &p : s.points)
            std::cout << s.variant << "  " << s.axis << "=" << cransim::fmt_num(p.axis_value)
                      << "  mean=" << cransim::fmt_num(p.raw.mean) << "  adjusted=" << cransim::fmt_num(p.adjusted.mean)
                      << "  se=" << cransim::fmt_num(p.raw.std_error) << "  drops=" << p.drops
                      << "  rejected=" << p.rejected << '\n';
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Monte-Carlo downlink simulator for clustered cloud-RAN antenna domains"};
    app.require_subcommand(1);

    Common run_opt, sweep_opt, cmp_opt;
    bool dump_channels = false;
    std::vector<std::string> variants;

    auto *run = app.add_subcommand("run", "Simulate the configured operating point");
    add_common(run, run_opt);
    run->add_flag("--dump-channels", dump_channels, "Write channels.jsonl with H and H_cross per drop");

    auto *sweep = app.add_subcommand("sweep", "Sweep the axis named by sweep_axis/sweep_values");
    add_common(sweep, sweep_opt);

    auto *cmp = app.add_subcommand("compare", "Run several schemes on the same sweep");
    add_common(cmp, cmp_opt);
    cmp->add_option("--variants", variants, "Schemes, e.g. GC-ZFBF LC8-ZFBF NC-ZFBF/noext")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto cfg = load(run_opt);
            cfg.sweep_axis.clear();
            cfg.sweep_values.clear();
            const cransim::RunOptions ro{run_opt.parallel, cfg.paired};
            const auto res = cransim::run_sweep(cfg, ro);
            cransim::emit({res}, run_opt.out);
            cransim::write_drops_csv(res, run_opt.out);
            if (dump_channels) {
                std::ofstream f(std::filesystem::path(run_opt.out) / "channels.jsonl");
                for (const auto &r : res.points.front().records) {
                    cransim::DropOptions dopt;
                    dopt.keep_channels = true;
                    const auto d = cransim::run_drop(cfg, r.seed, dopt);
                    f << cransim::channel_record(r.index, r.seed, *d.channels).dump() << '\n';
                }
            }
            report({res});
        } else if (sweep->parsed()) {
            auto cfg = load(sweep_opt);
            if (cfg.sweep_axis.empty())
                throw cransim::ConfigError("sweep_axis", "the sweep verb needs sweep_axis and sweep_values");
            const auto res = cransim::run_sweep(cfg, {sweep_opt.parallel, cfg.paired});
            cransim::emit({res}, sweep_opt.out);
            report({res});
        } else if (cmp->parsed()) {
            auto cfg = load(cmp_opt);
            if (variants.empty())
                variants = cfg.variants;
            const auto res = cransim::run_compare(cfg, variants, {cmp_opt.parallel, cfg.paired});
            cransim::emit(res, cmp_opt.out);
            report(res);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
