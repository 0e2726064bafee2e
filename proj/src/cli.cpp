// SPDX-License-Identifier: Apache-2.0
//
// irsim - continuous-time propagation simulator for IRS-assisted links
// Copyright (C) 2026 The irsim authors
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

#include "irsim/cli.hpp"
#include "irsim/error.hpp"
#include "irsim/kernels.hpp"
#include "irsim/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ostream>

namespace irsim
{
    namespace
    {
        ScenarioConfig config_from(const std::string &path)
        {
            return path.empty() ? load_config("") : load_config_file(path);
        }
    }

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"irsim - IRS-assisted LEO link simulator"};
        app.name("irsim");
        app.require_subcommand(1);

        std::string config_path, out_path;
        unsigned threads = 0;
        double t = 0.0;

        auto *simulate = app.add_subcommand("simulate", "Sweep the pass and write per-variant metrics as CSV");
        simulate->add_option("--config", config_path, "JSON scenario file (defaults when omitted)");
        simulate->add_option("--out", out_path, "Output CSV path")->required();
        simulate->add_option("--threads", threads, "Worker threads, 0 = all cores");

        auto *pass = app.add_subcommand("pass-window", "Print the visibility window and peak elevation");
        pass->add_option("--config", config_path, "JSON scenario file (defaults when omitted)");

        auto *snap = app.add_subcommand("snapshot", "Print per-variant gains and spreads at one instant");
        snap->add_option("--config", config_path, "JSON scenario file (defaults when omitted)");
        snap->add_option("--t", t, "Time relative to closest approach [s]");
        snap->add_option("--threads", threads, "Accepted for symmetry with simulate; single instant runs on one thread");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return 0;
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what() << "\n\n"
                << app.help();
            return 2;
        }

        try
        {
            const ScenarioConfig cfg = config_from(config_path);

            if (*simulate)
            {
                const auto start = std::chrono::steady_clock::now();
                const SweepResult result = run_sweep(cfg, RunOptions{threads});
                write_csv(result, std::filesystem::path(out_path));
                const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
                out << "wrote " << result.records.size() << " records x " << result.variant_names.size() << " variants to "
                    << out_path << " in " << took.count() << " s (" << kernels::to_string(kernels::active_backend()) << " kernels)\n";
            }
            else if (*pass)
            {
                const PassSummary s = pass_summary(cfg);
                out << "t_start_s " << format_number(s.window.t_start) << '\n'
                    << "t_end_s " << format_number(s.window.t_end) << '\n'
                    << "max_elevation_deg " << format_number(s.max_elevation_deg) << '\n'
                    << "t_max_elevation_s " << format_number(s.t_max_elevation_s) << '\n';
            }
            else if (*snap)
            {
                const PreparedScenario prepared(cfg);
                const SweepRecord rec = prepared.evaluate(t);
                out << "t_s " << format_number(rec.t_s) << '\n'
                    << "elevation_deg " << format_number(rec.elevation_deg) << '\n'
                    << "variant,gain_db,irs_gain_db,delay_spread_s,delay_spread_periods,doppler_hz,irs_path_ratio\n";
                for (std::size_t v = 0; v < rec.variants.size(); ++v)
                {
                    const VariantMetrics &m = rec.variants[v];
                    out << cfg.variants[v].name << ',' << format_number(m.channel_gain_db) << ',' << format_number(m.irs_gain_db) << ','
                        << format_number(m.delay_spread_s) << ',' << format_number(m.delay_spread_periods) << ','
                        << format_number(m.doppler_hz) << ',' << format_number(m.irs_path_ratio) << '\n';
                }
            }
        }
        catch (const Error &e)
        {
            err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
            return 1;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return 1;
        }
        return 0;
    }
}
