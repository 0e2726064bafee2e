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
#include "irsim/scenario.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <unistd.h>

using namespace irsim;

namespace
{
    doctest::Approx Approx(double v) { return doctest::Approx(v).scale(0.0); }

    // Default scenario with a reduced board and a short sweep
    const char *small_config = R"({
        "irs": {"rows": 21, "cols": 32},
        "sweep": {"t_start_s": -30, "t_end_s": 30, "step_s": 3}
    })";

    Error error_of(auto &&fn)
    {
        try
        {
            fn();
        }
        catch (const Error &e)
        {
            return e;
        }
        FAIL("no irsim::Error thrown");
        return Error(Errc::io, "");
    }

    std::vector<std::string> split(const std::string &line, char sep = ',')
    {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, sep))
            out.push_back(cell);
        return out;
    }

    double parse_double(const std::string &s)
    {
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        double v = 0.0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        REQUIRE(r.ec == std::errc{});
        REQUIRE(r.ptr == s.data() + s.size());
        return v;
    }

    struct CliResult
    {
        int code;
        std::string out, err;
    };

    CliResult cli(std::vector<std::string> args)
    {
        args.insert(args.begin(), "irsim");
        std::vector<const char *> argv;
        for (auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = run_cli(int(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    std::filesystem::path temp_path(const std::string &name)
    {
        return std::filesystem::temp_directory_path() / ("irsim_test_" + std::to_string(::getpid()) + "_" + name);
    }
}

TEST_SUITE("scenario")
{
    TEST_CASE("defaults")
    {
        ScenarioConfig cfg = load_config("");
        CHECK(cfg.carrier_frequency_hz == 2e9);
        CHECK(cfg.tx_position_m == Point3{0, -100, 1000});
        CHECK(cfg.orbit.altitude_m == 1500e3);
        CHECK(cfg.orbit.plane_offset_d_m == 1000.0);
        CHECK(cfg.orbit.min_elevation_deg == 10.0);
        CHECK(cfg.sweep.steps() == 1051);
        CHECK(cfg.sweep.time(1050) == 525.0);
        REQUIRE(cfg.variants.size() == 6);
        const char *names[] = {"no_irs", "isotropic", "planar", "planar_tilt45", "diffuse", "specular"};
        for (int i = 0; i < 6; ++i)
            CHECK(cfg.variants[std::size_t(i)].name == names[i]);
        CHECK_FALSE(cfg.variants[0].irs_enabled);
        CHECK(cfg.variants[3].irs.uptilt_deg == 45.0);
        CHECK(cfg.variants[4].strategy == StrategyKind::diffuse);
        CHECK(cfg.variants[5].strategy == StrategyKind::zero_phase);
        CHECK(load_config("  \n\t ").variants.size() == 6);
    }

    TEST_CASE("default grids")
    {
        ScenarioConfig cfg = load_config("");
        const double lambda = cfg.wavelength();
        IrsLayout planar = resolve_layout(cfg.variants[2].irs, lambda);
        CHECK(planar.cols == 610);
        CHECK(planar.rows == 407);
        CHECK(planar.dx == Approx(lambda / 5).epsilon(1e-15));
        IrsLayout iso = resolve_layout(cfg.variants[1].irs, lambda);
        CHECK(iso.cols == 433);
        CHECK(iso.rows == 288);
        CHECK(iso.dx == Approx(lambda / (2 * std::sqrt(std::numbers::pi))).epsilon(1e-15));

        Scene s = derive_scene(cfg, cfg.variants[2]);
        CHECK(s.element_count() == 248270);
        CHECK(derive_scene(cfg, cfg.variants[1]).element_count() == 124704);
        CHECK(derive_scene(cfg, cfg.variants[0]).element_count() == 0);
        Vec3 n = derive_scene(cfg, cfg.variants[3]).params().irs->pose.normal();
        CHECK(n.y == Approx(std::sqrt(0.5)).epsilon(1e-15));
    }

    TEST_CASE("overrides")
    {
        ScenarioConfig cfg = load_config(R"({"irs": {"uptilt_deg": 45}})");
        CHECK(cfg.irs.uptilt_deg == 45.0);
        CHECK_FALSE(cfg.irs.rows.has_value());
        CHECK(cfg.orbit.altitude_m == 1500e3);
        CHECK(cfg.carrier_frequency_hz == 2e9);

        cfg = load_config(R"({"variants": [
            {"name": "a"},
            {"name": "b", "strategy": "explicit-k", "k_offset": 2, "irs": {"rows": 3}},
            {"name": "c", "strategy": "custom", "phases_rad": [0, 1, 2, 3], "irs": {"rows": 2, "cols": 2}},
            {"name": "d", "irs_enabled": false}
        ]})");
        REQUIRE(cfg.variants.size() == 4);
        CHECK(cfg.variants[0].strategy == StrategyKind::pareto_optimal);
        CHECK(cfg.variants[1].k_offset == 2);
        CHECK(cfg.variants[1].irs.rows == 3);
        CHECK(resolve_layout(cfg.variants[1].irs, cfg.wavelength()).cols == 610);
        CHECK(make_strategy(cfg.variants[2]).table().size() == 4);
        CHECK(derive_scene(cfg, cfg.variants[2]).element_count() == 4);
    }

    TEST_CASE("config errors")
    {
        Error e = error_of([] { load_config(R"({"irs": {"rows": 0}})"); });
        CHECK(e.code() == Errc::config_invalid);
        CHECK(std::string(e.what()).find("irs.rows") != std::string::npos);

        e = error_of([] { load_config(R"({"orbit": {"altitude_km": 1500}})"); });
        CHECK(e.code() == Errc::config_unknown_key);
        CHECK(std::string(e.what()).find("orbit.altitude_km") != std::string::npos);

        e = error_of([] { load_config("{\"irs\": {\n \"rows\": }"); });
        CHECK(e.code() == Errc::config_parse);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);

        CHECK(error_of([] { load_config(R"({"carrier_frequency_hz": "2GHz"})"); }).code() == Errc::config_invalid);
        CHECK(error_of([] { load_config(R"({"irs": {"uptilt_deg": 120}})"); }).code() == Errc::config_invalid);
        CHECK(error_of([] { load_config(R"({"variants": [{"name": "x"}, {"name": "x"}]})"); }).code() == Errc::config_invalid);
        CHECK(error_of([] { load_config(R"({"variants": [{"name": "x", "strategy": "greedy"}]})"); }).code() == Errc::config_invalid);
        CHECK(error_of([] { load_config(R"({"sweep": {"t_start_s": 5, "t_end_s": 1}})"); }).code() == Errc::config_invalid);
        CHECK(error_of([] { load_config("[1, 2]"); }).code() == Errc::config_invalid);

        ScenarioConfig cfg = load_config(R"({"variants": [
            {"name": "c", "strategy": "custom", "phases_rad": [0, 1, 2], "irs": {"rows": 2, "cols": 2}},
            {"name": "d", "irs_enabled": false, "irs": {"rows": 2}}
        ]})");
        CHECK(error_of([&] { derive_scene(cfg, cfg.variants[0]); }).code() == Errc::config_invalid);
        CHECK(error_of([&] { derive_scene(cfg, cfg.variants[1]); }).code() == Errc::config_invalid);

        e = error_of([] { load_config_file("/nonexistent/irsim.json"); });
        CHECK(e.code() == Errc::io);
        CHECK(std::string(e.what()).find("/nonexistent/irsim.json") != std::string::npos);
    }

    TEST_CASE("sweep metrics and invariants")
    {
        ScenarioConfig cfg = load_config(small_config);
        SweepResult r = run_sweep(cfg);
        REQUIRE(r.records.size() == 21);
        REQUIRE(r.variant_names.size() == 6);
        for (const auto &rec : r.records)
        {
            REQUIRE(rec.variants.size() == 6);
            const auto &none = rec.variants[0];
            const auto &planar = rec.variants[2];
            CHECK(none.irs_gain_db == 0.0);
            CHECK(none.delay_spread_s == 0.0);
            CHECK(none.doppler_hz == 0.0);
            CHECK(none.irs_path_ratio == 0.0);
            CHECK(planar.irs_gain_db >= 0.0);
            CHECK(planar.received_power_w >= rec.variants[4].received_power_w);
            CHECK(planar.received_power_w >= rec.variants[5].received_power_w);
            CHECK(planar.delay_spread_periods == Approx(planar.delay_spread_s * 2e9).epsilon(1e-12));
            CHECK(planar.doppler_hz <= 1e-9);
            CHECK(rec.variants[4].doppler_hz > 0.0);
            CHECK(planar.channel_gain_db == Approx(10 * std::log10(planar.received_power_w)).epsilon(1e-12));
            CHECK(rec.elevation_deg > 80.0);
        }
        CHECK(r.records[10].t_s == 0.0);
        CHECK(r.records[10].elevation_deg == Approx(90.0).epsilon(1e-6));
    }

    TEST_CASE("sweeps are deterministic across thread counts")
    {
        ScenarioConfig cfg = load_config(small_config);
        std::ostringstream a, b, c;
        write_csv(run_sweep(cfg, RunOptions{1}), a);
        write_csv(run_sweep(cfg, RunOptions{3}), b);
        write_csv(run_sweep(cfg, RunOptions{8}), c);
        CHECK(a.str() == b.str());
        CHECK(a.str() == c.str());
    }

    TEST_CASE("no pass")
    {
        ScenarioConfig cfg = load_config(R"({"orbit": {"plane_offset_d_m": 5000000}, "irs": {"rows": 2, "cols": 2}})");
        CHECK(error_of([&] { run_sweep(cfg); }).code() == Errc::no_pass);
    }

    TEST_CASE("CSV schema and round trip")
    {
        CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
        CHECK(format_number(0.5) == "0.5");

        ScenarioConfig cfg = load_config(small_config);
        SweepResult r = run_sweep(cfg);
        std::ostringstream os;
        write_csv(r, os);
        std::istringstream is(os.str());
        std::string line;
        std::vector<std::string> lines;
        while (std::getline(is, line))
            lines.push_back(line);
        REQUIRE(lines.size() == r.records.size() + 1);

        auto header = split(lines[0]);
        REQUIRE(header.size() == 2 + 4 * r.variant_names.size());
        CHECK(header[0] == "t_s");
        CHECK(header[1] == "elevation_deg");
        CHECK(header[2] == "no_irs_gain_db");
        CHECK(header[3] == "no_irs_irs_gain_db");
        CHECK(header[4] == "no_irs_delay_spread_s");
        CHECK(header[5] == "no_irs_doppler_hz");
        CHECK(header.back() == "specular_doppler_hz");

        for (std::size_t i = 0; i < r.records.size(); ++i)
        {
            auto cells = split(lines[i + 1]);
            REQUIRE(cells.size() == header.size());
            const auto &rec = r.records[i];
            auto close = [](double parsed, double v) { return parsed == v || std::abs(parsed - v) <= 1e-10 * std::abs(v); };
            CHECK(close(parse_double(cells[0]), rec.t_s));
            CHECK(close(parse_double(cells[1]), rec.elevation_deg));
            for (std::size_t v = 0; v < rec.variants.size(); ++v)
            {
                CHECK(close(parse_double(cells[2 + 4 * v]), rec.variants[v].channel_gain_db));
                CHECK(close(parse_double(cells[3 + 4 * v]), rec.variants[v].irs_gain_db));
                CHECK(close(parse_double(cells[4 + 4 * v]), rec.variants[v].delay_spread_s));
                CHECK(close(parse_double(cells[5 + 4 * v]), rec.variants[v].doppler_hz));
            }
        }

        SweepResult empty;
        CHECK(error_of([&] { write_csv(empty, os); }).code() == Errc::invalid_argument);
        CHECK(error_of([&] { write_csv(r, std::filesystem::path("/nonexistent/dir/out.csv")); }).code() == Errc::io);
    }

    TEST_CASE("pass summary")
    {
        PassSummary s = pass_summary(load_config(""));
        CHECK(s.window.t_start == Approx(-523.98).epsilon(1e-4));
        CHECK(s.window.t_end == Approx(523.98).epsilon(1e-4));
        CHECK(s.max_elevation_deg == Approx(90.0).epsilon(1e-6));
        CHECK(std::abs(s.t_max_elevation_s) <= 1e-3);
    }
}

TEST_SUITE("cli")
{
    TEST_CASE("usage errors")
    {
        auto r = cli({});
        CHECK(r.code == 2);
        CHECK(r.err.find("simulate") != std::string::npos);
        r = cli({"simulate"});
        CHECK(r.code == 2);
        CHECK(r.err.find("--out") != std::string::npos);
        r = cli({"frobnicate"});
        CHECK(r.code == 2);
    }

    TEST_CASE("missing config file")
    {
        auto r = cli({"pass-window", "--config", "/nonexistent/scenario.json"});
        CHECK(r.code != 0);
        CHECK(r.err.find("/nonexistent/scenario.json") != std::string::npos);
        CHECK(r.err.find("[io]") != std::string::npos);
    }

    TEST_CASE("invalid config file")
    {
        auto path = temp_path("bad.json");
        std::ofstream(path) << R"({"irs": {"rows": -4}})";
        auto r = cli({"snapshot", "--config", path.string()});
        CHECK(r.code == 1);
        CHECK(r.err.find("irs.rows") != std::string::npos);
        std::filesystem::remove(path);
    }

    TEST_CASE("pass-window")
    {
        auto r = cli({"pass-window"});
        REQUIRE(r.code == 0);
        std::istringstream is(r.out);
        std::string key;
        double v;
        is >> key >> v;
        CHECK(key == "t_start_s");
        CHECK(v == Approx(-523.98).epsilon(1e-4));
        is >> key >> v;
        CHECK(key == "t_end_s");
        CHECK(v == Approx(523.98).epsilon(1e-4));
    }

    TEST_CASE("snapshot")
    {
        auto r = cli({"snapshot", "--t", "0"});
        REQUIRE(r.code == 0);
        auto pos = r.out.find("\nno_irs,");
        REQUIRE(pos != std::string::npos);
        auto cells = split(r.out.substr(pos + 1, r.out.find('\n', pos + 1) - pos - 1));
        CHECK(parse_double(cells[1]) == Approx(-162.0).epsilon(1e-3));
    }

    TEST_CASE("simulate")
    {
        auto cfg = temp_path("small.json");
        auto out = temp_path("out.csv");
        std::ofstream(cfg) << small_config;
        auto r = cli({"simulate", "--config", cfg.string(), "--out", out.string(), "--threads", "2"});
        REQUIRE(r.code == 0);
        std::ifstream in(out);
        std::string line;
        int lines = 0;
        while (std::getline(in, line))
            ++lines;
        CHECK(lines == 22);
        std::filesystem::remove(cfg);
        std::filesystem::remove(out);
    }
}
