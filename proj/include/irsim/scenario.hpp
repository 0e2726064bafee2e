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

#ifndef IRSIM_SCENARIO_HPP
#define IRSIM_SCENARIO_HPP

#include "irsim/orbit.hpp"
#include "irsim/phase.hpp"
#include "irsim/propagation.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irsim
{
    enum class ElementPatternKind
    {
        planar,   // 4 pi dx dy cos(theta) / lambda^2, default grid 610 x 407 at lambda/5 pitch
        isotropic // unit gain on the front side, default grid 433 x 288 at lambda / (2 sqrt(pi)) pitch
    };

    struct IrsConfig
    {
        std::optional<int> rows;    // N; default depends on element_pattern
        std::optional<int> cols;    // M
        std::optional<double> dx_m; // default depends on element_pattern and wavelength
        std::optional<double> dy_m;
        double uptilt_deg = 0.0;
        ElementPatternKind element_pattern = ElementPatternKind::planar;
        double reflection_efficiency = 1.0;

        bool operator==(const IrsConfig &) const = default;
    };

    struct OrbitConfig
    {
        double altitude_m = 1500e3;
        double earth_radius_m = 6371e3;
        double irs_ground_elevation_m = 100.0;
        double plane_offset_d_m = 1000.0;
        double min_elevation_deg = 10.0;
        double kepler_mu_m3s2 = earth_gravitational_parameter;
    };

    struct SweepConfig
    {
        double t_start_s = -525.0;
        double t_end_s = 525.0;
        double step_s = 1.0;

        std::size_t steps() const;
        double time(std::size_t i) const { return t_start_s + double(i) * step_s; }
    };

    struct VariantConfig
    {
        std::string name;
        bool irs_enabled = true;
        StrategyKind strategy = StrategyKind::pareto_optimal;
        std::uint64_t seed = 1;            // diffuse
        std::int64_t k_offset = 0;         // explicit-k: k = ceil(x) + k_offset
        std::vector<double> phases_rad;    // custom
        IrsConfig irs;                     // global IRS block with per-variant overrides applied
        bool irs_overridden = false;
    };

    struct ScenarioConfig
    {
        double carrier_frequency_hz = 2e9;
        Point3 tx_position_m{0.0, -100.0, 1000.0};
        PatternKind tx_pattern = PatternKind::isotropic_full;
        PatternKind rx_pattern = PatternKind::isotropic_full;
        double tx_power_w = 1.0;
        IrsConfig irs;
        OrbitConfig orbit;
        SweepConfig sweep;
        std::vector<VariantConfig> variants;

        double wavelength() const { return speed_of_light / carrier_frequency_hz; }
    };

    // Parses a JSON document; absent keys take the default LEO scenario values
    ScenarioConfig load_config(std::string_view text);
    ScenarioConfig load_config_file(const std::filesystem::path &path);

    // The six comparison variants used when a document has no "variants" array
    std::vector<VariantConfig> default_variants(const IrsConfig &irs);

    // Resolved grid for an IRS block (pattern-dependent defaults filled in)
    IrsLayout resolve_layout(const IrsConfig &irs, double wavelength);

    std::shared_ptr<const CircularOrbit> make_orbit(const ScenarioConfig &cfg);
    PhaseStrategy make_strategy(const VariantConfig &variant);

    Scene derive_scene(const ScenarioConfig &cfg, const VariantConfig &variant);

    struct VariantMetrics
    {
        double received_power_w = 0.0;
        double channel_gain_db = 0.0;      // 10 log10(P_Rx / P_Tx)
        double irs_gain_db = 0.0;          // channel gain minus the direct-path-only gain
        double delay_spread_s = 0.0;
        double delay_spread_periods = 0.0; // delay_spread_s * f_c
        double doppler_hz = 0.0;
        double irs_path_ratio = 0.0;       // (sum A_mn)^2 / A_0^2
    };

    struct SweepRecord
    {
        double t_s = 0.0;
        double elevation_deg = 0.0;
        std::vector<VariantMetrics> variants; // config order
    };

    struct SweepResult
    {
        std::vector<std::string> variant_names;
        std::vector<SweepRecord> records;
    };

    struct RunOptions
    {
        unsigned threads = 0; // 0: hardware concurrency
    };

    // Scenes, strategies and orbit built once from a config; evaluation is thread-safe
    class PreparedScenario
    {
    public:
        explicit PreparedScenario(ScenarioConfig cfg);

        const ScenarioConfig &config() const { return cfg_; }
        const CircularOrbit &orbit() const { return *orbit_; }
        const Scene &baseline() const { return scenes_.front(); }
        const Scene &variant_scene(std::size_t v) const { return scenes_[group_of_[v]]; }

        // Scratch buffers reused across evaluate() calls; one per thread
        struct Workspace
        {
            std::vector<ChannelSnapshot> snapshots;
            std::vector<double> phases;
        };

        double elevation_deg(double t) const;
        SweepRecord evaluate(double t, Workspace &ws) const;
        SweepRecord evaluate(double t) const;

    private:
        ScenarioConfig cfg_;
        std::shared_ptr<const CircularOrbit> orbit_;
        std::vector<Scene> scenes_;            // [0]: direct path only, then one per distinct IRS geometry
        std::vector<IrsConfig> scene_keys_;
        std::vector<std::size_t> group_of_;    // variant -> scene
        std::vector<PhaseStrategy> strategies_;
        std::vector<std::vector<double>> frozen_phases_; // time-invariant strategies, empty otherwise
    };

    SweepResult run_sweep(const ScenarioConfig &cfg, const RunOptions &options = {});

    // CSV columns: t_s, elevation_deg, then per variant <name>_gain_db, <name>_irs_gain_db,
    // <name>_delay_spread_s, <name>_doppler_hz
    void write_csv(const SweepResult &result, std::ostream &out);
    void write_csv(const SweepResult &result, const std::filesystem::path &path);

    std::string format_number(double value);

    struct PassSummary
    {
        PassWindow window;
        double max_elevation_deg = 0.0;
        double t_max_elevation_s = 0.0;
    };

    PassSummary pass_summary(const ScenarioConfig &cfg);
}

#endif
