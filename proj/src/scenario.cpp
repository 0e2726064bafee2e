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

#include "irsim/scenario.hpp"
#include "irsim/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace irsim
{
    using nlohmann::json;

    namespace
    {
        constexpr double deg = std::numbers::pi / 180.0;

        [[noreturn]] void invalid(const std::string &path, const std::string &what)
        {
            throw Error(Errc::config_invalid, path + ": " + what);
        }

        void require(bool ok, const std::string &path, const std::string &what)
        {
            if (!ok)
                invalid(path, what);
        }

        void check_keys(const json &obj, const std::string &prefix, std::initializer_list<std::string_view> allowed)
        {
            if (!obj.is_object())
                invalid(prefix.empty() ? "<root>" : prefix, "expected an object");
            for (const auto &item : obj.items())
                if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
                    throw Error(Errc::config_unknown_key, "Unknown key '" + prefix + (prefix.empty() ? "" : ".") + item.key() + "'");
        }

        std::string join(const std::string &prefix, std::string_view key)
        {
            return prefix.empty() ? std::string(key) : prefix + "." + std::string(key);
        }

        double read_number(const json &obj, const std::string &prefix, const char *key, double fallback)
        {
            const auto it = obj.find(key);
            if (it == obj.end())
                return fallback;
            if (!it->is_number())
                invalid(join(prefix, key), "expected a number");
            const double v = it->get<double>();
            require(std::isfinite(v), join(prefix, key), "must be finite");
            return v;
        }

        std::optional<double> read_optional_number(const json &obj, const std::string &prefix, const char *key, std::optional<double> fallback)
        {
            if (!obj.contains(key))
                return fallback;
            return read_number(obj, prefix, key, 0.0);
        }

        std::optional<int> read_optional_int(const json &obj, const std::string &prefix, const char *key, std::optional<int> fallback)
        {
            const auto it = obj.find(key);
            if (it == obj.end())
                return fallback;
            if (!it->is_number_integer())
                invalid(join(prefix, key), "expected an integer");
            const auto v = it->get<std::int64_t>();
            require(v >= 1 && v <= 1'000'000, join(prefix, key), "must be within [1, 1000000]");
            return int(v);
        }

        bool read_bool(const json &obj, const std::string &prefix, const char *key, bool fallback)
        {
            const auto it = obj.find(key);
            if (it == obj.end())
                return fallback;
            if (!it->is_boolean())
                invalid(join(prefix, key), "expected true or false");
            return it->get<bool>();
        }

        std::string read_string(const json &obj, const std::string &prefix, const char *key, const std::string &fallback)
        {
            const auto it = obj.find(key);
            if (it == obj.end())
                return fallback;
            if (!it->is_string())
                invalid(join(prefix, key), "expected a string");
            return it->get<std::string>();
        }

        PatternKind parse_endpoint_pattern(const std::string &s, const std::string &path)
        {
            if (s == "isotropic-full" || s == "isotropic")
                return PatternKind::isotropic_full;
            if (s == "isotropic-hemisphere" || s == "hemisphere")
                return PatternKind::isotropic_hemisphere;
            invalid(path, "unknown pattern '" + s + "' (expected isotropic-full or isotropic-hemisphere)");
        }

        IrsConfig parse_irs(const json &obj, const std::string &prefix, IrsConfig irs)
        {
            check_keys(obj, prefix, {"rows", "cols", "dx_m", "dy_m", "uptilt_deg", "element_pattern", "reflection_efficiency"});
            irs.rows = read_optional_int(obj, prefix, "rows", irs.rows);
            irs.cols = read_optional_int(obj, prefix, "cols", irs.cols);
            irs.dx_m = read_optional_number(obj, prefix, "dx_m", irs.dx_m);
            irs.dy_m = read_optional_number(obj, prefix, "dy_m", irs.dy_m);
            irs.uptilt_deg = read_number(obj, prefix, "uptilt_deg", irs.uptilt_deg);
            irs.reflection_efficiency = read_number(obj, prefix, "reflection_efficiency", irs.reflection_efficiency);

            const std::string pattern = read_string(obj, prefix, "element_pattern",
                                                    irs.element_pattern == ElementPatternKind::planar ? "planar" : "isotropic");
            if (pattern == "planar")
                irs.element_pattern = ElementPatternKind::planar;
            else if (pattern == "isotropic")
                irs.element_pattern = ElementPatternKind::isotropic;
            else
                invalid(join(prefix, "element_pattern"), "expected planar or isotropic, got '" + pattern + "'");

            if (irs.dx_m)
                require(*irs.dx_m > 0.0, join(prefix, "dx_m"), "must be positive");
            if (irs.dy_m)
                require(*irs.dy_m > 0.0, join(prefix, "dy_m"), "must be positive");
            require(irs.uptilt_deg >= 0.0 && irs.uptilt_deg <= 90.0, join(prefix, "uptilt_deg"), "must be within [0, 90]");
            require(irs.reflection_efficiency >= 0.0 && irs.reflection_efficiency <= 1.0,
                    join(prefix, "reflection_efficiency"), "must be within [0, 1]");
            return irs;
        }

        StrategyKind parse_strategy(const std::string &s, const std::string &path)
        {
            if (s == "pareto" || s == "pareto-optimal")
                return StrategyKind::pareto_optimal;
            if (s == "zero-phase" || s == "specular")
                return StrategyKind::zero_phase;
            if (s == "diffuse")
                return StrategyKind::diffuse;
            if (s == "explicit-k")
                return StrategyKind::explicit_k;
            if (s == "custom")
                return StrategyKind::custom;
            invalid(path, "unknown strategy '" + s + "'");
        }

        bool valid_name(const std::string &name)
        {
            return !name.empty() && std::all_of(name.begin(), name.end(), [](char c)
                                                { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; });
        }

        VariantConfig parse_variant(const json &obj, const std::string &prefix, const IrsConfig &global)
        {
            check_keys(obj, prefix, {"name", "irs_enabled", "strategy", "seed", "k_offset", "phases_rad", "irs"});
            VariantConfig v;
            v.name = read_string(obj, prefix, "name", "");
            require(valid_name(v.name), join(prefix, "name"), "must be a non-empty identifier of [A-Za-z0-9_.-]");
            v.irs_enabled = read_bool(obj, prefix, "irs_enabled", true);
            v.strategy = parse_strategy(read_string(obj, prefix, "strategy", "pareto"), join(prefix, "strategy"));

            if (const auto it = obj.find("seed"); it != obj.end())
            {
                if (!it->is_number_unsigned())
                    invalid(join(prefix, "seed"), "expected a non-negative integer");
                v.seed = it->get<std::uint64_t>();
            }
            if (const auto it = obj.find("k_offset"); it != obj.end())
            {
                if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
                    invalid(join(prefix, "k_offset"), "expected a non-negative integer");
                v.k_offset = it->get<std::int64_t>();
            }
            if (const auto it = obj.find("phases_rad"); it != obj.end())
            {
                if (!it->is_array())
                    invalid(join(prefix, "phases_rad"), "expected an array of numbers");
                for (const auto &x : *it)
                {
                    if (!x.is_number() || !(x.get<double>() >= 0.0) || !std::isfinite(x.get<double>()))
                        invalid(join(prefix, "phases_rad"), "entries must be finite non-negative numbers");
                    v.phases_rad.push_back(x.get<double>());
                }
            }
            require(v.strategy != StrategyKind::custom || obj.contains("phases_rad"), join(prefix, "phases_rad"),
                    "required for the custom strategy");

            v.irs = global;
            if (const auto it = obj.find("irs"); it != obj.end())
            {
                v.irs = parse_irs(*it, join(prefix, "irs"), global);
                v.irs_overridden = true;
            }
            return v;
        }

        Point3 read_point(const json &obj, const std::string &prefix, const char *key, const Point3 &fallback)
        {
            const auto it = obj.find(key);
            if (it == obj.end())
                return fallback;
            if (!it->is_array() || it->size() != 3 || !std::all_of(it->begin(), it->end(), [](const json &x)
                                                                      { return x.is_number(); }))
                invalid(join(prefix, key), "expected [x, y, z]");
            Point3 p{(*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>()};
            require(p.finite(), join(prefix, key), "must be finite");
            return p;
        }

        GainPattern endpoint_pattern(PatternKind kind)
        {
            return kind == PatternKind::isotropic_hemisphere ? GainPattern::hemisphere() : GainPattern::isotropic();
        }

        Scene make_scene(const ScenarioConfig &cfg, const IrsConfig *irs, std::shared_ptr<const Trajectory> trajectory)
        {
            SceneParams p;
            p.tx_position = cfg.tx_position_m;
            p.tx_pattern = endpoint_pattern(cfg.tx_pattern);
            p.rx_pattern = endpoint_pattern(cfg.rx_pattern);
            p.rx_trajectory = std::move(trajectory);
            p.carrier_frequency = cfg.carrier_frequency_hz;
            p.tx_power = cfg.tx_power_w;
            if (irs)
            {
                IrsSurface surface;
                surface.layout = resolve_layout(*irs, cfg.wavelength());
                surface.pose = uptilt_pose(irs->uptilt_deg);
                surface.element_pattern = irs->element_pattern == ElementPatternKind::planar
                                              ? GainPattern::planar(surface.layout.dx, surface.layout.dy, cfg.wavelength())
                                              : GainPattern::hemisphere();
                surface.reflection_efficiency = irs->reflection_efficiency;
                p.irs = surface;
            }
            return Scene(std::move(p));
        }

        double to_db(double ratio) { return 10.0 * std::log10(ratio); }
    }

    std::size_t SweepConfig::steps() const
    {
        if (!(step_s > 0.0) || !(t_end_s > t_start_s))
            throw Error(Errc::config_invalid, "sweep: needs step_s > 0 and t_start_s < t_end_s");
        return std::size_t(std::floor((t_end_s - t_start_s) / step_s + 1e-9)) + 1;
    }

    std::vector<VariantConfig> default_variants(const IrsConfig &irs)
    {
        auto variant = [&](std::string name, bool enabled, StrategyKind kind)
        {
            VariantConfig v;
            v.name = std::move(name);
            v.irs_enabled = enabled;
            v.strategy = kind;
            v.irs = irs;
            return v;
        };

        std::vector<VariantConfig> out;
        out.push_back(variant("no_irs", false, StrategyKind::pareto_optimal));

        auto iso = variant("isotropic", true, StrategyKind::pareto_optimal);
        iso.irs.element_pattern = ElementPatternKind::isotropic;
        iso.irs_overridden = true;
        out.push_back(iso);

        out.push_back(variant("planar", true, StrategyKind::pareto_optimal));

        auto tilt = variant("planar_tilt45", true, StrategyKind::pareto_optimal);
        tilt.irs.uptilt_deg = 45.0;
        tilt.irs_overridden = true;
        out.push_back(tilt);

        out.push_back(variant("diffuse", true, StrategyKind::diffuse));
        out.push_back(variant("specular", true, StrategyKind::zero_phase));
        return out;
    }

    ScenarioConfig load_config(std::string_view text)
    {
        json doc;
        if (std::all_of(text.begin(), text.end(), [](char c)
                        { return std::isspace(static_cast<unsigned char>(c)); }))
            doc = json::object();
        else
        {
            try
            {
                doc = json::parse(text);
            }
            catch (const json::parse_error &e)
            {
                throw Error(Errc::config_parse, std::string("Malformed config: ") + e.what());
            }
        }

        check_keys(doc, "", {"carrier_frequency_hz", "tx_position_m", "tx_pattern", "rx_pattern", "tx_power_w", "irs", "orbit", "sweep", "variants"});

        ScenarioConfig cfg;
        cfg.carrier_frequency_hz = read_number(doc, "", "carrier_frequency_hz", cfg.carrier_frequency_hz);
        require(cfg.carrier_frequency_hz > 0.0, "carrier_frequency_hz", "must be positive");
        cfg.tx_position_m = read_point(doc, "", "tx_position_m", cfg.tx_position_m);
        cfg.tx_pattern = parse_endpoint_pattern(read_string(doc, "", "tx_pattern", "isotropic-full"), "tx_pattern");
        cfg.rx_pattern = parse_endpoint_pattern(read_string(doc, "", "rx_pattern", "isotropic-full"), "rx_pattern");
        cfg.tx_power_w = read_number(doc, "", "tx_power_w", cfg.tx_power_w);
        require(cfg.tx_power_w > 0.0, "tx_power_w", "must be positive");

        if (const auto it = doc.find("irs"); it != doc.end())
            cfg.irs = parse_irs(*it, "irs", cfg.irs);

        if (const auto it = doc.find("orbit"); it != doc.end())
        {
            const json &o = *it;
            check_keys(o, "orbit", {"altitude_m", "earth_radius_m", "irs_ground_elevation_m", "plane_offset_d_m", "min_elevation_deg", "kepler_mu_m3s2"});
            auto &orb = cfg.orbit;
            orb.altitude_m = read_number(o, "orbit", "altitude_m", orb.altitude_m);
            orb.earth_radius_m = read_number(o, "orbit", "earth_radius_m", orb.earth_radius_m);
            orb.irs_ground_elevation_m = read_number(o, "orbit", "irs_ground_elevation_m", orb.irs_ground_elevation_m);
            orb.plane_offset_d_m = read_number(o, "orbit", "plane_offset_d_m", orb.plane_offset_d_m);
            orb.min_elevation_deg = read_number(o, "orbit", "min_elevation_deg", orb.min_elevation_deg);
            orb.kepler_mu_m3s2 = read_number(o, "orbit", "kepler_mu_m3s2", orb.kepler_mu_m3s2);
        }
        require(cfg.orbit.altitude_m > 0.0, "orbit.altitude_m", "must be positive");
        require(cfg.orbit.earth_radius_m > 0.0, "orbit.earth_radius_m", "must be positive");
        require(cfg.orbit.irs_ground_elevation_m >= 0.0 && cfg.orbit.irs_ground_elevation_m < cfg.orbit.altitude_m,
                "orbit.irs_ground_elevation_m", "must be within [0, altitude_m)");
        require(cfg.orbit.min_elevation_deg >= 0.0 && cfg.orbit.min_elevation_deg < 90.0, "orbit.min_elevation_deg", "must be within [0, 90)");
        require(cfg.orbit.kepler_mu_m3s2 > 0.0, "orbit.kepler_mu_m3s2", "must be positive");

        if (const auto it = doc.find("sweep"); it != doc.end())
        {
            check_keys(*it, "sweep", {"t_start_s", "t_end_s", "step_s"});
            cfg.sweep.t_start_s = read_number(*it, "sweep", "t_start_s", cfg.sweep.t_start_s);
            cfg.sweep.t_end_s = read_number(*it, "sweep", "t_end_s", cfg.sweep.t_end_s);
            cfg.sweep.step_s = read_number(*it, "sweep", "step_s", cfg.sweep.step_s);
        }
        require(cfg.sweep.step_s > 0.0, "sweep.step_s", "must be positive");
        require(cfg.sweep.t_start_s < cfg.sweep.t_end_s, "sweep.t_start_s", "must be less than sweep.t_end_s");

        if (const auto it = doc.find("variants"); it != doc.end())
        {
            if (!it->is_array())
                invalid("variants", "expected an array");
            for (std::size_t i = 0; i < it->size(); ++i)
                cfg.variants.push_back(parse_variant((*it)[i], "variants[" + std::to_string(i) + "]", cfg.irs));
            require(!cfg.variants.empty(), "variants", "needs at least one variant");
        }
        else
            cfg.variants = default_variants(cfg.irs);

        std::set<std::string> names;
        for (std::size_t i = 0; i < cfg.variants.size(); ++i)
            require(names.insert(cfg.variants[i].name).second, "variants[" + std::to_string(i) + "].name",
                    "duplicate name '" + cfg.variants[i].name + "'");
        return cfg;
    }

    ScenarioConfig load_config_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error(Errc::io, "Cannot open config file '" + path.string() + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        try
        {
            return load_config(buf.str());
        }
        catch (const Error &e)
        {
            throw Error(e.code(), path.string() + ": " + e.what());
        }
    }

    IrsLayout resolve_layout(const IrsConfig &irs, double wavelength)
    {
        IrsLayout layout;
        if (irs.element_pattern == ElementPatternKind::planar)
        {
            layout.cols = irs.cols.value_or(610);
            layout.rows = irs.rows.value_or(407);
            layout.dx = irs.dx_m.value_or(wavelength / 5.0);
            layout.dy = irs.dy_m.value_or(wavelength / 5.0);
        }
        else
        {
            // square cell with the effective area lambda^2 / (4 pi) of a unit-gain element
            const double pitch = wavelength / (2.0 * std::sqrt(std::numbers::pi));
            layout.cols = irs.cols.value_or(433);
            layout.rows = irs.rows.value_or(288);
            layout.dx = irs.dx_m.value_or(pitch);
            layout.dy = irs.dy_m.value_or(pitch);
        }
        layout.validate();
        return layout;
    }

    std::shared_ptr<const CircularOrbit> make_orbit(const ScenarioConfig &cfg)
    {
        return std::make_shared<CircularOrbit>(orbit_from_scenario(cfg.orbit.altitude_m, EarthModel{cfg.orbit.earth_radius_m},
                                                                   cfg.orbit.irs_ground_elevation_m, cfg.orbit.plane_offset_d_m,
                                                                   cfg.orbit.kepler_mu_m3s2));
    }

    PhaseStrategy make_strategy(const VariantConfig &variant)
    {
        switch (variant.strategy)
        {
        case StrategyKind::pareto_optimal:
            return PhaseStrategy::pareto_optimal();
        case StrategyKind::zero_phase:
            return PhaseStrategy::zero_phase();
        case StrategyKind::diffuse:
            return PhaseStrategy::diffuse(variant.seed);
        case StrategyKind::explicit_k:
            return PhaseStrategy::explicit_k(KOffset{variant.k_offset});
        case StrategyKind::custom:
            return PhaseStrategy::custom(variant.phases_rad);
        }
        return PhaseStrategy::pareto_optimal();
    }

    namespace
    {
        void check_variant(const ScenarioConfig &cfg, const VariantConfig &v)
        {
            const std::string path = "variant '" + v.name + "'";
            if (!v.irs_enabled)
            {
                require(!v.irs_overridden, path, "has an irs block but irs_enabled is false");
                return;
            }
            if (v.strategy == StrategyKind::custom)
            {
                const IrsLayout layout = resolve_layout(v.irs, cfg.wavelength());
                require(v.phases_rad.size() == layout.size(), path,
                        "phases_rad has " + std::to_string(v.phases_rad.size()) + " entries but the " +
                            std::to_string(layout.cols) + " x " + std::to_string(layout.rows) + " grid has " + std::to_string(layout.size()));
            }
        }
    }

    Scene derive_scene(const ScenarioConfig &cfg, const VariantConfig &variant)
    {
        check_variant(cfg, variant);
        return make_scene(cfg, variant.irs_enabled ? &variant.irs : nullptr, make_orbit(cfg));
    }

    PreparedScenario::PreparedScenario(ScenarioConfig cfg) : cfg_(std::move(cfg)), orbit_(make_orbit(cfg_))
    {
        if (cfg_.variants.empty())
            throw Error(Errc::config_invalid, "variants: needs at least one variant");
        scenes_.push_back(make_scene(cfg_, nullptr, orbit_));
        scene_keys_.emplace_back();

        for (const VariantConfig &v : cfg_.variants)
        {
            check_variant(cfg_, v);
            strategies_.push_back(make_strategy(v));
            if (!v.irs_enabled)
            {
                group_of_.push_back(0);
                continue;
            }
            auto it = std::find(scene_keys_.begin() + 1, scene_keys_.end(), v.irs);
            if (it == scene_keys_.end())
            {
                scenes_.push_back(make_scene(cfg_, &v.irs, orbit_));
                scene_keys_.push_back(v.irs);
                group_of_.push_back(scenes_.size() - 1);
            }
            else
                group_of_.push_back(std::size_t(it - scene_keys_.begin()));
        }

        // Phases that do not depend on time are evaluated once
        for (std::size_t v = 0; v < cfg_.variants.size(); ++v)
        {
            const PhaseStrategy &s = strategies_[v];
            if (cfg_.variants[v].irs_enabled && !s.tracks_paths())
                frozen_phases_.push_back(irsim::evaluate(s, snapshot(scenes_[group_of_[v]], cfg_.sweep.t_start_s)));
            else
                frozen_phases_.emplace_back();
        }
    }

    double PreparedScenario::elevation_deg(double t) const
    {
        return elevation_angle(orbit_->center(), cfg_.tx_position_m, orbit_->position(t)) / deg;
    }

    SweepRecord PreparedScenario::evaluate(double t, Workspace &ws) const
    {
        SweepRecord rec;
        rec.t_s = t;
        rec.elevation_deg = elevation_deg(t);

        ws.snapshots.resize(scenes_.size());
        for (std::size_t g = 0; g < scenes_.size(); ++g)
            snapshot_into(scenes_[g], t, ws.snapshots[g]);

        const double p_tx = cfg_.tx_power_w;
        const double base_gain = to_db(received_power(ws.snapshots[0], {}, p_tx) / p_tx);

        for (std::size_t v = 0; v < cfg_.variants.size(); ++v)
        {
            const ChannelSnapshot &snap = ws.snapshots[group_of_[v]];
            std::span<const double> phases = frozen_phases_[v];
            if (strategies_[v].tracks_paths())
            {
                irsim::evaluate_into(strategies_[v], snap, ws.phases);
                phases = ws.phases;
            }
            if (snap.size() == 0)
                phases = {};

            VariantMetrics m;
            m.received_power_w = received_power(snap, phases, p_tx);
            if (!std::isfinite(m.received_power_w) || m.received_power_w < 0.0)
                throw Error(Errc::invariant_violation, "Non-finite received power for variant '" + cfg_.variants[v].name +
                                                           "' at t = " + std::to_string(t) + " s");
            m.channel_gain_db = to_db(m.received_power_w / p_tx);
            m.irs_gain_db = m.channel_gain_db - base_gain;
            m.delay_spread_s = delay_spread(snap, phases);
            m.delay_spread_periods = m.delay_spread_s * cfg_.carrier_frequency_hz;
            m.doppler_hz = doppler_spread(snap, strategies_[v]);
            const double irs_sum = kernels::amplitude_sum(snap.amplitude);
            m.irs_path_ratio = (irs_sum * irs_sum) / (snap.direct_amplitude * snap.direct_amplitude);
            rec.variants.push_back(m);
        }
        return rec;
    }

    SweepRecord PreparedScenario::evaluate(double t) const
    {
        Workspace ws;
        return evaluate(t, ws);
    }

    SweepResult run_sweep(const ScenarioConfig &cfg, const RunOptions &options)
    {
        const PreparedScenario prepared(cfg);
        // Fails with no_pass when the satellite never clears the elevation mask
        pass_window(prepared.orbit(), EarthModel{cfg.orbit.earth_radius_m}, cfg.tx_position_m, cfg.orbit.min_elevation_deg * deg);

        const std::size_t n = cfg.sweep.steps();
        SweepResult result;
        for (const auto &v : cfg.variants)
            result.variant_names.push_back(v.name);
        result.records.resize(n);

        unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = unsigned(std::min<std::size_t>(threads, n));

        std::atomic<std::size_t> next{0};
        std::mutex error_lock;
        std::exception_ptr error;
        std::size_t error_index = n;

        auto worker = [&]
        {
            PreparedScenario::Workspace ws;
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    result.records[i] = prepared.evaluate(cfg.sweep.time(i), ws);
                }
                catch (...)
                {
                    std::lock_guard lock(error_lock);
                    if (i < error_index)
                        error_index = i, error = std::current_exception();
                    next = n;
                }
            }
        };

        if (threads <= 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            for (unsigned k = 0; k < threads; ++k)
                pool.emplace_back(worker);
        }
        if (error)
            std::rethrow_exception(error);
        return result;
    }

    std::string format_number(double value)
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
        return std::string(buf, res.ptr);
    }

    void write_csv(const SweepResult &result, std::ostream &out)
    {
        if (result.records.empty())
            throw Error(Errc::invalid_argument, "Nothing to write: sweep has no records");
        out << "t_s,elevation_deg";
        for (const auto &name : result.variant_names)
            out << ',' << name << "_gain_db," << name << "_irs_gain_db," << name << "_delay_spread_s," << name << "_doppler_hz";
        out << '\n';
        for (const SweepRecord &rec : result.records)
        {
            out << format_number(rec.t_s) << ',' << format_number(rec.elevation_deg);
            for (const VariantMetrics &m : rec.variants)
                out << ',' << format_number(m.channel_gain_db) << ',' << format_number(m.irs_gain_db) << ','
                    << format_number(m.delay_spread_s) << ',' << format_number(m.doppler_hz);
            out << '\n';
        }
        if (!out)
            throw Error(Errc::io, "Failed writing CSV output");
    }

    void write_csv(const SweepResult &result, const std::filesystem::path &path)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(Errc::io, "Cannot open '" + path.string() + "' for writing");
        write_csv(result, static_cast<std::ostream &>(out));
        out.close();
        if (!out)
            throw Error(Errc::io, "Failed writing '" + path.string() + "'");
    }

    PassSummary pass_summary(const ScenarioConfig &cfg)
    {
        const auto orbit = make_orbit(cfg);
        PassSummary out;
        out.window = pass_window(*orbit, EarthModel{cfg.orbit.earth_radius_m}, cfg.tx_position_m, cfg.orbit.min_elevation_deg * deg);

        auto elevation = [&](double t)
        { return elevation_angle(orbit->center(), cfg.tx_position_m, orbit->position(t)); };

        // elevation is unimodal over a pass: golden-section search for its peak
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = out.window.t_start, hi = out.window.t_end;
        for (int i = 0; i < 200 && hi - lo > 1e-9; ++i)
        {
            const double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
            if (elevation(a) < elevation(b))
                lo = a;
            else
                hi = b;
        }
        out.t_max_elevation_s = 0.5 * (lo + hi);
        out.max_elevation_deg = elevation(out.t_max_elevation_s) / deg;
        return out;
    }
}
