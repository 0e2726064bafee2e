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

// End-to-end acceptance checks on the default LEO scenario. Prints one PASS/FAIL
// line per criterion and exits non-zero if any criterion fails.

#include "irsim/kernels.hpp"
#include "irsim/orbit.hpp"
#include "irsim/phase.hpp"
#include "irsim/scenario.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace irsim;

namespace
{
    constexpr double pi = std::numbers::pi;
    constexpr double c0 = 299792458.0;

    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    struct Range
    {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        void add(double v) { lo = std::min(lo, v), hi = std::max(hi, v); }
    };

    std::size_t index_of(const SweepResult &r, const std::string &name)
    {
        auto it = std::find(r.variant_names.begin(), r.variant_names.end(), name);
        if (it == r.variant_names.end())
            throw std::runtime_error("variant " + name + " missing");
        return std::size_t(it - r.variant_names.begin());
    }

    // Shared full sweep of the default scenario
    struct Sweep
    {
        ScenarioConfig cfg = load_config("");
        SweepResult result;
        double runtime_s = 0.0;
        std::vector<const SweepRecord *> in_pass; // elevation >= mask

        Sweep()
        {
            auto t0 = std::chrono::steady_clock::now();
            result = run_sweep(cfg);
            runtime_s = seconds_since(t0);
            for (const auto &rec : result.records)
                if (rec.elevation_deg >= cfg.orbit.min_elevation_deg)
                    in_pass.push_back(&rec);
        }
    };

    Sweep &sweep()
    {
        static Sweep s;
        return s;
    }

    Outcome isotropic_gain()
    {
        ScenarioConfig cfg = load_config("");
        cfg.variants = {cfg.variants[0], cfg.variants[1]}; // no_irs, isotropic
        auto t0 = std::chrono::steady_clock::now();
        PreparedScenario prepared(cfg);
        SweepRecord rec = prepared.evaluate(0.0);
        double runtime = seconds_since(t0);
        double gain = rec.variants[1].irs_gain_db;

        // far-field sum of identical element paths with unit gains
        Scene scene = derive_scene(cfg, cfg.variants[1]);
        Point3 tx = cfg.tx_position_m, rx = make_orbit(cfg)->position(0.0);
        double d0 = double(oracle::dist(tx, rx)), d1 = double(oracle::dist(tx, {})), d2 = double(oracle::dist({}, rx));
        double ne = double(scene.element_count());
        double ratio = 1.0 + ne * cfg.wavelength() * d0 / (4 * pi * d1 * d2);
        double oracle_db = 20 * std::log10(ratio);

        bool ok = std::abs(gain - 7.9) <= 0.2 && std::abs(gain - oracle_db) <= 0.02 && runtime < 10.0;
        return {ok, fmt("isotropic 433x288 IRS gain at t=0: %.4f dB (target 7.9 +- 0.2, analytic oracle %.4f dB), %.2f s",
                        gain, oracle_db, runtime)};
    }

    Outcome tilted_gain()
    {
        Sweep &s = sweep();
        std::size_t v = index_of(s.result, "planar_tilt45");
        Range g;
        for (auto *rec : s.in_pass)
            g.add(rec->variants[v].irs_gain_db);
        bool ok = g.lo >= 2.7 && g.hi <= 6.27 && std::abs(g.hi - 5.97) <= 0.3 && s.runtime_s < 300.0;
        return {ok, fmt("planar 45 deg IRS gain over the pass: [%.4f, %.4f] dB (target within [2.7, 6.27], max 5.97 +- 0.3); "
                        "full sweep %zu records in %.1f s (%s kernels)",
                        g.lo, g.hi, s.result.records.size(), s.runtime_s,
                        std::string(kernels::to_string(kernels::active_backend())).c_str())};
    }

    Outcome untilted_gain()
    {
        Sweep &s = sweep();
        std::size_t v = index_of(s.result, "planar");
        Range g, all;
        for (auto *rec : s.in_pass)
            g.add(rec->variants[v].irs_gain_db);
        for (const auto &rec : s.result.records)
            all.add(rec.variants[v].irs_gain_db);
        bool ok = all.hi <= 0.1;
        return {ok, fmt("planar 0 deg IRS gain: max %.4f dB over all t, [%.4f, %.4f] dB over the pass (target <= 0.1 dB)",
                        all.hi, g.lo, g.hi)};
    }

    Outcome congruent_reflectors()
    {
        Sweep &s = sweep();
        std::size_t none = index_of(s.result, "no_irs"), dif = index_of(s.result, "diffuse"), mirror = index_of(s.result, "specular");
        double worst_d = 0.0, worst_s = 0.0;
        for (const auto &rec : s.result.records)
        {
            double base = rec.variants[none].channel_gain_db;
            worst_d = std::max(worst_d, std::abs(rec.variants[dif].channel_gain_db - base));
            worst_s = std::max(worst_s, std::abs(rec.variants[mirror].channel_gain_db - base));
        }
        bool ok = worst_d <= 0.2 && worst_s <= 0.2;
        return {ok, fmt("max |gain - no-IRS gain| over all t: diffuse %.5f dB, specular %.5f dB (target <= 0.2 dB)", worst_d, worst_s)};
    }

    Outcome delay_spread_range()
    {
        Sweep &s = sweep();
        std::size_t v = index_of(s.result, "planar_tilt45");
        Range us, periods;
        for (auto *rec : s.in_pass)
        {
            us.add(rec->variants[v].delay_spread_s * 1e6);
            periods.add(rec->variants[v].delay_spread_s * s.cfg.carrier_frequency_hz);
        }
        auto within = [](double v, double target) { return std::abs(v - target) <= 0.01 * target; };
        bool ok = within(us.lo, 3.0215) && within(us.hi, 3.3385) && within(periods.lo, 6043) && within(periods.hi, 6677);
        return {ok, fmt("planar 45 deg pareto delay spread over the pass: [%.5f, %.5f] us = [%.1f, %.1f] periods "
                        "(target [3.0215, 3.3385] us, [6043, 6677] periods, +-1%%)",
                        us.lo, us.hi, periods.lo, periods.hi)};
    }

    Outcome doppler_free()
    {
        ScenarioConfig cfg = load_config("");
        Scene scene = derive_scene(cfg, cfg.variants[3]); // planar_tilt45
        PassWindow w = pass_summary(cfg).window;
        const double fc = cfg.carrier_frequency_hz, h = 1e-3;
        const Point3 tx = scene.tx_position();
        const PhaseStrategy pareto = PhaseStrategy::pareto_optimal();

        double worst_analytic = 0.0, worst_fd = 0.0;
        std::vector<long double> leg(scene.element_count());
        for (std::size_t i = 0; i < leg.size(); ++i)
            leg[i] = oracle::dist(tx, scene.element_position(i));

        for (int k = 0; k < 100; ++k)
        {
            const double t = w.t_start + (w.t_end - w.t_start) * (k + 0.5) / 100.0;
            const ChannelSnapshot snap = snapshot(scene, t);
            worst_analytic = std::max(worst_analytic, doppler_spread(snap, pareto));

            // hold the integer cycle counts chosen at t and let the phases follow the schedule
            const ChannelSnapshot lo = snapshot(scene, t - h), hi = snapshot(scene, t + h);
            const Point3 r_lo = scene.rx_trajectory().position(t - h), r_hi = scene.rx_trajectory().position(t + h);
            const long double d_lo = oracle::dist(tx, r_lo), d_hi = oracle::dist(tx, r_hi);
            double wmin = std::numeric_limits<double>::infinity(), wmax = -wmin;
            for (std::size_t i = 0; i < snap.size(); ++i)
            {
                const double kk = double(k_min(snap.excess_cycles[i]));
                auto phase_cycles = [&](const ChannelSnapshot &sn)
                { return pareto_phase(sn.excess_cycles[i]) / (2 * pi) + kk - double(k_min(sn.excess_cycles[i])); };
                const Point3 p = scene.element_position(i);
                // true path cycles relative to the direct path, extended precision
                const long double x_lo = (leg[i] + oracle::dist(p, r_lo) - d_lo) * fc / c0;
                const long double x_hi = (leg[i] + oracle::dist(p, r_hi) - d_hi) * fc / c0;
                const double total_lo = double(x_lo) + phase_cycles(lo);
                const double total_hi = double(x_hi) + phase_cycles(hi);
                const double rate = (total_hi - total_lo) / (2 * h); // cycles per second
                wmin = std::min(wmin, rate), wmax = std::max(wmax, rate);
            }
            worst_fd = std::max(worst_fd, std::max({std::abs(wmin), std::abs(wmax), wmax - wmin}));
        }
        bool ok = worst_analytic <= 1e-9 && worst_fd <= 1e-4;
        return {ok, fmt("planar 45 deg pareto Doppler spread at 100 instants: analytic max %.3e Hz (target <= 1e-9), "
                        "finite-difference max %.3e Hz (target <= 1e-4)",
                        worst_analytic, worst_fd)};
    }

    Outcome pass_window_width()
    {
        ScenarioConfig cfg = load_config("");
        PassSummary s = pass_summary(cfg);
        const double mask = cfg.orbit.min_elevation_deg * pi / 180.0;
        const double half = oracle::pass_half_width(cfg.orbit.earth_radius_m, cfg.orbit.earth_radius_m + cfg.orbit.altitude_m,
                                                    cfg.orbit.kepler_mu_m3s2, mask);
        bool ok = std::abs(s.window.t_start + 524.0) <= 2.0 && std::abs(s.window.t_end - 524.0) <= 2.0 &&
                  std::abs(s.window.t_end - half) <= 0.01 && std::abs(s.window.t_start + half) <= 0.01;
        return {ok, fmt("10 deg pass window [%.4f, %.4f] s (target +-524 +- 2 s, closed form +-%.4f s)",
                        s.window.t_start, s.window.t_end, half)};
    }

    Outcome direct_gain()
    {
        ScenarioConfig cfg = load_config("");
        cfg.variants = {cfg.variants[0]};
        SweepRecord rec = PreparedScenario(cfg).evaluate(0.0);
        const double d = double(oracle::dist(cfg.tx_position_m, make_orbit(cfg)->position(0.0)));
        const double fspl_db = 20 * std::log10(oracle::friis_amplitude(cfg.carrier_frequency_hz, d));
        const double g = rec.variants[0].channel_gain_db;
        bool ok = std::abs(g + 162.0) <= 0.1 && std::abs(g - fspl_db) <= 1e-9;
        return {ok, fmt("no-IRS channel gain at t=0: %.5f dB (target -162.0 +- 0.1, free-space oracle %.5f dB)", g, fspl_db)};
    }

    Outcome brute_force()
    {
        auto t0 = std::chrono::steady_clock::now();
        Scene scene = fixture::toy_scene();
        double worst = std::numeric_limits<double>::infinity();
        for (double t : {0.0, 0.02, 0.04})
        {
            ChannelSnapshot snap = snapshot(scene, t);
            auto objective = [&](const std::vector<double> &phi)
            { return scene.tx_power() * oracle::power(snap.direct_amplitude, snap.amplitude, snap.excess_cycles, phi); };
            const double best = oracle::best_quantized_power(objective, snap.size(), 256);
            const double p = received_power(snap, evaluate(PhaseStrategy::pareto_optimal(), snap), scene.tx_power());
            worst = std::min(worst, p / best);
        }
        double runtime = seconds_since(t0);
        bool ok = worst >= 1.0 - 1e-3 && runtime < 10.0;
        return {ok, fmt("2x2 toy scene: pareto power / best of 256-level coordinate search >= %.6f (target >= 0.999), %.2f s",
                        worst, runtime)};
    }

    Outcome properties()
    {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> tu(-10.0, 10.0), ph(0.0, 2 * pi);
        std::size_t failures = 0, paths = 0;
        double worst_rate = 0.0;
        std::string first;
        auto fail = [&](const std::string &what)
        {
            if (failures++ == 0)
                first = what;
        };
        for (int trial = 0; trial < 1000; ++trial)
        {
            Scene s(fixture::random_params(rng));
            const double t = tu(rng);
            const ChannelSnapshot snap = snapshot(s, t);
            const double fc = s.carrier_frequency();
            const Point3 tx = s.tx_position();
            auto rx_at = [&](double u) { return s.rx_trajectory().position(u); };

            std::vector<double> random_phi(snap.size());
            for (auto &v : random_phi)
                v = ph(rng);
            for (std::size_t i = 0; i < snap.size(); ++i, ++paths)
            {
                if (!(snap.delay(i) >= snap.direct_delay))
                    fail(fmt("scene %d: tau_mn < tau_0", trial));
                if (!(snap.excess_cycles[i] >= 0.0))
                    fail(fmt("scene %d: negative excess cycles", trial));
                const Point3 p = s.element_position(i);
                const double fd = oracle::derivative([&](double u)
                                                     { return double((oracle::dist(tx, p) + oracle::dist(p, rx_at(u)) - oracle::dist(tx, rx_at(u))) / c0); },
                                                     t);
                worst_rate = std::max(worst_rate, std::abs(fd - snap.relative_rate[i]));
            }
            const double fd0 = oracle::derivative([&](double u) { return double(oracle::dist(tx, rx_at(u)) / c0); }, t);
            worst_rate = std::max(worst_rate, std::abs(fd0 - snap.direct_rate));

            const double bound = coherent_bound(snap, s.tx_power());
            if (!(received_power(snap, random_phi, s.tx_power()) <= bound * (1 + 1e-12)))
                fail(fmt("scene %d: power above coherent bound", trial));
            const double dt = delay_spread(snap, evaluate(PhaseStrategy::pareto_optimal(), snap)) -
                              delay_spread(snap, evaluate(PhaseStrategy::zero_phase(), snap));
            if (!(dt >= 0.0 && dt <= 1.0 / fc))
                fail(fmt("scene %d: delay spread increase %.3e s outside [0, 1/fc]", trial, dt));
        }
        if (worst_rate > 1e-12)
            fail(fmt("delay rate deviates from finite differences by %.3e s/s", worst_rate));
        bool ok = failures == 0;
        return {ok, fmt("1000 random scenes, %zu element paths: %zu violations%s%s; worst delay-rate deviation %.3e s/s (target <= 1e-12)",
                        paths, failures, ok ? "" : ", first: ", first.c_str(), worst_rate)};
    }

    Outcome path_ratio()
    {
        Sweep &s = sweep();
        std::size_t v = index_of(s.result, "planar_tilt45");
        Range power, amplitude;
        for (auto *rec : s.in_pass)
        {
            power.add(rec->variants[v].irs_path_ratio);
            amplitude.add(std::sqrt(rec->variants[v].irs_path_ratio));
        }
        bool ok = power.lo >= 0.36 && power.hi <= 1.04;
        return {ok, fmt("planar 45 deg (sum A)^2 / A0^2 over the pass: [%.4f, %.4f] (target within [0.36, 1.04]); "
                        "amplitude ratio sum A / A0: [%.4f, %.4f]",
                        power.lo, power.hi, amplitude.lo, amplitude.hi)};
    }
}

int main()
{
    struct Criterion
    {
        int id;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, isotropic_gain}, {2, tilted_gain}, {3, untilted_gain}, {4, congruent_reflectors},
        {5, delay_spread_range}, {6, doppler_free}, {7, pass_window_width}, {8, direct_gain},
        {9, brute_force}, {10, properties}, {11, path_ratio},
    };

    int failed = 0;
    for (const auto &c : criteria)
    {
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("AC%02d %s  %s\n", c.id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
