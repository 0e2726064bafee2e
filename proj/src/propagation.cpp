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

#include "irsim/propagation.hpp"
#include "irsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace irsim
{
    namespace
    {
        kernels::PatternCoeffs coeffs(const GainPattern &p)
        {
            return {p.front_const(), p.front_slope(), p.back_const()};
        }

        double checked_distance(const Point3 &p1, const Point3 &p2, const char *what)
        {
            const double d = (p2 - p1).norm();
            if (!(d > 0.0))
                throw Error(Errc::degenerate_geometry, std::string("Coincident points: ") + what);
            return d;
        }
    }

    Scene::Scene(SceneParams params) : params_(std::move(params))
    {
        if (!(params_.carrier_frequency > 0.0) || !std::isfinite(params_.carrier_frequency))
            throw Error(Errc::invalid_argument, "Carrier frequency must be positive");
        if (!(params_.tx_power > 0.0) || !std::isfinite(params_.tx_power))
            throw Error(Errc::invalid_argument, "Transmit power must be positive");
        if (!params_.rx_trajectory)
            throw Error(Errc::invalid_argument, "Scene needs a receiver trajectory");
        if (!params_.tx_position.finite())
            throw Error(Errc::invalid_argument, "Transmitter position must be finite");
        if (!params_.irs)
            return;

        const IrsSurface &irs = *params_.irs;
        irs.layout.validate();
        if (!(irs.reflection_efficiency >= 0.0 && irs.reflection_efficiency <= 1.0))
            throw Error(Errc::invalid_argument, "Reflection efficiency must be within [0, 1]");

        const auto cols = grid_indices(irs.layout.cols);
        const auto rows = grid_indices(irs.layout.rows);
        first_m_ = cols.front();
        first_n_ = rows.front();

        const std::size_t count = irs.layout.size();
        for (auto *v : {&px_, &py_, &pz_, &ax_, &ay_, &az_, &tx_leg_, &static_amp_})
            v->resize(count);

        const double lambda = wavelength();
        const double scale = std::sqrt(irs.reflection_efficiency) * lambda * lambda / (16.0 * std::numbers::pi * std::numbers::pi);
        const Vec3 normal = irs.pose.normal();
        const Point3 &pT = params_.tx_position;

        std::size_t i = 0;
        for (int n : rows)
            for (int m : cols)
            {
                const Point3 p = to_world(irs.pose, element_center(m, n, irs.layout));
                const Vec3 a = p - pT;
                const double alen = a.norm();
                if (!(alen > 0.0))
                    throw Error(Errc::degenerate_geometry, "Transmitter coincides with an IRS element");
                const double g_tx = params_.tx_pattern.gain_cos(a.z / alen);
                const double g_el = irs.element_pattern.gain_cos(-normal.dot(a) / alen);

                px_[i] = p.x, py_[i] = p.y, pz_[i] = p.z;
                ax_[i] = a.x, ay_[i] = a.y, az_[i] = a.z;
                tx_leg_[i] = alen;
                static_amp_[i] = scale * std::sqrt(g_tx * g_el) / alen;
                ++i;
            }
    }

    std::size_t Scene::element_index(int m, int n) const
    {
        if (!has_irs())
            throw Error(Errc::out_of_grid, "Scene has no IRS");
        element_center(m, n, params_.irs->layout); // range check
        return std::size_t(n - first_n_) * std::size_t(cols()) + std::size_t(m - first_m_);
    }

    std::pair<int, int> Scene::element_grid_index(std::size_t i) const
    {
        if (i >= element_count())
            throw Error(Errc::out_of_grid, "Element index " + std::to_string(i) + " out of range");
        const auto c = std::size_t(cols());
        return {first_m_ + int(i % c), first_n_ + int(i / c)};
    }

    kernels::ElementField Scene::field() const
    {
        return {px_, py_, pz_, ax_, ay_, az_, tx_leg_, static_amp_};
    }

    kernels::TraceParams Scene::trace_params(double t) const
    {
        const Point3 pR = params_.rx_trajectory->position(t);
        const Vec3 vR = params_.rx_trajectory->velocity(t);
        const Vec3 c = pR - params_.tx_position;
        const double clen = checked_distance(params_.tx_position, pR, "transmitter and receiver");

        kernels::TraceParams p;
        p.rx[0] = pR.x, p.rx[1] = pR.y, p.rx[2] = pR.z;
        p.vel[0] = vR.x, p.vel[1] = vR.y, p.vel[2] = vR.z;
        if (has_irs())
        {
            const Vec3 nrm = params_.irs->pose.normal();
            p.normal[0] = nrm.x, p.normal[1] = nrm.y, p.normal[2] = nrm.z;
            p.element = coeffs(params_.irs->element_pattern);
        }
        p.direct_len = clen;
        p.direct_rate = c.dot(vR) / clen;
        p.cycles_per_meter = params_.carrier_frequency / speed_of_light;
        p.inv_c0 = 1.0 / speed_of_light;
        p.receiver = coeffs(params_.rx_pattern);
        return p;
    }

    double delay_direct(const Point3 &pT, const Point3 &pR, double c0)
    {
        return checked_distance(pT, pR, "direct path") / c0;
    }

    double delay_via(const Point3 &pT, const Point3 &pmn, const Point3 &pR, double c0)
    {
        return (checked_distance(pT, pmn, "transmitter and element") + checked_distance(pmn, pR, "element and receiver")) / c0;
    }

    double excess_length(const Point3 &pT, const Point3 &pmn, const Point3 &pR)
    {
        const Vec3 a = pmn - pT;
        const Vec3 b = pR - pmn;
        const double alen = checked_distance(pT, pmn, "transmitter and element");
        const double blen = checked_distance(pmn, pR, "element and receiver");
        const double clen = checked_distance(pT, pR, "transmitter and receiver");
        const double ab = a.dot(b);
        const double prod = alen * blen;
        const Vec3 axb = a.cross(b);
        const double gap = ab > 0.0 ? axb.dot(axb) / (prod + ab) : prod - ab;
        return 2.0 * gap / (alen + blen + clen);
    }

    double excess_cycles(const Point3 &pT, const Point3 &pmn, const Point3 &pR, double fc, double c0)
    {
        return excess_length(pT, pmn, pR) * fc / c0;
    }

    double amplitude_direct(const Scene &scene, double t)
    {
        const Point3 &pT = scene.tx_position();
        const Point3 pR = scene.rx_trajectory().position(t);
        const double d = checked_distance(pT, pR, "transmitter and receiver");
        const double g_tx = gain(scene.params().tx_pattern, direction_angles(pT, pR));
        const double g_rx = gain(scene.params().rx_pattern, direction_angles(pR, pT));
        return scene.wavelength() * std::sqrt(g_tx * g_rx) / (4.0 * std::numbers::pi * d);
    }

    double amplitude_element(const Scene &scene, int m, int n, double t)
    {
        if (!scene.has_irs())
            throw Error(Errc::out_of_grid, "Scene has no IRS");
        const IrsSurface &irs = *scene.params().irs;
        const Point3 &pT = scene.tx_position();
        const Point3 pR = scene.rx_trajectory().position(t);
        const Point3 p_frame = element_center(m, n, irs.layout);
        const Point3 p = to_world(irs.pose, p_frame);

        const double g_el_rx = gain(irs.element_pattern, direction_angles(p_frame, to_frame(irs.pose, pR)));
        const double g_rx_el = gain(scene.params().rx_pattern, direction_angles(pR, p));
        const double g_tx_el = gain(scene.params().tx_pattern, direction_angles(pT, p));
        const double g_el_tx = gain(irs.element_pattern, direction_angles(p_frame, to_frame(irs.pose, pT)));

        const double lambda = scene.wavelength();
        const double d_rx = checked_distance(p, pR, "element and receiver");
        const double d_tx = checked_distance(pT, p, "transmitter and element");
        return std::sqrt(irs.reflection_efficiency) * lambda * lambda / (16.0 * std::numbers::pi * std::numbers::pi) *
               std::sqrt(g_el_rx * g_rx_el * g_tx_el * g_el_tx) / (d_rx * d_tx);
    }

    void snapshot_into(const Scene &scene, double t, ChannelSnapshot &out)
    {
        const kernels::TraceParams params = scene.trace_params(t);

        out.t = t;
        out.carrier_frequency = scene.carrier_frequency();
        out.direct_amplitude = amplitude_direct(scene, t);
        out.direct_delay = params.direct_len / speed_of_light;
        out.direct_rate = params.direct_rate / speed_of_light;
        out.cols = scene.cols();
        out.rows = scene.rows();

        const std::size_t n = scene.element_count();
        out.amplitude.resize(n);
        out.excess_cycles.resize(n);
        out.relative_rate.resize(n);
        if (n == 0)
            return;

        kernels::trace_paths(scene.field(), params, {out.amplitude, out.excess_cycles, out.relative_rate});

        // Non-finite values only arise when the receiver sits on an element
        for (std::size_t i = 0; i < n; ++i)
            if (!(out.excess_cycles[i] >= 0.0) || !std::isfinite(out.excess_cycles[i]) || !std::isfinite(out.amplitude[i]))
                throw Error(Errc::degenerate_geometry, "Receiver coincides with IRS element " + std::to_string(i) +
                                                           " at t = " + std::to_string(t) + " s");
    }

    ChannelSnapshot snapshot(const Scene &scene, double t)
    {
        ChannelSnapshot out;
        snapshot_into(scene, t, out);
        return out;
    }

    namespace
    {
        void check_phases(const ChannelSnapshot &snap, std::span<const double> phases)
        {
            if (phases.size() != snap.size())
                throw Error(Errc::dimension_mismatch, "Phase table has " + std::to_string(phases.size()) +
                                                          " entries, grid has " + std::to_string(snap.size()));
            for (double phi : phases)
                if (!(phi >= 0.0) || !std::isfinite(phi))
                    throw Error(Errc::strategy_infeasible, "Phase shifts must be finite and non-negative (causality)");
        }
    }

    double received_power(const ChannelSnapshot &snap, std::span<const double> phases, double tx_power)
    {
        check_phases(snap, phases);
        const kernels::Phasor irs = kernels::phasor_sum(snap.amplitude, snap.excess_cycles, phases);
        const double re = snap.direct_amplitude + irs.re;
        return tx_power * (re * re + irs.im * irs.im);
    }

    double coherent_bound(const ChannelSnapshot &snap, double tx_power)
    {
        const double total = snap.direct_amplitude + kernels::amplitude_sum(snap.amplitude);
        return tx_power * total * total;
    }

    double delay_spread(const ChannelSnapshot &snap, std::span<const double> phases)
    {
        check_phases(snap, phases);
        double worst = 0.0;
        for (std::size_t i = 0; i < snap.size(); ++i)
            worst = std::max(worst, snap.excess_cycles[i] + phases[i] / (2.0 * std::numbers::pi));
        return worst / snap.carrier_frequency;
    }

    double delay_rate(const Point3 &p_fixed, const Point3 &pR, const Vec3 &vR, double c0)
    {
        const Vec3 d = pR - p_fixed;
        const double len = checked_distance(p_fixed, pR, "delay-rate endpoints");
        return d.dot(vR) / (len * c0);
    }

    namespace
    {
        // f_c max(max |w|, max w - min w) over the per-path total delay rates w
        template <typename RateFn>
        double spread_of(const ChannelSnapshot &snap, RateFn &&total_rate)
        {
            if (snap.size() == 0)
                return 0.0;
            double lo = total_rate(0), hi = lo;
            for (std::size_t i = 1; i < snap.size(); ++i)
            {
                const double w = total_rate(i);
                lo = std::min(lo, w);
                hi = std::max(hi, w);
            }
            const double to_direct = std::max(std::abs(lo), std::abs(hi));
            return snap.carrier_frequency * std::max(to_direct, hi - lo);
        }
    }

    double doppler_spread(const ChannelSnapshot &snap, std::span<const double> phase_rates)
    {
        if (phase_rates.size() != snap.size())
            throw Error(Errc::dimension_mismatch, "Phase-rate table does not match the grid");
        const double to_delay = 1.0 / (2.0 * std::numbers::pi * snap.carrier_frequency);
        return spread_of(snap, [&](std::size_t i)
                         { return snap.relative_rate[i] + phase_rates[i] * to_delay; });
    }

    double doppler_spread_tracking(const ChannelSnapshot &snap)
    {
        const double two_pi_fc = 2.0 * std::numbers::pi * snap.carrier_frequency;
        return spread_of(snap, [&](std::size_t i)
                         {
                             const double phase_rate = -two_pi_fc * snap.relative_rate[i];
                             return snap.relative_rate[i] + phase_rate / two_pi_fc; });
    }

    double doppler_spread_static(const ChannelSnapshot &snap)
    {
        return spread_of(snap, [&](std::size_t i)
                         { return snap.relative_rate[i]; });
    }

    double average_power(std::span<const std::pair<double, double>> samples)
    {
        if (samples.size() < 2)
            throw Error(Errc::invalid_argument, "Average power needs at least two samples");
        double integral = 0.0;
        for (std::size_t i = 1; i < samples.size(); ++i)
        {
            const double dt = samples[i].first - samples[i - 1].first;
            if (!(dt > 0.0))
                throw Error(Errc::ordering, "Sample times must be strictly increasing");
            integral += 0.5 * dt * (samples[i].second + samples[i - 1].second);
        }
        return integral / (samples.back().first - samples.front().first);
    }
}
