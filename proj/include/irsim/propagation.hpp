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

#ifndef IRSIM_PROPAGATION_HPP
#define IRSIM_PROPAGATION_HPP

#include "irsim/antenna.hpp"
#include "irsim/geometry.hpp"
#include "irsim/kernels.hpp"

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace irsim
{
    inline constexpr double speed_of_light = 299792458.0; // [m/s]

    // Receiver motion, known in advance
    class Trajectory
    {
    public:
        virtual ~Trajectory() = default;
        virtual Point3 position(double t) const = 0;
        virtual Vec3 velocity(double t) const = 0;
    };

    // p(t) = origin + velocity * t
    class LinearTrajectory final : public Trajectory
    {
    public:
        LinearTrajectory(const Point3 &origin, const Vec3 &velocity) : origin_(origin), velocity_(velocity) {}
        Point3 position(double t) const override { return origin_ + velocity_ * t; }
        Vec3 velocity(double) const override { return velocity_; }

    private:
        Point3 origin_;
        Vec3 velocity_;
    };

    struct IrsSurface
    {
        IrsLayout layout;
        Pose pose;
        GainPattern element_pattern = GainPattern::hemisphere();
        double reflection_efficiency = 1.0; // mu, fraction of incident energy re-scattered
    };

    struct SceneParams
    {
        Point3 tx_position;
        GainPattern tx_pattern;
        std::shared_ptr<const Trajectory> rx_trajectory;
        GainPattern rx_pattern;
        std::optional<IrsSurface> irs; // empty: direct path only
        double carrier_frequency = 2e9;
        double tx_power = 1.0;
    };

    // Immutable propagation scene. Construction validates the parameters and
    // precomputes the time-invariant transmitter-side data of every element.
    class Scene
    {
    public:
        explicit Scene(SceneParams params);

        const SceneParams &params() const { return params_; }
        const Point3 &tx_position() const { return params_.tx_position; }
        const Trajectory &rx_trajectory() const { return *params_.rx_trajectory; }
        double carrier_frequency() const { return params_.carrier_frequency; }
        double wavelength() const { return speed_of_light / params_.carrier_frequency; }
        double tx_power() const { return params_.tx_power; }
        bool has_irs() const { return params_.irs.has_value(); }

        int cols() const { return has_irs() ? params_.irs->layout.cols : 0; }
        int rows() const { return has_irs() ? params_.irs->layout.rows : 0; }
        std::size_t element_count() const { return px_.size(); }

        // Flat element index: row-major, i = row * cols + col, both counted from the
        // first entry of G(M) / G(N)
        std::size_t element_index(int m, int n) const;
        std::pair<int, int> element_grid_index(std::size_t i) const;
        Point3 element_position(std::size_t i) const { return {px_[i], py_[i], pz_[i]}; }

        kernels::ElementField field() const;
        kernels::TraceParams trace_params(double t) const;

    private:
        SceneParams params_;
        int first_m_ = 0, first_n_ = 0;
        std::vector<double> px_, py_, pz_, ax_, ay_, az_, tx_leg_, static_amp_;
    };

    // Direct and per-element path parameters at one instant
    struct ChannelSnapshot
    {
        double t = 0.0;
        double carrier_frequency = 0.0;
        double direct_amplitude = 0.0; // A_0
        double direct_delay = 0.0;     // tau_0 [s]
        double direct_rate = 0.0;      // d tau_0 / dt [s/s]
        int cols = 0, rows = 0;

        std::vector<double> amplitude;     // A_mn
        std::vector<double> excess_cycles; // f_c (tau_mn - tau_0) >= 0
        std::vector<double> relative_rate; // d(tau_mn - tau_0)/dt [s/s]

        std::size_t size() const { return amplitude.size(); }
        double delay(std::size_t i) const { return direct_delay + excess_cycles[i] / carrier_frequency; }
    };

    double delay_direct(const Point3 &pT, const Point3 &pR, double c0 = speed_of_light);
    double delay_via(const Point3 &pT, const Point3 &pmn, const Point3 &pR, double c0 = speed_of_light);

    // |pmn - pT| + |pR - pmn| - |pR - pT|, evaluated without cancellation
    double excess_length(const Point3 &pT, const Point3 &pmn, const Point3 &pR);
    double excess_cycles(const Point3 &pT, const Point3 &pmn, const Point3 &pR, double fc, double c0 = speed_of_light);

    double amplitude_direct(const Scene &scene, double t);

    // Reference evaluation for one element through the generic direction/gain API
    double amplitude_element(const Scene &scene, int m, int n, double t);

    ChannelSnapshot snapshot(const Scene &scene, double t);
    void snapshot_into(const Scene &scene, double t, ChannelSnapshot &out); // reuses the buffers of out

    // P_Tx |A_0 + sum A_mn exp(-j 2 pi x_mn - j phi_mn)|^2, with the direct-path phasor factored out
    double received_power(const ChannelSnapshot &snap, std::span<const double> phases, double tx_power);

    // P_Tx (A_0 + sum A_mn)^2
    double coherent_bound(const ChannelSnapshot &snap, double tx_power);

    // max_mn {tau_mn + phi_mn / (2 pi f_c)} - tau_0, zero without IRS elements
    double delay_spread(const ChannelSnapshot &snap, std::span<const double> phases);

    // d|pR - p_fixed|/dt / c0 for a receiver moving with vR
    double delay_rate(const Point3 &p_fixed, const Point3 &pR, const Vec3 &vR, double c0 = speed_of_light);

    // Doppler spread max{D_s0, D_sIRS} for per-element phase rates d phi_mn / dt [rad/s].
    // The pairwise IRS term reduces to max - min of the per-path rates.
    double doppler_spread(const ChannelSnapshot &snap, std::span<const double> phase_rates);

    // Doppler spread when every phase follows d phi/dt = 2 pi f_c d(tau_0 - tau_mn)/dt
    double doppler_spread_tracking(const ChannelSnapshot &snap);

    // Doppler spread for phases that do not change over time
    double doppler_spread_static(const ChannelSnapshot &snap);

    // Time average of P_Rx over the sampled span (trapezoidal rule)
    double average_power(std::span<const std::pair<double, double>> samples);
}

#endif
