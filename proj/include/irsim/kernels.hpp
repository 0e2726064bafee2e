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

#ifndef IRSIM_KERNELS_HPP
#define IRSIM_KERNELS_HPP

// Element-parallel inner loops of the propagation model. Every kernel has a
// scalar reference implementation and, on x86-64, an AVX2/FMA variant. The
// variant is picked once at runtime from the CPU feature set and can be
// overridden with IRSIM_KERNELS=scalar|avx2 or set_backend().

#include <cstddef>
#include <span>
#include <string_view>

namespace irsim::kernels
{
    enum class Backend
    {
        scalar,
        avx2
    };

    std::string_view to_string(Backend backend);

    bool avx2_supported();      // compiled in and reported by the CPU
    Backend active_backend();
    void set_backend(Backend backend); // throws invalid_argument if unsupported

    // cos(theta) > 0 ? front_const + front_slope * cos(theta) : back_const
    struct PatternCoeffs
    {
        double front_const = 1.0;
        double front_slope = 0.0;
        double back_const = 1.0;
    };

    // Time-invariant per-element data (structure of arrays, world frame)
    struct ElementField
    {
        std::span<const double> px, py, pz;  // element centers
        std::span<const double> ax, ay, az;  // element - transmitter
        std::span<const double> tx_leg;      // |element - transmitter|
        std::span<const double> static_amp;  // sqrt(mu) lambda^2 / (16 pi^2) sqrt(G_Tx^mn G_mn^Tx) / tx_leg

        std::size_t size() const { return px.size(); }
    };

    // Per-instant parameters shared by all elements
    struct TraceParams
    {
        double rx[3] = {0, 0, 0};       // receiver position
        double vel[3] = {0, 0, 0};      // receiver velocity
        double normal[3] = {0, 0, 1};   // board normal in world frame
        double direct_len = 0.0;        // |rx - tx|
        double direct_rate = 0.0;       // d|rx - tx|/dt [m/s]
        double cycles_per_meter = 0.0;  // f_c / c0
        double inv_c0 = 0.0;            // 1 / c0
        PatternCoeffs element;          // IRS element pattern (board frame)
        PatternCoeffs receiver;         // receiver pattern (world frame)
    };

    struct TraceOutputs
    {
        std::span<double> amplitude;      // A_mn
        std::span<double> excess_cycles;  // f_c (tau_mn - tau_0)
        std::span<double> relative_rate;  // d(tau_mn - tau_0)/dt [s/s]
    };

    // Evaluates amplitude, excess cycles and relative delay rate of every element path
    void trace_paths(const ElementField &field, const TraceParams &params, const TraceOutputs &out);

    struct Phasor
    {
        double re = 0.0;
        double im = 0.0;
    };

    // sum_i amplitude_i * exp(-j 2 pi (cycles_i + phase_i / (2 pi)))
    Phasor phasor_sum(std::span<const double> amplitude, std::span<const double> cycles, std::span<const double> phase);

    // sum_i amplitude_i
    double amplitude_sum(std::span<const double> amplitude);

    namespace scalar
    {
        void trace_paths(const ElementField &field, const TraceParams &params, const TraceOutputs &out);
        Phasor phasor_sum(std::span<const double> amplitude, std::span<const double> cycles, std::span<const double> phase);
        double amplitude_sum(std::span<const double> amplitude);
    }

    namespace avx2
    {
        bool compiled();
        void trace_paths(const ElementField &field, const TraceParams &params, const TraceOutputs &out);
        Phasor phasor_sum(std::span<const double> amplitude, std::span<const double> cycles, std::span<const double> phase);
        double amplitude_sum(std::span<const double> amplitude);
    }
}

#endif
