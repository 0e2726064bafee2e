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

#ifndef IRSIM_PHASE_HPP
#define IRSIM_PHASE_HPP

#include "irsim/propagation.hpp"

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

namespace irsim
{
    enum class StrategyKind
    {
        pareto_optimal, // power-optimal, Doppler-free, smallest causal delay
        zero_phase,     // flat mirror (specular reflector)
        diffuse,        // frozen uniform random phases (rough reflector)
        explicit_k,     // power-optimal with a caller-chosen integer cycle count
        custom          // fixed phase table
    };

    // k_mn = ceil(x_mn) + cycles
    struct KOffset
    {
        std::int64_t cycles = 0;
    };

    // Either an offset on top of the minimal causal k, or one k per element
    using KPolicy = std::variant<KOffset, std::vector<std::int64_t>>;

    class PhaseStrategy
    {
    public:
        static PhaseStrategy pareto_optimal() { return PhaseStrategy(StrategyKind::pareto_optimal); }
        static PhaseStrategy zero_phase() { return PhaseStrategy(StrategyKind::zero_phase); }
        static PhaseStrategy diffuse(std::uint64_t seed);
        static PhaseStrategy explicit_k(KPolicy policy);
        static PhaseStrategy custom(std::vector<double> phases);

        StrategyKind kind() const { return kind_; }
        std::uint64_t seed() const { return seed_; }
        const KPolicy &k_policy() const { return k_policy_; }
        const std::vector<double> &table() const { return table_; }

        // True when phases follow the path delays over time (dphi/dt = 2 pi f_c d(tau_0 - tau_mn)/dt)
        bool tracks_paths() const { return kind_ == StrategyKind::pareto_optimal || kind_ == StrategyKind::explicit_k; }

    private:
        explicit PhaseStrategy(StrategyKind kind) : kind_(kind) {}

        StrategyKind kind_;
        std::uint64_t seed_ = 0;
        KPolicy k_policy_ = KOffset{};
        std::vector<double> table_;
    };

    std::string_view to_string(StrategyKind kind);

    // Smallest causal cycle count, ceil(x)
    std::int64_t k_min(double excess_cycles);

    // 2 pi mod(-x, 1), in [0, 2 pi)
    double pareto_phase(double excess_cycles);

    // Uniform phase in [0, 2 pi), a pure function of (seed, m, n)
    double diffuse_phase(std::uint64_t seed, int m, int n);

    // Per-element phases phi_mn for the snapshot's instant
    std::vector<double> evaluate(const PhaseStrategy &strategy, const ChannelSnapshot &snap);
    void evaluate_into(const PhaseStrategy &strategy, const ChannelSnapshot &snap, std::vector<double> &phases);

    // Per-element d phi_mn / dt [rad/s]; integer cycle steps count as zero
    std::vector<double> phase_rates(const PhaseStrategy &strategy, const ChannelSnapshot &snap);

    double doppler_spread(const ChannelSnapshot &snap, const PhaseStrategy &strategy);
    double doppler_spread(const Scene &scene, const PhaseStrategy &strategy, double t);
}

#endif
