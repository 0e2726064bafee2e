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

#include "irsim/phase.hpp"
#include "irsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace irsim
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;

        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ull;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
            return x ^ (x >> 31);
        }
    }

    PhaseStrategy PhaseStrategy::diffuse(std::uint64_t seed)
    {
        PhaseStrategy s(StrategyKind::diffuse);
        s.seed_ = seed;
        return s;
    }

    PhaseStrategy PhaseStrategy::explicit_k(KPolicy policy)
    {
        PhaseStrategy s(StrategyKind::explicit_k);
        s.k_policy_ = std::move(policy);
        return s;
    }

    PhaseStrategy PhaseStrategy::custom(std::vector<double> phases)
    {
        for (double phi : phases)
            if (!(phi >= 0.0) || !std::isfinite(phi))
                throw Error(Errc::strategy_infeasible, "Custom phase table must be finite and non-negative");
        PhaseStrategy s(StrategyKind::custom);
        s.table_ = std::move(phases);
        return s;
    }

    std::string_view to_string(StrategyKind kind)
    {
        switch (kind)
        {
        case StrategyKind::pareto_optimal:
            return "pareto";
        case StrategyKind::zero_phase:
            return "zero-phase";
        case StrategyKind::diffuse:
            return "diffuse";
        case StrategyKind::explicit_k:
            return "explicit-k";
        case StrategyKind::custom:
            return "custom";
        }
        return "unknown";
    }

    std::int64_t k_min(double excess_cycles)
    {
        if (!(excess_cycles >= 0.0) || !std::isfinite(excess_cycles))
            throw Error(Errc::invariant_violation, "Excess cycles must be finite and non-negative, got " + std::to_string(excess_cycles));
        return std::int64_t(std::ceil(excess_cycles));
    }

    double pareto_phase(double excess_cycles)
    {
        if (!(excess_cycles >= 0.0) || !std::isfinite(excess_cycles))
            throw Error(Errc::invariant_violation, "Excess cycles must be finite and non-negative, got " + std::to_string(excess_cycles));
        // ceil(x) - x is exact for x >= 1; below that it can round up to a full cycle
        const double frac = std::ceil(excess_cycles) - excess_cycles;
        return frac >= 1.0 ? 0.0 : two_pi * frac;
    }

    double diffuse_phase(std::uint64_t seed, int m, int n)
    {
        const std::uint64_t counter = (std::uint64_t(std::uint32_t(m)) << 32) | std::uint64_t(std::uint32_t(n));
        const std::uint64_t bits = splitmix64(seed ^ splitmix64(counter));
        return two_pi * double(bits >> 11) * 0x1.0p-53;
    }

    void evaluate_into(const PhaseStrategy &strategy, const ChannelSnapshot &snap, std::vector<double> &phases)
    {
        const std::size_t n = snap.size();
        phases.resize(n);
        switch (strategy.kind())
        {
        case StrategyKind::pareto_optimal:
            for (std::size_t i = 0; i < n; ++i)
                phases[i] = pareto_phase(snap.excess_cycles[i]);
            break;

        case StrategyKind::zero_phase:
            std::fill(phases.begin(), phases.end(), 0.0);
            break;

        case StrategyKind::diffuse:
        {
            if (n == 0)
                break;
            const auto cols = grid_indices(snap.cols);
            const auto rows = grid_indices(snap.rows);
            std::size_t i = 0;
            for (int row : rows)
                for (int col : cols)
                    phases[i++] = diffuse_phase(strategy.seed(), col, row);
            break;
        }

        case StrategyKind::explicit_k:
        {
            const auto *table = std::get_if<std::vector<std::int64_t>>(&strategy.k_policy());
            if (table && table->size() != n)
                throw Error(Errc::dimension_mismatch, "k table has " + std::to_string(table->size()) +
                                                          " entries, grid has " + std::to_string(n));
            for (std::size_t i = 0; i < n; ++i)
            {
                const double x = snap.excess_cycles[i];
                const double k = table ? double((*table)[i]) : double(k_min(x) + std::get<KOffset>(strategy.k_policy()).cycles);
                const double phi = two_pi * (k - x);
                if (phi < 0.0)
                    throw Error(Errc::strategy_infeasible, "k = " + std::to_string(k) + " violates causality for element " +
                                                               std::to_string(i) + " (needs k >= " + std::to_string(x) + ")");
                phases[i] = phi;
            }
            break;
        }

        case StrategyKind::custom:
            if (strategy.table().size() != n)
                throw Error(Errc::dimension_mismatch, "Custom phase table has " + std::to_string(strategy.table().size()) +
                                                          " entries, grid has " + std::to_string(n));
            phases = strategy.table();
            break;
        }
    }

    std::vector<double> evaluate(const PhaseStrategy &strategy, const ChannelSnapshot &snap)
    {
        std::vector<double> phases;
        evaluate_into(strategy, snap, phases);
        return phases;
    }

    std::vector<double> phase_rates(const PhaseStrategy &strategy, const ChannelSnapshot &snap)
    {
        std::vector<double> rates(snap.size(), 0.0);
        if (strategy.tracks_paths())
        {
            const double two_pi_fc = two_pi * snap.carrier_frequency;
            for (std::size_t i = 0; i < rates.size(); ++i)
                rates[i] = -two_pi_fc * snap.relative_rate[i];
        }
        return rates;
    }

    double doppler_spread(const ChannelSnapshot &snap, const PhaseStrategy &strategy)
    {
        return strategy.tracks_paths() ? doppler_spread_tracking(snap) : doppler_spread_static(snap);
    }

    double doppler_spread(const Scene &scene, const PhaseStrategy &strategy, double t)
    {
        const ChannelSnapshot snap = snapshot(scene, t);
        return doppler_spread(snap, phase_rates(strategy, snap));
    }
}
