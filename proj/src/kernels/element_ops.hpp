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

#ifndef IRSIM_KERNELS_ELEMENT_OPS_HPP
#define IRSIM_KERNELS_ELEMENT_OPS_HPP

// Single-element versions of the kernel math. The scalar backend is built
// from these, and the SIMD backends use them for loop remainders.

#include "irsim/kernels.hpp"

#include <cmath>
#include <numbers>

namespace irsim::kernels::detail
{
    inline constexpr double two_pi = 2.0 * std::numbers::pi;
    inline constexpr double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);

    inline double pattern_gain(const PatternCoeffs &p, double c)
    {
        return c > 0.0 ? p.front_const + p.front_slope * c : p.back_const;
    }

    inline void trace_one(const ElementField &f, const TraceParams &p, const TraceOutputs &out, std::size_t i)
    {
        const double bx = p.rx[0] - f.px[i];
        const double by = p.rx[1] - f.py[i];
        const double bz = p.rx[2] - f.pz[i];
        const double blen = std::sqrt(bx * bx + by * by + bz * bz);
        const double inv_b = 1.0 / blen;

        const double cos_el = (p.normal[0] * bx + p.normal[1] * by + p.normal[2] * bz) * inv_b;
        const double cos_rx = -bz * inv_b;
        const double g = pattern_gain(p.element, cos_el) * pattern_gain(p.receiver, cos_rx);
        out.amplitude[i] = f.static_amp[i] * std::sqrt(g) * inv_b;

        // |a| + |b| - |c| without cancellation:
        // |a||b| - a.b = |a x b|^2 / (|a||b| + a.b) when a.b > 0
        const double ax = f.ax[i], ay = f.ay[i], az = f.az[i];
        const double alen = f.tx_leg[i];
        const double ab = ax * bx + ay * by + az * bz;
        const double cx = ay * bz - az * by;
        const double cy = az * bx - ax * bz;
        const double cz = ax * by - ay * bx;
        const double prod = alen * blen;
        const double gap = ab > 0.0 ? (cx * cx + cy * cy + cz * cz) / (prod + ab) : prod - ab;
        const double excess = 2.0 * gap / (alen + blen + p.direct_len);
        out.excess_cycles[i] = excess * p.cycles_per_meter;

        const double rate = (bx * p.vel[0] + by * p.vel[1] + bz * p.vel[2]) * inv_b;
        out.relative_rate[i] = (rate - p.direct_rate) * p.inv_c0;
    }

    // Fractional part in [-0.5, 0.5] of the total path phase in cycles
    inline double wrapped_cycles(double cycles, double phase)
    {
        // wrap the large path term on its own first so its fraction stays exact
        const double t = (cycles - std::nearbyint(cycles)) + phase * inv_two_pi;
        return t - std::nearbyint(t);
    }
}

#endif
