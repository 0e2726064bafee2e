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

#include "irsim/kernels.hpp"
#include "element_ops.hpp"

namespace irsim::kernels::scalar
{
    void trace_paths(const ElementField &field, const TraceParams &params, const TraceOutputs &out)
    {
        const std::size_t n = field.size();
        for (std::size_t i = 0; i < n; ++i)
            detail::trace_one(field, params, out, i);
    }

    Phasor phasor_sum(std::span<const double> amplitude, std::span<const double> cycles, std::span<const double> phase)
    {
        Phasor acc;
        for (std::size_t i = 0; i < amplitude.size(); ++i)
        {
            const double angle = detail::two_pi * detail::wrapped_cycles(cycles[i], phase[i]);
            acc.re += amplitude[i] * std::cos(angle);
            acc.im -= amplitude[i] * std::sin(angle);
        }
        return acc;
    }

    double amplitude_sum(std::span<const double> amplitude)
    {
        double acc = 0.0;
        for (double a : amplitude)
            acc += a;
        return acc;
    }
}
