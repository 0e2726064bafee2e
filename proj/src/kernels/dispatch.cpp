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
#include "irsim/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace irsim::kernels
{
    namespace
    {
        bool cpu_has_avx2()
        {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        }

        Backend initial_backend()
        {
            if (const char *env = std::getenv("IRSIM_KERNELS"))
            {
                const std::string choice(env);
                if (choice == "scalar")
                    return Backend::scalar;
                if (choice == "avx2" && avx2_supported())
                    return Backend::avx2;
            }
            return avx2_supported() ? Backend::avx2 : Backend::scalar;
        }

        std::atomic<Backend> &backend_slot()
        {
            static std::atomic<Backend> slot{initial_backend()};
            return slot;
        }
    }

    std::string_view to_string(Backend backend)
    {
        return backend == Backend::avx2 ? "avx2" : "scalar";
    }

    bool avx2_supported()
    {
        static const bool supported = avx2::compiled() && cpu_has_avx2();
        return supported;
    }

    Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

    void set_backend(Backend backend)
    {
        if (backend == Backend::avx2 && !avx2_supported())
            throw Error(Errc::invalid_argument, "AVX2 kernels are not available on this machine");
        backend_slot().store(backend, std::memory_order_relaxed);
    }

    void trace_paths(const ElementField &field, const TraceParams &params, const TraceOutputs &out)
    {
        if (active_backend() == Backend::avx2)
            avx2::trace_paths(field, params, out);
        else
            scalar::trace_paths(field, params, out);
    }

    Phasor phasor_sum(std::span<const double> amplitude, std::span<const double> cycles, std::span<const double> phase)
    {
        if (active_backend() == Backend::avx2)
            return avx2::phasor_sum(amplitude, cycles, phase);
        return scalar::phasor_sum(amplitude, cycles, phase);
    }

    double amplitude_sum(std::span<const double> amplitude)
    {
        if (active_backend() == Backend::avx2)
            return avx2::amplitude_sum(amplitude);
        return scalar::amplitude_sum(amplitude);
    }
}
