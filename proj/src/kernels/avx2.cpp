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

#if defined(IRSIM_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace irsim::kernels::avx2
{
#if defined(IRSIM_HAVE_AVX2)

    bool compiled() { return true; }

    namespace
    {
        inline __m256d pattern_gain(const PatternCoeffs &p, __m256d c)
        {
            const __m256d front = _mm256_fmadd_pd(_mm256_set1_pd(p.front_slope), c, _mm256_set1_pd(p.front_const));
            const __m256d is_front = _mm256_cmp_pd(c, _mm256_setzero_pd(), _CMP_GT_OQ);
            return _mm256_blendv_pd(_mm256_set1_pd(p.back_const), front, is_front);
        }

        // sin and cos of z for |z| <= pi/4, Taylor series through z^17 / z^16
        inline void sincos_reduced(__m256d z, __m256d &s, __m256d &c)
        {
            const __m256d z2 = _mm256_mul_pd(z, z);
            __m256d ps = _mm256_set1_pd(1.0 / 355687428096000.0); // 1/17!
            ps = _mm256_fmadd_pd(ps, z2, _mm256_set1_pd(-1.0 / 1307674368000.0));
            ps = _mm256_fmadd_pd(ps, z2, _mm256_set1_pd(1.0 / 6227020800.0));
            ps = _mm256_fmadd_pd(ps, z2, _mm256_set1_pd(-1.0 / 39916800.0));
            ps = _mm256_fmadd_pd(ps, z2, _mm256_set1_pd(1.0 / 362880.0));
            ps = _mm256_fmadd_pd(ps, z2, _mm256_set1_pd(-1.0 / 5040.0));
            ps = _mm256_fmadd_pd(ps, z2, _mm256_set1_pd(1.0 / 120.0));
            ps = _mm256_fmadd_pd(ps, z2, _mm256_set1_pd(-1.0 / 6.0));
            ps = _mm256_mul_pd(ps, z2);
            s = _mm256_fmadd_pd(ps, z, z);

            __m256d pc = _mm256_set1_pd(1.0 / 20922789888000.0); // 1/16!
            pc = _mm256_fmadd_pd(pc, z2, _mm256_set1_pd(-1.0 / 87178291200.0));
            pc = _mm256_fmadd_pd(pc, z2, _mm256_set1_pd(1.0 / 479001600.0));
            pc = _mm256_fmadd_pd(pc, z2, _mm256_set1_pd(-1.0 / 3628800.0));
            pc = _mm256_fmadd_pd(pc, z2, _mm256_set1_pd(1.0 / 40320.0));
            pc = _mm256_fmadd_pd(pc, z2, _mm256_set1_pd(-1.0 / 720.0));
            pc = _mm256_fmadd_pd(pc, z2, _mm256_set1_pd(1.0 / 24.0));
            pc = _mm256_fmadd_pd(pc, z2, _mm256_set1_pd(-0.5));
            c = _mm256_fmadd_pd(pc, z2, _mm256_set1_pd(1.0));
        }

        // sin and cos of 2 pi f for f in [-0.5, 0.5]
        inline void sincos_cycles(__m256d f, __m256d &s, __m256d &c)
        {
            constexpr int nearest = _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC;
            const __m256d y = _mm256_mul_pd(f, _mm256_set1_pd(4.0));
            const __m256d q = _mm256_round_pd(y, nearest); // quadrant in {-2, ..., 2}
            const __m256d z = _mm256_mul_pd(_mm256_sub_pd(y, q), _mm256_set1_pd(0.5 * std::numbers::pi));

            __m256d sz, cz;
            sincos_reduced(z, sz, cz);

            const __m256d abs_q = _mm256_andnot_pd(_mm256_set1_pd(-0.0), q);
            const __m256d swap = _mm256_cmp_pd(abs_q, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
            const __m256d half_turn = _mm256_cmp_pd(abs_q, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
            const __m256d q_neg1 = _mm256_cmp_pd(q, _mm256_set1_pd(-1.0), _CMP_EQ_OQ);
            const __m256d q_pos1 = _mm256_cmp_pd(q, _mm256_set1_pd(1.0), _CMP_EQ_OQ);

            const __m256d sign = _mm256_set1_pd(-0.0);
            const __m256d s_flip = _mm256_and_pd(_mm256_or_pd(half_turn, q_neg1), sign);
            const __m256d c_flip = _mm256_and_pd(_mm256_or_pd(half_turn, q_pos1), sign);

            s = _mm256_xor_pd(_mm256_blendv_pd(sz, cz, swap), s_flip);
            c = _mm256_xor_pd(_mm256_blendv_pd(cz, sz, swap), c_flip);
        }

        inline double horizontal_sum(__m256d v)
        {
            alignas(32) double lanes[4];
            _mm256_store_pd(lanes, v);
            return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
        }
    }

    void trace_paths(const ElementField &f, const TraceParams &p, const TraceOutputs &out)
    {
        const std::size_t n = f.size();
        const __m256d rx = _mm256_set1_pd(p.rx[0]), ry = _mm256_set1_pd(p.rx[1]), rz = _mm256_set1_pd(p.rx[2]);
        const __m256d vx = _mm256_set1_pd(p.vel[0]), vy = _mm256_set1_pd(p.vel[1]), vz = _mm256_set1_pd(p.vel[2]);
        const __m256d nx = _mm256_set1_pd(p.normal[0]), ny = _mm256_set1_pd(p.normal[1]), nz = _mm256_set1_pd(p.normal[2]);
        const __m256d one = _mm256_set1_pd(1.0), two = _mm256_set1_pd(2.0), zero = _mm256_setzero_pd();
        const __m256d clen = _mm256_set1_pd(p.direct_len);
        const __m256d crate = _mm256_set1_pd(p.direct_rate);
        const __m256d cpm = _mm256_set1_pd(p.cycles_per_meter);
        const __m256d inv_c0 = _mm256_set1_pd(p.inv_c0);
        const __m256d neg = _mm256_set1_pd(-0.0);

        std::size_t i = 0;
        for (; i + 4 <= n; i += 4)
        {
            const __m256d bx = _mm256_sub_pd(rx, _mm256_loadu_pd(f.px.data() + i));
            const __m256d by = _mm256_sub_pd(ry, _mm256_loadu_pd(f.py.data() + i));
            const __m256d bz = _mm256_sub_pd(rz, _mm256_loadu_pd(f.pz.data() + i));
            const __m256d b2 = _mm256_fmadd_pd(bz, bz, _mm256_fmadd_pd(by, by, _mm256_mul_pd(bx, bx)));
            const __m256d blen = _mm256_sqrt_pd(b2);
            const __m256d inv_b = _mm256_div_pd(one, blen);

            const __m256d nb = _mm256_fmadd_pd(nz, bz, _mm256_fmadd_pd(ny, by, _mm256_mul_pd(nx, bx)));
            const __m256d cos_el = _mm256_mul_pd(nb, inv_b);
            const __m256d cos_rx = _mm256_mul_pd(_mm256_xor_pd(bz, neg), inv_b);
            const __m256d g = _mm256_mul_pd(pattern_gain(p.element, cos_el), pattern_gain(p.receiver, cos_rx));
            const __m256d amp = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(f.static_amp.data() + i), _mm256_sqrt_pd(g)), inv_b);
            _mm256_storeu_pd(out.amplitude.data() + i, amp);

            const __m256d ax = _mm256_loadu_pd(f.ax.data() + i);
            const __m256d ay = _mm256_loadu_pd(f.ay.data() + i);
            const __m256d az = _mm256_loadu_pd(f.az.data() + i);
            const __m256d alen = _mm256_loadu_pd(f.tx_leg.data() + i);
            const __m256d ab = _mm256_fmadd_pd(az, bz, _mm256_fmadd_pd(ay, by, _mm256_mul_pd(ax, bx)));
            const __m256d cx = _mm256_fmsub_pd(ay, bz, _mm256_mul_pd(az, by));
            const __m256d cy = _mm256_fmsub_pd(az, bx, _mm256_mul_pd(ax, bz));
            const __m256d cz = _mm256_fmsub_pd(ax, by, _mm256_mul_pd(ay, bx));
            const __m256d cross2 = _mm256_fmadd_pd(cz, cz, _mm256_fmadd_pd(cy, cy, _mm256_mul_pd(cx, cx)));
            const __m256d prod = _mm256_mul_pd(alen, blen);
            const __m256d acute = _mm256_cmp_pd(ab, zero, _CMP_GT_OQ);
            const __m256d gap = _mm256_blendv_pd(_mm256_sub_pd(prod, ab), _mm256_div_pd(cross2, _mm256_add_pd(prod, ab)), acute);
            const __m256d excess = _mm256_div_pd(_mm256_mul_pd(two, gap), _mm256_add_pd(_mm256_add_pd(alen, blen), clen));
            _mm256_storeu_pd(out.excess_cycles.data() + i, _mm256_mul_pd(excess, cpm));

            const __m256d bv = _mm256_fmadd_pd(bz, vz, _mm256_fmadd_pd(by, vy, _mm256_mul_pd(bx, vx)));
            const __m256d rate = _mm256_mul_pd(bv, inv_b);
            _mm256_storeu_pd(out.relative_rate.data() + i, _mm256_mul_pd(_mm256_sub_pd(rate, crate), inv_c0));
        }
        for (; i < n; ++i)
            detail::trace_one(f, p, out, i);
    }

    Phasor phasor_sum(std::span<const double> amplitude, std::span<const double> cycles, std::span<const double> phase)
    {
        constexpr int nearest = _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC;
        const std::size_t n = amplitude.size();
        const __m256d inv_two_pi = _mm256_set1_pd(detail::inv_two_pi);
        __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();

        std::size_t i = 0;
        for (; i + 4 <= n; i += 4)
        {
            const __m256d x = _mm256_loadu_pd(cycles.data() + i);
            const __m256d t = _mm256_fmadd_pd(_mm256_loadu_pd(phase.data() + i), inv_two_pi, _mm256_sub_pd(x, _mm256_round_pd(x, nearest)));
            const __m256d frac = _mm256_sub_pd(t, _mm256_round_pd(t, nearest));
            __m256d s, c;
            sincos_cycles(frac, s, c);
            const __m256d a = _mm256_loadu_pd(amplitude.data() + i);
            acc_re = _mm256_fmadd_pd(a, c, acc_re);
            acc_im = _mm256_fnmadd_pd(a, s, acc_im);
        }

        Phasor out{horizontal_sum(acc_re), horizontal_sum(acc_im)};
        for (; i < n; ++i)
        {
            const double angle = detail::two_pi * detail::wrapped_cycles(cycles[i], phase[i]);
            out.re += amplitude[i] * std::cos(angle);
            out.im -= amplitude[i] * std::sin(angle);
        }
        return out;
    }

    double amplitude_sum(std::span<const double> amplitude)
    {
        const std::size_t n = amplitude.size();
        __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 8 <= n; i += 8)
        {
            acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(amplitude.data() + i));
            acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(amplitude.data() + i + 4));
        }
        double out = horizontal_sum(_mm256_add_pd(acc0, acc1));
        for (; i < n; ++i)
            out += amplitude[i];
        return out;
    }

#else

    bool compiled() { return false; }

    void trace_paths(const ElementField &field, const TraceParams &params, const TraceOutputs &out)
    {
        scalar::trace_paths(field, params, out);
    }

    Phasor phasor_sum(std::span<const double> amplitude, std::span<const double> cycles, std::span<const double> phase)
    {
        return scalar::phasor_sum(amplitude, cycles, phase);
    }

    double amplitude_sum(std::span<const double> amplitude) { return scalar::amplitude_sum(amplitude); }

#endif
}
