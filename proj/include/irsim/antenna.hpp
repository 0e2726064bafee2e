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

#ifndef IRSIM_ANTENNA_HPP
#define IRSIM_ANTENNA_HPP

#include "irsim/geometry.hpp"

#include <string_view>

namespace irsim
{
    enum class PatternKind
    {
        isotropic_full,       // G = 1 everywhere
        isotropic_hemisphere, // G = 1 in front (theta < pi/2), 0 behind
        planar_element        // G = 4 pi dx dy cos(theta) / lambda^2 in front, 0 behind
    };

    // Azimuth-independent antenna gain pattern. Polar angles are measured from the
    // local +z axis of whatever frame the pattern is evaluated in.
    class GainPattern
    {
    public:
        GainPattern() = default; // isotropic-full

        static GainPattern isotropic() { return GainPattern(PatternKind::isotropic_full, 0.0, 0.0, 0.0); }
        static GainPattern hemisphere() { return GainPattern(PatternKind::isotropic_hemisphere, 0.0, 0.0, 0.0); }
        static GainPattern planar(double dx, double dy, double wavelength);

        PatternKind kind() const { return kind_; }
        double dx() const { return dx_; }
        double dy() const { return dy_; }
        double wavelength() const { return wavelength_; }

        // Gain expressed through cos(theta); shared by the direction API and the kernels
        double gain_cos(double cos_polar) const
        {
            return cos_polar > 0.0 ? front_const_ + front_slope_ * cos_polar : back_const_;
        }

        // Piecewise-linear coefficients: cos > 0 -> front_const + front_slope * cos, else back_const
        double front_const() const { return front_const_; }
        double front_slope() const { return front_slope_; }
        double back_const() const { return back_const_; }

    private:
        GainPattern(PatternKind kind, double dx, double dy, double wavelength);

        PatternKind kind_ = PatternKind::isotropic_full;
        double dx_ = 0.0, dy_ = 0.0, wavelength_ = 0.0;
        double front_const_ = 1.0, front_slope_ = 0.0, back_const_ = 1.0;
    };

    // Linear gain in the given direction
    double gain(const GainPattern &pattern, const Direction &dir);

    // Effective aperture G * lambda^2 / (4 pi) [m^2]
    double effective_area(const GainPattern &pattern, const Direction &dir, double wavelength);

    std::string_view to_string(PatternKind kind);
}

#endif
