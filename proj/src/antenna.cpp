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

#include "irsim/antenna.hpp"
#include "irsim/error.hpp"

#include <numbers>

namespace irsim
{
    GainPattern::GainPattern(PatternKind kind, double dx, double dy, double wavelength)
        : kind_(kind), dx_(dx), dy_(dy), wavelength_(wavelength)
    {
        switch (kind)
        {
        case PatternKind::isotropic_full:
            front_const_ = 1.0, front_slope_ = 0.0, back_const_ = 1.0;
            break;
        case PatternKind::isotropic_hemisphere:
            front_const_ = 1.0, front_slope_ = 0.0, back_const_ = 0.0;
            break;
        case PatternKind::planar_element:
            front_const_ = 0.0;
            front_slope_ = 4.0 * std::numbers::pi * dx * dy / (wavelength * wavelength);
            back_const_ = 0.0;
            break;
        }
    }

    GainPattern GainPattern::planar(double dx, double dy, double wavelength)
    {
        if (!(dx > 0.0) || !(dy > 0.0) || !(wavelength > 0.0))
            throw Error(Errc::invalid_argument, "Planar element pattern needs positive dx, dy and wavelength");
        return GainPattern(PatternKind::planar_element, dx, dy, wavelength);
    }

    double gain(const GainPattern &pattern, const Direction &dir)
    {
        // The closed back hemisphere [pi/2, pi] has zero gain for one-sided patterns
        if (dir.polar >= 0.5 * std::numbers::pi)
            return pattern.back_const();
        return pattern.gain_cos(std::cos(dir.polar));
    }

    double effective_area(const GainPattern &pattern, const Direction &dir, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw Error(Errc::invalid_argument, "Wavelength must be positive");
        return gain(pattern, dir) * wavelength * wavelength / (4.0 * std::numbers::pi);
    }

    std::string_view to_string(PatternKind kind)
    {
        switch (kind)
        {
        case PatternKind::isotropic_full:
            return "isotropic-full";
        case PatternKind::isotropic_hemisphere:
            return "isotropic-hemisphere";
        case PatternKind::planar_element:
            return "planar-element";
        }
        return "unknown";
    }
}
