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

#include "irsim/orbit.hpp"
#include "irsim/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace irsim
{
    CircularOrbit::CircularOrbit(double radius, double gravitational_parameter, const Point3 &center)
        : radius_(radius), mu_(gravitational_parameter), center_(center)
    {
        if (!(radius > 0.0) || !(gravitational_parameter > 0.0) || !center.finite())
            throw Error(Errc::invalid_argument, "Circular orbit needs a positive radius and gravitational parameter");
        rate_ = std::sqrt(mu_ / (radius_ * radius_ * radius_));
    }

    Point3 CircularOrbit::position(double t) const
    {
        const double a = rate_ * t;
        return center_ + Vec3{radius_ * std::sin(a), radius_ * std::cos(a), 0.0};
    }

    Vec3 CircularOrbit::velocity(double t) const
    {
        const double a = rate_ * t;
        const double v = radius_ * rate_;
        return {v * std::cos(a), -v * std::sin(a), 0.0};
    }

    double CircularOrbit::period() const { return 2.0 * std::numbers::pi / rate_; }

    CircularOrbit orbit_from_scenario(double altitude, const EarthModel &earth, double irs_ground_elevation,
                                      double plane_offset, double gravitational_parameter)
    {
        if (!(altitude > 0.0))
            throw Error(Errc::invalid_argument, "Orbit altitude must be positive");
        if (!(earth.radius > 0.0))
            throw Error(Errc::invalid_argument, "Earth radius must be positive");
        const double r_o = earth.radius + altitude;
        const Point3 start{0.0, altitude - irs_ground_elevation, plane_offset};
        return CircularOrbit(r_o, gravitational_parameter, start - Vec3{0.0, r_o, 0.0});
    }

    double elevation_angle(const Point3 &earth_center, const Point3 &ground_point, const Point3 &sat)
    {
        const Vec3 up = ground_point - earth_center;
        const Vec3 los = sat - ground_point;
        const double up_len = up.norm(), los_len = los.norm();
        if (!(up_len > 0.0) || !(los_len > 0.0))
            throw Error(Errc::degenerate_geometry, "Elevation angle needs distinct earth center, ground point and satellite");
        // angle between local up and line of sight, robust near 0 and pi
        const double zenith = std::atan2(up.cross(los).norm(), up.dot(los));
        return 0.5 * std::numbers::pi - zenith;
    }

    PassWindow pass_window(const CircularOrbit &orbit, const EarthModel &earth, const Point3 &ground_point, double min_elevation)
    {
        if (!(orbit.radius() > earth.radius))
            throw Error(Errc::invalid_argument, "Orbit radius must exceed the Earth radius");
        auto elevation = [&](double t)
        { return elevation_angle(orbit.center(), ground_point, orbit.position(t)); };

        if (!(elevation(0.0) > min_elevation))
            throw Error(Errc::no_pass, "Satellite is below the minimum elevation at t = 0");

        const double half_period = 0.5 * orbit.period();
        const double step = orbit.period() / 720.0;

        // Walk outward until the satellite drops below the mask, then bisect the crossing
        auto crossing = [&](double direction)
        {
            double inside = 0.0, outside = 0.0;
            bool found = false;
            for (double t = step; t <= half_period + step; t += step)
            {
                if (elevation(direction * t) < min_elevation)
                {
                    outside = direction * t;
                    found = true;
                    break;
                }
                inside = direction * t;
            }
            if (!found)
                throw Error(Errc::no_pass, "Satellite never drops below the minimum elevation");
            while (std::abs(outside - inside) > 1e-9)
            {
                const double mid = 0.5 * (inside + outside);
                if (mid == inside || mid == outside)
                    break;
                (elevation(mid) >= min_elevation ? inside : outside) = mid;
            }
            return inside;
        };

        return {crossing(-1.0), crossing(1.0)};
    }
}
