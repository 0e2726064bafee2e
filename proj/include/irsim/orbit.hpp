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

#ifndef IRSIM_ORBIT_HPP
#define IRSIM_ORBIT_HPP

#include "irsim/propagation.hpp"

namespace irsim
{
    inline constexpr double earth_gravitational_parameter = 3.986004e14; // [m^3/s^2]

    struct EarthModel
    {
        double radius = 6371e3; // [m]
    };

    // Circular Keplerian orbit in the plane z = center.z, traversed in +x direction at t = 0:
    // p(t) = center + r (sin a, cos a, 0), a = sqrt(mu / r^3) t
    class CircularOrbit final : public Trajectory
    {
    public:
        CircularOrbit(double radius, double gravitational_parameter, const Point3 &center);

        Point3 position(double t) const override;
        Vec3 velocity(double t) const override;

        double radius() const { return radius_; }
        double gravitational_parameter() const { return mu_; }
        const Point3 &center() const { return center_; }
        double angular_rate() const { return rate_; }
        double speed() const { return radius_ * rate_; }
        double period() const;

    private:
        double radius_;
        double mu_;
        Point3 center_;
        double rate_;
    };

    // Orbit passing over the IRS: p(0) = (0, altitude - irs_ground_elevation, plane_offset),
    // center = p(0) - (0, R_E + altitude, 0)
    CircularOrbit orbit_from_scenario(double altitude, const EarthModel &earth, double irs_ground_elevation,
                                      double plane_offset, double gravitational_parameter = earth_gravitational_parameter);

    // Elevation of sat above the local horizon at ground_point [rad]
    double elevation_angle(const Point3 &earth_center, const Point3 &ground_point, const Point3 &sat);

    struct PassWindow
    {
        double t_start = 0.0;
        double t_end = 0.0;
    };

    // Maximal interval around t = 0 with elevation >= min_elevation, as seen from ground_point.
    // The orbit center doubles as the Earth center.
    PassWindow pass_window(const CircularOrbit &orbit, const EarthModel &earth, const Point3 &ground_point, double min_elevation);
}

#endif
