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

#include "irsim/geometry.hpp"
#include "irsim/error.hpp"

#include <algorithm>
#include <string>

namespace irsim
{
    void IrsLayout::validate() const
    {
        if (cols < 1 || rows < 1)
            throw Error(Errc::invalid_layout, "IRS layout needs at least one row and one column, got " +
                                                  std::to_string(cols) + " x " + std::to_string(rows));
        if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy))
            throw Error(Errc::invalid_layout, "IRS element pitch must be positive and finite");
    }

    Pose::Pose(const Mat3 &rotation, const Point3 &origin) : rotation_(rotation), origin_(origin)
    {
        if (!origin.finite())
            throw Error(Errc::invalid_argument, "Pose origin must be finite");

        // R^T R = I and det R = +1
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
            {
                double s = 0.0;
                for (int k = 0; k < 3; ++k)
                    s += rotation[k][i] * rotation[k][j];
                worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
            }
        const auto &r = rotation;
        double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                     r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                     r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        if (!(worst <= 1e-12) || !(std::abs(det - 1.0) <= 1e-12))
            throw Error(Errc::invalid_argument, "Pose rotation is not a proper orthonormal matrix");
    }

    Vec3 Pose::rotate(const Vec3 &v) const
    {
        const auto &r = rotation_;
        return {r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z,
                r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
                r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z};
    }

    Vec3 Pose::rotate_inverse(const Vec3 &v) const
    {
        const auto &r = rotation_;
        return {r[0][0] * v.x + r[1][0] * v.y + r[2][0] * v.z,
                r[0][1] * v.x + r[1][1] * v.y + r[2][1] * v.z,
                r[0][2] * v.x + r[1][2] * v.y + r[2][2] * v.z};
    }

    std::vector<int> grid_indices(int count)
    {
        if (count < 1)
            throw Error(Errc::invalid_layout, "Grid needs at least one element, got " + std::to_string(count));
        const int last = count / 2;
        const int first = floor_mod(count + 1, 2) - last;
        std::vector<int> out;
        out.reserve(std::size_t(count));
        for (int i = first; i <= last; ++i)
            out.push_back(i);
        return out;
    }

    double grid_offset(int index, double pitch, int count)
    {
        return double(index) * pitch - 0.5 * pitch * double(floor_mod(count + 1, 2));
    }

    Point3 element_center(int m, int n, const IrsLayout &layout)
    {
        layout.validate();
        auto in_set = [](int i, int count)
        {
            const int last = count / 2;
            return i >= floor_mod(count + 1, 2) - last && i <= last;
        };
        if (!in_set(m, layout.cols) || !in_set(n, layout.rows))
            throw Error(Errc::out_of_grid, "Element (" + std::to_string(m) + ", " + std::to_string(n) +
                                               ") is outside the " + std::to_string(layout.cols) + " x " +
                                               std::to_string(layout.rows) + " grid");
        return {grid_offset(m, layout.dx, layout.cols), grid_offset(n, layout.dy, layout.rows), 0.0};
    }

    Direction direction_angles(const Point3 &p1, const Point3 &p2)
    {
        const Vec3 d = p2 - p1;
        const double len = d.norm();
        if (!(len > 0.0))
            throw Error(Errc::degenerate_geometry, "Direction between coincident points is undefined");

        Direction out;
        out.polar = std::acos(std::clamp(d.z / len, -1.0, 1.0));
        if (d.x == 0.0 && d.y == 0.0)
            out.azimuth = 0.0;
        else
        {
            double az = std::atan2(d.y, d.x);
            if (az < 0.0)
                az += 2.0 * std::numbers::pi;
            // atan2 of a tiny negative y can round up to exactly 2 pi
            out.azimuth = (az >= 2.0 * std::numbers::pi) ? 0.0 : az;
        }
        return out;
    }

    Pose uptilt_pose(double degrees, const Point3 &origin)
    {
        if (!(degrees >= 0.0 && degrees <= 90.0))
            throw Error(Errc::invalid_argument, "Uptilt must be within [0, 90] degrees");
        const double rho = degrees * std::numbers::pi / 180.0;
        const double c = std::cos(rho), s = std::sin(rho);
        // Rotation about x by -rho: frame +z maps to (0, sin, cos), frame +y to (0, cos, -sin)
        Mat3 r{{{1.0, 0.0, 0.0}, {0.0, c, s}, {0.0, -s, c}}};
        return Pose(r, origin);
    }

    Point3 to_frame(const Pose &pose, const Point3 &p_world)
    {
        return pose.rotate_inverse(p_world - pose.origin());
    }

    Point3 to_world(const Pose &pose, const Point3 &p_frame)
    {
        return pose.rotate(p_frame) + pose.origin();
    }
}
