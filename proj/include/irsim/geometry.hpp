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

#ifndef IRSIM_GEOMETRY_HPP
#define IRSIM_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace irsim
{
    // Cartesian vector in meters (positions) or meters per second (velocities)
    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr Vec3 operator-() const { return {-x, -y, -z}; }
        constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
        constexpr bool operator==(const Vec3 &) const = default;

        constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
        constexpr Vec3 cross(const Vec3 &o) const
        {
            return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
        }
        double norm() const { return std::hypot(x, y, z); }
        bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    };

    constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

    using Point3 = Vec3;

    // Spherical direction: polar angle from +z in [0, pi], azimuth from +x in [0, 2 pi)
    struct Direction
    {
        double polar = 0.0;
        double azimuth = 0.0;
    };

    // Rectangular IRS grid with M columns (along x) and N rows (along y)
    struct IrsLayout
    {
        int cols = 1;     // M
        int rows = 1;     // N
        double dx = 0.0;  // column pitch [m]
        double dy = 0.0;  // row pitch [m]

        std::size_t size() const { return std::size_t(cols) * std::size_t(rows); }
        void validate() const;
    };

    using Mat3 = std::array<std::array<double, 3>, 3>;

    // Rigid placement of the IRS board frame in world coordinates.
    // world = rotation * frame + origin
    class Pose
    {
    public:
        Pose() = default; // identity at the origin
        Pose(const Mat3 &rotation, const Point3 &origin);

        const Mat3 &rotation() const { return rotation_; }
        const Point3 &origin() const { return origin_; }

        // World image of the board normal (frame +z)
        Vec3 normal() const { return {rotation_[0][2], rotation_[1][2], rotation_[2][2]}; }

        Vec3 rotate(const Vec3 &v) const;         // rotation * v
        Vec3 rotate_inverse(const Vec3 &v) const; // rotation^T * v

    private:
        Mat3 rotation_{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
        Point3 origin_{};
    };

    // Floored modulo, result in [0, divisor) for divisor > 0
    inline double floor_mod(double value, double divisor) { return value - divisor * std::floor(value / divisor); }
    inline int floor_mod(int value, int divisor)
    {
        int r = value % divisor;
        return (r < 0) ? r + divisor : r;
    }

    // Index set G(M) = {mod(M+1,2) - floor(M/2), ..., floor(M/2)}
    std::vector<int> grid_indices(int count);

    // Offset along one board axis of element index i, g(i, pitch, count)
    double grid_offset(int index, double pitch, int count);

    // Center of element (m, n) in the board frame
    Point3 element_center(int m, int n, const IrsLayout &layout);

    // Angles of p2 as seen from p1
    Direction direction_angles(const Point3 &p1, const Point3 &p2);

    // Board tilted about its x-axis so that the normal becomes (0, sin, cos) of the uptilt angle
    Pose uptilt_pose(double degrees, const Point3 &origin = {});

    Point3 to_frame(const Pose &pose, const Point3 &p_world);
    Point3 to_world(const Pose &pose, const Point3 &p_frame);
}

#endif
