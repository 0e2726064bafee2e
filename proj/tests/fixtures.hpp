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

// Scene builders shared by the test suites

#ifndef IRSIM_TESTS_FIXTURES_HPP
#define IRSIM_TESTS_FIXTURES_HPP

#include "irsim/propagation.hpp"

#include <memory>
#include <random>

namespace fixture
{
    using namespace irsim;

    inline Vec3 random_unit(std::mt19937_64 &rng)
    {
        std::normal_distribution<double> g;
        for (;;)
        {
            Vec3 v{g(rng), g(rng), g(rng)};
            double n = v.norm();
            if (n > 1e-6)
                return v / n;
        }
    }

    inline GainPattern random_pattern(std::mt19937_64 &rng, double dx, double dy, double lambda)
    {
        switch (std::uniform_int_distribution<int>(0, 2)(rng))
        {
        case 0:
            return GainPattern::isotropic();
        case 1:
            return GainPattern::hemisphere();
        default:
            return GainPattern::planar(dx, dy, lambda);
        }
    }

    struct RandomSceneOptions
    {
        int max_cols = 4;
        int max_rows = 4;
        double rx_min_distance = 1e3;
        double rx_max_distance = 1e5;
        double max_speed = 1e3;
    };

    // Small IRS with random pose and patterns, transmitter within 1 km,
    // receiver on a straight line some distance away
    inline SceneParams random_params(std::mt19937_64 &rng, const RandomSceneOptions &opt = {})
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        SceneParams p;
        p.carrier_frequency = 5e8 * std::pow(20.0, u(rng));
        const double lambda = speed_of_light / p.carrier_frequency;

        IrsLayout layout;
        layout.cols = std::uniform_int_distribution<int>(1, opt.max_cols)(rng);
        layout.rows = std::uniform_int_distribution<int>(1, opt.max_rows)(rng);
        layout.dx = lambda * (0.05 + 0.45 * u(rng));
        layout.dy = lambda * (0.05 + 0.45 * u(rng));
        Point3 origin{10.0 * (u(rng) - 0.5), 10.0 * (u(rng) - 0.5), 10.0 * (u(rng) - 0.5)};
        Pose pose = uptilt_pose(90.0 * u(rng), origin);
        IrsSurface irs{layout, pose, random_pattern(rng, layout.dx, layout.dy, lambda), u(rng)};

        p.tx_position = origin + random_unit(rng) * (1.0 + 999.0 * u(rng));
        p.tx_pattern = u(rng) < 0.5 ? GainPattern::isotropic() : GainPattern::hemisphere();
        p.rx_pattern = u(rng) < 0.5 ? GainPattern::isotropic() : GainPattern::hemisphere();
        Point3 rx0 = origin + random_unit(rng) * (opt.rx_min_distance + (opt.rx_max_distance - opt.rx_min_distance) * u(rng));
        Vec3 vel = random_unit(rng) * (opt.max_speed * u(rng));
        p.rx_trajectory = std::make_shared<LinearTrajectory>(rx0, vel);
        p.irs = irs;
        p.tx_power = 0.1 + 10.0 * u(rng);
        return p;
    }

    // 2 x 2 board at the origin with both terminals within a wavelength or two, so that
    // the four element paths are comparable to the direct path
    inline Scene toy_scene()
    {
        SceneParams p;
        p.carrier_frequency = 2e9;
        const double lambda = speed_of_light / p.carrier_frequency;
        IrsLayout layout{2, 2, lambda / 2.0, lambda / 2.0};
        p.irs = IrsSurface{layout, Pose{}, GainPattern::isotropic(), 1.0};
        p.tx_position = {0.11, -0.07, 0.21};
        p.tx_pattern = GainPattern::isotropic();
        p.rx_pattern = GainPattern::isotropic();
        p.rx_trajectory = std::make_shared<LinearTrajectory>(Point3{-0.13, 0.09, 0.27}, Vec3{3.0, -1.0, 0.5});
        return Scene(p);
    }
}

#endif
