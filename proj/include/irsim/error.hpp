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

#ifndef IRSIM_ERROR_HPP
#define IRSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace irsim
{
    enum class Errc
    {
        invalid_layout,       // grid with zero rows or columns, non-positive spacing
        out_of_grid,          // element index outside G(M) x G(N)
        degenerate_geometry,  // coincident points where a direction or distance is needed
        invalid_argument,     // parameter outside its documented domain
        dimension_mismatch,   // phase table does not match the element grid
        ordering,             // time samples not strictly increasing
        strategy_infeasible,  // phase schedule violates causality (phi < 0)
        invariant_violation,  // numerical invariant broken during a computation
        no_pass,              // satellite never reaches the minimum elevation
        config_parse,         // malformed JSON document
        config_unknown_key,   // key not part of the schema
        config_invalid,       // value violates an invariant
        io                    // file could not be read or written
    };

    const char *to_string(Errc code) noexcept;

    // All library failures are reported through this exception type.
    class Error : public std::runtime_error
    {
    public:
        Error(Errc code, const std::string &what)
            : std::runtime_error(what), code_(code) {}

        Errc code() const noexcept { return code_; }

    private:
        Errc code_;
    };
}

#endif
