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

#include "irsim/error.hpp"

namespace irsim
{
    const char *to_string(Errc code) noexcept
    {
        switch (code)
        {
        case Errc::invalid_layout:
            return "invalid-layout";
        case Errc::out_of_grid:
            return "out-of-grid";
        case Errc::degenerate_geometry:
            return "degenerate-geometry";
        case Errc::invalid_argument:
            return "invalid-argument";
        case Errc::dimension_mismatch:
            return "dimension-mismatch";
        case Errc::ordering:
            return "ordering";
        case Errc::strategy_infeasible:
            return "strategy-infeasible";
        case Errc::invariant_violation:
            return "invariant-violation";
        case Errc::no_pass:
            return "no-pass";
        case Errc::config_parse:
            return "config-parse";
        case Errc::config_unknown_key:
            return "config-unknown-key";
        case Errc::config_invalid:
            return "config-invalid";
        case Errc::io:
            return "io";
        }
        return "unknown";
    }
}
