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

#ifndef IRSIM_CLI_HPP
#define IRSIM_CLI_HPP

#include <iosfwd>

namespace irsim
{
    // Entry point of the irsim command-line tool: simulate, pass-window, snapshot.
    // Returns the process exit code.
    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif
