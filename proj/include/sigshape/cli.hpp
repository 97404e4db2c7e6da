// SPDX-License-Identifier: Apache-2.0
//
// sigshape - transmit-vector set design for GenSM/GenQSM MIMO links
// Copyright (C) 2026 The sigshape authors
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

#ifndef SIGSHAPE_CLI_HPP
#define SIGSHAPE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sigshape::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3 };

// Runs one command line (without the program name). Human-readable
// messages go to `out` and `err`; results go to the files named by --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes `contents` to a temporary sibling of `path` and renames it into place.
void write_atomic(const std::string& path, const std::string& contents);

} // namespace sigshape::cli

#endif
