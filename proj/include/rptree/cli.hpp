// Copyright 2026 The rptree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RPTREE_CLI_HPP_
#define RPTREE_CLI_HPP_

#include <iosfwd>

namespace rpt::cli {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBadInput = 2;   // unreadable, malformed or invalid files
inline constexpr int kExitBadConfig = 3;  // arguments violate a constraint (B, k, leaf cap)

// Runs the `rpt` command line. Results go to `out` unless an output path is
// given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rpt::cli

#endif  // RPTREE_CLI_HPP_
