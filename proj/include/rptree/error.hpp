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

#ifndef RPTREE_ERROR_HPP_
#define RPTREE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace rpt {

enum class Errc {
  parse,           // malformed input file or value
  shape_mismatch,  // inconsistent matrix/vector dimensions
  non_finite,      // NaN or Inf where a finite value is required
  invalid_argument,
  constraint,      // configuration violates a structural bound (B, leaf cap)
  io,
};

// All library failures are reported through this exception. The CLI maps
// the code onto a process exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rpt

#endif  // RPTREE_ERROR_HPP_
