// Copyright 2026 The ftwalk Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ftwalk {

/// Bad input: malformed files, dimension mismatches, out-of-range indices.
/// The command-line tool maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed (e.g. a decomposition that does not
/// reconstruct its input). Exit code 3.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact ring coefficients left their integer range.
class RingOverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace ftwalk
