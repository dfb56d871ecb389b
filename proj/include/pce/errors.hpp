// Copyright 2026 The pce-mincut Authors
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

namespace pce {

/// Invalid argument to a public operation (bad range, size mismatch, ...).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed graph, plan or record file. Messages carry line/field context.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An encoding cannot hold the requested number of variables, or an
/// exhaustive oracle was asked for an instance that is too large.
class SizingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The optimizer saw a non-finite objective value.
class OptimizerAbort : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace pce
