// Copyright 2026 The tmsim developers
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

namespace tmsim {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid Hilbert-space dimension or mismatched truncations.
struct DimensionError : Error {
    using Error::Error;
};

/// Boundary population exceeded the configured leak tolerance, or a gate
/// was predicted to push the state past the Fock cutoff.
struct TruncationError : Error {
    TruncationError(const std::string& msg, double leak, double tol)
        : Error(msg + " (boundary population " + std::to_string(leak) +
                " exceeds leak_tol " + std::to_string(tol) + ")"),
          leak(leak), tol(tol) {}
    explicit TruncationError(const std::string& msg) : Error(msg), leak(0), tol(0) {}
    double leak;
    double tol;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// An iterative procedure (integrator or optimizer) failed to converge.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Malformed input data (datasets, grids, probability vectors).
struct DataError : Error {
    using Error::Error;
};

/// Malformed experiment configuration file or CLI usage.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace tmsim
