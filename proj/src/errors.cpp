// Copyright 2026 The ndsense Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ndsense/errors.hpp"

namespace ndsense {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidInput:
        return "invalid-input";
    case ErrorKind::DegenerateLeakPattern:
        return "degenerate-leak-pattern";
    case ErrorKind::UnsupportedArity:
        return "unsupported-arity";
    case ErrorKind::NotLossless:
        return "not-lossless";
    case ErrorKind::DimensionMismatch:
        return "dimension-mismatch";
    case ErrorKind::NotPositiveSemidefinite:
        return "not-positive-semidefinite";
    case ErrorKind::NonOrthogonalProjectors:
        return "non-orthogonal-projectors";
    case ErrorKind::UnboundedSupport:
        return "unbounded-support";
    case ErrorKind::VerificationFailed:
        return "verification-failed";
    }
    return "unknown";
}

} // namespace ndsense
