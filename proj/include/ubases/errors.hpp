// Copyright 2026 The ubases Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ubases {

/// Default absolute tolerance on max-entry deviations.
inline constexpr double kDefaultTol = 1e-10;

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define UBASES_DEFINE_ERROR(Name)                  \
    struct Name : Error {                          \
        explicit Name(const std::string &what)     \
            : Error(#Name ": " + what) {           \
        }                                          \
    }

UBASES_DEFINE_ERROR(DimensionMismatch);
UBASES_DEFINE_ERROR(NonFiniteEntry);
UBASES_DEFINE_ERROR(NotNormalized);
UBASES_DEFINE_ERROR(CountMismatch);
UBASES_DEFINE_ERROR(SymbolOutOfRange);
UBASES_DEFINE_ERROR(BadPermutation);
UBASES_DEFINE_ERROR(DimensionTooLarge);
UBASES_DEFINE_ERROR(NotUnimodular);
UBASES_DEFINE_ERROR(PeriodicityViolated);
UBASES_DEFINE_ERROR(DesignInvalid);
UBASES_DEFINE_ERROR(WeightNotPositive);
UBASES_DEFINE_ERROR(NoSolution);
UBASES_DEFINE_ERROR(NotUnitary);
UBASES_DEFINE_ERROR(BasisInvalid);
UBASES_DEFINE_ERROR(NotMaximallyEntangled);
UBASES_DEFINE_ERROR(NotUnitaryExtraction);
UBASES_DEFINE_ERROR(SchemeInvalid);
UBASES_DEFINE_ERROR(NotDensityOperator);
UBASES_DEFINE_ERROR(ParseError);
UBASES_DEFINE_ERROR(BadParams);

#undef UBASES_DEFINE_ERROR

/// Outcome of a numerical verification. The deviation is always reported so
/// callers can see the margin, not just the verdict.
struct Check {
    bool pass = true;
    double deviation = 0.0;
    std::string witness;

    explicit operator bool() const {
        return pass;
    }
};

inline Check make_check(double deviation, double tol, std::string witness = {}) {
    return Check{deviation <= tol, deviation, std::move(witness)};
}

}  // namespace ubases
