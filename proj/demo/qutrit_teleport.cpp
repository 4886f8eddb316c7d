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

// Teleports a qutrit with a scheme built from the 3x3 Weyl basis, then swaps
// the equipment around and sends two trits through the same components.

#include <iomanip>
#include <iostream>

#include "ubases/random.hpp"
#include "ubases/schemes.hpp"
#include "ubases/unitary_basis.hpp"

int main() {
    using namespace ubases;

    const std::size_t d = 3;
    const UnitaryBasis basis = weyl_basis(d);
    std::cout << "Weyl basis d=" << d << ": gram deviation " << verify_orthonormal(basis).max_deviation << "\n";

    const TightScheme teleport = build_scheme(basis, SchemeMode::teleportation);
    const auto identity = verify_teleportation(teleport);
    std::cout << "teleportation identity: " << (identity.pass ? "holds" : "fails") << " (deviation "
              << identity.max_deviation << ")\n";

    Rng rng(2026);
    const ComplexMatrix rho = random_density(d, rng);
    const TeleportResult result = teleport_state(teleport, rho);
    std::cout << std::fixed << std::setprecision(4) << "outcome probabilities:";
    for (double p : result.probabilities) {
        std::cout << " " << p;
    }
    std::cout << std::scientific << std::setprecision(2)
              << "\nmax |output - input| = " << max_abs_diff(result.output, rho) << "\n";

    const TightScheme dense = swap_roles(teleport);
    const auto coding = verify_dense_coding(dense);
    std::cout << "dense coding with the same components: " << (coding.pass ? "holds" : "fails") << " (deviation "
              << coding.max_deviation << ")\n";
    std::cout << std::fixed << std::setprecision(3) << "P[x][x] for x = 0.." << d * d - 1 << ":";
    for (std::size_t x = 0; x < d * d; x++) {
        std::cout << " " << coding.outcome_matrix[x][x];
    }
    std::cout << "\n";
    return identity.pass && coding.pass ? 0 : 1;
}
