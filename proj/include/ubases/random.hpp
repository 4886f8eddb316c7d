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

#include <cmath>
#include <numbers>
#include <random>

#include "ubases/matrix.hpp"

namespace ubases {

using Rng = std::mt19937_64;

inline Complex random_gaussian_complex(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double re = normal(rng);
    double im = normal(rng);
    return {re, im};
}

inline Complex random_phase(Rng &rng) {
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    return std::polar(1.0, angle(rng));
}

/// Matrix with i.i.d. standard complex Gaussian entries.
inline ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; i++) {
        for (std::size_t j = 0; j < cols; j++) {
            m(i, j) = random_gaussian_complex(rng);
        }
    }
    return m;
}

/// Haar-distributed unitary via Gram-Schmidt on the columns of a Ginibre matrix.
inline ComplexMatrix random_unitary(std::size_t d, Rng &rng) {
    ComplexMatrix g = random_ginibre(d, d, rng);
    for (std::size_t c = 0; c < d; c++) {
        // two passes keep the columns orthogonal to machine precision
        for (int pass = 0; pass < 2; pass++) {
            for (std::size_t p = 0; p < c; p++) {
                Complex proj = 0;
                for (std::size_t i = 0; i < d; i++) {
                    proj += std::conj(g(i, p)) * g(i, c);
                }
                for (std::size_t i = 0; i < d; i++) {
                    g(i, c) -= proj * g(i, p);
                }
            }
        }
        double n = 0;
        for (std::size_t i = 0; i < d; i++) {
            n += std::norm(g(i, c));
        }
        n = std::sqrt(n);
        for (std::size_t i = 0; i < d; i++) {
            g(i, c) /= n;
        }
    }
    return g;
}

/// Random full-rank density operator G G* / tr(G G*).
inline ComplexMatrix random_density(std::size_t d, Rng &rng) {
    ComplexMatrix g = random_ginibre(d, d, rng);
    ComplexMatrix rho = g * g.adjoint();
    return rho * (1.0 / rho.trace().real());
}

inline StateVector random_unit_vector(std::size_t dim, Rng &rng) {
    StateVector v(dim);
    for (std::size_t k = 0; k < dim; k++) {
        v[k] = random_gaussian_complex(rng);
    }
    return Complex(1.0 / std::sqrt(v.norm_squared())) * v;
}

}  // namespace ubases
