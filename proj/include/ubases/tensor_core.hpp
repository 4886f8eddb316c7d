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
#include <span>
#include <string>

#include "ubases/errors.hpp"
#include "ubases/matrix.hpp"

namespace ubases {

/// Dimensions of the two tensor factors of a flat composite index.
struct BipartiteShape {
    std::size_t dim_a = 1;
    std::size_t dim_b = 1;

    std::size_t total() const {
        return dim_a * dim_b;
    }
};

enum class Factor { first, second };

/// Reduced operator on the factor that is kept after tracing out `traced`.
inline ComplexMatrix partial_trace(const ComplexMatrix &m, BipartiteShape shape, Factor traced) {
    if (!m.is_square() || m.rows() != shape.total()) {
        throw DimensionMismatch("partial trace of " + m.shape_string() + " over shape (" +
                                std::to_string(shape.dim_a) + "," + std::to_string(shape.dim_b) + ")");
    }
    const std::size_t na = shape.dim_a;
    const std::size_t nb = shape.dim_b;
    if (traced == Factor::second) {
        ComplexMatrix r(na, na);
        for (std::size_t i = 0; i < na; i++) {
            for (std::size_t j = 0; j < na; j++) {
                Complex s = 0;
                for (std::size_t k = 0; k < nb; k++) {
                    s += m(i * nb + k, j * nb + k);
                }
                r(i, j) = s;
            }
        }
        return r;
    }
    ComplexMatrix r(nb, nb);
    for (std::size_t k = 0; k < nb; k++) {
        for (std::size_t l = 0; l < nb; l++) {
            Complex s = 0;
            for (std::size_t i = 0; i < na; i++) {
                s += m(i * nb + k, i * nb + l);
            }
            r(k, l) = s;
        }
    }
    return r;
}

/// Normalized trace inner product tr(A* B)/d.
inline Complex trace_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    a.require_square("trace_inner");
    a.require_same_shape(b);
    Complex s = 0;
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            s += std::conj(a(i, j)) * b(i, j);
        }
    }
    return s / static_cast<double>(a.rows());
}

/// Reference maximally entangled vector d^{-1/2} sum_k e_k (x) e_k.
inline StateVector omega_vector(std::size_t d) {
    StateVector v(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; k++) {
        v[k * d + k] = amp;
    }
    return v;
}

/// (A (x) 1) Omega. Component (k,l) equals A[k,l]/sqrt(d).
inline StateVector operator_to_vector(const ComplexMatrix &a, std::size_t d) {
    if (a.rows() != d || a.cols() != d) {
        throw DimensionMismatch("operator_to_vector expects " + std::to_string(d) + "x" + std::to_string(d) +
                                ", got " + a.shape_string());
    }
    StateVector v(d * d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; k++) {
        for (std::size_t l = 0; l < d; l++) {
            v[k * d + l] = a(k, l) * scale;
        }
    }
    return v;
}

/// Inverse of operator_to_vector: <e_k|A e_l> = sqrt(d) <e_k (x) e_l|Psi>.
inline ComplexMatrix vector_to_operator(const StateVector &psi, std::size_t d) {
    if (psi.dim() != d * d) {
        throw DimensionMismatch("vector_to_operator expects dim " + std::to_string(d * d) + ", got " +
                                std::to_string(psi.dim()));
    }
    ComplexMatrix a(d, d);
    const double scale = std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; k++) {
        for (std::size_t l = 0; l < d; l++) {
            a(k, l) = psi[k * d + l] * scale;
        }
    }
    return a;
}

inline ComplexMatrix transpose_in_basis(const ComplexMatrix &a) {
    a.require_square("transpose_in_basis");
    return a.transpose();
}

/// (A (x) 1) applied to a vector on C^d (x) C^m.
inline StateVector apply_first_factor(const ComplexMatrix &a, const StateVector &psi) {
    a.require_square("apply_first_factor");
    const std::size_t d = a.rows();
    if (d == 0 || psi.dim() % d != 0) {
        throw DimensionMismatch("vector dim " + std::to_string(psi.dim()) + " is not a multiple of " +
                                std::to_string(d));
    }
    const std::size_t m = psi.dim() / d;
    StateVector r(psi.dim());
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) {
                continue;
            }
            for (std::size_t k = 0; k < m; k++) {
                r[i * m + k] += aij * psi[j * m + k];
            }
        }
    }
    return r;
}

/// Checks that the reduced operator of |Psi><Psi| on the first factor is 1/d.
/// Deviation is the max-entry distance from 1/d.
inline Check is_maximally_entangled(const StateVector &psi, std::size_t d, double tol = kDefaultTol) {
    if (psi.dim() != d * d) {
        throw DimensionMismatch("expected dim " + std::to_string(d * d) + ", got " + std::to_string(psi.dim()));
    }
    const double norm_dev = std::abs(psi.norm_squared() - 1.0);
    if (norm_dev > tol) {
        throw NotNormalized("|norm^2 - 1| = " + std::to_string(norm_dev));
    }
    ComplexMatrix reduced = partial_trace(outer(psi, psi), {d, d}, Factor::second);
    ComplexMatrix target = ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d));
    return make_check(max_abs_diff(reduced, target), tol);
}

/// D vectors in dimension D form an orthonormal basis iff
/// sum_k |phi_k><phi_k| = 1. Deviation reports the resolution of identity;
/// when it passes, the Gram matrix is cross-checked as well.
inline Check check_projector_completeness(std::span<const StateVector> vectors, double tol = kDefaultTol) {
    if (vectors.empty()) {
        throw CountMismatch("no vectors supplied");
    }
    const std::size_t dim = vectors.front().dim();
    for (const auto &v : vectors) {
        if (v.dim() != dim) {
            throw DimensionMismatch("vectors of differing dimension");
        }
    }
    if (vectors.size() != dim) {
        throw CountMismatch(std::to_string(vectors.size()) + " vectors in dimension " + std::to_string(dim));
    }
    ComplexMatrix sum(dim, dim);
    for (const auto &v : vectors) {
        sum += outer(v, v);
    }
    Check result = make_check(max_abs_diff(sum, ComplexMatrix::identity(dim)), tol, "projector sum");
    if (!result.pass) {
        return result;
    }
    double gram_dev = 0;
    std::string worst;
    for (std::size_t x = 0; x < dim; x++) {
        for (std::size_t y = 0; y < dim; y++) {
            double dev = std::abs(inner(vectors[x], vectors[y]) - Complex(x == y ? 1.0 : 0.0));
            if (dev > gram_dev) {
                gram_dev = dev;
                worst = "gram(" + std::to_string(x) + "," + std::to_string(y) + ")";
            }
        }
    }
    if (gram_dev > tol) {
        return Check{false, gram_dev, worst};
    }
    return result;
}

}  // namespace ubases
