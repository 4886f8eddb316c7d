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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ubases/errors.hpp"
#include "ubases/latin.hpp"
#include "ubases/matrix.hpp"

namespace ubases {

/// Unimodularity and periodicity of user-supplied phases are checked at this
/// tighter tolerance.
inline constexpr double kPhaseTol = 1e-12;

/// Checks |H[i,k]| = 1 and H H* = d 1. The deviation is the larger of the two
/// max-entry violations.
inline Check validate_hadamard(const ComplexMatrix &h, double tol = kDefaultTol) {
    h.require_square("validate_hadamard");
    const std::size_t d = h.rows();
    double modulus_dev = 0;
    std::string witness;
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t k = 0; k < d; k++) {
            double dev = std::abs(std::abs(h(i, k)) - 1.0);
            if (dev > modulus_dev) {
                modulus_dev = dev;
                witness = "|H[" + std::to_string(i) + "," + std::to_string(k) + "]| != 1";
            }
        }
    }
    ComplexMatrix target = ComplexMatrix::identity(d) * Complex(static_cast<double>(d));
    double gram_dev = max_abs_diff(h * h.adjoint(), target);
    if (gram_dev > modulus_dev) {
        witness = "H H* != d 1";
    }
    return make_check(std::max(modulus_dev, gram_dev), tol, witness);
}

/// A validated complex Hadamard matrix.
class HadamardMatrix {
  public:
    explicit HadamardMatrix(ComplexMatrix m, double tol = kDefaultTol) : m_(std::move(m)) {
        auto check = validate_hadamard(m_, tol);
        if (!check) {
            throw DesignInvalid("not a Hadamard matrix (" + check.witness + ", deviation " +
                                std::to_string(check.deviation) + ")");
        }
    }

    std::size_t d() const {
        return m_.rows();
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }
    Complex operator()(std::size_t i, std::size_t k) const {
        return m_(i, k);
    }

  private:
    ComplexMatrix m_;
};

/// Character table of Z_d: H[k,l] = exp(2 pi i k l / d).
inline HadamardMatrix fourier_hadamard(std::size_t d) {
    ComplexMatrix m(d, d);
    for (std::size_t k = 0; k < d; k++) {
        for (std::size_t l = 0; l < d; l++) {
            // reduce k*l mod d first so the angle stays small
            double angle = 2 * std::numbers::pi * static_cast<double>((k * l) % d) / static_cast<double>(d);
            m(k, l) = std::polar(1.0, angle);
        }
    }
    return HadamardMatrix(std::move(m));
}

/// One-parameter family covering all 4x4 complex Hadamards up to equivalence.
inline HadamardMatrix hadamard_d4_family(Complex u) {
    if (std::abs(std::abs(u) - 1.0) > kPhaseTol) {
        throw NotUnimodular("|u| = " + std::to_string(std::abs(u)));
    }
    ComplexMatrix m{
        {1, 1, 1, 1},
        {1, 1, -1, -1},
        {1, -1, u, -u},
        {1, -1, -u, u},
    };
    return HadamardMatrix(std::move(m));
}

/// Full d x d phase matrix V[k,l] = cell[k mod p, l mod q] from a p x q cell.
inline ComplexMatrix periodic_phases_from_cell(std::size_t p, std::size_t q, const ComplexMatrix &cell) {
    if (cell.rows() != p || cell.cols() != q) {
        throw DimensionMismatch("phase cell must be " + std::to_string(p) + "x" + std::to_string(q) + ", got " +
                                cell.shape_string());
    }
    const std::size_t d = p * q;
    ComplexMatrix v(d, d);
    for (std::size_t k = 0; k < d; k++) {
        for (std::size_t l = 0; l < d; l++) {
            v(k, l) = cell(k % p, l % q);
        }
    }
    return v;
}

/// H[k,l] = V[k,l] exp(2 pi i k l / d) for d = p q and V periodic with
/// V[k,l] = V[k+p,l] = V[k,l+q] (indices mod d).
inline HadamardMatrix periodic_phase_hadamard(std::size_t p, std::size_t q, const ComplexMatrix &v) {
    const std::size_t d = p * q;
    if (v.rows() != d || v.cols() != d) {
        throw DimensionMismatch("phase matrix must be " + std::to_string(d) + "x" + std::to_string(d) + ", got " +
                                v.shape_string());
    }
    for (std::size_t k = 0; k < d; k++) {
        for (std::size_t l = 0; l < d; l++) {
            if (std::abs(std::abs(v(k, l)) - 1.0) > kPhaseTol) {
                throw NotUnimodular("V[" + std::to_string(k) + "," + std::to_string(l) + "]");
            }
        }
    }
    for (std::size_t k = 0; k < d; k++) {
        for (std::size_t l = 0; l < d; l++) {
            if (std::abs(v(k, l) - v((k + p) % d, l)) > kPhaseTol ||
                std::abs(v(k, l) - v(k, (l + q) % d)) > kPhaseTol) {
                throw PeriodicityViolated("at V[" + std::to_string(k) + "," + std::to_string(l) + "]");
            }
        }
    }
    ComplexMatrix h(d, d);
    const HadamardMatrix f = fourier_hadamard(d);
    for (std::size_t k = 0; k < d; k++) {
        for (std::size_t l = 0; l < d; l++) {
            h(k, l) = v(k, l) * f(k, l);
        }
    }
    return HadamardMatrix(std::move(h));
}

/// Equivalent Hadamard with all-ones first row and column: divide each row i
/// by H[i,0], then each column by the resulting first-row entry.
inline HadamardMatrix dephase_hadamard(const HadamardMatrix &hm) {
    ComplexMatrix h = hm.matrix();
    const std::size_t d = h.rows();
    for (std::size_t i = 0; i < d; i++) {
        Complex s = h(i, 0);
        for (std::size_t k = 0; k < d; k++) {
            h(i, k) /= s;
        }
    }
    for (std::size_t k = 0; k < d; k++) {
        Complex s = h(0, k);
        for (std::size_t i = 0; i < d; i++) {
            h(i, k) /= s;
        }
    }
    return HadamardMatrix(std::move(h));
}

/// result[i,k] = row_phases[i] * H[rows[i], cols[k]] * col_phases[k].
/// Empty phase lists mean all ones.
inline HadamardMatrix hadamard_equivalence_apply(const HadamardMatrix &hm, const Permutation &rows,
                                                 const Permutation &cols, std::vector<Complex> row_phases = {},
                                                 std::vector<Complex> col_phases = {}) {
    const std::size_t d = hm.d();
    require_permutation(rows, d, "row permutation");
    require_permutation(cols, d, "column permutation");
    if (row_phases.empty()) {
        row_phases.assign(d, 1.0);
    }
    if (col_phases.empty()) {
        col_phases.assign(d, 1.0);
    }
    if (row_phases.size() != d || col_phases.size() != d) {
        throw DimensionMismatch("phase list length must equal d");
    }
    for (const auto &z : row_phases) {
        if (std::abs(std::abs(z) - 1.0) > kPhaseTol) {
            throw NotUnimodular("row phase");
        }
    }
    for (const auto &z : col_phases) {
        if (std::abs(std::abs(z) - 1.0) > kPhaseTol) {
            throw NotUnimodular("column phase");
        }
    }
    ComplexMatrix h(d, d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t k = 0; k < d; k++) {
            h(i, k) = row_phases[i] * hm(rows[i], cols[k]) * col_phases[k];
        }
    }
    return HadamardMatrix(std::move(h));
}

inline HadamardMatrix tensor_hadamard(const HadamardMatrix &a, const HadamardMatrix &b) {
    return HadamardMatrix(tensor_product(a.matrix(), b.matrix()));
}

inline constexpr std::size_t kMaxEquivalenceSearchDimension = 6;

struct PermutationEquivalence {
    Permutation rows;
    Permutation cols;
};

/// Searches row and column permutations P, Q of `a` such that the dephased
/// form of a[P,Q] matches the dephased form of `b`. Covers every equivalence
/// move, since phases are absorbed by dephasing. Cost is (d!)^2 dephasings.
inline std::optional<PermutationEquivalence> find_permutation_equivalence(const HadamardMatrix &a,
                                                                          const HadamardMatrix &b,
                                                                          double tol = 1e-9) {
    const std::size_t d = a.d();
    if (b.d() != d) {
        return std::nullopt;
    }
    if (d > kMaxEquivalenceSearchDimension) {
        throw DimensionTooLarge("permutation search limited to d <= " +
                                std::to_string(kMaxEquivalenceSearchDimension));
    }
    const ComplexMatrix target = dephase_hadamard(b).matrix();
    Permutation rows = identity_permutation(d);
    do {
        Permutation cols = identity_permutation(d);
        do {
            auto candidate = dephase_hadamard(hadamard_equivalence_apply(a, rows, cols));
            if (max_abs_diff(candidate.matrix(), target) <= tol) {
                return PermutationEquivalence{rows, cols};
            }
        } while (std::next_permutation(cols.begin(), cols.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));
    return std::nullopt;
}

}  // namespace ubases
