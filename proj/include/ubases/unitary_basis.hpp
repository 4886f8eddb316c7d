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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ubases/errors.hpp"
#include "ubases/hadamard.hpp"
#include "ubases/latin.hpp"
#include "ubases/linalg.hpp"
#include "ubases/matrix.hpp"
#include "ubases/tensor_core.hpp"

namespace ubases {

/// Shift-and-multiply provenance of a basis element: U_x acts as
/// U |k> = H^j[i,k] |lambda(j,k)> with x = i*d + j.
struct BasisLabel {
    std::size_t i = 0;
    std::size_t j = 0;

    bool operator==(const BasisLabel &) const = default;
};

/// d^2 operators on C^d, intended to be unitary and orthonormal under
/// tr(A* B)/d. The constructor checks shapes only; use verify_orthonormal for
/// the basis property, so that broken families can still be represented and
/// diagnosed.
class UnitaryBasis {
  public:
    UnitaryBasis(std::size_t d, std::vector<ComplexMatrix> elements, std::vector<BasisLabel> labels = {})
        : d_(d), elements_(std::move(elements)), labels_(std::move(labels)) {
        if (elements_.size() != d_ * d_) {
            throw CountMismatch("a basis at d=" + std::to_string(d_) + " needs " + std::to_string(d_ * d_) +
                                " elements, got " + std::to_string(elements_.size()));
        }
        for (const auto &u : elements_) {
            if (u.rows() != d_ || u.cols() != d_) {
                throw DimensionMismatch("basis element of shape " + u.shape_string() + " at d=" + std::to_string(d_));
            }
        }
        if (!labels_.empty() && labels_.size() != elements_.size()) {
            throw CountMismatch("label list length differs from element count");
        }
    }

    std::size_t d() const {
        return d_;
    }
    std::size_t size() const {
        return elements_.size();
    }
    const ComplexMatrix &operator[](std::size_t x) const {
        return elements_[x];
    }
    const std::vector<ComplexMatrix> &elements() const {
        return elements_;
    }
    const std::vector<BasisLabel> &labels() const {
        return labels_;
    }

    std::optional<std::size_t> index_of(BasisLabel label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

  private:
    std::size_t d_;
    std::vector<ComplexMatrix> elements_;
    std::vector<BasisLabel> labels_;
};

struct GramReport {
    ComplexMatrix gram;
    /// max |gram - 1|
    double max_deviation = 0;
    /// max over elements of |U* U - 1|; zero for weighted grams
    double unitarity_deviation = 0;
    bool pass = false;

    explicit operator bool() const {
        return pass;
    }
};

namespace detail {

/// Builds U_{ij}[lambda(j,k), k] = H^j[i,k] with no validation at all. Exposed
/// so tests can show that non-Latin or non-Hadamard data break the basis.
inline UnitaryBasis shift_multiply_unchecked(const LatinGrid &lambda, std::span<const ComplexMatrix> hadamards) {
    const std::size_t d = lambda.size();
    std::vector<ComplexMatrix> elements;
    std::vector<BasisLabel> labels;
    elements.reserve(d * d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            ComplexMatrix u(d, d);
            for (std::size_t k = 0; k < d; k++) {
                u(static_cast<std::size_t>(lambda[j][k]), k) = hadamards[j](i, k);
            }
            elements.push_back(std::move(u));
            labels.push_back({i, j});
        }
    }
    return UnitaryBasis(d, std::move(elements), std::move(labels));
}

}  // namespace detail

/// Shift-and-multiply basis from a Latin square and one Hadamard per row of
/// the square. Flat index x = i*d + j.
inline UnitaryBasis shift_multiply_basis(const LatinSquare &lambda, std::span<const HadamardMatrix> hadamards) {
    const std::size_t d = lambda.d();
    if (hadamards.size() != d) {
        throw DesignInvalid("need " + std::to_string(d) + " Hadamard matrices, got " +
                            std::to_string(hadamards.size()));
    }
    std::vector<ComplexMatrix> raw;
    for (const auto &h : hadamards) {
        if (h.d() != d) {
            throw DesignInvalid("Hadamard of size " + std::to_string(h.d()) + " with a Latin square of size " +
                                std::to_string(d));
        }
        raw.push_back(h.matrix());
    }
    return detail::shift_multiply_unchecked(lambda.grid(), raw);
}

/// Raw-input overload: validates both ingredients and reports DesignInvalid.
inline UnitaryBasis shift_multiply_basis(const LatinGrid &lambda, std::span<const ComplexMatrix> hadamards) {
    auto latin = validate_latin(lambda);
    if (!latin) {
        throw DesignInvalid("not a Latin square: repeated symbol in " + latin.violation->describe());
    }
    std::vector<HadamardMatrix> hs;
    for (const auto &h : hadamards) {
        hs.emplace_back(h);
    }
    return shift_multiply_basis(LatinSquare(lambda), hs);
}

/// Cyclic Latin square with d copies of the Fourier matrix: U_{ij} = X^j Z^i.
inline UnitaryBasis weyl_basis(std::size_t d) {
    std::vector<HadamardMatrix> hs(d, fourier_hadamard(d));
    return shift_multiply_basis(latin_from_cyclic(d), hs);
}

/// Same as weyl_basis but with every H^j replaced by `h`.
inline UnitaryBasis cyclic_shift_multiply(const HadamardMatrix &h) {
    std::vector<HadamardMatrix> hs(h.d(), h);
    return shift_multiply_basis(latin_from_cyclic(h.d()), hs);
}

inline GramReport verify_orthonormal(const UnitaryBasis &b, double tol = kDefaultTol) {
    const std::size_t n = b.size();
    GramReport r;
    r.gram = ComplexMatrix(n, n);
    for (std::size_t x = 0; x < n; x++) {
        for (std::size_t y = x; y < n; y++) {
            Complex g = trace_inner(b[x], b[y]);
            r.gram(x, y) = g;
            r.gram(y, x) = std::conj(g);
        }
    }
    r.max_deviation = max_abs_diff(r.gram, ComplexMatrix::identity(n));
    for (const auto &u : b.elements()) {
        r.unitarity_deviation = std::max(r.unitarity_deviation, unitarity_deviation(u));
    }
    r.pass = r.max_deviation <= tol && r.unitarity_deviation <= tol;
    return r;
}

/// sum_x U_x* A U_x
inline ComplexMatrix depolarize(const UnitaryBasis &b, const ComplexMatrix &a) {
    if (a.rows() != b.d() || a.cols() != b.d()) {
        throw DimensionMismatch("probe " + a.shape_string() + " at d=" + std::to_string(b.d()));
    }
    ComplexMatrix sum(b.d(), b.d());
    for (const auto &u : b.elements()) {
        sum += u.adjoint() * a * u;
    }
    return sum;
}

inline std::vector<ComplexMatrix> matrix_units(std::size_t d) {
    std::vector<ComplexMatrix> out;
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            out.push_back(ComplexMatrix::unit(d, i, j));
        }
    }
    return out;
}

/// Checks sum_x U_x* A U_x = d tr(A) 1 on every probe (all d^2 matrix units
/// when `probes` is empty).
inline Check verify_depolarizer(const UnitaryBasis &b, std::span<const ComplexMatrix> probes = {},
                                double tol = kDefaultTol) {
    const std::size_t d = b.d();
    std::vector<ComplexMatrix> units;
    if (probes.empty()) {
        units = matrix_units(d);
        probes = units;
    }
    double worst = 0;
    std::string witness;
    for (std::size_t p = 0; p < probes.size(); p++) {
        ComplexMatrix target = ComplexMatrix::identity(d) * (static_cast<double>(d) * probes[p].trace());
        double dev = max_abs_diff(depolarize(b, probes[p]), target);
        if (dev > worst || witness.empty()) {
            worst = std::max(worst, dev);
            witness = "probe " + std::to_string(p);
        }
    }
    return make_check(worst, tol, witness);
}

inline void require_positive_weight(const ComplexMatrix &w) {
    if (linalg::hermiticity_deviation(w) > kDefaultTol) {
        throw WeightNotPositive("weight is not Hermitian");
    }
    auto eig = linalg::hermitian_eigen(w);
    if (eig.values.front() <= 1e-12) {
        throw WeightNotPositive("smallest eigenvalue " + std::to_string(eig.values.front()));
    }
}

/// gram[x,y] = tr(K_x* W K_y) with W = R^{-1} positive definite.
inline GramReport weighted_gram(std::span<const ComplexMatrix> ops, const ComplexMatrix &r_inverse,
                                double tol = kDefaultTol) {
    r_inverse.require_square("weighted_gram weight");
    const std::size_t d = r_inverse.rows();
    if (ops.size() != d * d) {
        throw CountMismatch("need " + std::to_string(d * d) + " operators, got " + std::to_string(ops.size()));
    }
    for (const auto &k : ops) {
        if (k.rows() != d || k.cols() != d) {
            throw DimensionMismatch("operator " + k.shape_string() + " with weight " + r_inverse.shape_string());
        }
    }
    require_positive_weight(r_inverse);
    const std::size_t n = ops.size();
    GramReport rep;
    rep.gram = ComplexMatrix(n, n);
    std::vector<ComplexMatrix> weighted;
    weighted.reserve(n);
    for (const auto &k : ops) {
        weighted.push_back(r_inverse * k);
    }
    for (std::size_t x = 0; x < n; x++) {
        for (std::size_t y = 0; y < n; y++) {
            Complex s = 0;
            for (std::size_t a = 0; a < d; a++) {
                for (std::size_t c = 0; c < d; c++) {
                    s += std::conj(ops[x](a, c)) * weighted[y](a, c);
                }
            }
            rep.gram(x, y) = s;
        }
    }
    rep.max_deviation = max_abs_diff(rep.gram, ComplexMatrix::identity(n));
    rep.pass = rep.max_deviation <= tol;
    return rep;
}

/// Max-entry deviation of sum_x K_x* C K_x from tr(R C) 1.
inline double weighted_completeness_deviation(std::span<const ComplexMatrix> ops, const ComplexMatrix &r,
                                              const ComplexMatrix &c) {
    r.require_same_shape(c);
    const std::size_t d = r.rows();
    ComplexMatrix sum(d, d);
    for (const auto &k : ops) {
        sum += k.adjoint() * c * k;
    }
    return max_abs_diff(sum, ComplexMatrix::identity(d) * (r * c).trace());
}

struct WeightRecovery {
    ComplexMatrix rho;
    double residual = 0;
    /// max-entry distance of rho from 1/d
    double deviation_from_maximally_mixed = 0;
};

/// Solves tr(U_x* rho U_y) = delta_xy for Hermitian rho by least squares over
/// its d^2 real parameters. For a genuine basis the only solution is 1/d.
inline WeightRecovery recover_weight_from_unitary_gram(const UnitaryBasis &b, double tol = kDefaultTol) {
    const std::size_t d = b.d();
    const std::size_t n = b.size();

    // Hermitian generators: E_aa, E_ab + E_ba, i(E_ab - E_ba) for a < b.
    struct Generator {
        std::size_t a, c;
        int kind;  // 0 diagonal, 1 symmetric, 2 antisymmetric imaginary
    };
    std::vector<Generator> gens;
    for (std::size_t a = 0; a < d; a++) {
        gens.push_back({a, a, 0});
    }
    for (std::size_t a = 0; a < d; a++) {
        for (std::size_t c = a + 1; c < d; c++) {
            gens.push_back({a, c, 1});
            gens.push_back({a, c, 2});
        }
    }
    const std::size_t params = gens.size();
    const std::size_t rows = 2 * n * n;
    std::vector<double> mat(rows * params, 0.0);
    std::vector<double> rhs(rows, 0.0);

    std::vector<ComplexMatrix> adj;
    adj.reserve(n);
    for (const auto &u : b.elements()) {
        adj.push_back(u.adjoint());
    }
    std::size_t row = 0;
    for (std::size_t x = 0; x < n; x++) {
        for (std::size_t y = 0; y < n; y++) {
            // tr(U_x* G U_y) = sum_{a,c} G[a,c] M[c,a] with M = U_y U_x*
            ComplexMatrix m = b[y] * adj[x];
            for (std::size_t p = 0; p < params; p++) {
                const auto &g = gens[p];
                Complex coeff;
                if (g.kind == 0) {
                    coeff = m(g.a, g.a);
                } else if (g.kind == 1) {
                    coeff = m(g.c, g.a) + m(g.a, g.c);
                } else {
                    coeff = Complex(0, 1) * (m(g.c, g.a) - m(g.a, g.c));
                }
                mat[row * params + p] = coeff.real();
                mat[(row + 1) * params + p] = coeff.imag();
            }
            rhs[row] = x == y ? 1.0 : 0.0;
            row += 2;
        }
    }
    auto sol = linalg::solve_least_squares(mat, rows, params, rhs);
    if (sol.max_residual > tol) {
        throw NoSolution("no Hermitian weight reproduces the gram constraints (residual " +
                         std::to_string(sol.max_residual) + ")");
    }
    ComplexMatrix rho(d, d);
    for (std::size_t p = 0; p < params; p++) {
        const auto &g = gens[p];
        const double t = sol.solution[p];
        if (g.kind == 0) {
            rho(g.a, g.a) += t;
        } else if (g.kind == 1) {
            rho(g.a, g.c) += t;
            rho(g.c, g.a) += t;
        } else {
            rho(g.a, g.c) += Complex(0, t);
            rho(g.c, g.a) -= Complex(0, t);
        }
    }
    const double tr = rho.trace().real();
    if (std::abs(tr) > 1e-14) {
        rho *= Complex(1.0 / tr);
    }
    WeightRecovery out;
    out.residual = sol.max_residual;
    out.deviation_from_maximally_mixed =
        max_abs_diff(rho, ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)));
    out.rho = std::move(rho);
    return out;
}

/// Elements U_x (x) V_y at flat index x * |B2| + y.
inline UnitaryBasis tensor_bases(const UnitaryBasis &b1, const UnitaryBasis &b2) {
    std::vector<ComplexMatrix> elements;
    elements.reserve(b1.size() * b2.size());
    for (const auto &u : b1.elements()) {
        for (const auto &v : b2.elements()) {
            elements.push_back(tensor_product(u, v));
        }
    }
    return UnitaryBasis(b1.d() * b2.d(), std::move(elements));
}

/// U'_x = V1 U_{relabel[x]} V2.
inline UnitaryBasis apply_equivalence(const UnitaryBasis &b, const ComplexMatrix &v1, const ComplexMatrix &v2,
                                      const Permutation &relabel) {
    const std::size_t d = b.d();
    for (const auto *v : {&v1, &v2}) {
        if (v->rows() != d || v->cols() != d) {
            throw DimensionMismatch("equivalence unitary " + v->shape_string() + " at d=" + std::to_string(d));
        }
        double dev = unitarity_deviation(*v);
        if (dev > kDefaultTol) {
            throw NotUnitary("deviation " + std::to_string(dev));
        }
    }
    require_permutation(relabel, b.size(), "relabeling");
    std::vector<ComplexMatrix> elements;
    std::vector<BasisLabel> labels;
    elements.reserve(b.size());
    for (std::size_t x = 0; x < b.size(); x++) {
        elements.push_back(v1 * b[relabel[x]] * v2);
        if (!b.labels().empty()) {
            labels.push_back(b.labels()[relabel[x]]);
        }
    }
    return UnitaryBasis(d, std::move(elements), std::move(labels));
}

/// For a labelled basis with index group Z_d x Z_d: checks
/// U_x U_y = mu(x,y) U_{x+y} with |mu| = 1. Deviation is the worst max-entry
/// distance of U_x U_y U_{x+y}* from mu 1, or of |mu| from 1.
inline Check verify_group_law(const UnitaryBasis &b, double tol = kDefaultTol) {
    const std::size_t d = b.d();
    if (b.labels().empty()) {
        throw BasisInvalid("group law needs (i,j) labels");
    }
    double worst = 0;
    std::string witness;
    for (std::size_t x = 0; x < b.size(); x++) {
        for (std::size_t y = 0; y < b.size(); y++) {
            const auto lx = b.labels()[x];
            const auto ly = b.labels()[y];
            auto z = b.index_of({(lx.i + ly.i) % d, (lx.j + ly.j) % d});
            if (!z) {
                throw BasisInvalid("label set is not closed under addition");
            }
            ComplexMatrix w = b[x] * b[y] * b[*z].adjoint();
            Complex mu = w(0, 0);
            double dev = std::max(max_abs_diff(w, ComplexMatrix::identity(d) * mu), std::abs(std::abs(mu) - 1.0));
            if (dev > worst || witness.empty()) {
                worst = std::max(worst, dev);
                witness = "x=" + std::to_string(x) + ", y=" + std::to_string(y);
            }
        }
    }
    return make_check(worst, tol, witness);
}

}  // namespace ubases
