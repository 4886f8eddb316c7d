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

// Thin bridge to Eigen for the two dense solves the library needs: Hermitian
// eigendecomposition and real least squares.

#include <Eigen/Dense>
#include <vector>

#include "ubases/matrix.hpp"

namespace ubases::linalg {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    Eigen::MatrixXcd r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            r(i, j) = m(i, j);
        }
    }
    return r;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd &m) {
    ComplexMatrix r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            r(i, j) = m(i, j);
        }
    }
    return r;
}

/// Max-entry deviation of m from its adjoint.
inline double hermiticity_deviation(const ComplexMatrix &m) {
    m.require_square("hermiticity check");
    return max_abs_diff(m, m.adjoint());
}

struct HermitianEigen {
    std::vector<double> values;        // ascending
    std::vector<StateVector> vectors;  // vectors[k] belongs to values[k]
};

/// Eigendecomposition of the Hermitian part of m.
inline HermitianEigen hermitian_eigen(const ComplexMatrix &m) {
    m.require_square("eigendecomposition");
    Eigen::MatrixXcd e = to_eigen(m);
    Eigen::MatrixXcd h = (e + e.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    HermitianEigen out;
    const auto n = static_cast<Eigen::Index>(m.rows());
    for (Eigen::Index k = 0; k < n; k++) {
        out.values.push_back(solver.eigenvalues()(k));
        StateVector v(m.rows());
        for (Eigen::Index i = 0; i < n; i++) {
            v[i] = solver.eigenvectors()(i, k);
        }
        out.vectors.push_back(std::move(v));
    }
    return out;
}

struct LeastSquares {
    std::vector<double> solution;
    double max_residual = 0;
};

/// Minimizes |A x - b| for a dense real system given row-major.
inline LeastSquares solve_least_squares(const std::vector<double> &a, std::size_t rows, std::size_t cols,
                                        const std::vector<double> &b) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> am(
        a.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    Eigen::Map<const Eigen::VectorXd> bm(b.data(), static_cast<Eigen::Index>(rows));
    Eigen::VectorXd x = am.colPivHouseholderQr().solve(bm);
    LeastSquares out;
    out.solution.assign(x.data(), x.data() + x.size());
    out.max_residual = rows == 0 ? 0.0 : (am * x - bm).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace ubases::linalg
