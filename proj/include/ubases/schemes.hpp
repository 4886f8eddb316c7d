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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ubases/errors.hpp"
#include "ubases/linalg.hpp"
#include "ubases/matrix.hpp"
#include "ubases/tensor_core.hpp"
#include "ubases/unitary_basis.hpp"

namespace ubases {

/// d^2 vectors in C^d (x) C^d. Shapes are checked on construction; the basis
/// and entanglement properties by verify_entangled_basis.
class MaxEntangledBasis {
  public:
    MaxEntangledBasis(std::size_t d, std::vector<StateVector> vectors) : d_(d), vectors_(std::move(vectors)) {
        if (vectors_.size() != d_ * d_) {
            throw CountMismatch("entangled basis at d=" + std::to_string(d_) + " needs " + std::to_string(d_ * d_) +
                                " vectors, got " + std::to_string(vectors_.size()));
        }
        for (const auto &v : vectors_) {
            if (v.dim() != d_ * d_) {
                throw DimensionMismatch("vector of dim " + std::to_string(v.dim()) + " at d=" + std::to_string(d_));
            }
        }
    }

    std::size_t d() const {
        return d_;
    }
    std::size_t size() const {
        return vectors_.size();
    }
    const StateVector &operator[](std::size_t x) const {
        return vectors_[x];
    }
    const std::vector<StateVector> &vectors() const {
        return vectors_;
    }

  private:
    std::size_t d_;
    std::vector<StateVector> vectors_;
};

/// Orthonormality of the vectors plus maximal entanglement of each one.
inline Check verify_entangled_basis(const MaxEntangledBasis &phi, double tol = kDefaultTol) {
    const std::size_t n = phi.size();
    double worst = 0;
    std::string witness = "gram";
    for (std::size_t x = 0; x < n; x++) {
        for (std::size_t y = x; y < n; y++) {
            double dev = std::abs(inner(phi[x], phi[y]) - Complex(x == y ? 1.0 : 0.0));
            if (dev > worst) {
                worst = dev;
                witness = "<Phi_" + std::to_string(x) + "|Phi_" + std::to_string(y) + ">";
            }
        }
    }
    if (worst > tol) {
        return Check{false, worst, witness};
    }
    for (std::size_t x = 0; x < n; x++) {
        auto c = is_maximally_entangled(phi[x], phi.d(), tol);
        if (c.deviation > worst) {
            worst = c.deviation;
            witness = "reduced state of Phi_" + std::to_string(x);
        }
    }
    return make_check(worst, tol, witness);
}

/// Phi_x = (U_x (x) 1) Omega.
inline MaxEntangledBasis basis_to_entangled(const UnitaryBasis &b, const StateVector &omega) {
    auto c = is_maximally_entangled(omega, b.d());
    if (!c) {
        throw NotMaximallyEntangled("reference vector deviation " + std::to_string(c.deviation));
    }
    std::vector<StateVector> vectors;
    vectors.reserve(b.size());
    for (const auto &u : b.elements()) {
        vectors.push_back(apply_first_factor(u, omega));
    }
    return MaxEntangledBasis(b.d(), std::move(vectors));
}

/// Inverts basis_to_entangled. With Omega = (W (x) 1) Omega_0 for the canonical
/// Omega_0, U_x = op(Phi_x) W*, where op is vector_to_operator.
inline UnitaryBasis entangled_to_basis(const MaxEntangledBasis &phi, const StateVector &omega,
                                       double tol = kDefaultTol) {
    const std::size_t d = phi.d();
    auto c = is_maximally_entangled(omega, d, tol);
    if (!c) {
        throw NotMaximallyEntangled("reference vector deviation " + std::to_string(c.deviation));
    }
    const ComplexMatrix w_adj = vector_to_operator(omega, d).adjoint();
    std::vector<ComplexMatrix> elements;
    elements.reserve(phi.size());
    for (std::size_t x = 0; x < phi.size(); x++) {
        ComplexMatrix u = vector_to_operator(phi[x], d) * w_adj;
        double dev = unitarity_deviation(u);
        if (dev > tol) {
            throw NotUnitaryExtraction("|U*U - 1| = " + std::to_string(dev) + " for vector " + std::to_string(x));
        }
        elements.push_back(std::move(u));
    }
    return UnitaryBasis(d, std::move(elements));
}

enum class SchemeMode { teleportation, dense_coding };

inline const char *to_string(SchemeMode m) {
    return m == SchemeMode::teleportation ? "teleportation" : "dense_coding";
}

/// Resource state omega on C^d (x) C^d, correction channels T_x(A) = U_x* A U_x
/// and the observable F_x = |Phi_x><Phi_x|. The same triple serves both modes.
/// omega is stored as a density operator so that mixed resources can be
/// examined; build_scheme always produces a pure one.
class TightScheme {
  public:
    TightScheme(ComplexMatrix omega, std::vector<ComplexMatrix> channel_unitaries, MaxEntangledBasis effects,
                SchemeMode mode)
        : omega_(std::move(omega)), channels_(std::move(channel_unitaries)), effects_(std::move(effects)),
          mode_(mode) {
        const std::size_t d = effects_.d();
        if (omega_.rows() != d * d || omega_.cols() != d * d) {
            throw DimensionMismatch("resource state " + omega_.shape_string() + " at d=" + std::to_string(d));
        }
        if (channels_.size() != d * d) {
            throw CountMismatch("need " + std::to_string(d * d) + " channel unitaries, got " +
                                std::to_string(channels_.size()));
        }
        for (const auto &u : channels_) {
            if (u.rows() != d || u.cols() != d) {
                throw DimensionMismatch("channel unitary " + u.shape_string() + " at d=" + std::to_string(d));
            }
        }
    }

    std::size_t d() const {
        return effects_.d();
    }
    const ComplexMatrix &omega() const {
        return omega_;
    }
    const std::vector<ComplexMatrix> &channel_unitaries() const {
        return channels_;
    }
    const MaxEntangledBasis &effects() const {
        return effects_;
    }
    SchemeMode mode() const {
        return mode_;
    }

    TightScheme with_omega(ComplexMatrix omega) const {
        return TightScheme(std::move(omega), channels_, effects_, mode_);
    }
    TightScheme with_mode(SchemeMode mode) const {
        return TightScheme(omega_, channels_, effects_, mode);
    }

  private:
    ComplexMatrix omega_;
    std::vector<ComplexMatrix> channels_;
    MaxEntangledBasis effects_;
    SchemeMode mode_;
};

/// Resource state, channels and observable from a unitary basis, with the
/// canonical Omega as reference vector.
inline TightScheme build_scheme(const UnitaryBasis &b, SchemeMode mode) {
    auto report = verify_orthonormal(b);
    if (!report) {
        throw BasisInvalid("gram deviation " + std::to_string(report.max_deviation) + ", unitarity deviation " +
                           std::to_string(report.unitarity_deviation));
    }
    StateVector omega = omega_vector(b.d());
    return TightScheme(outer(omega, omega), b.elements(), basis_to_entangled(b, omega), mode);
}

/// Same components, other mode. Involutive.
inline TightScheme swap_roles(const TightScheme &s) {
    return s.with_mode(s.mode() == SchemeMode::teleportation ? SchemeMode::dense_coding : SchemeMode::teleportation);
}

struct SchemeVerdict {
    SchemeMode mode = SchemeMode::teleportation;
    bool pass = false;
    double max_deviation = 0;
    std::string worst_case;
    /// Dense coding only: P[x][y] = probability of decoding y when x was sent.
    std::vector<std::vector<double>> outcome_matrix;

    explicit operator bool() const {
        return pass;
    }
};

namespace detail {

/// Bob's unnormalized state after Alice obtains x on (input (x) Alice's half):
/// sigma[k,k'] = sum Q[j,j'] omega[(j,k),(j',k')] with Q = M* rho M and
/// M[i,j] = Phi_x[(i,j)].
inline ComplexMatrix conditional_state(const StateVector &phi, const ComplexMatrix &rho, const ComplexMatrix &omega) {
    const std::size_t d = rho.rows();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            m(i, j) = phi[i * d + j];
        }
    }
    ComplexMatrix q = m.adjoint() * rho * m;
    ComplexMatrix sigma(d, d);
    for (std::size_t j = 0; j < d; j++) {
        for (std::size_t jp = 0; jp < d; jp++) {
            const Complex qj = q(j, jp);
            if (qj == Complex{}) {
                continue;
            }
            for (std::size_t k = 0; k < d; k++) {
                for (std::size_t kp = 0; kp < d; kp++) {
                    sigma(k, kp) += qj * omega(j * d + k, jp * d + kp);
                }
            }
        }
    }
    return sigma;
}

}  // namespace detail

/// Evaluates sum_x tr[(rho (x) omega)(F_x (x) T_x(A))] - tr(rho A) with rho and
/// A ranging over all matrix units, which span every density operator and
/// observable.
inline SchemeVerdict verify_teleportation(const TightScheme &s, double tol = kDefaultTol) {
    const std::size_t d = s.d();
    const std::size_t n = d * d;
    // heisenberg[x][(c,e)] = U_x* E_ce U_x
    std::vector<std::vector<ComplexMatrix>> heisenberg(n);
    for (std::size_t x = 0; x < n; x++) {
        const auto &u = s.channel_unitaries()[x];
        for (std::size_t c = 0; c < d; c++) {
            for (std::size_t e = 0; e < d; e++) {
                heisenberg[x].push_back(u.adjoint() * ComplexMatrix::unit(d, c, e) * u);
            }
        }
    }
    // lhs[(a,b)][(c,e)]
    std::vector<Complex> lhs(n * n, 0.0);
    for (std::size_t x = 0; x < n; x++) {
        for (std::size_t ab = 0; ab < n; ab++) {
            ComplexMatrix sigma =
                detail::conditional_state(s.effects()[x], ComplexMatrix::unit(d, ab / d, ab % d), s.omega());
            for (std::size_t ce = 0; ce < n; ce++) {
                const auto &bmat = heisenberg[x][ce];
                Complex t = 0;
                for (std::size_t k = 0; k < d; k++) {
                    for (std::size_t kp = 0; kp < d; kp++) {
                        t += sigma(k, kp) * bmat(kp, k);
                    }
                }
                lhs[ab * n + ce] += t;
            }
        }
    }
    SchemeVerdict v;
    v.mode = SchemeMode::teleportation;
    v.worst_case = "rho=|0><0|, A=|0><0|";
    for (std::size_t ab = 0; ab < n; ab++) {
        for (std::size_t ce = 0; ce < n; ce++) {
            const std::size_t a = ab / d, b = ab % d, c = ce / d, e = ce % d;
            const double expected = (b == c && a == e) ? 1.0 : 0.0;
            const double dev = std::abs(lhs[ab * n + ce] - expected);
            if (dev > v.max_deviation) {
                v.max_deviation = dev;
                v.worst_case = "rho=|" + std::to_string(a) + "><" + std::to_string(b) + "|, A=|" +
                               std::to_string(c) + "><" + std::to_string(e) + "|";
            }
        }
    }
    v.pass = v.max_deviation <= tol;
    return v;
}

/// P[x][y] = tr(omega (T_x (x) id)(F_y)) = <chi|omega|chi> with
/// chi = (U_x* (x) 1) Phi_y; compared against the identity.
inline SchemeVerdict verify_dense_coding(const TightScheme &s, double tol = kDefaultTol) {
    const std::size_t d = s.d();
    const std::size_t n = d * d;
    SchemeVerdict v;
    v.mode = SchemeMode::dense_coding;
    v.outcome_matrix.assign(n, std::vector<double>(n, 0.0));
    v.worst_case = "x=0, y=0";
    for (std::size_t x = 0; x < n; x++) {
        const ComplexMatrix u_adj = s.channel_unitaries()[x].adjoint();
        for (std::size_t y = 0; y < n; y++) {
            StateVector chi = apply_first_factor(u_adj, s.effects()[y]);
            Complex p = inner(chi, s.omega() * chi);
            v.outcome_matrix[x][y] = p.real();
            double dev = std::abs(p - Complex(x == y ? 1.0 : 0.0));
            if (dev > v.max_deviation) {
                v.max_deviation = dev;
                v.worst_case = "x=" + std::to_string(x) + ", y=" + std::to_string(y);
            }
        }
    }
    v.pass = v.max_deviation <= tol;
    return v;
}

/// Runs the verifier that matches the scheme's mode.
inline SchemeVerdict verify_scheme(const TightScheme &s, double tol = kDefaultTol) {
    return s.mode() == SchemeMode::teleportation ? verify_teleportation(s, tol) : verify_dense_coding(s, tol);
}

/// Structural invariants: omega a density operator, unitary channels,
/// effects summing to the identity.
inline Check check_scheme_components(const TightScheme &s, double tol = kDefaultTol) {
    const std::size_t d = s.d();
    double worst = 0;
    std::string witness = "components";
    auto note = [&](double dev, std::string what) {
        if (dev > worst) {
            worst = dev;
            witness = std::move(what);
        }
    };
    note(linalg::hermiticity_deviation(s.omega()), "omega not Hermitian");
    note(std::abs(s.omega().trace() - Complex(1.0)), "tr omega != 1");
    note(std::max(0.0, -linalg::hermitian_eigen(s.omega()).values.front()), "omega not positive");
    for (std::size_t x = 0; x < s.channel_unitaries().size(); x++) {
        note(unitarity_deviation(s.channel_unitaries()[x]), "channel " + std::to_string(x) + " not unitary");
    }
    ComplexMatrix sum(d * d, d * d);
    for (const auto &phi : s.effects().vectors()) {
        sum += outer(phi, phi);
    }
    note(max_abs_diff(sum, ComplexMatrix::identity(d * d)), "sum_x F_x != 1");
    return make_check(worst, tol, witness);
}

struct TeleportResult {
    ComplexMatrix output;
    std::vector<double> probabilities;
};

inline void require_density_operator(const ComplexMatrix &rho, std::size_t d, double tol = kDefaultTol) {
    if (rho.rows() != d || rho.cols() != d) {
        throw NotDensityOperator("shape " + rho.shape_string() + " at d=" + std::to_string(d));
    }
    if (linalg::hermiticity_deviation(rho) > tol) {
        throw NotDensityOperator("not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0)) > tol) {
        throw NotDensityOperator("trace " + std::to_string(rho.trace().real()));
    }
    if (linalg::hermitian_eigen(rho).values.front() < -tol) {
        throw NotDensityOperator("negative eigenvalue");
    }
}

/// Runs the protocol on input rho: Alice measures F on (input, her half), Bob
/// applies the Schrodinger-picture correction sigma -> U_x sigma U_x*. The
/// output is the outcome-averaged corrected state. Outcomes with probability
/// below 1e-14 are dropped.
inline TeleportResult teleport_state(const TightScheme &s, const ComplexMatrix &rho) {
    const std::size_t d = s.d();
    require_density_operator(rho, d);
    TeleportResult r;
    r.output = ComplexMatrix(d, d);
    for (std::size_t x = 0; x < d * d; x++) {
        ComplexMatrix sigma = detail::conditional_state(s.effects()[x], rho, s.omega());
        const double p = sigma.trace().real();
        r.probabilities.push_back(p);
        if (p < 1e-14) {
            continue;
        }
        const auto &u = s.channel_unitaries()[x];
        r.output += u * sigma * u.adjoint();
    }
    return r;
}

/// Recovers the unitary basis behind a valid scheme: Omega is the dominant
/// eigenvector of omega and U_x follows from Phi_x as in entangled_to_basis.
/// Elements agree with the originals up to a common phase.
inline UnitaryBasis extract_basis_from_scheme(const TightScheme &s, double tol = kDefaultTol) {
    auto verdict = verify_scheme(s, tol);
    if (!verdict) {
        throw SchemeInvalid(std::string(to_string(s.mode())) + " identity fails with deviation " +
                            std::to_string(verdict.max_deviation) + " at " + verdict.worst_case);
    }
    auto eig = linalg::hermitian_eigen(s.omega());
    StateVector omega = eig.vectors.back();
    return entangled_to_basis(s.effects(), omega, tol);
}

}  // namespace ubases
