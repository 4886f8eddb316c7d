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

#include "ubases/schemes.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_util.hpp"
#include "ubases/random.hpp"

using namespace ubases;
using namespace ubases::testing;

namespace {

ComplexMatrix schmidt_resource(double p) {
    StateVector w(4);
    w[0] = std::sqrt(p);
    w[3] = std::sqrt(1 - p);
    return outer(w, w);
}

ComplexMatrix product_resource(std::size_t d) {
    auto e = StateVector::basis(d * d, 0);
    return outer(e, e);
}

/// Worst |LHS - tr(rho A)| over matrix units, all on the full three-party space.
double teleportation_deviation_oracle(const TightScheme &s) {
    const std::size_t d = s.d();
    double worst = 0;
    for (std::size_t a = 0; a < d; a++) {
        for (std::size_t b = 0; b < d; b++) {
            auto rho = ComplexMatrix::unit(d, a, b);
            for (std::size_t c = 0; c < d; c++) {
                for (std::size_t e = 0; e < d; e++) {
                    auto obs = ComplexMatrix::unit(d, c, e);
                    auto lhs = teleportation_lhs_oracle(rho, s.omega(), s.effects().vectors(), s.channel_unitaries(), obs);
                    worst = std::max(worst, std::abs(lhs - (rho * obs).trace()));
                }
            }
        }
    }
    return worst;
}

/// P[x][y] = tr(omega (U_x* (x) 1) F_y (U_x (x) 1)) with explicit Kronecker products.
double dense_coding_deviation_oracle(const TightScheme &s) {
    const std::size_t d = s.d();
    const auto id = ComplexMatrix::identity(d);
    double worst = 0;
    for (std::size_t x = 0; x < d * d; x++) {
        auto ux = tensor_product(s.channel_unitaries()[x], id);
        for (std::size_t y = 0; y < d * d; y++) {
            auto f = outer(s.effects()[y], s.effects()[y]);
            auto p = (s.omega() * ux.adjoint() * f * ux).trace();
            worst = std::max(worst, std::abs(p - Complex(x == y ? 1.0 : 0.0)));
        }
    }
    return worst;
}

}  // namespace

TEST(basis_to_entangled, examples) {
    auto one = basis_to_entangled(UnitaryBasis(1, {ComplexMatrix::identity(1)}), omega_vector(1));
    EXPECT_LT(max_abs_diff(one[0], omega_vector(1)), 1e-16);

    // Hand expansion of (U_x (x) 1) Omega for U = I, X, Z, XZ.
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<StateVector> bell{
        StateVector{r, 0, 0, r},
        StateVector{0, r, r, 0},
        StateVector{r, 0, 0, -r},
        StateVector{0, -r, r, 0},
    };
    auto phi = basis_to_entangled(weyl_basis(2), omega_vector(2));
    for (std::size_t x = 0; x < 4; x++) {
        EXPECT_NEAR(std::abs(inner(bell[x], phi[x])), 1.0, 1e-15) << x;
    }

    auto phi3 = basis_to_entangled(weyl_basis(3), omega_vector(3));
    auto c = verify_entangled_basis(phi3, 1e-12);
    EXPECT_TRUE(c.pass);

    EXPECT_THROW(basis_to_entangled(weyl_basis(2), StateVector::basis(4, 0)), NotMaximallyEntangled);
}

TEST(entangled_to_basis, round_trip) {
    for (std::size_t d = 2; d <= 5; d++) {
        auto b = weyl_basis(d);
        auto back = entangled_to_basis(basis_to_entangled(b, omega_vector(d)), omega_vector(d));
        for (std::size_t x = 0; x < b.size(); x++) {
            EXPECT_LT(max_abs_diff(back[x], b[x]), 1e-12);
        }
    }
}

TEST(entangled_to_basis, non_canonical_reference_vector) {
    Rng rng(1);
    for (std::size_t d : {2u, 3u, 4u}) {
        auto w = random_unitary(d, rng);
        auto omega = apply_first_factor(w, omega_vector(d));
        auto b = weyl_basis(d);
        auto phi = basis_to_entangled(b, omega);
        EXPECT_TRUE(verify_entangled_basis(phi).pass);
        auto back = entangled_to_basis(phi, omega);
        for (std::size_t x = 0; x < b.size(); x++) {
            EXPECT_LT(max_abs_diff(back[x], b[x]), 1e-12);
        }
        // Same vectors read against the canonical Omega give U_x W instead.
        auto shifted = entangled_to_basis(phi, omega_vector(d));
        EXPECT_LT(max_abs_diff(shifted[1], b[1] * w), 1e-12);
    }
}

TEST(entangled_to_basis, product_vector_is_rejected) {
    auto vectors = basis_to_entangled(weyl_basis(2), omega_vector(2)).vectors();
    vectors[2] = StateVector::basis(4, 0);
    EXPECT_THROW(entangled_to_basis(MaxEntangledBasis(2, vectors), omega_vector(2)), NotUnitaryExtraction);
}

TEST(entangled_to_basis, bell_vectors_give_paulis) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<StateVector> bell{
        StateVector{r, 0, 0, r},
        StateVector{r, 0, 0, -r},
        StateVector{0, r, r, 0},
        StateVector{0, r, -r, 0},
    };
    auto b = entangled_to_basis(MaxEntangledBasis(2, bell), omega_vector(2));
    EXPECT_LT(distance_up_to_phase(b[0], kPauliI), 1e-15);
    EXPECT_LT(distance_up_to_phase(b[1], kPauliZ), 1e-15);
    EXPECT_LT(distance_up_to_phase(b[2], kPauliX), 1e-15);
    EXPECT_LT(distance_up_to_phase(b[3], kPauliX * kPauliZ), 1e-15);
}

TEST(build_scheme, qubit_scheme) {
    auto s = build_scheme(weyl_basis(2), SchemeMode::teleportation);
    EXPECT_LT(max_abs_diff(s.omega(), outer(omega_vector(2), omega_vector(2))), 1e-16);
    EXPECT_TRUE(check_scheme_components(s).pass);
    EXPECT_EQ(s.mode(), SchemeMode::teleportation);
    auto v = verify_teleportation(s);
    EXPECT_TRUE(v.pass);
    EXPECT_LT(v.max_deviation, 1e-12);
}

TEST(build_scheme, effects_resolve_identity) {
    Rng rng(2);
    auto b = apply_equivalence(weyl_basis(3), random_unitary(3, rng), random_unitary(3, rng), identity_permutation(9));
    auto s = build_scheme(b, SchemeMode::dense_coding);
    EXPECT_LT(check_scheme_components(s, 1e-11).deviation, 1e-11);
    EXPECT_TRUE(check_projector_completeness(s.effects().vectors(), 1e-11).pass);
}

TEST(build_scheme, mode_only_changes_target) {
    auto t = build_scheme(weyl_basis(3), SchemeMode::teleportation);
    auto d = build_scheme(weyl_basis(3), SchemeMode::dense_coding);
    EXPECT_EQ(t.omega(), d.omega());
    EXPECT_EQ(t.channel_unitaries(), d.channel_unitaries());
    EXPECT_EQ(t.effects().vectors(), d.effects().vectors());
    EXPECT_NE(t.mode(), d.mode());
}

TEST(build_scheme, rejects_non_basis) {
    auto dup = weyl_basis(2).elements();
    dup[1] = dup[0];
    EXPECT_THROW(build_scheme(UnitaryBasis(2, dup), SchemeMode::teleportation), BasisInvalid);
}

TEST(verify_teleportation, matches_full_space_oracle) {
    for (std::size_t d : {2u, 3u}) {
        auto s = build_scheme(weyl_basis(d), SchemeMode::teleportation);
        EXPECT_NEAR(verify_teleportation(s).max_deviation, teleportation_deviation_oracle(s), 1e-12);
        auto broken = s.with_omega(product_resource(d));
        EXPECT_NEAR(verify_teleportation(broken).max_deviation, teleportation_deviation_oracle(broken), 1e-12);
    }
    Rng rng(3);
    auto s = build_scheme(weyl_basis(2), SchemeMode::teleportation).with_omega(random_density(4, rng));
    EXPECT_NEAR(verify_teleportation(s).max_deviation, teleportation_deviation_oracle(s), 1e-12);
}

TEST(verify_teleportation, examples) {
    auto s = build_scheme(weyl_basis(2), SchemeMode::teleportation);
    auto broken = verify_teleportation(s.with_omega(product_resource(2)));
    EXPECT_FALSE(broken.pass);
    EXPECT_GE(broken.max_deviation, 0.1);
    EXPECT_FALSE(broken.worst_case.empty());

    auto channels = s.channel_unitaries();
    channels[2] *= std::polar(1.0, 1.1);
    TightScheme phased(s.omega(), channels, s.effects(), SchemeMode::teleportation);
    EXPECT_TRUE(verify_teleportation(phased).pass);
}

TEST(verify_dense_coding, examples) {
    auto s = build_scheme(weyl_basis(3), SchemeMode::dense_coding);
    auto v = verify_dense_coding(s, 1e-11);
    EXPECT_TRUE(v.pass);
    ASSERT_EQ(v.outcome_matrix.size(), 9u);

    auto leaky = verify_dense_coding(build_scheme(weyl_basis(2), SchemeMode::dense_coding).with_omega(schmidt_resource(0.9)));
    EXPECT_FALSE(leaky.pass);
    EXPECT_GT(leaky.max_deviation, 1e-2);
}

TEST(verify_dense_coding, rows_are_distributions) {
    Rng rng(4);
    auto s = build_scheme(weyl_basis(3), SchemeMode::dense_coding);
    // Break orthogonality between channels and effects but keep both valid.
    std::vector<ComplexMatrix> channels;
    for (std::size_t x = 0; x < 9; x++) {
        channels.push_back(random_unitary(3, rng));
    }
    for (const auto &omega : {s.omega(), random_density(9, rng)}) {
        TightScheme t(omega, channels, s.effects(), SchemeMode::dense_coding);
        auto v = verify_dense_coding(t);
        EXPECT_FALSE(v.pass);
        for (const auto &row : v.outcome_matrix) {
            double sum = 0;
            for (double p : row) {
                EXPECT_GE(p, -1e-11);
                sum += p;
            }
            EXPECT_NEAR(sum, 1.0, 1e-11);
        }
    }
}

TEST(verify_dense_coding, matches_full_space_oracle) {
    Rng rng(5);
    for (std::size_t d : {2u, 3u}) {
        auto s = build_scheme(weyl_basis(d), SchemeMode::dense_coding);
        EXPECT_NEAR(verify_dense_coding(s).max_deviation, dense_coding_deviation_oracle(s), 1e-12);
        auto mixed = s.with_omega(random_density(d * d, rng));
        EXPECT_NEAR(verify_dense_coding(mixed).max_deviation, dense_coding_deviation_oracle(mixed), 1e-12);
    }
}

TEST(swap_roles, examples) {
    auto s = build_scheme(weyl_basis(2), SchemeMode::teleportation);
    auto swapped = swap_roles(s);
    EXPECT_EQ(swapped.mode(), SchemeMode::dense_coding);
    EXPECT_TRUE(verify_scheme(swapped).pass);
    auto twice = swap_roles(swapped);
    EXPECT_EQ(twice.mode(), s.mode());
    EXPECT_EQ(twice.omega(), s.omega());
    EXPECT_EQ(twice.channel_unitaries(), s.channel_unitaries());

    auto broken = s.with_omega(schmidt_resource(0.75));
    EXPECT_FALSE(verify_scheme(broken).pass);
    EXPECT_FALSE(verify_scheme(swap_roles(broken)).pass);
}

TEST(rigidity, partially_entangled_resources_fail_both_identities) {
    auto s = build_scheme(weyl_basis(2), SchemeMode::teleportation);
    for (double p : {0.6, 0.75, 0.9}) {
        auto broken = s.with_omega(schmidt_resource(p));
        const double overlap_gap = 1 - 2 * std::sqrt(p * (1 - p));
        const double floor = overlap_gap / 4 * 0.5;
        auto tele = verify_teleportation(broken);
        auto dense = verify_dense_coding(broken);
        EXPECT_FALSE(tele.pass);
        EXPECT_FALSE(dense.pass);
        EXPECT_GE(tele.max_deviation, floor);
        EXPECT_GE(dense.max_deviation, floor);
        // Regression values from the calibration sweep.
        EXPECT_NEAR(tele.max_deviation, overlap_gap, 1e-12) << p;
        EXPECT_NEAR(dense.max_deviation, overlap_gap / 2, 1e-12) << p;
    }
}

TEST(teleport_state, examples) {
    auto s = build_scheme(weyl_basis(2), SchemeMode::teleportation);
    auto mixed = teleport_state(s, ComplexMatrix::identity(2) * Complex(0.5));
    EXPECT_LT(max_abs_diff(mixed.output, ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);
    for (double p : mixed.probabilities) {
        EXPECT_NEAR(p, 0.25, 1e-15);
    }
    auto e0 = ComplexMatrix::unit(2, 0, 0);
    auto r = teleport_state(s, e0);
    EXPECT_LT(max_abs_diff(r.output, e0), 1e-15);
    for (double p : r.probabilities) {
        EXPECT_NEAR(p, 0.25, 1e-15);
    }
}

TEST(teleport_state, random_inputs) {
    Rng rng(6);
    for (std::size_t d = 2; d <= 5; d++) {
        auto s = build_scheme(weyl_basis(d), SchemeMode::teleportation);
        for (int t = 0; t < 50; t++) {
            auto rho = random_density(d, rng);
            auto r = teleport_state(s, rho);
            EXPECT_LT(max_abs_diff(r.output, rho), 1e-10);
            for (double p : r.probabilities) {
                EXPECT_NEAR(p, 1.0 / (d * d), 1e-10);
            }
        }
    }
}

TEST(teleport_state, dual_to_teleportation_identity) {
    // tr(out(rho) A) must equal the full-space left-hand side even when the
    // resource is broken.
    Rng rng(7);
    auto s = build_scheme(weyl_basis(2), SchemeMode::teleportation).with_omega(schmidt_resource(0.8));
    for (int t = 0; t < 5; t++) {
        auto rho = random_density(2, rng);
        auto a = random_ginibre(2, 2, rng);
        auto out = teleport_state(s, rho).output;
        auto lhs = teleportation_lhs_oracle(rho, s.omega(), s.effects().vectors(), s.channel_unitaries(), a);
        EXPECT_LT(std::abs((out * a).trace() - lhs), 1e-12);
    }
}

TEST(teleport_state, rejects_non_density_inputs) {
    auto s = build_scheme(weyl_basis(2), SchemeMode::teleportation);
    EXPECT_THROW(teleport_state(s, ComplexMatrix::identity(2)), NotDensityOperator);
    EXPECT_THROW(teleport_state(s, kPauliX), NotDensityOperator);
    EXPECT_THROW(teleport_state(s, ComplexMatrix{{1.5, 0}, {0, -0.5}}), NotDensityOperator);
    EXPECT_THROW(teleport_state(s, ComplexMatrix{{0.5, 1}, {0, 0.5}}), NotDensityOperator);
    EXPECT_THROW(teleport_state(s, ComplexMatrix::identity(3) * Complex(1.0 / 3)), NotDensityOperator);
}

TEST(extract_basis_from_scheme, round_trip) {
    auto b = weyl_basis(4);
    auto s = build_scheme(b, SchemeMode::teleportation);
    auto back = extract_basis_from_scheme(s);
    auto rep = verify_orthonormal(back);
    EXPECT_LT(rep.max_deviation, 1e-11);
    for (std::size_t x = 0; x < b.size(); x++) {
        EXPECT_NEAR(std::abs(trace_inner(b[x], back[x])), 1.0, 1e-11);
        for (const auto &probe : matrix_units(4)) {
            EXPECT_LT(max_abs_diff(back[x].adjoint() * probe * back[x], b[x].adjoint() * probe * b[x]), 1e-11);
        }
    }
    auto rebuilt = build_scheme(back, SchemeMode::teleportation);
    for (std::size_t x = 0; x < b.size(); x++) {
        EXPECT_LT(max_abs_diff(outer(rebuilt.effects()[x], rebuilt.effects()[x]), outer(s.effects()[x], s.effects()[x])),
                  1e-11);
    }
}

TEST(extract_basis_from_scheme, rejects_invalid_scheme) {
    auto s = build_scheme(weyl_basis(2), SchemeMode::dense_coding).with_omega(schmidt_resource(0.9));
    EXPECT_THROW(extract_basis_from_scheme(s), SchemeInvalid);
}
