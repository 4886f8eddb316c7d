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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Runtime limits are part of the criteria where stated.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "ubases/hadamard.hpp"
#include "ubases/latin.hpp"
#include "ubases/random.hpp"
#include "ubases/schemes.hpp"
#include "ubases/tensor_core.hpp"
#include "ubases/unitary_basis.hpp"

namespace {

using namespace ubases;

struct NamedBasis {
    std::string name;
    UnitaryBasis basis;
};

struct NamedScheme {
    std::string name;
    TightScheme scheme;
};

std::string sci(double x) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(2) << x;
    return s.str();
}

/// Tracks the worst value of a quantity and where it occurred.
struct Worst {
    double value = 0;
    std::string where = "-";

    void note(double v, const std::string &at) {
        if (!(v <= value)) {  // also catches NaN
            value = v;
            where = at;
        }
    }
};

struct Outcome {
    bool pass;
    std::string detail;
};

int g_failures = 0;

void run(int id, const std::string &title, double limit_seconds, const std::function<Outcome()> &body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream timing;
    timing << std::fixed << std::setprecision(2) << seconds << " s";
    if (limit_seconds > 0) {
        timing << " / limit " << limit_seconds << " s";
        if (seconds >= limit_seconds) {
            o.pass = false;
            o.detail += "; runtime limit exceeded";
        }
    }
    if (!o.pass) {
        g_failures++;
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << id << " " << title << ": " << o.detail
              << " [" << timing.str() << "]" << std::endl;
}

std::vector<NamedBasis> construction_paths() {
    std::vector<NamedBasis> out;
    for (std::size_t d = 2; d <= 6; d++) {
        out.push_back({"weyl d=" + std::to_string(d), weyl_basis(d)});
    }
    for (std::size_t d = 2; d <= 5; d++) {
        out.push_back({"shift-multiply cyclic/fourier d=" + std::to_string(d),
                       cyclic_shift_multiply(fourier_hadamard(d))});
    }
    Rng rng(20260401);
    for (int t = 0; t < 5; t++) {
        Complex u = random_phase(rng);
        std::vector<HadamardMatrix> hs(4, hadamard_d4_family(u));
        out.push_back({"shift-multiply d4-family u=" + sci(std::arg(u)) + " rad",
                       shift_multiply_basis(latin_from_cyclic(4), std::span<const HadamardMatrix>(hs))});
    }
    out.push_back({"tensor (2,2)", tensor_bases(weyl_basis(2), weyl_basis(2))});
    out.push_back({"tensor (2,3)", tensor_bases(weyl_basis(2), weyl_basis(3))});
    return out;
}

std::vector<NamedScheme> build_all(const std::vector<NamedBasis> &bases, SchemeMode mode) {
    std::vector<NamedScheme> out;
    for (const auto &b : bases) {
        out.push_back({b.name, build_scheme(b.basis, mode)});
    }
    return out;
}

/// Schemes that violate the identities: non-maximally entangled and product
/// resources, mismatched corrections, a rotated effect.
std::vector<NamedScheme> rigidity_suite() {
    std::vector<NamedScheme> out;
    const auto base = build_scheme(weyl_basis(2), SchemeMode::teleportation);
    for (double p : {0.6, 0.75, 0.9}) {
        StateVector w(4);
        w[0] = std::sqrt(p);
        w[3] = std::sqrt(1 - p);
        out.push_back({"weyl d=2, resource p=" + std::to_string(p).substr(0, 4), base.with_omega(outer(w, w))});
    }
    const auto e00 = StateVector::basis(4, 0);
    out.push_back({"weyl d=2, product resource", base.with_omega(outer(e00, e00))});

    const auto b3 = build_scheme(weyl_basis(3), SchemeMode::teleportation);
    auto channels = b3.channel_unitaries();
    std::swap(channels[1], channels[5]);
    out.push_back({"weyl d=3, swapped corrections", TightScheme(b3.omega(), channels, b3.effects(), b3.mode())});

    auto effects = b3.effects().vectors();
    const double t = 0.1;
    effects[2] = Complex(std::cos(t)) * effects[2] + Complex(std::sin(t)) * effects[3];
    out.push_back({"weyl d=3, rotated effect",
                   TightScheme(b3.omega(), b3.channel_unitaries(), MaxEntangledBasis(3, effects), b3.mode())});
    return out;
}

/// Phase-insensitive overlap |tr(A* B)/d|; 1 exactly when B = c A, |c| = 1,
/// for unitaries A, B.
double overlap(const ComplexMatrix &a, const ComplexMatrix &b) {
    return std::abs(trace_inner(a, b));
}

}  // namespace

int main() {
    std::cout << "ubases acceptance suite" << std::endl;

    const auto bases = construction_paths();
    const auto teleport_schemes = build_all(bases, SchemeMode::teleportation);

    run(1, "orthonormality on every construction path", 5.0, [&] {
        Worst w;
        for (const auto &b : construction_paths()) {
            auto r = verify_orthonormal(b.basis);
            w.note(std::max(r.max_deviation, r.unitarity_deviation), b.name);
        }
        return Outcome{w.value < 1e-10, "max deviation " + sci(w.value) + " (" + w.where + ") over " +
                                            std::to_string(bases.size()) + " bases, tol 1e-10"};
    });

    run(2, "depolarizer on the full matrix-unit probe set", 0, [&] {
        Worst w;
        for (const auto &b : bases) {
            w.note(verify_depolarizer(b.basis).deviation, b.name);
        }
        return Outcome{w.value < 1e-10, "max deviation " + sci(w.value) + " (" + w.where + "), tol 1e-10"};
    });

    run(3, "teleportation identity and simulated teleportation", 30.0, [&] {
        Worst identity, output, uniform;
        for (const auto &s : teleport_schemes) {
            identity.note(verify_teleportation(s.scheme).max_deviation, s.name);
        }
        for (const auto &s : teleport_schemes) {
            const std::size_t d = s.scheme.d();
            if (d < 2 || d > 5) {
                continue;
            }
            Rng rng(1000 + d);
            for (int t = 0; t < 50; t++) {
                auto rho = random_density(d, rng);
                auto r = teleport_state(s.scheme, rho);
                output.note(max_abs_diff(r.output, rho), s.name);
                for (double p : r.probabilities) {
                    uniform.note(std::abs(p - 1.0 / static_cast<double>(d * d)), s.name);
                }
            }
        }
        bool pass = identity.value < 1e-10 && output.value < 1e-10 && uniform.value < 1e-10;
        return Outcome{pass, "identity " + sci(identity.value) + " (" + identity.where + "); output " +
                                 sci(output.value) + "; outcome non-uniformity " + sci(uniform.value) +
                                 " over 50 random states per scheme with d in 2..5"};
    });

    run(4, "dense-coding outcome matrix equals identity", 0, [&] {
        Worst w;
        for (const auto &b : bases) {
            auto v = verify_dense_coding(build_scheme(b.basis, SchemeMode::dense_coding));
            const std::size_t n = v.outcome_matrix.size();
            for (std::size_t x = 0; x < n; x++) {
                for (std::size_t y = 0; y < n; y++) {
                    w.note(std::abs(v.outcome_matrix[x][y] - (x == y ? 1.0 : 0.0)), b.name);
                }
            }
            w.note(v.max_deviation, b.name);
        }
        return Outcome{w.value < 1e-10, "max |P - 1| " + sci(w.value) + " (" + w.where + "), tol 1e-10"};
    });

    run(5, "swapping equipment preserves the verdict", 0, [&] {
        int agree = 0, total = 0;
        std::string first_bad;
        for (const auto &s : teleport_schemes) {
            total++;
            bool t = verify_teleportation(s.scheme).pass;
            bool dc = verify_dense_coding(swap_roles(s.scheme)).pass;
            if (t && dc) {
                agree++;
            } else if (first_bad.empty()) {
                first_bad = "valid scheme fails: " + s.name;
            }
        }
        for (const auto &s : rigidity_suite()) {
            total++;
            bool t = verify_teleportation(s.scheme).pass;
            bool dc = verify_dense_coding(swap_roles(s.scheme)).pass;
            if (!t && !dc) {
                agree++;
            } else if (first_bad.empty()) {
                first_bad = "perturbed scheme passes: " + s.name;
            }
        }
        return Outcome{agree == total, std::to_string(agree) + "/" + std::to_string(total) +
                                           " schemes with matching verdicts (built: both pass; perturbed: both "
                                           "fail)" +
                                           (first_bad.empty() ? "" : "; " + first_bad)};
    });

    run(6, "normalized Latin square counts", 10.0, [&] {
        const std::uint64_t c3 = count_normalized_latin(3), c4 = count_normalized_latin(4),
                            c5 = count_normalized_latin(5);
        const std::uint64_t o3 = testing::count_normalized_latin_by_permutations(3),
                            o4 = testing::count_normalized_latin_by_permutations(4);
        bool pass = c3 == 1 && c4 == 4 && c5 == 56 && o3 == c3 && o4 == c4;
        return Outcome{pass, "d=3: " + std::to_string(c3) + ", d=4: " + std::to_string(c4) + ", d=5: " +
                                 std::to_string(c5) + " (expected 1, 4, 56; permutation oracle " +
                                 std::to_string(o3) + ", " + std::to_string(o4) + ")"};
    });

    run(7, "every d=2 basis is the Pauli basis up to phases", 0, [&] {
        const std::vector<ComplexMatrix> pauli{testing::kPauliI, testing::kPauliX, testing::kPauliY,
                                               testing::kPauliZ};
        std::vector<NamedBasis> d2;
        for (const auto &b : bases) {
            if (b.basis.d() == 2) {
                d2.push_back(b);
            }
        }
        Rng rng(77);
        const auto weyl2 = weyl_basis(2);
        d2.push_back({"entangled round trip",
                      entangled_to_basis(basis_to_entangled(weyl2, omega_vector(2)), omega_vector(2))});
        d2.push_back({"scheme extraction",
                      extract_basis_from_scheme(build_scheme(weyl2, SchemeMode::teleportation))});
        d2.push_back({"equivalence transform",
                      apply_equivalence(weyl2, ComplexMatrix::identity(2), ComplexMatrix::identity(2), {3, 1, 0, 2})});
        Worst w;
        bool distinct = true;
        for (const auto &b : d2) {
            std::vector<bool> used(4, false);
            for (const auto &u : b.basis.elements()) {
                std::size_t best = 0;
                for (std::size_t s = 1; s < 4; s++) {
                    if (overlap(pauli[s], u) > overlap(pauli[best], u)) {
                        best = s;
                    }
                }
                w.note(std::abs(overlap(pauli[best], u) - 1.0), b.name);
                w.note(testing::distance_up_to_phase(pauli[best], u), b.name);
                distinct = distinct && !used[best];
                used[best] = true;
            }
        }
        return Outcome{w.value < 1e-10 && distinct,
                       std::to_string(d2.size()) + " bases; max distance to a phased Pauli " + sci(w.value) +
                           (distinct ? ", members distinct" : ", REPEATED member")};
    });

    run(8, "weight recovery gives the maximally mixed state", 0, [&] {
        Worst rec, neg_min;
        neg_min.value = INFINITY;
        std::size_t count = 0;
        for (const auto &b : bases) {
            const std::size_t d = b.basis.d();
            if (d < 2 || d > 4) {
                continue;
            }
            count++;
            auto r = recover_weight_from_unitary_gram(b.basis);
            rec.note(r.deviation_from_maximally_mixed, b.name);
            ComplexMatrix w = ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d));
            w(0, 0) *= 1.1;
            double off = weighted_gram(b.basis.elements(), w).max_deviation;
            if (off < neg_min.value) {
                neg_min.value = off;
                neg_min.where = b.name;
            }
        }
        bool pass = rec.value < 1e-10 && neg_min.value > 1e-3;
        return Outcome{pass, std::to_string(count) + " bases at d=2..4; max |rho - 1/d| " + sci(rec.value) +
                                 "; 10% diagonal perturbation leaves gram off identity by >= " + sci(neg_min.value)};
    });

    run(9, "basis -> entangled -> basis and basis -> scheme -> basis round trips", 0, [&] {
        Worst w;
        std::size_t count = 0;
        for (const auto &b : bases) {
            const std::size_t d = b.basis.d();
            if (d < 2 || d > 5) {
                continue;
            }
            count++;
            const auto omega = omega_vector(d);
            auto via_entangled = entangled_to_basis(basis_to_entangled(b.basis, omega), omega);
            auto via_scheme = extract_basis_from_scheme(build_scheme(b.basis, SchemeMode::teleportation));
            for (std::size_t x = 0; x < b.basis.size(); x++) {
                w.note(std::abs(overlap(b.basis[x], via_entangled[x]) - 1.0), b.name + " via entangled");
                w.note(std::abs(overlap(b.basis[x], via_scheme[x]) - 1.0), b.name + " via scheme");
            }
        }
        return Outcome{w.value < 1e-11, std::to_string(count) + " bases at d=2..5; max ||tr(U* U')/d| - 1| " +
                                            sci(w.value) + " (" + w.where + "), tol 1e-11"};
    });

    run(10, "projector completeness and its rotation sensitivity", 0, [&] {
        Worst pass_dev;
        double weakest_failure = INFINITY;
        std::string weakest_where = "-";
        for (const auto &b : bases) {
            const auto phi = basis_to_entangled(b.basis, omega_vector(b.basis.d())).vectors();
            pass_dev.note(check_projector_completeness(std::span<const StateVector>(phi)).deviation, b.name);
            const double t = 0.1;
            for (std::size_t x = 0; x < phi.size(); x++) {
                auto rotated = phi;
                const auto &toward = phi[(x + 1) % phi.size()];
                rotated[x] = Complex(std::cos(t)) * phi[x] + Complex(std::sin(t)) * toward;
                double dev = check_projector_completeness(std::span<const StateVector>(rotated)).deviation;
                if (dev < weakest_failure) {
                    weakest_failure = dev;
                    weakest_where = b.name + " x=" + std::to_string(x);
                }
            }
        }
        bool pass = pass_dev.value <= kDefaultTol && weakest_failure > 1e-3;
        return Outcome{pass, "generated bases: max deviation " + sci(pass_dev.value) +
                                 "; every single 0.1 rad rotation deviates by >= " + sci(weakest_failure) + " (" +
                                 weakest_where + ")"};
    });

    run(11, "4x4 Hadamard family validity and Fourier equivalences", 0, [&] {
        Rng rng(4444);
        Worst w;
        for (int t = 0; t < 100; t++) {
            Complex u = random_phase(rng);
            w.note(validate_hadamard(hadamard_d4_family(u).matrix()).deviation, "u=" + sci(std::arg(u)));
        }
        const auto klein = tensor_hadamard(fourier_hadamard(2), fourier_hadamard(2));
        const bool klein_match =
            find_permutation_equivalence(hadamard_d4_family(Complex(1, 0)), klein).has_value();
        const bool cyclic_match =
            find_permutation_equivalence(hadamard_d4_family(Complex(0, 1)), fourier_hadamard(4)).has_value();
        bool pass = w.value < 1e-10 && klein_match && cyclic_match;
        return Outcome{pass, "100 random u: max deviation " + sci(w.value) + "; u=1 ~ Z2xZ2 Fourier: " +
                                 (klein_match ? "yes" : "no") + "; u=i ~ Z4 Fourier: " +
                                 (cyclic_match ? "yes" : "no")};
    });

    run(12, "periodic-phase Hadamards", 0, [&] {
        Rng rng(1212);
        Worst w;
        int built = 0, rejected = 0, violations = 0;
        for (auto [p, q] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
            for (int t = 0; t < 50; t++) {
                ComplexMatrix cell(p, q);
                for (std::size_t a = 0; a < p; a++) {
                    for (std::size_t b = 0; b < q; b++) {
                        cell(a, b) = random_phase(rng);
                    }
                }
                auto v = periodic_phases_from_cell(p, q, cell);
                auto h = periodic_phase_hadamard(p, q, v);
                w.note(validate_hadamard(h.matrix()).deviation, std::to_string(p) + "x" + std::to_string(q));
                built++;

                // Break periodicity at one random entry with a different phase.
                const std::size_t d = p * q;
                auto broken = v;
                std::size_t k = rng() % d, l = rng() % d;
                broken(k, l) *= std::polar(1.0, 0.3);
                violations++;
                try {
                    periodic_phase_hadamard(p, q, broken);
                } catch (const PeriodicityViolated &) {
                    rejected++;
                }
            }
        }
        bool pass = w.value < 1e-10 && rejected == violations;
        return Outcome{pass, std::to_string(built) + " random cells at (2,2),(2,3): max deviation " + sci(w.value) +
                                 "; periodicity violations rejected " + std::to_string(rejected) + "/" +
                                 std::to_string(violations)};
    });

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : std::to_string(g_failures) + " CRITERIA FAIL") << std::endl;
    return g_failures == 0 ? 0 : 1;
}
