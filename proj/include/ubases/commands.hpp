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

// Implementations of the `ubases` subcommands. Each command writes its report
// to `out`, diagnostics to `err`, and returns the process exit code:
//   0 pass, 1 verification failure, 2 input error.
// Argument parsing lives in the executable; everything here is testable with
// string streams.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ubases/document.hpp"
#include "ubases/hadamard.hpp"
#include "ubases/latin.hpp"
#include "ubases/random.hpp"
#include "ubases/schemes.hpp"
#include "ubases/tensor_core.hpp"
#include "ubases/unitary_basis.hpp"

namespace ubases {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInputError = 2 };

struct CommandStreams {
    std::ostream &out;
    std::ostream &err;
};

struct GenerateOptions {
    /// latin | hadamard | unitary-basis | entangled-basis | scheme
    std::string kind;
    std::string construction;
    std::optional<std::size_t> d;
    std::optional<std::size_t> p;
    std::optional<std::size_t> q;
    /// Phase angle theta (radians) of u = exp(i theta) in the d=4 family.
    std::optional<double> u_phase;
    std::optional<std::uint64_t> rng_seed;
    std::string latin_file;
    std::vector<std::string> hadamard_files;
    /// Factor documents for `--construction tensor`.
    std::vector<std::string> from_files;
    std::string from_basis;
    std::string mode = "teleportation";
    /// Destination file; empty means stdout.
    std::string output;
};

struct SimulateOptions {
    std::string scheme_file;
    /// pure:i | maximally-mixed | random
    std::string state = "maximally-mixed";
    std::size_t trials = 1;
    std::optional<std::uint64_t> rng_seed;
    double tol = kDefaultTol;
};

inline std::string format_deviation(double x) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(3) << x;
    return s.str();
}

inline DesignDocument load_document(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return deserialize(buf.str());
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.what());
    }
}

namespace detail {

inline std::size_t require_d(const GenerateOptions &o) {
    if (!o.d) {
        throw BadParams("--construction " + o.construction + " needs --d");
    }
    if (*o.d < 1) {
        throw BadParams("--d must be positive");
    }
    return *o.d;
}

inline std::string normalize_kind(std::string kind) {
    for (auto &c : kind) {
        if (c == '-') {
            c = '_';
        }
    }
    return kind;
}

template <typename T>
T load_payload(const std::string &path, DocumentKind want) {
    DesignDocument doc = load_document(path);
    if (doc.kind() != want) {
        throw BadParams(path + " holds a " + to_string(doc.kind()) + " document, expected " + to_string(want));
    }
    return std::get<T>(doc.payload);
}

inline std::string describe_seed(const GenerateOptions &o) {
    return o.rng_seed ? " rng_seed=" + std::to_string(*o.rng_seed) : "";
}

inline std::uint64_t require_seed(const GenerateOptions &o) {
    if (!o.rng_seed) {
        throw BadParams("--construction " + o.construction + " is randomized and needs an explicit --rng-seed");
    }
    return *o.rng_seed;
}

inline void require_two_factors(const GenerateOptions &o) {
    if (o.from_files.size() != 2) {
        throw BadParams("--construction tensor needs exactly two --from documents");
    }
}

inline Complex u_from_phase(const GenerateOptions &o) {
    if (!o.u_phase) {
        throw BadParams("--construction d4-family needs --u-phase");
    }
    return std::polar(1.0, *o.u_phase);
}

inline std::string unknown_construction(const GenerateOptions &o, const std::string &choices) {
    return "unknown construction \"" + o.construction + "\" for " + o.kind + " (choose from " + choices + ")";
}

inline DesignDocument generate_latin(const GenerateOptions &o) {
    if (o.construction == "cyclic") {
        std::size_t d = require_d(o);
        return {d, "latin cyclic d=" + std::to_string(d), latin_from_cyclic(d).grid()};
    }
    if (o.construction == "tensor") {
        require_two_factors(o);
        LatinSquare a(load_payload<LatinGrid>(o.from_files[0], DocumentKind::latin));
        LatinSquare b(load_payload<LatinGrid>(o.from_files[1], DocumentKind::latin));
        LatinSquare t = tensor_latin(a, b);
        return {t.d(), "latin tensor of " + o.from_files[0] + " and " + o.from_files[1], t.grid()};
    }
    throw BadParams(unknown_construction(o, "cyclic, tensor"));
}

inline DesignDocument generate_hadamard(const GenerateOptions &o) {
    if (o.construction == "fourier") {
        std::size_t d = require_d(o);
        return {d, "hadamard fourier d=" + std::to_string(d), fourier_hadamard(d).matrix()};
    }
    if (o.construction == "d4-family") {
        Complex u = u_from_phase(o);
        return {4, "hadamard d4-family u_phase=" + std::to_string(*o.u_phase), hadamard_d4_family(u).matrix()};
    }
    if (o.construction == "periodic") {
        if (!o.p || !o.q || *o.p < 1 || *o.q < 1) {
            throw BadParams("--construction periodic needs positive --p and --q");
        }
        Rng rng(require_seed(o));
        ComplexMatrix cell(*o.p, *o.q);
        for (std::size_t a = 0; a < *o.p; a++) {
            for (std::size_t b = 0; b < *o.q; b++) {
                cell(a, b) = random_phase(rng);
            }
        }
        auto h = periodic_phase_hadamard(*o.p, *o.q, periodic_phases_from_cell(*o.p, *o.q, cell));
        return {h.d(),
                "hadamard periodic p=" + std::to_string(*o.p) + " q=" + std::to_string(*o.q) + describe_seed(o),
                h.matrix()};
    }
    if (o.construction == "tensor") {
        require_two_factors(o);
        HadamardMatrix a(load_payload<ComplexMatrix>(o.from_files[0], DocumentKind::hadamard));
        HadamardMatrix b(load_payload<ComplexMatrix>(o.from_files[1], DocumentKind::hadamard));
        auto t = tensor_hadamard(a, b);
        return {t.d(), "hadamard tensor of " + o.from_files[0] + " and " + o.from_files[1], t.matrix()};
    }
    throw BadParams(unknown_construction(o, "fourier, d4-family, periodic, tensor"));
}

inline UnitaryBasis require_valid_basis(const UnitaryBasis &b, const std::string &path) {
    auto report = verify_orthonormal(b);
    if (!report) {
        throw BasisInvalid(path + " is not a unitary basis (gram deviation " +
                           format_deviation(report.max_deviation) + ")");
    }
    return b;
}

inline DesignDocument generate_unitary_basis(const GenerateOptions &o) {
    if (o.construction == "weyl") {
        std::size_t d = require_d(o);
        return {d, "unitary_basis weyl d=" + std::to_string(d), weyl_basis(d)};
    }
    if (o.construction == "shift-multiply") {
        if (o.latin_file.empty() || o.hadamard_files.empty()) {
            throw BadParams("--construction shift-multiply needs --latin FILE and --hadamards FILE...");
        }
        LatinSquare lambda(load_payload<LatinGrid>(o.latin_file, DocumentKind::latin));
        const std::size_t d = lambda.d();
        std::vector<HadamardMatrix> hs;
        for (const auto &f : o.hadamard_files) {
            hs.emplace_back(load_payload<ComplexMatrix>(f, DocumentKind::hadamard));
        }
        if (hs.size() == 1) {
            // One file stands for the same Hadamard in every row.
            hs.assign(d, hs.front());
        }
        if (hs.size() != d) {
            throw BadParams("--hadamards needs 1 or " + std::to_string(d) + " files, got " +
                            std::to_string(hs.size()));
        }
        std::string meta = "unitary_basis shift-multiply latin=" + o.latin_file + " hadamards=";
        for (std::size_t j = 0; j < o.hadamard_files.size(); j++) {
            meta += (j ? "," : "") + o.hadamard_files[j];
        }
        return {d, meta, shift_multiply_basis(lambda, std::span<const HadamardMatrix>(hs))};
    }
    if (o.construction == "d4-family") {
        Complex u = u_from_phase(o);
        std::vector<HadamardMatrix> hs(4, hadamard_d4_family(u));
        return {4, "unitary_basis d4-family u_phase=" + std::to_string(*o.u_phase),
                shift_multiply_basis(latin_from_cyclic(4), std::span<const HadamardMatrix>(hs))};
    }
    if (o.construction == "tensor") {
        require_two_factors(o);
        auto a = require_valid_basis(load_payload<UnitaryBasis>(o.from_files[0], DocumentKind::unitary_basis),
                                     o.from_files[0]);
        auto b = require_valid_basis(load_payload<UnitaryBasis>(o.from_files[1], DocumentKind::unitary_basis),
                                     o.from_files[1]);
        auto t = tensor_bases(a, b);
        return {t.d(), "unitary_basis tensor of " + o.from_files[0] + " and " + o.from_files[1], t};
    }
    throw BadParams(unknown_construction(o, "weyl, shift-multiply, d4-family, tensor"));
}

inline UnitaryBasis require_from_basis(const GenerateOptions &o) {
    if (o.from_basis.empty()) {
        throw BadParams(o.kind + " needs --from-basis FILE");
    }
    return require_valid_basis(load_payload<UnitaryBasis>(o.from_basis, DocumentKind::unitary_basis), o.from_basis);
}

inline SchemeMode parse_mode_option(const std::string &m) {
    if (m == "teleportation") {
        return SchemeMode::teleportation;
    }
    if (m == "dense-coding" || m == "dense_coding") {
        return SchemeMode::dense_coding;
    }
    throw BadParams("--mode must be teleportation or dense-coding, got \"" + m + "\"");
}

}  // namespace detail

/// Builds the document described by `o` without writing it.
inline DesignDocument generate_document(const GenerateOptions &o) {
    const std::string kind = detail::normalize_kind(o.kind);
    if (kind == "latin") {
        return detail::generate_latin(o);
    }
    if (kind == "hadamard") {
        return detail::generate_hadamard(o);
    }
    if (kind == "unitary_basis") {
        return detail::generate_unitary_basis(o);
    }
    if (kind == "entangled_basis") {
        auto b = detail::require_from_basis(o);
        return {b.d(), "entangled_basis from " + o.from_basis, basis_to_entangled(b, omega_vector(b.d()))};
    }
    if (kind == "scheme") {
        auto b = detail::require_from_basis(o);
        auto mode = detail::parse_mode_option(o.mode);
        return {b.d(), std::string("scheme ") + to_string(mode) + " from " + o.from_basis, build_scheme(b, mode)};
    }
    throw BadParams("unknown kind \"" + o.kind +
                    "\" (choose from latin, hadamard, unitary-basis, entangled-basis, scheme)");
}

inline int run_generate(const GenerateOptions &o, CommandStreams io) {
    DesignDocument doc;
    try {
        doc = generate_document(o);
    } catch (const Error &e) {
        io.err << "generate: " << e.what() << "\n";
        return kExitInputError;
    }
    const std::string text = serialize(doc);
    if (o.output.empty()) {
        io.out << text;
        return kExitPass;
    }
    std::ofstream f(o.output, std::ios::binary);
    f << text;
    if (!f) {
        io.err << "generate: cannot write " << o.output << "\n";
        return kExitInputError;
    }
    io.out << "wrote " << to_string(doc.kind()) << " d=" << doc.d << " to " << o.output << "\n";
    return kExitPass;
}

/// One named check of a verification report.
struct VerifyLine {
    std::string name;
    Check check;
};

/// Runs every validator that applies to the document's kind.
inline std::vector<VerifyLine> verify_document(const DesignDocument &doc, double tol) {
    std::vector<VerifyLine> lines;
    auto guarded = [&](const std::string &name, auto &&fn) {
        try {
            lines.push_back({name, fn()});
        } catch (const Error &e) {
            lines.push_back({name, Check{false, INFINITY, e.what()}});
        }
    };
    std::visit(
        [&](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LatinGrid>) {
                guarded("latin", [&] {
                    auto c = validate_latin(p);
                    return c ? Check{} : Check{false, 1.0, "repeated symbol in " + c.violation->describe()};
                });
            } else if constexpr (std::is_same_v<T, ComplexMatrix>) {
                guarded("hadamard", [&] { return validate_hadamard(p, tol); });
            } else if constexpr (std::is_same_v<T, UnitaryBasis>) {
                guarded("orthonormality", [&] {
                    auto r = verify_orthonormal(p, tol);
                    double dev = std::max(r.max_deviation, r.unitarity_deviation);
                    return make_check(dev, tol, r.unitarity_deviation > r.max_deviation ? "element not unitary"
                                                                                       : "gram matrix != 1");
                });
                guarded("depolarizer", [&] { return verify_depolarizer(p, {}, tol); });
            } else if constexpr (std::is_same_v<T, MaxEntangledBasis>) {
                guarded("entangled_basis", [&] { return verify_entangled_basis(p, tol); });
                guarded("projector_completeness", [&] {
                    return check_projector_completeness(std::span<const StateVector>(p.vectors()), tol);
                });
            } else {
                guarded("components", [&] { return check_scheme_components(p, tol); });
                guarded(to_string(p.mode()), [&] {
                    auto v = verify_scheme(p, tol);
                    return Check{v.pass, v.max_deviation, v.worst_case};
                });
            }
        },
        doc.payload);
    return lines;
}

inline int run_verify(const std::string &path, double tol, CommandStreams io) {
    DesignDocument doc;
    try {
        doc = load_document(path);
    } catch (const Error &e) {
        io.err << "verify: " << e.what() << "\n";
        return kExitInputError;
    }
    bool pass = true;
    double worst = 0;
    io.out << "document: " << to_string(doc.kind()) << " d=" << doc.d;
    if (!doc.meta.empty()) {
        io.out << " (" << doc.meta << ")";
    }
    io.out << "\n";
    for (const auto &line : verify_document(doc, tol)) {
        pass = pass && line.check.pass;
        worst = std::max(worst, line.check.deviation);
        io.out << "  " << (line.check.pass ? "PASS " : "FAIL ") << line.name
               << " deviation=" << format_deviation(line.check.deviation);
        if (!line.check.pass && !line.check.witness.empty()) {
            io.out << " witness: " << line.check.witness;
        }
        io.out << "\n";
    }
    io.out << (pass ? "PASS" : "FAIL") << " max_deviation=" << format_deviation(worst)
           << " tol=" << format_deviation(tol) << "\n";
    return pass ? kExitPass : kExitFail;
}

namespace detail {

/// Input states for `simulate`. Random states are drawn per trial.
inline std::vector<ComplexMatrix> simulation_inputs(const SimulateOptions &o, std::size_t d) {
    if (o.trials < 1) {
        throw BadParams("--trials must be positive");
    }
    if (o.state == "maximally-mixed") {
        return {ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d))};
    }
    if (o.state == "random") {
        if (!o.rng_seed) {
            throw BadParams("--state random needs an explicit --rng-seed");
        }
        Rng rng(*o.rng_seed);
        std::vector<ComplexMatrix> states;
        for (std::size_t t = 0; t < o.trials; t++) {
            states.push_back(random_density(d, rng));
        }
        return states;
    }
    const std::string prefix = "pure:";
    if (o.state.rfind(prefix, 0) == 0) {
        const std::string idx = o.state.substr(prefix.size());
        std::size_t pos = 0;
        unsigned long i = 0;
        try {
            i = std::stoul(idx, &pos);
        } catch (const std::exception &) {
            pos = 0;
        }
        if (idx.empty() || pos != idx.size() || i >= d) {
            throw BadParams("--state pure:i needs 0 <= i < " + std::to_string(d) + ", got \"" + o.state + "\"");
        }
        auto e = StateVector::basis(d, i);
        return {outer(e, e)};
    }
    throw BadParams("--state must be pure:i, maximally-mixed or random, got \"" + o.state + "\"");
}

}  // namespace detail

/// Teleports the requested input states through the scheme's components and
/// reports max |output - input| plus the outcome histogram.
inline int run_simulate(const SimulateOptions &o, CommandStreams io) {
    std::optional<TightScheme> scheme;
    std::vector<ComplexMatrix> inputs;
    try {
        DesignDocument doc = load_document(o.scheme_file);
        if (doc.kind() != DocumentKind::scheme) {
            throw BadParams(o.scheme_file + " holds a " + to_string(doc.kind()) + " document, expected scheme");
        }
        scheme = std::get<TightScheme>(doc.payload);
        inputs = detail::simulation_inputs(o, scheme->d());
    } catch (const Error &e) {
        io.err << "simulate: " << e.what() << "\n";
        return kExitInputError;
    }
    const std::size_t n = scheme->d() * scheme->d();
    double deviation = 0;
    double uniformity = 0;
    std::vector<double> histogram(n, 0.0);
    for (const auto &rho : inputs) {
        TeleportResult r;
        try {
            r = teleport_state(*scheme, rho);
        } catch (const Error &e) {
            io.err << "simulate: " << e.what() << "\n";
            return kExitInputError;
        }
        deviation = std::max(deviation, max_abs_diff(r.output, rho));
        for (std::size_t x = 0; x < n; x++) {
            histogram[x] += r.probabilities[x] / static_cast<double>(inputs.size());
            uniformity = std::max(uniformity, std::abs(r.probabilities[x] - 1.0 / static_cast<double>(n)));
        }
    }
    const bool pass = deviation <= o.tol;
    io.out << "scheme: " << o.scheme_file << " d=" << scheme->d() << "\n";
    io.out << "state: " << o.state << " trials=" << inputs.size() << "\n";
    io.out << "histogram: [";
    for (std::size_t x = 0; x < n; x++) {
        io.out << (x ? ", " : "") << std::fixed << std::setprecision(6) << histogram[x];
    }
    io.out << std::defaultfloat << "]\n";
    io.out << "max_outcome_nonuniformity=" << format_deviation(uniformity) << "\n";
    io.out << (pass ? "PASS" : "FAIL") << " max_deviation=" << format_deviation(deviation)
           << " tol=" << format_deviation(o.tol) << "\n";
    return pass ? kExitPass : kExitFail;
}

inline int run_count_latin(std::size_t d, CommandStreams io) {
    try {
        if (d < 1) {
            throw BadParams("d must be positive");
        }
        io.out << count_normalized_latin(d) << "\n";
        return kExitPass;
    } catch (const Error &e) {
        io.err << "count-latin: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace ubases
