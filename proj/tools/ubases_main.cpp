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

#include <iostream>

#include <CLI11.hpp>

#include "ubases/commands.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Unitary operator bases, teleportation and dense-coding schemes"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    ubases::GenerateOptions gen;
    auto *generate = app.add_subcommand("generate", "Build a design or scheme document");
    generate->add_option("kind", gen.kind, "latin | hadamard | unitary-basis | entangled-basis | scheme")->required();
    generate->add_option("--construction", gen.construction,
                         "latin: cyclic, tensor; hadamard: fourier, d4-family, periodic, tensor; "
                         "unitary-basis: weyl, shift-multiply, d4-family, tensor");
    generate->add_option("--d", gen.d, "Dimension");
    generate->add_option("--p", gen.p, "Row period of the phase cell (periodic Hadamard)");
    generate->add_option("--q", gen.q, "Column period of the phase cell (periodic Hadamard)");
    generate->add_option("--u-phase", gen.u_phase, "Angle theta in radians of u = exp(i theta) (d4-family)");
    generate->add_option("--rng-seed", gen.rng_seed, "Seed for randomized constructions");
    generate->add_option("--latin", gen.latin_file, "Latin square document (shift-multiply)");
    generate->add_option("--hadamards", gen.hadamard_files, "One or d Hadamard documents (shift-multiply)");
    generate->add_option("--from", gen.from_files, "Factor documents (tensor); give twice");
    generate->add_option("--from-basis", gen.from_basis, "Unitary basis document (entangled-basis, scheme)");
    generate->add_option("--mode", gen.mode, "teleportation | dense-coding (scheme)");
    generate->add_option("-o,--output", gen.output, "Output file (default: stdout)");

    std::string verify_file;
    double verify_tol = ubases::kDefaultTol;
    auto *verify = app.add_subcommand("verify", "Check a document against the properties of its kind");
    verify->add_option("file", verify_file, "Document to verify")->required();
    verify->add_option("--tol", verify_tol, "Absolute tolerance on max-entry deviations")->capture_default_str();

    ubases::SimulateOptions sim;
    auto *simulate = app.add_subcommand("simulate", "Teleport input states through a scheme document");
    simulate->add_option("scheme", sim.scheme_file, "Scheme document")->required();
    simulate->add_option("--state", sim.state, "pure:i | maximally-mixed | random")->capture_default_str();
    simulate->add_option("--trials", sim.trials, "Number of random input states")->capture_default_str();
    simulate->add_option("--rng-seed", sim.rng_seed, "Seed for --state random");
    simulate->add_option("--tol", sim.tol, "Absolute tolerance on the output deviation")->capture_default_str();

    std::size_t count_d = 0;
    auto *count = app.add_subcommand("count-latin", "Count normalized Latin squares of order d (d <= 5)");
    count->add_option("d", count_d, "Order")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return ubases::kExitInputError;
    }

    ubases::CommandStreams io{std::cout, std::cerr};
    if (*generate) {
        return ubases::run_generate(gen, io);
    }
    if (*verify) {
        return ubases::run_verify(verify_file, verify_tol, io);
    }
    if (*simulate) {
        return ubases::run_simulate(sim, io);
    }
    return ubases::run_count_latin(count_d, io);
}
