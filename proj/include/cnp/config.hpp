#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cnp/lattice.hpp"
#include "cnp/problem.hpp"

namespace cnp {

struct ProblemConfig {
    InterpolationProblem problem;
    uint64_t seed = 20240901;
    bool seed_given = false;
    double tau_psd = 1e-9;
};

struct LatticeConfig {
    std::vector<InvariantSubspace> subspaces;
    int modulus = 0;
};

// Parses the JSON problem config (constraint zeros, nodes, scalar or matrix
// targets, seed, tolerance overrides). Field-precise diagnostics via
// InvalidParameter.
ProblemConfig parse_problem_config(const std::string& text);

// Targets are optional for commands that only need the geometry.
ProblemConfig parse_problem_config(const std::string& text, bool targets_required);

LatticeConfig parse_lattice_config(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace cnp
