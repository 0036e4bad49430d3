#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noether/parse.hpp"
#include "noether/symmetry.hpp"

namespace noether::cli {

/// Expression text together with the line it came from.
struct Located {
    std::string text;
    int line = 0;
};

struct NumericBlock {
    std::vector<std::vector<double>> initial;
    double t_end = 10.0;
    double step = 1e-3;
    double tol_abs = 1e-7;
    double tol_rel = 1e-8;
};

struct TransformBlock {
    std::vector<std::string> primed_coordinates;
    Located t_of;
    std::vector<Located> x_of;
    std::optional<Located> gauge;
    std::optional<Located> lift;  // F
    std::string cyclic;           // primed coordinate name
    std::optional<Located> expected_lagrangian;
    std::optional<Located> expected_equivalent;
    std::optional<Located> expected_momentum;
    std::vector<Located> integrals;
    int line = 0;
};

struct ProblemFile {
    std::string source;
    std::string name;
    std::vector<std::string> coordinates;
    int order = 0;
    ParameterMap parameters;
    Located lagrangian;
    AnsatzConfig ansatz;
    std::optional<NumericBlock> numeric;
    std::optional<TransformBlock> transform;
    std::optional<int> expected_generators;
    std::vector<Located> expected_integrals;
};

/// Parses the line-oriented problem format. Errors are Error(InputError)
/// with "source:line:" context.
ProblemFile parse_problem(const std::string& text, const std::string& source = "<input>");
ProblemFile load_problem(const std::string& path);

/// Parses an expression field of `problem`, adding line context to errors.
Expr parse_field(const ProblemFile& problem, const Located& field, const std::vector<std::string>& coords);

}  // namespace noether::cli
