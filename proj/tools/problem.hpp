#pragma once
// Problem files: a single JSON document bundling the graded basis, the
// pairing form, an optional action, an optional matrix-algebra model, and
// run-scale parameters.  The loader validates everything it can before any
// computation starts and reports parse errors with line/column positions.

#include <cyclebv/action.hpp>
#include <cyclebv/matrix_model.hpp>
#include <cyclebv/superspace.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace cyclebv::cli {

// Raised for malformed files or inconsistent blocks; the message names the
// file and, for syntax errors, the line and column.
struct ProblemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelBlock {
  ModelKind kind = ModelKind::Queer;
  int size = 1;
  std::vector<RatFunc> lambda;  // empty means symbolic generators
};

struct RunBlock {
  int order = 2;        // h-order window for expansions and residuals
  int degree = -1;      // coupling-degree cutoff; -1 derives it from the run
  int max_excess = 1;   // bound on -chi for graph enumeration
  int theorem = 0;      // 1, 2, or 3; 0 when the file does not choose
};

struct ProblemFile {
  std::string path;
  std::string schema;
  SuperBasis basis;
  PairingForm form;
  std::optional<GradedAction> action;
  std::optional<ModelBlock> model;
  RunBlock run;
};

// Parses and validates a problem file.  The pairing form is kept as written
// (its validity is itself something commands may want to test and report);
// the action block, when present, must pass the grading rules.
ProblemFile load_problem(const std::string& path);

// Parses an interaction coefficient: an optional rational prefix and
// '*'-separated coupling symbols with optional '^' powers, e.g. "t3",
// "-1/2*s^2*t", "3/4".  Throws ProblemError on anything else.
CouplingSeries parse_coupling_monomial(const std::string& text);

// Builds the model of a block (symbolic when lambda is empty).
MatrixAlgebraModel build_block_model(const ModelBlock& block);

}  // namespace cyclebv::cli
