// runspec.hpp -- JSON-driven task runner behind the command line tool: parse
// and validate a task spec, execute it, and emit CSV or JSON artifacts with
// deterministic contents.
#pragma once

#include <string>
#include <vector>

#include "punity/budget.hpp"

namespace punity::cli {

struct RunOptions {
  std::string spec_path;
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json
  bool serial = false;         // accepted for interface stability; evaluation
                               // is sequential and deterministic either way
  long long budget = EvalBudget::kDefault;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 validation failure, 3 budget exceeded
  std::vector<std::string> artifacts;
  std::vector<std::string> errors;
};

std::vector<std::string> list_tasks();

// Itemized schema and consistency errors; empty means the task file can run.
std::vector<std::string> validate_spec(const std::string& path);

RunResult run(const RunOptions& options);

}  // namespace punity::cli
