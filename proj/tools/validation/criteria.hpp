#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hdsphere/partialwave.hpp"

namespace hdsphere::validation {

/// Inputs shared by every acceptance criterion. The grids are fixed per
/// criterion; only their length can be overridden (a short grid makes the
/// fitting criteria refuse and fail).
struct Context {
  MediumConfig base;  ///< k, R1, eta0, tau0, d; eps is set per criterion
  double tol = 1e-12;
  int grid_count = 6;
  int jobs = 1;
};

Context default_context();

enum class Status { pass, fail, skipped_fail };

struct Outcome {
  int id = 0;
  std::string title;
  Status status = Status::fail;
  std::string detail;  ///< measured values, one line

  bool passed() const { return status == Status::pass; }
};

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome(const Context&)> run;
};

/// Criteria 1-9. Criterion 10 (the validate command exits 0) is the
/// conjunction of these and is handled by the caller.
const std::vector<Criterion>& criteria();

/// Runs one criterion, turning ConfigError into skipped_fail and any other
/// exception into fail.
Outcome run_criterion(const Criterion& c, const Context& ctx);

std::string status_label(Status s);

}  // namespace hdsphere::validation
