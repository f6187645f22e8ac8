#pragma once

#include <functional>
#include <string>
#include <vector>

#include "casimir/model_spec.hpp"

namespace casimir::verify {

struct CheckResult {
  bool passed = false;
  std::string detail;
};

struct AcceptanceCheck {
  std::string id;
  std::string title;
  std::function<CheckResult()> run;
};

/// Every acceptance criterion, in order, with its tolerance fixed in code.
const std::vector<AcceptanceCheck>& acceptance_checks();

/// a1 = a2 = a3 = 1 with a single mediator coupled by c.
ModelSpec three_oscillator(ModelKind kind, double c);

/// a1 = a2 = 1 with `modes` mediators from generate_bath({modes, 3.0, 0.3}).
ModelSpec standard_bath(ModelKind kind, int modes);

/// Determinant by Laplace (cofactor) expansion along the first row. For
/// cross-checking small matrices only: cost grows like n!.
double cofactor_determinant(const std::vector<double>& row_major, int n);

}  // namespace casimir::verify
