#pragma once

#include <vector>

#include <Eigen/Dense>

#include "casimir/model_spec.hpp"

namespace casimir::detail {

/// Which of oscillators 1 and 2 take part; mediators are always present.
struct Primaries {
  bool first = true;
  bool second = true;
};

/// Row-major n x n matrix K with det(K + zeta^2) equal to the inverse
/// partition determinant at imaginary frequency zeta. Order: present
/// primaries first, then mediators.
///
/// tm: K = [[a1, 0, c^T], [0, a2, c^T], [c, c, diag(a_i)]].
/// te: same, with mu c c^T added to the mediator block, mu = sum 1/a_j over
/// the present primaries (momentum representation).
template <class Scalar>
std::vector<Scalar> coupling_entries(const ModelSpec& spec, Primaries which, int& size) {
  const int primaries = int(which.first) + int(which.second);
  const int m = static_cast<int>(spec.mediators.size());
  const int n = primaries + m;
  size = n;
  std::vector<Scalar> k(static_cast<std::size_t>(n * n), Scalar(0));
  auto at = [&](int i, int j) -> Scalar& { return k[static_cast<std::size_t>(i * n + j)]; };

  Scalar mu(0);
  int row = 0;
  if (which.first) {
    at(row, row) = Scalar(spec.a1);
    ++row;
    mu += Scalar(1) / Scalar(spec.a1);
  }
  if (which.second) {
    at(row, row) = Scalar(spec.a2);
    ++row;
    mu += Scalar(1) / Scalar(spec.a2);
  }
  if (!is_momentum_coupled(spec.kind)) mu = Scalar(0);

  for (int i = 0; i < m; ++i) {
    const auto& med = spec.mediators[static_cast<std::size_t>(i)];
    const int ii = primaries + i;
    at(ii, ii) = Scalar(med.a);
    for (int j = 0; j < primaries; ++j) {
      at(j, ii) = Scalar(med.c);
      at(ii, j) = Scalar(med.c);
    }
    for (int l = 0; l < m; ++l) {
      at(ii, primaries + l) +=
          Scalar(med.c) * Scalar(spec.mediators[static_cast<std::size_t>(l)].c) * mu;
    }
  }
  return k;
}

inline Eigen::MatrixXd coupling_matrix(const ModelSpec& spec, Primaries which = {}) {
  int n = 0;
  const auto entries = coupling_entries<double>(spec, which, n);
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) k(i, j) = entries[static_cast<std::size_t>(i * n + j)];
  }
  return k;
}

}  // namespace casimir::detail
