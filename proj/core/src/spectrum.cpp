#include "casimir/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "casimir/error.hpp"
#include "casimir/oracle.hpp"
#include "coupling_matrix.hpp"

namespace casimir {

namespace {

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numeric, "symmetric eigenproblem did not converge");
  }
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> frequencies(const std::vector<double>& squared, const char* subsystem) {
  std::vector<double> out;
  out.reserve(squared.size());
  for (std::size_t i = 0; i < squared.size(); ++i) {
    if (!(squared[i] > 0.0)) {
      std::ostringstream msg;
      msg << "unstable model: " << subsystem << " squared eigenfrequency #" << i << " = "
          << squared[i] << " is not positive";
      throw Error(ErrorKind::instability, msg.str(), "mediators");
    }
    out.push_back(std::sqrt(squared[i]));
  }
  return out;
}

using Poly = std::vector<double>;

Poly multiply(const Poly& p, const Poly& q) {
  Poly r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

Poly add(Poly p, const Poly& q) {
  if (p.size() < q.size()) p.resize(q.size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) p[i] += q[i];
  return p;
}

Poly scale(Poly p, double s) {
  for (auto& v : p) v *= s;
  return p;
}

// A = a - x
Poly response(double a) { return {a, -1.0}; }

}  // namespace

double ModeSpectrum::max_frequency() const {
  double m = 0.0;
  for (const auto* list : {&coupled, &reference}) {
    for (double w : *list) m = std::max(m, w);
  }
  return m;
}

double ModeSpectrum::min_frequency() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto* list : {&coupled, &reference, &dressed_first, &dressed_second}) {
    for (double w : *list) m = std::min(m, w);
  }
  return m;
}

std::vector<double> squared_mode_frequencies(const ModelSpec& spec) {
  return sorted_eigenvalues(detail::coupling_matrix(spec));
}

ModeSpectrum mode_spectrum(const ModelSpec& spec) {
  check_well_formed(spec);
  ModeSpectrum out;
  out.kind = spec.kind;
  out.coupled = frequencies(squared_mode_frequencies(spec), "coupled");
  out.dressed_first =
      frequencies(sorted_eigenvalues(detail::coupling_matrix(spec, {true, false})), "oscillator-1");
  out.dressed_second =
      frequencies(sorted_eigenvalues(detail::coupling_matrix(spec, {false, true})), "oscillator-2");

  for (const auto& m : spec.mediators) out.mediators.push_back(std::sqrt(m.a));
  std::sort(out.mediators.begin(), out.mediators.end());
  out.reference = out.mediators;
  out.reference.push_back(std::sqrt(spec.a1));
  out.reference.push_back(std::sqrt(spec.a2));
  std::sort(out.reference.begin(), out.reference.end());
  return out;
}

std::vector<double> characteristic_polynomial(const ModelSpec& spec) {
  check_well_formed(spec);
  const auto& med = spec.mediators;

  Poly bath_product{1.0};
  for (const auto& m : med) bath_product = multiply(bath_product, response(m.a));

  // sum_i c_i^2 prod_{l != i} A_l
  Poly coupling_sum{0.0};
  for (std::size_t i = 0; i < med.size(); ++i) {
    Poly term{med[i].c * med[i].c};
    for (std::size_t l = 0; l < med.size(); ++l) {
      if (l != i) term = multiply(term, response(med[l].a));
    }
    coupling_sum = add(coupling_sum, term);
  }

  const Poly a1 = response(spec.a1);
  const Poly a2 = response(spec.a2);
  Poly p = multiply(multiply(a1, a2), bath_product);

  Poly cross;
  if (is_momentum_coupled(spec.kind)) {
    // zeta^2 (A2/a1 + A1/a2) with zeta^2 = -x
    const Poly weights = add(scale(a2, 1.0 / spec.a1), scale(a1, 1.0 / spec.a2));
    cross = multiply(Poly{0.0, 1.0}, weights);
  } else {
    cross = add(a1, a2);
  }
  p = add(p, scale(multiply(cross, coupling_sum), -1.0));
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  return p;
}

double evaluate_polynomial(std::span<const double> coeffs, double x) noexcept {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> real_polynomial_roots(std::span<const double> coeffs, double imag_tol) {
  std::size_t degree = coeffs.size();
  while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
  if (degree <= 1) return {};
  --degree;

  const double lead = coeffs[degree];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(Eigen::Index(degree), Eigen::Index(degree));
  for (std::size_t i = 1; i < degree; ++i) companion(Eigen::Index(i), Eigen::Index(i - 1)) = 1.0;
  for (std::size_t i = 0; i < degree; ++i) {
    companion(Eigen::Index(i), Eigen::Index(degree - 1)) = -coeffs[i] / lead;
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numeric, "companion matrix eigenvalues did not converge");
  }

  std::vector<double> derivative(degree);
  for (std::size_t i = 1; i <= degree; ++i) derivative[i - 1] = double(i) * coeffs[i];

  std::vector<double> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const std::complex<double> z = solver.eigenvalues()[i];
    if (std::abs(z.imag()) > imag_tol * std::abs(z.real())) {
      std::ostringstream msg;
      msg << "characteristic root " << z.real() << (z.imag() < 0 ? " - " : " + ")
          << std::abs(z.imag()) << "i is not real";
      throw Error(ErrorKind::numeric, msg.str());
    }
    double x = z.real();
    for (int step = 0; step < 3; ++step) {
      const double d = evaluate_polynomial(derivative, x);
      if (d == 0.0) break;
      const double dx = evaluate_polynomial(coeffs.first(degree + 1), x) / d;
      if (!std::isfinite(dx) || std::abs(dx) > 1e-6 * std::max(1.0, std::abs(x))) break;
      x -= dx;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// P(x) straight from the parameters; near clustered roots this keeps the
// accuracy that the expanded coefficients lose to cancellation.
double characteristic_value(const ModelSpec& spec, double x) {
  double bath = 1.0;
  double coupling = 0.0;
  for (std::size_t i = 0; i < spec.mediators.size(); ++i) {
    double term = spec.mediators[i].c * spec.mediators[i].c;
    for (std::size_t l = 0; l < spec.mediators.size(); ++l) {
      if (l != i) term *= spec.mediators[l].a - x;
    }
    coupling += term;
    bath *= spec.mediators[i].a - x;
  }
  const double a1 = spec.a1 - x;
  const double a2 = spec.a2 - x;
  const double cross = is_momentum_coupled(spec.kind) ? x * (a2 / spec.a1 + a1 / spec.a2) : a1 + a2;
  return a1 * a2 * bath - cross * coupling;
}

}  // namespace

std::vector<double> squared_frequencies_by_roots(const ModelSpec& spec) {
  const auto coeffs = characteristic_polynomial(spec);
  std::vector<double> derivative;
  for (std::size_t i = 1; i < coeffs.size(); ++i) derivative.push_back(double(i) * coeffs[i]);

  auto roots = real_polynomial_roots(coeffs);
  for (double& x : roots) {
    for (int step = 0; step < 4; ++step) {
      const double d = evaluate_polynomial(derivative, x);
      if (d == 0.0) break;
      const double dx = characteristic_value(spec, x) / d;
      if (!std::isfinite(dx) || std::abs(dx) > 1e-6 * std::max(1.0, std::abs(x))) break;
      x -= dx;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double exact_free_energy(std::span<const double> omegas, double temperature) {
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorKind::domain, "temperature must be finite and >= 0", "T");
  }
  double sum = 0.0;
  for (double w : omegas) {
    sum += 0.5 * w;
    // ln(1 - e^{-w/T}) = ln(-expm1(-w/T)), accurate for both w/T << 1 and >> 1
    if (temperature > 0.0) sum += temperature * std::log(-std::expm1(-w / temperature));
  }
  return sum;
}

double classical_free_energy(std::span<const double> omegas, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorKind::domain, "temperature must be finite and > 0", "T");
  }
  double sum = 0.0;
  for (double w : omegas) sum += temperature * std::log(w / temperature);
  return sum;
}

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

/// Square matrix in 50-digit arithmetic, row-major.
struct WideMatrix {
  int n = 0;
  std::vector<Wide> data;

  Wide& operator()(int i, int j) { return data[std::size_t(i * n + j)]; }
  const Wide& operator()(int i, int j) const { return data[std::size_t(i * n + j)]; }
};

WideMatrix wide_coupling(const ModelSpec& spec, detail::Primaries which) {
  WideMatrix m;
  m.data = detail::coupling_entries<Wide>(spec, which, m.n);
  return m;
}

WideMatrix wide_uncoupled(const ModelSpec& spec) {
  WideMatrix m;
  m.n = int(spec.mediators.size()) + 2;
  m.data.assign(std::size_t(m.n * m.n), Wide(0));
  m(0, 0) = Wide(spec.a1);
  m(1, 1) = Wide(spec.a2);
  for (int i = 0; i < int(spec.mediators.size()); ++i) m(i + 2, i + 2) = Wide(spec.mediators[std::size_t(i)].a);
  return m;
}

Wide determinant(WideMatrix m) {
  Wide det(1);
  for (int col = 0; col < m.n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m.n; ++r) {
      if (abs(m(r, col)) > abs(m(pivot, col))) pivot = r;
    }
    if (m(pivot, col) == 0) return Wide(0);
    if (pivot != col) {
      for (int j = 0; j < m.n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < m.n; ++r) {
      const Wide f = m(r, col) / m(col, col);
      for (int j = col; j < m.n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

WideMatrix multiply(const WideMatrix& a, const WideMatrix& b) {
  WideMatrix c{a.n, std::vector<Wide>(a.data.size(), Wide(0))};
  for (int i = 0; i < a.n; ++i) {
    for (int k = 0; k < a.n; ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < a.n; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

Wide trace(const WideMatrix& m) {
  Wide t(0);
  for (int i = 0; i < m.n; ++i) t += m(i, i);
  return t;
}

struct SignedSubsystem {
  WideMatrix k;
  int sign;
};

/// sum_s sign_s sum_k T ln(2 sinh(omega_k / 2T)) using
///   T ln(2 sinh(w/2T)) = T ln(w/T) + T sum_{j>=1} b_j (w/2T)^{2j},
///   b_j = 2^{2j} B_{2j} / (2j (2j)!),
/// with sum_k ln w_k = ln det(K)/2 and sum_k w_k^{2j} = tr(K^j). The ln T
/// parts cancel because the signed mode counts sum to zero. Converges for
/// omega_max < 2 pi T; used here for omega_max <= 4T.
double moment_free_energy(const std::vector<SignedSubsystem>& parts, double temperature,
                          double max_frequency) {
  const Wide t(temperature);
  // |b_j| (w/2T)^{2j} <= (2 zeta(2)/j) rho^j with rho = (w_max / 2 pi T)^2; low
  // orders can cancel exactly between subsystems, so stop on this a priori
  // bound rather than on the size of the latest term.
  const double rho = std::pow(max_frequency / (2.0 * std::numbers::pi * temperature), 2);
  int modes = 0;
  for (const auto& p : parts) modes += p.k.n;

  Wide det_ratio(1);
  for (const auto& p : parts) {
    const Wide d = determinant(p.k);
    det_ratio = p.sign > 0 ? det_ratio * d : det_ratio / d;
  }
  Wide total = t / 2 * log(det_ratio);

  std::vector<WideMatrix> powers;
  for (const auto& p : parts) powers.push_back(p.k);
  const Wide inv_four_t2 = Wide(1) / (4 * t * t);
  Wide scale = inv_four_t2;  // (2T)^{-2j}
  Wide factorial(2);         // (2j)!
  Wide four_pow(4);          // 2^{2j}
  for (int j = 1; j <= 200; ++j) {
    Wide moment(0);
    for (std::size_t s = 0; s < parts.size(); ++s) {
      if (j > 1) powers[s] = multiply(powers[s], parts[s].k);
      moment += parts[s].sign * trace(powers[s]);
    }
    const Wide b = four_pow * boost::math::bernoulli_b2n<Wide>(j) / (2 * j * factorial);
    const Wide term = t * b * scale * moment;
    total += term;
    const double remaining = temperature * modes * 3.3 * std::pow(rho, j + 1) / (1.0 - rho);
    if (remaining <= 1e-35 * std::abs(static_cast<double>(total)) || remaining <= 1e-60 * temperature) break;
    scale *= inv_four_t2;
    factorial *= Wide(2 * j + 1) * Wide(2 * j + 2);
    four_pow *= 4;
  }
  return static_cast<double>(total);
}

bool use_moment_route(const OscillatorModel& model, double temperature) {
  return temperature > 0.0 && model.spectrum().max_frequency() <= 4.0 * temperature;
}

}  // namespace

double oracle_interaction_free_energy(const OscillatorModel& model, double temperature) {
  if (use_moment_route(model, temperature)) {
    const auto& spec = model.spec();
    std::vector<SignedSubsystem> parts;
    parts.push_back({wide_coupling(spec, {true, true}), +1});
    parts.push_back({wide_coupling(spec, {true, false}), -1});
    parts.push_back({wide_coupling(spec, {false, true}), -1});
    parts.push_back({wide_coupling(spec, {false, false}), +1});
    return moment_free_energy(parts, temperature, model.spectrum().max_frequency());
  }
  const auto& s = model.spectrum();
  return exact_free_energy(s.coupled, temperature) - exact_free_energy(s.dressed_first, temperature) -
         exact_free_energy(s.dressed_second, temperature) +
         exact_free_energy(s.mediators, temperature);
}

double oracle_coupling_free_energy(const OscillatorModel& model, double temperature) {
  if (use_moment_route(model, temperature)) {
    std::vector<SignedSubsystem> parts;
    parts.push_back({wide_coupling(model.spec(), {true, true}), +1});
    parts.push_back({wide_uncoupled(model.spec()), -1});
    return moment_free_energy(parts, temperature, model.spectrum().max_frequency());
  }
  const auto& s = model.spectrum();
  return exact_free_energy(s.coupled, temperature) - exact_free_energy(s.reference, temperature);
}

}  // namespace casimir
