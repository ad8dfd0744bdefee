#include "esd/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace esd {

namespace {

ComplexMatrix spin_flip_frame() {
  // sigma_y (x) sigma_y is real: antidiagonal {-1, 1, 1, -1}.
  ComplexMatrix yy(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

void require_two_qubit(const ComplexMatrix& rho, const char* who) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw DimensionError(std::string(who) + ": expected a 4x4 density matrix");
  }
}

}  // namespace

double concurrence(const ComplexMatrix& rho) {
  require_two_qubit(rho, "concurrence");
  static const ComplexMatrix yy = spin_flip_frame();
  const ComplexMatrix rho_tilde = yy * conjugate(rho) * yy;
  const std::vector<cx> eig = eigenvalues_general(rho * rho_tilde);

  std::vector<double> roots;
  roots.reserve(4);
  for (const cx& e : eig) {
    // The product has a nonnegative spectrum; what shows up below 1e-13 is
    // solver noise around a true zero and must not survive the square root.
    double re = e.real();
    if (re < 1e-13) re = 0.0;
    roots.push_back(std::sqrt(re));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  const double c = roots[0] - roots[1] - roots[2] - roots[3];
  return std::max(0.0, c);
}

double concurrence_xstate(const ComplexMatrix& rho) {
  require_two_qubit(rho, "concurrence_xstate");
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (r == c || r + c == 3) continue;
      if (std::abs(rho(r, c)) > 1e-12) {
        throw std::invalid_argument(
            "concurrence_xstate: entry (" + std::to_string(r) + "," +
            std::to_string(c) + ") breaks the X shape");
      }
    }
  }
  const double d0 = std::max(0.0, rho(0, 0).real());
  const double d1 = std::max(0.0, rho(1, 1).real());
  const double d2 = std::max(0.0, rho(2, 2).real());
  const double d3 = std::max(0.0, rho(3, 3).real());
  const double inner = std::abs(rho(0, 3)) - std::sqrt(d1 * d2);
  const double outer = std::abs(rho(1, 2)) - std::sqrt(d0 * d3);
  return 2.0 * std::max({0.0, inner, outer});
}

double fidelity_with_initial(const ComplexMatrix& rho,
                             const TwoQubitState& initial) {
  require_two_qubit(rho, "fidelity_with_initial");
  const double f = trace(initial.rho * rho).real();
  return std::clamp(f, 0.0, 1.0);
}

Deltas deltas(const MetricPoint& corrected, const MetricPoint& uncorrected) {
  if (corrected.p.value() != uncorrected.p.value()) {
    throw std::invalid_argument("deltas: points at different probabilities " +
                                std::to_string(corrected.p.value()) + " vs " +
                                std::to_string(uncorrected.p.value()));
  }
  return Deltas{corrected.concurrence - uncorrected.concurrence,
                corrected.fidelity - uncorrected.fidelity};
}

}  // namespace esd
