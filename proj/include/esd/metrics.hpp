// Entanglement and fidelity measures on two-qubit states, plus the
// corrected-minus-uncorrected difference quantities.
#pragma once

#include "esd/channels.hpp"
#include "esd/pipeline.hpp"
#include "esd/qmat.hpp"

namespace esd {

// One sweep sample: both metrics at a single error probability.
struct MetricPoint {
  ErrorProbability p{0.0};
  double concurrence = 0.0;
  double fidelity = 0.0;
};

struct Deltas {
  double delta_c = 0.0;
  double delta_f = 0.0;
};

// Wootters concurrence: C = max(0, l1 - l2 - l3 - l4), the l_i being the
// descending square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
// Spurious eigenvalue parts from the non-Hermitian solve are clamped:
// real parts below 1e-13 become exactly 0, imaginary parts are dropped.
double concurrence(const ComplexMatrix& rho);

// Closed form for X-shaped states (diagonal plus anti-diagonal). Inputs with
// other entries above 1e-12 are rejected with std::invalid_argument. Serves
// as an independent cross-check of concurrence(), not a fast path.
double concurrence_xstate(const ComplexMatrix& rho);

// <psi0| rho |psi0> against the pure initial state, clamped to [0,1].
double fidelity_with_initial(const ComplexMatrix& rho,
                             const TwoQubitState& initial);

// Corrected minus uncorrected, pointwise. The two points must carry the
// same probability.
Deltas deltas(const MetricPoint& corrected, const MetricPoint& uncorrected);

}  // namespace esd
