// Noise channels as Kraus operator sets: amplitude damping, phase damping
// (canonical and recombined forms), and the combined channel (canonical and
// primed forms), plus application, lifting, composition, and Choi fingerprints.
#pragma once

#include <string>
#include <vector>

#include "esd/qmat.hpp"

namespace esd {

// Probability in [0,1]. Construction from a value outside the range throws
// std::invalid_argument. Implicit construction keeps call sites plain:
// ad_kraus(0.3).
class ErrorProbability {
 public:
  ErrorProbability(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// A CPTP map on a fixed dimension. Instances come from the factories below,
// which enforce completeness; treat as immutable afterwards.
struct KrausChannel {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> operators;
  std::string label;
};

// Validating constructor: square operators of one shared dimension with
// sum E^ E = I within kAlgebraicTol. Violations raise DimensionError or
// ComputeError.
KrausChannel make_channel(std::string label, std::vector<ComplexMatrix> ops);

// Amplitude damping: E0 = diag(1, sqrt(1-p)), E1 = sqrt(p)|0><1|.
KrausChannel ad_kraus(ErrorProbability p);

// Phase damping: E0 = diag(1, sqrt(1-p)), E1 = diag(0, sqrt(p)).
KrausChannel pd_kraus(ErrorProbability p);

// Phase damping after unitary recombination: {sqrt(b) I, sqrt(1-b) sigma_z}
// with b = (1 + sqrt(1-p))/2. Same map as pd_kraus(p).
KrausChannel pd_kraus_recombined(ErrorProbability p);

// Simultaneous amplitude and phase damping, three operators.
KrausChannel combined_kraus(ErrorProbability p_ad, ErrorProbability p_pd);

// The rotated three-operator form of the combined channel. The factory
// checks Choi equivalence with combined_kraus to 1e-10 and raises
// ComputeError beyond that.
KrausChannel combined_kraus_primed(ErrorProbability p_ad, ErrorProbability p_pd);

// Raw Kraus sum over arbitrary square input, no trace requirement. This is
// the linear-map workhorse; channel probes feed it trace-zero matrices.
ComplexMatrix kraus_sum(const std::vector<ComplexMatrix>& ops,
                        const ComplexMatrix& rho);

// rho' = sum_k E_k rho E_k^. Expects a density matrix of the channel
// dimension (unit trace is the caller's obligation and is not checked here).
ComplexMatrix apply_channel(const ComplexMatrix& rho, const KrausChannel& ch);

// Tensor a single-qubit channel onto one position of an n-qubit register.
// Position 0 is the leftmost (most significant) qubit.
KrausChannel lift_to_register(const KrausChannel& ch, std::size_t n_qubits,
                              std::size_t target);

// Sequential application, b first then a; operators are the pairwise
// products a_i b_j.
KrausChannel compose(const KrausChannel& a, const KrausChannel& b);

// sum_ij |i><j| (x) L(|i><j|), dimension d^2. Equal maps have equal Choi
// matrices, which makes this the canonical equality fingerprint.
ComplexMatrix choi_matrix(const KrausChannel& ch);

// Largest entrywise difference of the two Choi matrices.
double choi_distance(const KrausChannel& a, const KrausChannel& b);

// PD probability at the instant where amplitude damping has reached p_ad,
// given the dephasing/damping rate ratio kappa: 1 - (1-p_ad)^kappa.
// Negative kappa throws std::invalid_argument.
ErrorProbability kappa_pair(ErrorProbability p_ad, double kappa);

}  // namespace esd
