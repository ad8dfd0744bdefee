// Scenario plumbing: generalized Bell pairs, the effective single-logical-
// qubit channel encode -> noise -> recover, pairwise evolution, and the
// full-register brute-force oracle used to cross-check it.
#pragma once

#include <optional>

#include "esd/channels.hpp"
#include "esd/codes.hpp"
#include "esd/qmat.hpp"

namespace esd {

enum class Family { Phi, Psi };
enum class ChannelKind { AD, PD, Combined };
enum class CodeKind { None, Leung4, Phase3, Laflamme5 };

// Two-qubit density matrix tagged with the mixing angle and family that
// produced it.
struct TwoQubitState {
  ComplexMatrix rho;  // 4x4
  double alpha = 0.0;
  Family family = Family::Phi;
};

// One noise setting. AD uses p_ad only, PD uses p_pd only, Combined uses
// both; kappa records the rate ratio when the pair was derived from it.
struct Scenario {
  ChannelKind channel_kind = ChannelKind::AD;
  CodeKind code = CodeKind::None;
  ErrorProbability p_ad{0.0};
  ErrorProbability p_pd{0.0};
  std::optional<double> kappa;

  // Canonical builder: p lands on the probability the kind sweeps over.
  // Combined derives p_pd from p via kappa and requires it.
  static Scenario at(ChannelKind kind, CodeKind code, double p,
                     std::optional<double> kappa = std::nullopt);
};

// cos(alpha)|11> + sin(alpha)|00> as a density matrix.
TwoQubitState make_phi(double alpha);

// cos(alpha)|10> + sin(alpha)|01> as a density matrix.
TwoQubitState make_psi(double alpha);

TwoQubitState make_state(Family family, double alpha);

// Shared immutable instances of the three codes. CodeKind::None throws
// std::invalid_argument.
const QecCode& code_for(CodeKind kind);

// The bare physical channel of the scenario, on one qubit.
KrausChannel single_qubit_channel(const Scenario& s);

// The CPTP map decode . recover . (noise on every physical qubit) . encode,
// reconstructed from operator-basis probes through the Choi matrix.
// Scenario.code must name a code. A Choi eigenvalue below -1e-8 raises
// ComputeError; values in [-1e-8, 0) are treated as zero.
KrausChannel effective_logical_channel(const Scenario& s);

// Evolve both halves of the pair under the scenario: the bare channel when
// code is None, the effective logical channel otherwise.
ComplexMatrix evolve_pair(const TwoQubitState& state, const Scenario& s);

// Oracle: simulate the joint 2 x n_physical register without the per-qubit
// reduction. Must agree with evolve_pair to 1e-10; the [5,1] register is
// 1024-dimensional, so keep its use sparing.
ComplexMatrix brute_force_pair(const TwoQubitState& state, const Scenario& s);

}  // namespace esd
