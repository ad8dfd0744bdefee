#include "esd/pipeline.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace esd {

Scenario Scenario::at(ChannelKind kind, CodeKind code, double p,
                      std::optional<double> kappa) {
  Scenario s;
  s.channel_kind = kind;
  s.code = code;
  s.kappa = kappa;
  switch (kind) {
    case ChannelKind::AD:
      s.p_ad = ErrorProbability(p);
      break;
    case ChannelKind::PD:
      s.p_pd = ErrorProbability(p);
      break;
    case ChannelKind::Combined:
      if (!kappa) {
        throw std::invalid_argument(
            "combined noise needs kappa to derive p_pd from p_ad");
      }
      s.p_ad = ErrorProbability(p);
      s.p_pd = kappa_pair(s.p_ad, *kappa);
      break;
  }
  return s;
}

TwoQubitState make_phi(double alpha) {
  Ket k{std::vector<cx>(4, cx{0.0, 0.0})};
  k.amp[0] = std::sin(alpha);
  k.amp[3] = std::cos(alpha);
  return TwoQubitState{outer(k, k), alpha, Family::Phi};
}

TwoQubitState make_psi(double alpha) {
  Ket k{std::vector<cx>(4, cx{0.0, 0.0})};
  k.amp[1] = std::sin(alpha);
  k.amp[2] = std::cos(alpha);
  return TwoQubitState{outer(k, k), alpha, Family::Psi};
}

TwoQubitState make_state(Family family, double alpha) {
  return family == Family::Phi ? make_phi(alpha) : make_psi(alpha);
}

const QecCode& code_for(CodeKind kind) {
  switch (kind) {
    case CodeKind::Leung4: {
      static const QecCode code = leung4_code();
      return code;
    }
    case CodeKind::Phase3: {
      static const QecCode code = phase3_code();
      return code;
    }
    case CodeKind::Laflamme5: {
      static const QecCode code = laflamme5_code();
      return code;
    }
    case CodeKind::None:
      break;
  }
  throw std::invalid_argument("no code selected");
}

KrausChannel single_qubit_channel(const Scenario& s) {
  switch (s.channel_kind) {
    case ChannelKind::AD:
      return ad_kraus(s.p_ad);
    case ChannelKind::PD:
      return pd_kraus(s.p_pd);
    case ChannelKind::Combined:
      return combined_kraus(s.p_ad, s.p_pd);
  }
  throw std::invalid_argument("unknown channel kind");
}

namespace {

// Noise on every physical qubit of the register, as one composite channel.
KrausChannel register_noise(const KrausChannel& one, std::size_t n_qubits) {
  KrausChannel full = lift_to_register(one, n_qubits, 0);
  for (std::size_t q = 1; q < n_qubits; ++q)
    full = compose(lift_to_register(one, n_qubits, q), full);
  return full;
}

}  // namespace

KrausChannel effective_logical_channel(const Scenario& s) {
  if (s.code == CodeKind::None) {
    throw std::invalid_argument("effective channel requires a code");
  }
  const QecCode& code = code_for(s.code);
  const KrausChannel noise =
      register_noise(single_qubit_channel(s), code.n_physical);
  const ComplexMatrix v = encode_isometry(code);
  const ComplexMatrix vd = dagger(v);

  // Probe with the operator basis |i><j| and assemble the Choi matrix. The
  // probes are not states (trace 0 off the diagonal), so everything below
  // runs on raw linear maps.
  ComplexMatrix choi(4, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      ComplexMatrix probe(2, 2);
      probe(i, j) = 1.0;
      ComplexMatrix image =
          recover(kraus_sum(noise.operators, v * probe * vd), code);
      for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t n = 0; n < 2; ++n)
          choi(i * 2 + m, j * 2 + n) = image(m, n);
    }
  }

  HermitianEig eig = hermitian_eigensystem(choi);
  std::vector<ComplexMatrix> ops;
  for (std::size_t l = 0; l < eig.values.size(); ++l) {
    const double lambda = eig.values[l];
    if (lambda < -1e-8) {
      throw ComputeError("effective channel Choi eigenvalue " +
                         std::to_string(lambda) +
                         " is negative beyond tolerance");
    }
    if (lambda <= 0.0) continue;
    const double scale = std::sqrt(lambda);
    ComplexMatrix k(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t m = 0; m < 2; ++m)
        k(m, i) = scale * eig.vectors(i * 2 + m, l);
    ops.push_back(std::move(k));
  }

  ComplexMatrix completeness(2, 2);
  for (const ComplexMatrix& k : ops)
    completeness = completeness + dagger(k) * k;
  const double defect =
      max_abs_diff(completeness, ComplexMatrix::identity(2));
  if (defect > 1e-10) {
    throw ComputeError("effective channel is not trace preserving, defect " +
                       std::to_string(defect));
  }
  return KrausChannel{2, std::move(ops), "eff:" + code.name};
}

ComplexMatrix evolve_pair(const TwoQubitState& state, const Scenario& s) {
  const KrausChannel one = s.code == CodeKind::None
                               ? single_qubit_channel(s)
                               : effective_logical_channel(s);
  const KrausChannel pair =
      compose(lift_to_register(one, 2, 1), lift_to_register(one, 2, 0));
  return apply_channel(state.rho, pair);
}

namespace {

// Per-position noise application on the joint register, in place of one
// composite channel whose operator count would be exponential in 2n.
ComplexMatrix apply_noise_everywhere(ComplexMatrix rho,
                                     const KrausChannel& one,
                                     std::size_t n_qubits) {
  for (std::size_t q = 0; q < n_qubits; ++q) {
    KrausChannel lifted = lift_to_register(one, n_qubits, q);
    rho = kraus_sum(lifted.operators, rho);
  }
  return rho;
}

}  // namespace

ComplexMatrix brute_force_pair(const TwoQubitState& state, const Scenario& s) {
  const KrausChannel one = single_qubit_channel(s);
  if (s.code == CodeKind::None) {
    return apply_noise_everywhere(state.rho, one, 2);
  }

  const QecCode& code = code_for(s.code);
  const std::size_t n = code.n_physical;
  const std::size_t block = std::size_t{1} << n;

  // Encode both halves into the joint register.
  const ComplexMatrix v = encode_isometry(code);
  const ComplexMatrix w = tensor(v, v);
  ComplexMatrix rho = w * state.rho * dagger(w);

  rho = apply_noise_everywhere(std::move(rho), one, 2 * n);

  const std::vector<ComplexMatrix> branches = recovery_branches(code);
  const ComplexMatrix id_block = ComplexMatrix::identity(block);
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const ComplexMatrix mixed = 0.5 * id2;

  // Left station: decode its half to the logical qubit, 2^{2n} -> 2*2^n.
  ComplexMatrix left(2 * block, 2 * block);
  for (const ComplexMatrix& b : branches) {
    ComplexMatrix lifted = tensor(b, id_block);
    left = left + dagger(lifted * dagger(lifted * rho));
  }
  {
    ComplexMatrix proj = tensor(code.residual_projector, id_block);
    ComplexMatrix res = proj * rho * proj;
    left = left + tensor(mixed, partial_trace(res, {block, block}, {1}));
  }

  // Right station: 2*2^n -> 4.
  ComplexMatrix out(4, 4);
  for (const ComplexMatrix& b : branches) {
    ComplexMatrix lifted = tensor(id2, b);
    out = out + dagger(lifted * dagger(lifted * left));
  }
  {
    ComplexMatrix proj = tensor(id2, code.residual_projector);
    ComplexMatrix res = proj * left * proj;
    out = out + tensor(partial_trace(res, {2, block}, {0}), mixed);
  }
  return out;
}

}  // namespace esd
