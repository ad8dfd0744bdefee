#include "esd/channels.hpp"

#include <cmath>
#include <utility>

namespace esd {

ErrorProbability::ErrorProbability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("probability " + std::to_string(value) +
                                " outside [0,1]");
  }
}

KrausChannel make_channel(std::string label, std::vector<ComplexMatrix> ops) {
  if (ops.empty()) throw DimensionError(label + ": no Kraus operators");
  const std::size_t d = ops.front().rows();
  for (const ComplexMatrix& k : ops) {
    if (k.rows() != d || k.cols() != d) {
      throw DimensionError(label + ": operators must all be " +
                           std::to_string(d) + "x" + std::to_string(d));
    }
  }
  ComplexMatrix sum(d, d);
  for (const ComplexMatrix& k : ops) sum = sum + dagger(k) * k;
  if (!approx_equal(sum, ComplexMatrix::identity(d), kAlgebraicTol)) {
    throw ComputeError(label + ": Kraus completeness violated by " +
                       std::to_string(max_abs_diff(
                           sum, ComplexMatrix::identity(d))));
  }
  return KrausChannel{d, std::move(ops), std::move(label)};
}

KrausChannel ad_kraus(ErrorProbability p) {
  const double pa = p.value();
  ComplexMatrix e0(2, 2), e1(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - pa);
  e1(0, 1) = std::sqrt(pa);
  return make_channel("AD", {e0, e1});
}

KrausChannel pd_kraus(ErrorProbability p) {
  const double pd = p.value();
  ComplexMatrix e0(2, 2), e1(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - pd);
  e1(1, 1) = std::sqrt(pd);
  return make_channel("PD", {e0, e1});
}

KrausChannel pd_kraus_recombined(ErrorProbability p) {
  const double beta = (1.0 + std::sqrt(1.0 - p.value())) / 2.0;
  ComplexMatrix e0(2, 2), e1(2, 2);
  e0(0, 0) = std::sqrt(beta);
  e0(1, 1) = std::sqrt(beta);
  e1(0, 0) = std::sqrt(1.0 - beta);
  e1(1, 1) = -std::sqrt(1.0 - beta);
  return make_channel("PD-recombined", {e0, e1});
}

KrausChannel combined_kraus(ErrorProbability p_ad, ErrorProbability p_pd) {
  const double pa = p_ad.value();
  const double pd = p_pd.value();
  // The printed middle operator carries a stray 1 in its (0,0) entry that
  // breaks trace preservation; it is 0 here, which also restores the pure
  // AD and pure PD limits.
  ComplexMatrix e0(2, 2), e1(2, 2), e2(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt((1.0 - pa) * (1.0 - pd));
  e1(1, 1) = std::sqrt((1.0 - pa) * pd);
  e2(0, 1) = std::sqrt(pa);
  return make_channel("AD+PD", {e0, e1, e2});
}

KrausChannel combined_kraus_primed(ErrorProbability p_ad,
                                   ErrorProbability p_pd) {
  const double pa = p_ad.value();
  const double pd = p_pd.value();
  const double x = 1.0 + std::sqrt((1.0 - pa) * (1.0 - pd));
  const double y = std::sqrt((1.0 - pa) * pd);
  const double scale = std::sqrt(x * x + y * y);

  ComplexMatrix e0(2, 2), e1(2, 2), e2(2, 2);
  e0(0, 0) = x / scale;
  e0(1, 1) = (x / scale) * (x + y * y / x - 1.0);
  e1(0, 0) = y / scale;
  e1(1, 1) = -y / scale;
  e2(0, 1) = std::sqrt(pa);

  KrausChannel primed = make_channel("AD+PD'", {e0, e1, e2});
  const double dist = choi_distance(primed, combined_kraus(p_ad, p_pd));
  if (dist > 1e-10) {
    throw ComputeError("AD+PD': rotated Kraus set deviates from the canonical "
                       "channel, Choi distance " + std::to_string(dist));
  }
  return primed;
}

ComplexMatrix kraus_sum(const std::vector<ComplexMatrix>& ops,
                        const ComplexMatrix& rho) {
  if (ops.empty()) throw DimensionError("kraus_sum: no operators");
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const ComplexMatrix& k : ops) {
    if (k.cols() != rho.rows()) {
      throw DimensionError("kraus_sum: operator dimension " +
                           std::to_string(k.cols()) + " vs state " +
                           std::to_string(rho.rows()));
    }
    // K rho K^ = (K (K rho)^)^, keeping the sparse operator on the left of
    // both products.
    out = out + dagger(k * dagger(k * rho));
  }
  return out;
}

ComplexMatrix apply_channel(const ComplexMatrix& rho, const KrausChannel& ch) {
  if (rho.rows() != ch.dim || rho.cols() != ch.dim) {
    throw DimensionError("apply_channel: state is " +
                         std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + ", channel dimension " +
                         std::to_string(ch.dim));
  }
  return kraus_sum(ch.operators, rho);
}

KrausChannel lift_to_register(const KrausChannel& ch, std::size_t n_qubits,
                              std::size_t target) {
  if (ch.dim != 2) throw DimensionError("lift_to_register: channel must be single-qubit");
  if (target >= n_qubits) {
    throw DimensionError("lift_to_register: target " + std::to_string(target) +
                         " out of range for " + std::to_string(n_qubits) +
                         " qubits");
  }
  const ComplexMatrix left = ComplexMatrix::identity(std::size_t{1} << target);
  const ComplexMatrix right =
      ComplexMatrix::identity(std::size_t{1} << (n_qubits - target - 1));
  std::vector<ComplexMatrix> lifted;
  lifted.reserve(ch.operators.size());
  for (const ComplexMatrix& k : ch.operators)
    lifted.push_back(tensor(tensor(left, k), right));
  return KrausChannel{std::size_t{1} << n_qubits, std::move(lifted),
                      ch.label + "@q" + std::to_string(target)};
}

KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim != b.dim) {
    throw DimensionError("compose: dimensions " + std::to_string(a.dim) +
                         " vs " + std::to_string(b.dim));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.operators.size() * b.operators.size());
  for (const ComplexMatrix& ka : a.operators)
    for (const ComplexMatrix& kb : b.operators) ops.push_back(ka * kb);
  return KrausChannel{a.dim, std::move(ops), a.label + "*" + b.label};
}

ComplexMatrix choi_matrix(const KrausChannel& ch) {
  const std::size_t d = ch.dim;
  ComplexMatrix choi(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix eij(d, d);
      eij(i, j) = 1.0;
      ComplexMatrix img = kraus_sum(ch.operators, eij);
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
          choi(i * d + m, j * d + n) = img(m, n);
    }
  }
  return choi;
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim != b.dim) {
    throw DimensionError("choi_distance: dimensions " + std::to_string(a.dim) +
                         " vs " + std::to_string(b.dim));
  }
  return max_abs_diff(choi_matrix(a), choi_matrix(b));
}

ErrorProbability kappa_pair(ErrorProbability p_ad, double kappa) {
  if (kappa < 0.0) {
    throw std::invalid_argument("kappa must be nonnegative, got " +
                                std::to_string(kappa));
  }
  return ErrorProbability(1.0 - std::pow(1.0 - p_ad.value(), kappa));
}

}  // namespace esd
