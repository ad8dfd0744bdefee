#include "esd/analytic.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "esd/metrics.hpp"

namespace esd {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroConcurrence = 1e-12;

double concurrence_phi_ad(double s, double c, double pa) {
  const double v = 2.0 * (1.0 - pa) * std::abs(c) *
                   (std::abs(s) - std::abs(c) * pa);
  return v > 0.0 ? v : 0.0;
}

double concurrence_phi_combined(double s, double c, double pa, double pd) {
  const double v = 2.0 * (1.0 - pa) * std::abs(c) *
                   (std::abs(s) * (1.0 - pd) - std::abs(c) * pa);
  return v > 0.0 ? v : 0.0;
}

bool degenerate_angle(double alpha) {
  return !(alpha > 0.0) || !(alpha < kPi / 2.0);
}

}  // namespace

double closed_form_eval(const ClosedForm& cf, double alpha,
                        ErrorProbability p_ad, ErrorProbability p_pd) {
  const double s = std::sin(alpha);
  const double c = std::cos(alpha);
  const double pa = p_ad.value();
  const double pd = p_pd.value();
  const double sc2 = s * s * c * c;

  if (cf.quantity == Quantity::Concurrence) {
    switch (cf.channel_kind) {
      case ChannelKind::AD:
        if (cf.family == Family::Phi) return concurrence_phi_ad(s, c, pa);
        return 2.0 * std::abs(s * c) * (1.0 - pa);
      case ChannelKind::PD:
        return 2.0 * std::abs(s * c) * (1.0 - pd);
      case ChannelKind::Combined:
        if (cf.family == Family::Phi)
          return concurrence_phi_combined(s, c, pa, pd);
        return 2.0 * std::abs(s * c) * (1.0 - pa) * (1.0 - pd);
    }
  } else {
    switch (cf.channel_kind) {
      case ChannelKind::AD:
        if (cf.family == Family::Phi)
          return 1.0 - 2.0 * pa * c * c + pa * pa * c * c;
        return 1.0 - pa;
      case ChannelKind::PD:
        return 1.0 - 2.0 * pd * sc2;
      case ChannelKind::Combined:
        if (cf.family == Family::Phi)
          return 1.0 - 2.0 * pa * c * c + pa * pa * c * c -
                 2.0 * pd * (1.0 - pa) * sc2;
        return 1.0 - pa - 2.0 * pd * (1.0 - pa) * sc2;
    }
  }
  throw std::invalid_argument("closed_form_eval: unknown selector");
}

std::optional<ErrorProbability> esd_onset_analytic(
    Family family, ChannelKind kind, double alpha,
    std::optional<double> kappa) {
  if (degenerate_angle(alpha)) return std::nullopt;
  if (family == Family::Psi) return std::nullopt;
  if (kind == ChannelKind::PD) return std::nullopt;

  double t = std::abs(std::tan(alpha));
  // Angles within rounding distance of pi/4 must land on the boundary.
  if (std::abs(t - 1.0) <= 1e-15) t = 1.0;
  if (kind == ChannelKind::AD) {
    return ErrorProbability(t < 1.0 ? t : 1.0);
  }

  // Combined: root of f(p) = p - t (1-p)^kappa, strictly increasing, so a
  // single sign change decides everything.
  if (!kappa.has_value()) {
    throw std::invalid_argument(
        "esd_onset_analytic: combined channel needs kappa");
  }
  const double k = *kappa;
  if (k < 0.0) throw std::invalid_argument("esd_onset_analytic: kappa < 0");
  auto f = [t, k](double p) { return p - t * std::pow(1.0 - p, k); };
  if (f(1.0) <= 0.0) return ErrorProbability(1.0);
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return ErrorProbability(0.5 * (lo + hi));
}

std::optional<ErrorProbability> esd_onset_numeric(const Scenario& prototype,
                                                  Family family,
                                                  double alpha) {
  if (degenerate_angle(alpha)) return std::nullopt;

  const TwoQubitState initial = make_state(family, alpha);
  auto conc = [&](double p) {
    const Scenario sc =
        Scenario::at(prototype.channel_kind, prototype.code, p, prototype.kappa);
    return concurrence(evolve_pair(initial, sc));
  };

  constexpr int kSteps = 999;
  constexpr double kStep = 1e-3;
  for (int k = 1; k <= kSteps; ++k) {
    const double p = k * kStep;
    if (conc(p) >= kZeroConcurrence) continue;
    // Demand the zero persists, so a numerical dip cannot pass for death.
    bool sustained = true;
    for (int j = k + 1; j <= std::min(k + 10, kSteps); ++j) {
      if (conc(j * kStep) >= kZeroConcurrence) {
        sustained = false;
        break;
      }
    }
    if (!sustained) continue;
    double lo = (k - 1) * kStep;
    double hi = p;
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      (conc(mid) < kZeroConcurrence ? hi : lo) = mid;
    }
    return ErrorProbability(hi);
  }
  return std::nullopt;
}

double code_success_probability(std::size_t n_bits, std::size_t t_correctable,
                                ErrorProbability p) {
  if (t_correctable > n_bits) {
    throw std::invalid_argument(
        "code_success_probability: t_correctable exceeds n_bits");
  }
  const double q = p.value();
  double total = 0.0;
  double binom = 1.0;
  for (std::size_t k = 0; k <= t_correctable; ++k) {
    if (k > 0) binom = binom * double(n_bits - k + 1) / double(k);
    total += binom * std::pow(q, double(k)) *
             std::pow(1.0 - q, double(n_bits - k));
  }
  return total;
}

}  // namespace esd
