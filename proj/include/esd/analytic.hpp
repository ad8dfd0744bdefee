// Closed-form expressions for uncorrected evolution, ESD onset conditions
// (exact and simulation-driven), and code success probabilities. These serve
// both as user-facing outputs and as oracles against the pipeline.
#pragma once

#include <optional>

#include "esd/channels.hpp"
#include "esd/pipeline.hpp"

namespace esd {

enum class Quantity { Concurrence, Fidelity };

// Selects one printed formula for uncorrected evolution. Every
// (family, channel_kind, quantity) triple maps to exactly one form; the two
// PD forms are family-independent.
struct ClosedForm {
  Family family = Family::Phi;
  ChannelKind channel_kind = ChannelKind::AD;
  Quantity quantity = Quantity::Concurrence;
};

// Evaluate the selected formula. The probability irrelevant to the channel
// kind is ignored.
double closed_form_eval(const ClosedForm& cf, double alpha,
                        ErrorProbability p_ad, ErrorProbability p_pd);

// Exact onset of entanglement sudden death for uncorrected states.
//   Phi/AD:       p = min(|tan alpha|, 1); the value 1 means the state only
//                 disentangles at the p=1 endpoint, i.e. no sudden death.
//   Phi/Combined: solves p/(1 - p_pd(p)) = |tan alpha| with
//                 p_pd = 1-(1-p)^kappa by bisection to 1e-10, clamped to 1
//                 the same way; kappa is required here.
//   Psi/any and Phi/PD: nullopt, these states never die suddenly.
// Degenerate angles (alpha outside the open interval (0, pi/2)) give
// nullopt: the state starts with no entanglement to lose.
std::optional<ErrorProbability> esd_onset_analytic(
    Family family, ChannelKind kind, double alpha,
    std::optional<double> kappa = std::nullopt);

// Simulation-driven onset: the smallest p where the evolved concurrence
// falls below 1e-12 and stays there for ten more grid steps, located on a
// 1e-3 grid over (0,1) and sharpened by bisection to 1e-6. Returns nullopt
// when concurrence survives across the whole grid. The prototype scenario
// supplies channel kind, code, and kappa; its probabilities are ignored.
std::optional<ErrorProbability> esd_onset_numeric(const Scenario& prototype,
                                                  Family family, double alpha);

// Probability that at most t_correctable of n_bits suffer an error:
// sum_{k<=t} C(n,k) p^k (1-p)^(n-k).
double code_success_probability(std::size_t n_bits, std::size_t t_correctable,
                                ErrorProbability p);

}  // namespace esd
