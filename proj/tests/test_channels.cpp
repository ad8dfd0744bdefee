#include <cmath>

#include "doctest.h"
#include "esd/channels.hpp"
#include "esd/qmat.hpp"
#include "helpers.hpp"

using namespace esd;
using esd::testing::random_density;

namespace {

ComplexMatrix ket_density(const std::string& bits) {
  Ket k = basis_ket(bits);
  return outer(k, k);
}

KrausChannel identity_channel(std::size_t d) {
  return make_channel("I", {ComplexMatrix::identity(d)});
}

}  // namespace

TEST_CASE("probabilities outside the unit interval are rejected") {
  CHECK_THROWS_AS(ErrorProbability(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(ErrorProbability(1.0 + 1e-9), std::invalid_argument);
  CHECK(ErrorProbability(0.0).value() == 0.0);
  CHECK(ErrorProbability(1.0).value() == 1.0);
}

TEST_CASE("make_channel validates shapes and completeness") {
  CHECK_THROWS_AS(make_channel("empty", {}), DimensionError);
  CHECK_THROWS_AS(
      make_channel("ragged", {ComplexMatrix::identity(2), ComplexMatrix(3, 3)}),
      DimensionError);
  // Half an identity is not trace preserving.
  CHECK_THROWS_AS(make_channel("lossy", {0.5 * ComplexMatrix::identity(2)}),
                  ComputeError);
}

TEST_CASE("amplitude damping endpoints and midpoint") {
  KrausChannel none = ad_kraus(0.0);
  CHECK(max_abs_diff(none.operators[0], ComplexMatrix::identity(2)) == 0.0);
  CHECK(max_abs_diff(none.operators[1], ComplexMatrix(2, 2)) == 0.0);

  ComplexMatrix one = ket_density("1");
  CHECK(max_abs_diff(apply_channel(one, ad_kraus(1.0)), ket_density("0")) <
        1e-15);

  ComplexMatrix half = apply_channel(one, ad_kraus(0.5));
  CHECK(std::abs(half(0, 0) - cx{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(half(1, 1) - cx{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(half(0, 1)) < 1e-15);
}

TEST_CASE("phase damping touches only off-diagonals") {
  KrausChannel none = pd_kraus(0.0);
  ComplexMatrix rho = random_density(2);
  CHECK(max_abs_diff(apply_channel(rho, none), rho) < 1e-15);

  // Full dephasing kills |+><+| coherence entirely.
  Ket plus{std::vector<cx>{cx{1.0, 0.0}, cx{1.0, 0.0}}};
  ComplexMatrix plus_rho = outer(plus.normalized(), plus.normalized());
  CHECK(max_abs_diff(apply_channel(plus_rho, pd_kraus(1.0)),
                     0.5 * ComplexMatrix::identity(2)) < 1e-15);

  ComplexMatrix out = apply_channel(rho, pd_kraus(0.36));
  CHECK(std::abs(out(0, 1) - 0.8 * rho(0, 1)) < 1e-15);
  CHECK(std::abs(out(1, 0) - 0.8 * rho(1, 0)) < 1e-15);
  CHECK(std::abs(out(0, 0) - rho(0, 0)) < 1e-15);
  CHECK(std::abs(out(1, 1) - rho(1, 1)) < 1e-15);
}

TEST_CASE("recombined dephasing is the same map in a rotated basis") {
  KrausChannel none = pd_kraus_recombined(0.0);
  CHECK(max_abs_diff(none.operators[0], ComplexMatrix::identity(2)) < 1e-15);
  CHECK(max_abs_diff(none.operators[1], ComplexMatrix(2, 2)) < 1e-15);

  KrausChannel full = pd_kraus_recombined(1.0);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(full.operators[0](0, 0) - cx{r, 0.0}) < 1e-15);
  CHECK(std::abs(full.operators[1](0, 0) - cx{r, 0.0}) < 1e-15);
  CHECK(std::abs(full.operators[1](1, 1) + cx{r, 0.0}) < 1e-15);

  ComplexMatrix rho = random_density(2);
  CHECK(max_abs_diff(apply_channel(rho, pd_kraus_recombined(0.5)),
                     apply_channel(rho, pd_kraus(0.5))) < 1e-12);

  for (int i = 0; i <= 10; ++i) {
    double p = i / 10.0;
    CHECK(choi_distance(pd_kraus_recombined(p), pd_kraus(p)) < 1e-12);
  }
}

TEST_CASE("combined channel reduces to its pure limits") {
  for (int i = 0; i <= 10; ++i) {
    double p = i / 10.0;
    CHECK(choi_distance(combined_kraus(p, 0.0), ad_kraus(p)) < 1e-12);
    CHECK(choi_distance(combined_kraus(0.0, p), pd_kraus(p)) < 1e-12);
  }
}

TEST_CASE("every factory satisfies completeness on a probability grid") {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      double pa = i / 9.0, pd = j / 9.0;
      // Construction itself enforces sum E^E = I; reaching here means pass.
      combined_kraus(pa, pd);
      combined_kraus_primed(pa, pd);
      if (j == 0) {
        ad_kraus(pa);
        pd_kraus(pa);
        pd_kraus_recombined(pa);
      }
    }
  }
  ComplexMatrix sum(2, 2);
  KrausChannel ch = combined_kraus(0.3, 0.4);
  for (const ComplexMatrix& k : ch.operators) sum = sum + dagger(k) * k;
  CHECK(max_abs_diff(sum, ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("primed combined operators match the printed substitutions") {
  KrausChannel clean = combined_kraus_primed(0.0, 0.0);
  CHECK(max_abs_diff(clean.operators[0], ComplexMatrix::identity(2)) < 1e-15);
  CHECK(max_abs_diff(clean.operators[1], ComplexMatrix(2, 2)) < 1e-15);
  CHECK(max_abs_diff(clean.operators[2], ComplexMatrix(2, 2)) < 1e-15);

  // p_ad=0, p_pd=1: x=1, y=1, so E1' = sigma_z / sqrt(2).
  KrausChannel ch = combined_kraus_primed(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(ch.operators[1](0, 0) - cx{r, 0.0}) < 1e-15);
  CHECK(std::abs(ch.operators[1](1, 1) + cx{r, 0.0}) < 1e-15);

  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      double pa = i / 6.0, pd = j / 6.0;
      CHECK(choi_distance(combined_kraus_primed(pa, pd),
                          combined_kraus(pa, pd)) < 1e-10);
    }
  }
}

TEST_CASE("apply_channel preserves trace, hermiticity, and positivity") {
  for (int rep = 0; rep < 5; ++rep) {
    ComplexMatrix rho = random_density(2);
    for (const KrausChannel& ch :
         {ad_kraus(0.37), pd_kraus(0.21), combined_kraus(0.3, 0.55)}) {
      ComplexMatrix out = apply_channel(rho, ch);
      CHECK(std::abs(trace(out) - cx{1.0, 0.0}) < 1e-12);
      CHECK(max_abs_diff(out, dagger(out)) < 1e-13);
      HermitianEig eig = hermitian_eigensystem(out);
      CHECK(eig.values.front() >= -1e-10);
    }
  }
  CHECK_THROWS_AS(apply_channel(random_density(4), ad_kraus(0.5)),
                  DimensionError);
}

TEST_CASE("lifting places the channel on the addressed qubit") {
  KrausChannel lifted_id = lift_to_register(identity_channel(2), 3, 1);
  ComplexMatrix rho8 = random_density(8);
  CHECK(max_abs_diff(apply_channel(rho8, lifted_id), rho8) < 1e-14);

  const double p = 0.3;
  KrausChannel ad0 = lift_to_register(ad_kraus(p), 2, 0);
  ComplexMatrix out = apply_channel(ket_density("10"), ad0);
  ComplexMatrix want =
      cx{p, 0.0} * ket_density("00") + cx{1.0 - p, 0.0} * ket_density("10");
  CHECK(max_abs_diff(out, want) < 1e-14);

  // Damping the second position instead leaves |10> alone except nothing
  // happens: qubit 1 is already |0>.
  KrausChannel ad1 = lift_to_register(ad_kraus(p), 2, 1);
  CHECK(max_abs_diff(apply_channel(ket_density("10"), ad1),
                     ket_density("10")) < 1e-14);

  KrausChannel all4 = lift_to_register(ad_kraus(p), 4, 0);
  for (std::size_t q = 1; q < 4; ++q)
    all4 = compose(lift_to_register(ad_kraus(p), 4, q), all4);
  CHECK(all4.operators.size() == 16);
  ComplexMatrix sum(16, 16);
  for (const ComplexMatrix& k : all4.operators) sum = sum + dagger(k) * k;
  CHECK(max_abs_diff(sum, ComplexMatrix::identity(16)) < 1e-12);

  CHECK_THROWS_AS(lift_to_register(ad_kraus(p), 2, 2), DimensionError);
  CHECK_THROWS_AS(lift_to_register(lifted_id, 4, 0), DimensionError);
}

TEST_CASE("composition applies right operand first") {
  KrausChannel ch = combined_kraus(0.4, 0.2);
  CHECK(choi_distance(compose(identity_channel(2), ch), ch) < 1e-14);

  ComplexMatrix rho = random_density(2);
  KrausChannel a = ad_kraus(0.3), b = pd_kraus(0.6);
  ComplexMatrix sequential = apply_channel(apply_channel(rho, b), a);
  CHECK(max_abs_diff(apply_channel(rho, compose(a, b)), sequential) < 1e-13);

  CHECK_THROWS_AS(compose(ad_kraus(0.1), identity_channel(4)), DimensionError);
}

TEST_CASE("damping families form semigroups in probability") {
  const double p = 0.35, q = 0.5;
  const double combined = 1.0 - (1.0 - p) * (1.0 - q);
  CHECK(choi_distance(compose(ad_kraus(p), ad_kraus(q)), ad_kraus(combined)) <
        1e-12);
  CHECK(choi_distance(compose(pd_kraus(p), pd_kraus(q)), pd_kraus(combined)) <
        1e-12);
}

TEST_CASE("Choi matrix of the identity is the unnormalized Bell projector") {
  ComplexMatrix choi = choi_matrix(identity_channel(2));
  ComplexMatrix want(4, 4);
  want(0, 0) = want(0, 3) = want(3, 0) = want(3, 3) = 1.0;
  CHECK(max_abs_diff(choi, want) == 0.0);
}

TEST_CASE("Choi matrix of full damping has rank two") {
  ComplexMatrix choi = choi_matrix(ad_kraus(1.0));
  HermitianEig eig = hermitian_eigensystem(choi);
  int nonzero = 0;
  for (double v : eig.values) {
    CHECK(v >= -1e-10);
    if (v > 1e-10) ++nonzero;
  }
  CHECK(nonzero == 2);
}

TEST_CASE("Choi matrices are faithful channel fingerprints") {
  // Same map, different Kraus decompositions: distance vanishes.
  CHECK(choi_distance(pd_kraus(0.7), pd_kraus_recombined(0.7)) < 1e-12);
  // Different maps: the fingerprint separates them, and so does action on a
  // random state.
  KrausChannel a = ad_kraus(0.30), b = ad_kraus(0.31);
  CHECK(choi_distance(a, b) > 1e-4);
  ComplexMatrix rho = random_density(2);
  CHECK(max_abs_diff(apply_channel(rho, a), apply_channel(rho, b)) > 1e-6);

  // Positivity and unit partial trace of the input side.
  ComplexMatrix choi = choi_matrix(combined_kraus(0.25, 0.65));
  HermitianEig eig = hermitian_eigensystem(choi);
  CHECK(eig.values.front() >= -1e-10);
  CHECK(max_abs_diff(partial_trace(choi, {2, 2}, {0}),
                     ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("kappa couples the two damping probabilities") {
  CHECK(kappa_pair(0.42, 1.0).value() == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(kappa_pair(0.19, 10.0).value() ==
        doctest::Approx(1.0 - std::pow(0.81, 10)).epsilon(1e-12));
  CHECK(kappa_pair(0.19, 10.0).value() == doctest::Approx(0.878423).epsilon(1e-6));
  CHECK(kappa_pair(0.0, 7.5).value() == 0.0);
  CHECK_THROWS_AS(kappa_pair(0.5, -1.0), std::invalid_argument);
}
