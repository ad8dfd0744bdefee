#include <algorithm>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "esd/qmat.hpp"
#include "helpers.hpp"

using namespace esd;
using esd::testing::random_density;
using esd::testing::random_matrix;
using esd::testing::rng;

namespace {

ComplexMatrix pauli_z() {
  ComplexMatrix z(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  return x;
}

}  // namespace

TEST_CASE("matrix construction and indexing") {
  ComplexMatrix m(2, 3);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(m(r, c) == cx{0.0, 0.0});

  m(1, 2) = cx{0.5, -0.5};
  CHECK(m(1, 2) == cx{0.5, -0.5});

  CHECK_THROWS_AS(ComplexMatrix(kMaxDim + 1, 1), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(1, kMaxDim + 1), DimensionError);
}

TEST_CASE("identity multiplies as a neutral element") {
  ComplexMatrix a = random_matrix(4, 4);
  ComplexMatrix i4 = ComplexMatrix::identity(4);
  CHECK(max_abs_diff(i4 * a, a) == 0.0);
  CHECK(max_abs_diff(a * i4, a) == 0.0);
}

TEST_CASE("arithmetic shape mismatches throw") {
  ComplexMatrix a(2, 2), b(3, 3), c(2, 3);
  CHECK_THROWS_AS(a + b, DimensionError);
  CHECK_THROWS_AS(a - b, DimensionError);
  CHECK_THROWS_AS(a * b, DimensionError);
  CHECK_THROWS_AS(trace(c), DimensionError);
  CHECK_THROWS_AS(max_abs_diff(a, c), DimensionError);
}

TEST_CASE("product matches a direct triple loop") {
  ComplexMatrix a = random_matrix(3, 5);
  ComplexMatrix b = random_matrix(5, 4);
  ComplexMatrix got = a * b;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cx want{0.0, 0.0};
      for (std::size_t k = 0; k < 5; ++k) want += a(i, k) * b(k, j);
      CHECK(std::abs(got(i, j) - want) < 1e-14);
    }
}

TEST_CASE("dagger conjugates and transposes") {
  ComplexMatrix a = random_matrix(3, 2);
  ComplexMatrix ad = dagger(a);
  CHECK(ad.rows() == 2);
  CHECK(ad.cols() == 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 2; ++c) CHECK(ad(c, r) == std::conj(a(r, c)));
  CHECK(max_abs_diff(dagger(ad), a) == 0.0);
}

TEST_CASE("trace is linear and cyclic") {
  ComplexMatrix a = random_matrix(4, 4);
  ComplexMatrix b = random_matrix(4, 4);
  CHECK(std::abs(trace(a + b) - (trace(a) + trace(b))) < 1e-14);
  CHECK(std::abs(trace(a * b) - trace(b * a)) < 1e-12);
}

TEST_CASE("approx_equal honors the explicit tolerance") {
  ComplexMatrix a(2, 2), b(2, 2);
  b(0, 0) = cx{1e-8, 0.0};
  CHECK(approx_equal(a, b, 1e-7));
  CHECK_FALSE(approx_equal(a, b, 1e-9));
  ComplexMatrix c(2, 3);
  CHECK_FALSE(approx_equal(a, c, 1.0));
}

TEST_CASE("tensor of identities is the identity") {
  ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(tensor(i2, i2), ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("tensor of diagonal projectors places the single entry") {
  ComplexMatrix p0(2, 2), p1(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  ComplexMatrix t = tensor(p0, p1);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(t(r, c) == ((r == 1 && c == 1) ? cx{1.0, 0.0} : cx{0.0, 0.0}));
}

TEST_CASE("tensor is associative and multiplicative") {
  ComplexMatrix a = random_matrix(2, 2);
  ComplexMatrix b = random_matrix(2, 2);
  ComplexMatrix c = random_matrix(2, 2);
  CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) <
        1e-15);
  // (A(x)B)(C(x)D) = AC (x) BD
  ComplexMatrix d = random_matrix(2, 2);
  CHECK(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) <
        1e-13);
}

TEST_CASE("conjugating twice with sigma_z tensor sigma_z is the identity map") {
  ComplexMatrix zz = tensor(pauli_z(), pauli_z());
  ComplexMatrix rho = random_density(4);
  ComplexMatrix once = zz * rho * zz;
  CHECK(max_abs_diff(zz * once * zz, rho) < 1e-14);
}

TEST_CASE("partial trace of a product state recovers each factor") {
  ComplexMatrix a = random_density(2);
  ComplexMatrix b = random_density(2);
  ComplexMatrix ab = tensor(a, b);
  CHECK(max_abs_diff(partial_trace(ab, {2, 2}, {0}), a) < 1e-14);
  CHECK(max_abs_diff(partial_trace(ab, {2, 2}, {1}), b) < 1e-14);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  Ket bell(std::vector<cx>{cx{1.0, 0.0}, {}, {}, cx{1.0, 0.0}});
  bell = bell.normalized();
  ComplexMatrix rho = outer(bell, bell);
  ComplexMatrix want = 0.5 * ComplexMatrix::identity(2);
  CHECK(max_abs_diff(partial_trace(rho, {2, 2}, {0}), want) < 1e-15);
  CHECK(max_abs_diff(partial_trace(rho, {2, 2}, {1}), want) < 1e-15);
}

TEST_CASE("partial trace over a three factor register") {
  ComplexMatrix a = random_density(2);
  ComplexMatrix b = random_density(2);
  ComplexMatrix c = random_density(2);
  ComplexMatrix abc = tensor(tensor(a, b), c);
  CHECK(max_abs_diff(partial_trace(abc, {2, 2, 2}, {1}), b) < 1e-14);
  CHECK(max_abs_diff(partial_trace(abc, {2, 2, 2}, {0, 2}), tensor(a, c)) <
        1e-14);
  // Keeping everything is the identity operation.
  CHECK(max_abs_diff(partial_trace(abc, {2, 2, 2}, {0, 1, 2}), abc) == 0.0);
  // Keeping nothing leaves the 1x1 trace.
  ComplexMatrix t = partial_trace(abc, {2, 2, 2}, {});
  CHECK(t.rows() == 1);
  CHECK(std::abs(t(0, 0) - cx{1.0, 0.0}) < 1e-13);
}

TEST_CASE("partial trace rejects bad factorizations") {
  ComplexMatrix rho = random_density(4);
  CHECK_THROWS_AS(partial_trace(rho, {2, 3}, {0}), DimensionError);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {2}), DimensionError);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {0, 0}), DimensionError);
  CHECK_THROWS_AS(partial_trace(random_matrix(4, 3), {2, 2}, {0}),
                  DimensionError);
}

TEST_CASE("eigenvalues of a diagonal matrix are its diagonal") {
  ComplexMatrix d(4, 4);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  d(2, 2) = 3.0;
  d(3, 3) = 4.0;
  auto eig = eigenvalues_general(d);
  std::vector<double> re;
  for (cx e : eig) {
    CHECK(std::abs(e.imag()) < 1e-12);
    re.push_back(e.real());
  }
  std::sort(re.begin(), re.end());
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::abs(re[i] - double(i + 1)) < 1e-12);
}

TEST_CASE("eigenvalues of sigma_x are plus and minus one") {
  auto eig = eigenvalues_general(pauli_x());
  REQUIRE(eig.size() == 2);
  std::vector<double> re{eig[0].real(), eig[1].real()};
  std::sort(re.begin(), re.end());
  CHECK(std::abs(re[0] + 1.0) < 1e-12);
  CHECK(std::abs(re[1] - 1.0) < 1e-12);
  CHECK(std::abs(eig[0].imag()) < 1e-12);
  CHECK(std::abs(eig[1].imag()) < 1e-12);
}

TEST_CASE("a defective Jordan block still yields its repeated eigenvalue") {
  ComplexMatrix j(2, 2);
  j(0, 0) = 1.0;
  j(0, 1) = 1.0;
  j(1, 1) = 1.0;
  auto eig = eigenvalues_general(j);
  REQUIRE(eig.size() == 2);
  CHECK(std::abs(eig[0] - cx{1.0, 0.0}) < 1e-9);
  CHECK(std::abs(eig[1] - cx{1.0, 0.0}) < 1e-9);
}

TEST_CASE("random spectra satisfy the trace identities") {
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix a = random_matrix(4, 4);
    auto eig = eigenvalues_general(a);
    REQUIRE(eig.size() == 4);
    cx sum{0.0, 0.0}, sumsq{0.0, 0.0};
    for (cx e : eig) {
      sum += e;
      sumsq += e * e;
    }
    CHECK(std::abs(sum - trace(a)) < 1e-10);
    CHECK(std::abs(sumsq - trace(a * a)) < 1e-10);
  }
}

TEST_CASE("eight dimensional spectra are still in budget") {
  ComplexMatrix a = random_matrix(8, 8);
  auto eig = eigenvalues_general(a);
  REQUIRE(eig.size() == 8);
  cx sum{0.0, 0.0};
  for (cx e : eig) sum += e;
  CHECK(std::abs(sum - trace(a)) < 1e-10);
}

TEST_CASE("general eigensolver rejects dimensions above eight") {
  CHECK_THROWS_AS(eigenvalues_general(random_matrix(9, 9)), DimensionError);
  CHECK_THROWS_AS(eigenvalues_general(random_matrix(4, 3)), DimensionError);
}

TEST_CASE("hermitian eigensystem reconstructs the matrix") {
  ComplexMatrix g = random_matrix(6, 6);
  ComplexMatrix h = g + dagger(g);
  HermitianEig e = hermitian_eigensystem(h);
  REQUIRE(e.values.size() == 6);

  // Ascending order.
  for (std::size_t i = 1; i < 6; ++i) CHECK(e.values[i] >= e.values[i - 1]);

  // Columns are orthonormal.
  CHECK(max_abs_diff(dagger(e.vectors) * e.vectors,
                     ComplexMatrix::identity(6)) < 1e-12);

  // Each column is an eigenvector: H v = lambda v.
  for (std::size_t c = 0; c < 6; ++c) {
    Ket v(std::vector<cx>(6));
    for (std::size_t r = 0; r < 6; ++r) v.amp[r] = e.vectors(r, c);
    Ket hv = apply(h, v);
    Ket lv = cx{e.values[c], 0.0} * v;
    double resid = 0.0;
    for (std::size_t r = 0; r < 6; ++r)
      resid = std::max(resid, std::abs(hv.amp[r] - lv.amp[r]));
    CHECK(resid < 1e-10);
  }

  // V diag(values) V^ = H.
  ComplexMatrix lam(6, 6);
  for (std::size_t i = 0; i < 6; ++i) lam(i, i) = e.values[i];
  CHECK(max_abs_diff(e.vectors * lam * dagger(e.vectors), h) < 1e-12);
}

TEST_CASE("hermitian eigenvalues of a projector are zeros and ones") {
  Ket k = esd::testing::random_ket(4);
  ComplexMatrix p = outer(k, k);
  HermitianEig e = hermitian_eigensystem(p);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(e.values[i]) < 1e-13);
  CHECK(std::abs(e.values[3] - 1.0) < 1e-13);
}

TEST_CASE("basis kets index with the leftmost qubit most significant") {
  Ket k = basis_ket("0111");
  REQUIRE(k.dim() == 16);
  for (std::size_t i = 0; i < 16; ++i)
    CHECK(k.amp[i] == ((i == 7) ? cx{1.0, 0.0} : cx{0.0, 0.0}));
  CHECK(basis_ket("10").amp[2] == cx{1.0, 0.0});
  CHECK_THROWS_AS(basis_ket("01a"), DimensionError);
}

TEST_CASE("ket norms and normalization") {
  Ket k(std::vector<cx>{cx{3.0, 0.0}, cx{0.0, 4.0}});
  CHECK(std::abs(k.norm() - 5.0) < 1e-15);
  CHECK_FALSE(k.is_normalized());
  Ket n = k.normalized();
  CHECK(n.is_normalized());
  CHECK(std::abs(n.amp[0].real() - 0.6) < 1e-15);
  Ket z(std::vector<cx>{cx{0.0, 0.0}});
  CHECK_THROWS_AS(z.normalized(), ComputeError);
}

TEST_CASE("ket algebra stays consistent with matrices") {
  Ket a = esd::testing::random_ket(4);
  Ket b = esd::testing::random_ket(4);
  ComplexMatrix m = random_matrix(4, 4);

  // <a|M|b> computed two ways.
  cx lhs = dot(a, apply(m, b));
  cx rhs = trace(m * outer(b, a));
  CHECK(std::abs(lhs - rhs) < 1e-13);

  // outer() of tensored kets equals tensor of outer products.
  Ket ab = tensor(a, b);
  CHECK(max_abs_diff(outer(ab, ab), tensor(outer(a, a), outer(b, b))) < 1e-14);

  CHECK(std::abs(dot(a, a).real() - 1.0) < 1e-13);
  CHECK_THROWS_AS(dot(a, esd::testing::random_ket(2)), DimensionError);

  Ket sum = a + b;
  Ket diff = sum - b;
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::abs(diff.amp[i] - a.amp[i]) < 1e-15);
}
