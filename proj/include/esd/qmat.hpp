// Dense complex linear algebra for qubit registers up to dimension 1024:
// construction, products, tensor products, partial trace, and eigensolvers
// for small matrices.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace esd {

using cx = std::complex<double>;

// Shape violations and index errors.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical failures: iteration budgets, broken invariants discovered while
// constructing channels, codes, or effective maps.
struct ComputeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File output failures; message carries the path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxDim = 1024;
inline constexpr double kSpectralTol = 1e-10;
inline constexpr double kAlgebraicTol = 1e-12;

// Row-major dense complex matrix. Immutable in practice: operations return
// new values. Dimensions are capped at kMaxDim per side.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  cx* row(std::size_t r) { return data_.data() + r * cols_; }
  const cx* row(std::size_t r) const { return data_.data() + r * cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cx> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cx s, const ComplexMatrix& a);

ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
cx trace(const ComplexMatrix& a);

// Largest entrywise absolute difference; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Entrywise comparison with an explicit absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

// Kronecker product; output dimensions multiply.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out the factors not listed in `keep`. `dims` are the factor
// dimensions in register order (leftmost factor is most significant), and
// their product must equal the side of the square input. Kept factors retain
// their original order.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

// All eigenvalues with multiplicity of a square matrix of dimension <= 8,
// via Hessenberg reduction and shifted QR iteration. The iteration budget is
// bounded; exhaustion raises ComputeError. Internal arithmetic runs in long
// double so results are accurate to well under kSpectralTol for inputs with
// spectral norm <= 1.
std::vector<cx> eigenvalues_general(const ComplexMatrix& m);

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
// `values` ascend; `vectors` holds the matching orthonormal columns.
struct HermitianEig {
  std::vector<double> values;
  ComplexMatrix vectors;
};
HermitianEig hermitian_eigensystem(const ComplexMatrix& m);

// Column vector in a 2^n register. `amp` holds amplitudes in register order:
// qubit 0 is the leftmost (most significant) position, so |0111> has its
// single 1-amplitude at index 7.
struct Ket {
  std::vector<cx> amp;

  Ket() = default;
  explicit Ket(std::vector<cx> amplitudes) : amp(std::move(amplitudes)) {}

  std::size_t dim() const { return amp.size(); }
  double norm() const;
  bool is_normalized(double tol = kAlgebraicTol) const;
  Ket normalized() const;
};

// Basis ket from a bit string, e.g. basis_ket("0111").
Ket basis_ket(const std::string& bits);

Ket tensor(const Ket& a, const Ket& b);
cx dot(const Ket& a, const Ket& b);                      // <a|b>
ComplexMatrix outer(const Ket& a, const Ket& b);         // |a><b|
Ket apply(const ComplexMatrix& m, const Ket& v);
Ket operator+(const Ket& a, const Ket& b);
Ket operator-(const Ket& a, const Ket& b);
Ket operator*(cx s, const Ket& a);

}  // namespace esd
