#include "esd/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace esd {

namespace {

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

bool is_exact_zero(const cx& v) { return v.real() == 0.0 && v.imag() == 0.0; }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cx{0.0, 0.0}) {
  if (rows > kMaxDim || cols > kMaxDim) {
    throw DimensionError("matrix dimension exceeds " + std::to_string(kMaxDim));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_shape(a, b, "add");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_shape(a, b, "subtract");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("multiply: inner dimensions " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  // Register-lifted operators are mostly exact zeros; skipping them keeps
  // those products near-linear in the register dimension.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cx* dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cx v = a(i, k);
      if (is_exact_zero(v)) continue;
      const cx* src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] += v * src[j];
    }
  }
  return out;
}

ComplexMatrix operator*(cx s, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      out(c, r) = std::conj(a(r, c));
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = std::conj(a(r, c));
  return out;
}

cx trace(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("trace: non-square");
  cx t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_diff(a, b) <= tol;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cx v = a(ar, ac);
      if (is_exact_zero(v)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  if (rho.rows() != rho.cols()) throw DimensionError("partial_trace: non-square");
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (total != rho.rows()) {
    throw DimensionError("partial_trace: factor dimensions do not multiply to " +
                         std::to_string(rho.rows()));
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw DimensionError("partial_trace: keep index out of range");
    if (kept[k]) throw DimensionError("partial_trace: duplicate keep index");
    kept[k] = true;
  }

  std::size_t out_dim = 1;
  for (std::size_t f = 0; f < dims.size(); ++f)
    if (kept[f]) out_dim *= dims[f];

  // Digit tables: for every flat index, its per-factor digits, plus the flat
  // index it maps to within the kept factors alone.
  const std::size_t nf = dims.size();
  std::vector<std::size_t> kept_index(total, 0), traced_index(total, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx, ki = 0, ti = 0;
    for (std::size_t f = 0; f < nf; ++f) {
      std::size_t stride = 1;
      for (std::size_t g = f + 1; g < nf; ++g) stride *= dims[g];
      std::size_t digit = (rem / stride) % dims[f];
      rem -= digit * stride;
      if (kept[f]) ki = ki * dims[f] + digit;
      else ti = ti * dims[f] + digit;
    }
    kept_index[idx] = ki;
    traced_index[idx] = ti;
  }

  ComplexMatrix out(out_dim, out_dim);
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c)
      if (traced_index[r] == traced_index[c])
        out(kept_index[r], kept_index[c]) += rho(r, c);
  return out;
}

// --- general eigenvalues: Hessenberg + shifted QR ---------------------------
//
// Dimension is capped at 8 (the concurrence product is 4x4; Choi fingerprints
// of single-qubit channels are 4x4). Iterations run in long double; the
// public interface stays double.

namespace {

using lcx = std::complex<long double>;

constexpr long double kDeflateEps = 1e-18L;

std::vector<lcx> to_long(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<lcx> h(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      h[r * n + c] = lcx(m(r, c).real(), m(r, c).imag());
  return h;
}

// In-place Householder reduction to upper Hessenberg form.
void hessenberg(std::vector<lcx>& h, std::size_t n) {
  for (std::size_t k = 0; k + 2 < n; ++k) {
    long double colnorm = 0.0L;
    for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h[i * n + k]);
    colnorm = std::sqrt(colnorm);
    if (colnorm == 0.0L) continue;

    lcx x0 = h[(k + 1) * n + k];
    lcx phase = (std::abs(x0) == 0.0L) ? lcx(1.0L, 0.0L) : x0 / std::abs(x0);
    lcx alpha = -phase * colnorm;

    std::vector<lcx> v(n, lcx(0.0L, 0.0L));
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h[i * n + k];
    long double vnorm = 0.0L;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    if (vnorm == 0.0L) continue;
    vnorm = std::sqrt(vnorm);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

    // H <- (I - 2vv^)H(I - 2vv^)
    for (std::size_t c = 0; c < n; ++c) {
      lcx s{0.0L, 0.0L};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h[i * n + c];
      s *= 2.0L;
      for (std::size_t i = k + 1; i < n; ++i) h[i * n + c] -= s * v[i];
    }
    for (std::size_t r = 0; r < n; ++r) {
      lcx s{0.0L, 0.0L};
      for (std::size_t i = k + 1; i < n; ++i) s += h[r * n + i] * v[i];
      s *= 2.0L;
      for (std::size_t i = k + 1; i < n; ++i)
        h[r * n + i] -= s * std::conj(v[i]);
    }
  }
}

// Eigenvalues of the 2x2 block [[a,b],[c,d]].
std::pair<lcx, lcx> eig2(lcx a, lcx b, lcx c, lcx d) {
  lcx half_tr = (a + d) / 2.0L;
  lcx disc = std::sqrt(half_tr * half_tr - (a * d - b * c));
  return {half_tr + disc, half_tr - disc};
}

bool subdiag_negligible(const std::vector<lcx>& h, std::size_t n, std::size_t i) {
  long double scale = std::abs(h[(i - 1) * n + (i - 1)]) + std::abs(h[i * n + i]);
  if (scale == 0.0L) scale = 1.0L;
  return std::abs(h[i * n + (i - 1)]) <= kDeflateEps * scale;
}

// One implicit single-shift QR step on the active block [lo, hi].
void qr_step(std::vector<lcx>& h, std::size_t n, std::size_t lo, std::size_t hi,
             lcx shift) {
  for (std::size_t i = lo; i <= hi; ++i) h[i * n + i] -= shift;

  // Forward pass: Givens rotations eliminating the subdiagonal (QR).
  std::vector<lcx> cs(hi), sn(hi);
  for (std::size_t k = lo; k < hi; ++k) {
    lcx a = h[k * n + k];
    lcx b = h[(k + 1) * n + k];
    long double r = std::sqrt(std::norm(a) + std::norm(b));
    lcx c = (r == 0.0L) ? lcx(1.0L, 0.0L) : a / r;
    lcx s = (r == 0.0L) ? lcx(0.0L, 0.0L) : b / r;
    cs[k] = c;
    sn[k] = s;
    for (std::size_t j = k; j <= hi; ++j) {
      lcx t1 = h[k * n + j];
      lcx t2 = h[(k + 1) * n + j];
      h[k * n + j] = std::conj(c) * t1 + std::conj(s) * t2;
      h[(k + 1) * n + j] = -s * t1 + c * t2;
    }
  }
  // Backward pass: multiply by the rotations on the right (RQ).
  for (std::size_t k = lo; k < hi; ++k) {
    for (std::size_t i = lo; i <= std::min(hi, k + 1); ++i) {
      lcx t1 = h[i * n + k];
      lcx t2 = h[i * n + (k + 1)];
      h[i * n + k] = t1 * cs[k] + t2 * sn[k];
      h[i * n + (k + 1)] = -t1 * std::conj(sn[k]) + t2 * std::conj(cs[k]);
    }
  }

  for (std::size_t i = lo; i <= hi; ++i) h[i * n + i] += shift;
}

}  // namespace

std::vector<cx> eigenvalues_general(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues_general: non-square");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  if (n > 8) {
    throw DimensionError("eigenvalues_general: dimension " + std::to_string(n) +
                         " exceeds 8");
  }

  std::vector<lcx> h = to_long(m);
  hessenberg(h, n);

  std::vector<lcx> eig;
  eig.reserve(n);

  std::size_t hi = n - 1;
  std::size_t budget = 30 * n;
  std::size_t stalled = 0;

  while (true) {
    // Peel off converged eigenvalues at the bottom of the active block.
    while (true) {
      if (hi == 0) {
        eig.push_back(h[0]);
        break;
      }
      if (subdiag_negligible(h, n, hi)) {
        eig.push_back(h[hi * n + hi]);
        --hi;
        stalled = 0;
        continue;
      }
      if (hi == 1 || subdiag_negligible(h, n, hi - 1)) {
        auto [e1, e2] = eig2(h[(hi - 1) * n + (hi - 1)], h[(hi - 1) * n + hi],
                             h[hi * n + (hi - 1)], h[hi * n + hi]);
        eig.push_back(e1);
        eig.push_back(e2);
        if (hi == 1) break;
        hi -= 2;
        stalled = 0;
        continue;
      }
      break;
    }
    if (eig.size() >= n) break;

    // Find the top of the active unreduced block.
    std::size_t lo = hi;
    while (lo > 0 && !subdiag_negligible(h, n, lo)) --lo;

    if (budget == 0) {
      throw ComputeError("eigenvalues_general: QR iteration budget exhausted");
    }
    --budget;
    ++stalled;

    lcx shift;
    if (stalled % 10 == 0) {
      // Exceptional shift to break a stall.
      long double t = std::abs(h[hi * n + (hi - 1)]);
      if (hi >= 2) t += std::abs(h[(hi - 1) * n + (hi - 2)]);
      shift = h[hi * n + hi] + 0.75L * t;
    } else {
      auto [e1, e2] = eig2(h[(hi - 1) * n + (hi - 1)], h[(hi - 1) * n + hi],
                           h[hi * n + (hi - 1)], h[hi * n + hi]);
      lcx d = h[hi * n + hi];
      shift = (std::abs(e1 - d) < std::abs(e2 - d)) ? e1 : e2;
    }
    qr_step(h, n, lo, hi, shift);
  }

  std::vector<cx> out;
  out.reserve(n);
  for (const lcx& e : eig)
    out.emplace_back(static_cast<double>(e.real()), static_cast<double>(e.imag()));
  return out;
}

// --- Hermitian eigensystem: cyclic complex Jacobi ----------------------------

HermitianEig hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_eigensystem: non-square");
  const std::size_t n = m.rows();

  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  double fro = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) fro += std::norm(a(r, c));
  fro = std::sqrt(fro);
  const double stop = 1e-14 * (1.0 + fro);

  const std::size_t max_sweeps = 60;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) <= stop) {
      HermitianEig result;
      result.values.resize(n);
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::vector<double> diag(n);
      for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
      std::sort(order.begin(), order.end(),
                [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
      result.vectors = ComplexMatrix(n, n);
      for (std::size_t c = 0; c < n; ++c) {
        result.values[c] = diag[order[c]];
        for (std::size_t r = 0; r < n; ++r)
          result.vectors(r, c) = v(r, order[c]);
      }
      return result;
    }

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx gamma = a(p, q);
        const double g = std::abs(gamma);
        if (g <= stop / (n * n)) continue;
        const cx phase = gamma / g;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double sign = (tau >= 0.0) ? 1.0 : -1.0;
        const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cx jp = s * phase;             // J(p,q)
        const cx jm = -s * std::conj(phase); // J(q,p)

        for (std::size_t i = 0; i < n; ++i) {
          cx aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * c + aiq * jm;
          a(i, q) = aip * jp + aiq * c;
        }
        for (std::size_t i = 0; i < n; ++i) {
          cx api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api + std::conj(jm) * aqi;
          a(q, i) = std::conj(jp) * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          cx vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * c + viq * jm;
          v(i, q) = vip * jp + viq * c;
        }
      }
    }
  }
  throw ComputeError("hermitian_eigensystem: Jacobi did not converge in 60 sweeps");
}

// --- kets --------------------------------------------------------------------

double Ket::norm() const {
  double s = 0.0;
  for (const cx& a : amp) s += std::norm(a);
  return std::sqrt(s);
}

bool Ket::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw ComputeError("cannot normalize a zero vector");
  Ket out = *this;
  for (cx& a : out.amp) a /= n;
  return out;
}

Ket basis_ket(const std::string& bits) {
  std::size_t idx = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw DimensionError("basis_ket: bits must be 0/1");
    idx = idx * 2 + (b == '1' ? 1 : 0);
  }
  Ket out(std::vector<cx>(std::size_t{1} << bits.size(), cx{0.0, 0.0}));
  out.amp[idx] = 1.0;
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  Ket out(std::vector<cx>(a.dim() * b.dim(), cx{0.0, 0.0}));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (is_exact_zero(a.amp[i])) continue;
    for (std::size_t j = 0; j < b.dim(); ++j)
      out.amp[i * b.dim() + j] = a.amp[i] * b.amp[j];
  }
  return out;
}

cx dot(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionError("dot: dimension mismatch");
  cx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

ComplexMatrix outer(const Ket& a, const Ket& b) {
  ComplexMatrix out(a.dim(), b.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    if (is_exact_zero(a.amp[r])) continue;
    for (std::size_t c = 0; c < b.dim(); ++c)
      out(r, c) = a.amp[r] * std::conj(b.amp[c]);
  }
  return out;
}

Ket apply(const ComplexMatrix& m, const Ket& v) {
  if (m.cols() != v.dim()) throw DimensionError("apply: dimension mismatch");
  Ket out(std::vector<cx>(m.rows(), cx{0.0, 0.0}));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    cx s{0.0, 0.0};
    const cx* row = m.row(r);
    for (std::size_t c = 0; c < v.dim(); ++c) s += row[c] * v.amp[c];
    out.amp[r] = s;
  }
  return out;
}

Ket operator+(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionError("ket add: dimension mismatch");
  Ket out = a;
  for (std::size_t i = 0; i < b.dim(); ++i) out.amp[i] += b.amp[i];
  return out;
}

Ket operator-(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionError("ket subtract: dimension mismatch");
  Ket out = a;
  for (std::size_t i = 0; i < b.dim(); ++i) out.amp[i] -= b.amp[i];
  return out;
}

Ket operator*(cx s, const Ket& a) {
  Ket out = a;
  for (cx& x : out.amp) x *= s;
  return out;
}

}  // namespace esd
