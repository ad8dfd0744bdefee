#include "esd/codes.hpp"

#include <cmath>
#include <utility>

namespace esd {

namespace {

constexpr double kGramTol = 1e-10;
constexpr double kMergeTol = 1e-12;

std::size_t qubit_count(std::size_t dim) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) {
    throw DimensionError("codeword dimension " + std::to_string(dim) +
                         " is not a power of two");
  }
  return n;
}

// g acting on one position of a register ket, other positions untouched.
Ket apply_at(const ComplexMatrix& g, const Ket& k, std::size_t n_qubits,
             std::size_t pos) {
  Ket out{std::vector<cx>(k.dim(), cx{0.0, 0.0})};
  const std::size_t stride = std::size_t{1} << (n_qubits - pos - 1);
  for (std::size_t idx = 0; idx < k.dim(); ++idx) {
    const cx a = k.amp[idx];
    if (a.real() == 0.0 && a.imag() == 0.0) continue;
    const std::size_t bit = (idx / stride) % 2;
    const std::size_t base = idx - bit * stride;
    for (std::size_t outbit = 0; outbit < 2; ++outbit) {
      const cx gv = g(outbit, bit);
      if (gv.real() == 0.0 && gv.imag() == 0.0) continue;
      out.amp[base + outbit * stride] += gv * a;
    }
  }
  return out;
}

ComplexMatrix pair_projector(const Ket& v0, const Ket& v1) {
  return outer(v0, v0) + outer(v1, v1);
}

}  // namespace

SyndromeSet build_syndromes(const Ket& logical0, const Ket& logical1,
                            const std::vector<ErrorGenerator>& generators) {
  if (logical0.dim() != logical1.dim()) {
    throw DimensionError("codewords have different dimensions");
  }
  const std::size_t dim = logical0.dim();
  const std::size_t n = qubit_count(dim);

  if (!logical0.is_normalized(kGramTol) || !logical1.is_normalized(kGramTol) ||
      std::abs(dot(logical0, logical1)) > kGramTol) {
    throw ComputeError("codewords are not orthonormal");
  }

  SyndromeSet set;
  set.syndromes.push_back(Syndrome{
      "codespace", logical0, logical1, 1.0, 1.0,
      pair_projector(logical0, logical1),
      outer(logical0, logical0) + outer(logical1, logical1)});

  for (const ErrorGenerator& gen : generators) {
    for (std::size_t pos = 0; pos < n; ++pos) {
      const std::string label = gen.label + "@q" + std::to_string(pos);
      Ket raw0 = apply_at(gen.op, logical0, n, pos);
      Ket raw1 = apply_at(gen.op, logical1, n, pos);
      const double n0 = raw0.norm();
      const double n1 = raw1.norm();
      if (n0 < kMergeTol || n1 < kMergeTol) {
        throw ComputeError("syndrome " + label +
                           ": generator annihilates a codeword");
      }
      Syndrome s;
      s.label = label;
      s.v0 = raw0.normalized();
      s.v1 = raw1.normalized();
      s.norm0 = n0;
      s.norm1 = n1;
      s.projector = pair_projector(s.v0, s.v1);

      bool duplicate = false;
      for (const Syndrome& prev : set.syndromes) {
        if (max_abs_diff(prev.projector, s.projector) <= kMergeTol) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;

      s.recovery = outer(logical0, s.v0) + outer(logical1, s.v1);
      set.syndromes.push_back(std::move(s));
    }
  }

  // The whole family {v0_k, v1_k} must be orthonormal, otherwise projectors
  // overlap and recovery is ambiguous.
  std::vector<std::pair<std::string, const Ket*>> family;
  for (const Syndrome& s : set.syndromes) {
    family.emplace_back(s.label + "/v0", &s.v0);
    family.emplace_back(s.label + "/v1", &s.v1);
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double overlap = std::abs(dot(*family[i].second, *family[j].second));
      if (overlap > kGramTol) {
        throw ComputeError("syndrome vectors " + family[i].first + " and " +
                           family[j].first + " overlap by " +
                           std::to_string(overlap));
      }
    }
  }

  set.residual_projector = ComplexMatrix::identity(dim);
  for (const Syndrome& s : set.syndromes)
    set.residual_projector = set.residual_projector - s.projector;
  return set;
}

namespace {

QecCode assemble(std::string name, Ket logical0, Ket logical1,
                 std::vector<ErrorGenerator> generators) {
  SyndromeSet set = build_syndromes(logical0, logical1, generators);
  QecCode code;
  code.name = std::move(name);
  code.n_physical = qubit_count(logical0.dim());
  code.logical0 = std::move(logical0);
  code.logical1 = std::move(logical1);
  code.generators = std::move(generators);
  code.syndromes = std::move(set.syndromes);
  code.residual_projector = std::move(set.residual_projector);
  return code;
}

ComplexMatrix damp_jump() {
  ComplexMatrix j(2, 2);
  j(0, 1) = 1.0;
  return j;
}

ComplexMatrix sigma_z() {
  ComplexMatrix z(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

}  // namespace

QecCode leung4_code() {
  const double r = 1.0 / std::sqrt(2.0);
  Ket l0 = cx{r, 0.0} * (basis_ket("0000") + basis_ket("1111"));
  Ket l1 = cx{r, 0.0} * (basis_ket("0011") + basis_ket("1100"));
  return assemble("leung4", std::move(l0), std::move(l1),
                  {{"damp", damp_jump()}});
}

QecCode phase3_code() {
  const double r = 1.0 / std::sqrt(2.0);
  Ket minus = cx{r, 0.0} * (basis_ket("0") - basis_ket("1"));
  Ket plus = cx{r, 0.0} * (basis_ket("0") + basis_ket("1"));
  Ket l0 = tensor(tensor(minus, minus), minus);
  Ket l1 = tensor(tensor(plus, plus), plus);
  return assemble("phase3", std::move(l0), std::move(l1),
                  {{"flip", sigma_z()}});
}

QecCode laflamme5_code() {
  const cx s{1.0 / (2.0 * std::sqrt(2.0)), 0.0};
  Ket l0 = s * (basis_ket("00000") + basis_ket("11100") - basis_ket("10011") -
                basis_ket("01111") + basis_ket("11010") + basis_ket("00110") +
                basis_ket("01001") + basis_ket("10101"));
  Ket l1 = s * (cx{-1.0, 0.0} * basis_ket("00011") + basis_ket("11111") -
                basis_ket("10000") + basis_ket("01100") + basis_ket("11001") -
                basis_ket("00101") - basis_ket("01010") + basis_ket("10110"));
  return assemble("laflamme5", std::move(l0), std::move(l1),
                  {{"dephase", sigma_z()}, {"damp", damp_jump()}});
}

ComplexMatrix encode_isometry(const QecCode& code) {
  const std::size_t dim = code.logical0.dim();
  ComplexMatrix v(dim, 2);
  for (std::size_t r = 0; r < dim; ++r) {
    v(r, 0) = code.logical0.amp[r];
    v(r, 1) = code.logical1.amp[r];
  }
  return v;
}

ComplexMatrix encode_qubit(const ComplexMatrix& rho, const QecCode& code) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw DimensionError("encode_qubit: input must be 2x2");
  }
  ComplexMatrix v = encode_isometry(code);
  return v * rho * dagger(v);
}

std::vector<ComplexMatrix> recovery_branches(const QecCode& code) {
  ComplexMatrix vd = dagger(encode_isometry(code));
  std::vector<ComplexMatrix> branches;
  branches.reserve(code.syndromes.size());
  for (const Syndrome& s : code.syndromes)
    branches.push_back(vd * s.recovery * s.projector);
  return branches;
}

ComplexMatrix recover(const ComplexMatrix& rho_err, const QecCode& code) {
  const std::size_t dim = std::size_t{1} << code.n_physical;
  if (rho_err.rows() != dim || rho_err.cols() != dim) {
    throw DimensionError("recover: state is " + std::to_string(rho_err.rows()) +
                         "x" + std::to_string(rho_err.cols()) + ", code needs " +
                         std::to_string(dim));
  }
  ComplexMatrix out(2, 2);
  for (const ComplexMatrix& b : recovery_branches(code))
    out = out + dagger(b * dagger(b * rho_err));
  const cx leftover = trace(code.residual_projector * rho_err);
  out(0, 0) += leftover / 2.0;
  out(1, 1) += leftover / 2.0;
  return out;
}

}  // namespace esd
