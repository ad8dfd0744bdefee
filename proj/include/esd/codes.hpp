// Error-correcting codes as data: codewords, correctable error generators,
// syndrome projectors with recovery operators, and the residual projector
// covering everything the code cannot identify. A generic builder derives the
// syndrome structure from codewords plus generators; the three concrete codes
// are thin wrappers over it.
#pragma once

#include <string>
#include <vector>

#include "esd/qmat.hpp"

namespace esd {

// A single-qubit operator whose per-position images of the codewords span
// one correctable error class.
struct ErrorGenerator {
  std::string label;
  ComplexMatrix op;  // 2x2
};

// One syndrome class: the normalized codeword images, the projector M onto
// their span, and the recovery R mapping them back to the codewords.
// norm0/norm1 record the pre-normalization image norms.
struct Syndrome {
  std::string label;
  Ket v0;
  Ket v1;
  double norm0 = 1.0;
  double norm1 = 1.0;
  ComplexMatrix projector;  // M_k
  ComplexMatrix recovery;   // R_k = |0_L><v0| + |1_L><v1|
};

struct SyndromeSet {
  std::vector<Syndrome> syndromes;  // index 0 is the codespace itself
  ComplexMatrix residual_projector;
};

struct QecCode {
  std::string name;
  std::size_t n_physical = 0;
  Ket logical0;
  Ket logical1;
  std::vector<ErrorGenerator> generators;
  std::vector<Syndrome> syndromes;
  ComplexMatrix residual_projector;
};

// Derive the syndrome structure: per generator per position, form the two
// codeword images, normalize them (zero images are construction errors),
// drop classes that exactly coincide with one already present, then require
// the surviving vector family to be orthonormal to 1e-10. Failures raise
// ComputeError naming the offending pair.
SyndromeSet build_syndromes(const Ket& logical0, const Ket& logical1,
                            const std::vector<ErrorGenerator>& generators);

// Four physical qubits, codewords (|0000>+|1111>)/sqrt2 and
// (|0011>+|1100>)/sqrt2, correcting one amplitude-damping jump on any
// position. Five classes, residual rank 6.
QecCode leung4_code();

// Three physical qubits in the |+/-> basis, codewords |---> and |+++>,
// correcting one phase flip. Four classes, empty residual.
QecCode phase3_code();

// Five physical qubits, eight-term codewords, correcting one dephasing or
// one damping jump per position. Eleven classes over 22 vectors, residual
// rank 10.
QecCode laflamme5_code();

// V = |0_L><0| + |1_L><1|, shape 2^n x 2.
ComplexMatrix encode_isometry(const QecCode& code);

// V rho V^ for a single-qubit rho.
ComplexMatrix encode_qubit(const ComplexMatrix& rho, const QecCode& code);

// The 2 x 2^n maps B_k = V^ R_k M_k, one per syndrome: measure, recover,
// decode in one operator.
std::vector<ComplexMatrix> recovery_branches(const QecCode& code);

// Syndrome measurement + recovery + decoding:
//   rho_R = sum_k B_k rho B_k^  +  tr(residual rho) I/2.
// Probability mass in the residual subspace becomes the maximally mixed
// qubit, keeping the map trace preserving. Returns a 2x2 density matrix.
ComplexMatrix recover(const ComplexMatrix& rho_err, const QecCode& code);

}  // namespace esd
