#pragma once

// Dense complex linear algebra for few-qubit state vectors: tensor products,
// inner products, single-site operator application, partial trace, and the
// von Neumann entropy of a qubit density matrix.  Everything here is sized
// for n <= ~20 qubits (dense 2^n vectors); no sparse structure is attempted.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace contexture {

using Complex = std::complex<double>;

// A 2x2 complex matrix acting on a single qubit, row-major:
//   [ m[0] m[1] ]
//   [ m[2] m[3] ]
// Used both for invertible local operators and for rank-1 projector factors.
struct LocalOperator {
  std::array<Complex, 4> m{};

  static LocalOperator identity();
  LocalOperator operator*(const LocalOperator& rhs) const;
  std::array<Complex, 2> apply(const std::array<Complex, 2>& v) const;
};

// Pure state of n qubits as a dense amplitude vector of length 2^n.
// Qubit 0 is the most significant bit of the amplitude index, so for two
// qubits the order is |00>, |01>, |10>, |11> with the first symbol being
// qubit 0.  Sites are 0-based throughout.
class StateVector {
 public:
  StateVector() = default;
  StateVector(int n_qubits, std::vector<Complex> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

  // Scales to unit norm.  Throws std::domain_error if the norm is below
  // 1e-12; a vector that small carries no usable direction information.
  StateVector normalized() const;

  // Applies `op` to qubit `site`, leaving the result unnormalized.  This is
  // the primitive for invertible local operators, which do not preserve
  // norm; callers renormalize explicitly when they need a state.
  StateVector apply_local(int site, const LocalOperator& op) const;

 private:
  int n_qubits_ = 0;
  std::vector<Complex> amps_;
};

// Kronecker product; `a`'s qubits become the high-order sites of the result.
StateVector tensor(const StateVector& a, const StateVector& b);

// Tensor product of n single-qubit states, site 0 first (most significant).
StateVector tensor_all(const std::vector<StateVector>& factors);

// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

// Reduced density matrix of `psi` on the listed qubits (0-based, strictly
// increasing), row-major, dimension 2^k x 2^k with the kept qubits in the
// given order.  Traces out everything else.
std::vector<Complex> partial_trace(const StateVector& psi,
                                   const std::vector<int>& keep);

// Von Neumann entropy in bits of a 2x2 density matrix (row-major).  Uses the
// closed-form eigenvalues (tr/2 +- sqrt((tr/2)^2 - det)); eigenvalues within
// roundoff of 0 contribute nothing.  Throws std::invalid_argument if the
// input is not 2x2.
double vn_entropy_bits(const std::vector<Complex>& rho);

}  // namespace contexture
