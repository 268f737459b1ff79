#include "contexture/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace contexture {

LocalOperator LocalOperator::identity() {
  return LocalOperator{{Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}}};
}

LocalOperator LocalOperator::operator*(const LocalOperator& rhs) const {
  return LocalOperator{{
      m[0] * rhs.m[0] + m[1] * rhs.m[2],
      m[0] * rhs.m[1] + m[1] * rhs.m[3],
      m[2] * rhs.m[0] + m[3] * rhs.m[2],
      m[2] * rhs.m[1] + m[3] * rhs.m[3],
  }};
}

std::array<Complex, 2> LocalOperator::apply(const std::array<Complex, 2>& v) const {
  return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits_ < 0 || n_qubits_ > 24) {
    throw std::invalid_argument("StateVector: qubit count out of range");
  }
  if (amps_.size() != (std::size_t{1} << n_qubits_)) {
    throw std::invalid_argument("StateVector: amplitude count must be 2^n");
  }
}

double StateVector::norm() const {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  double n = norm();
  if (n < 1e-12) {
    throw std::domain_error("StateVector: cannot normalize a (near-)zero vector");
  }
  std::vector<Complex> out(amps_);
  for (Complex& a : out) a /= n;
  return StateVector(n_qubits_, std::move(out));
}

StateVector StateVector::apply_local(int site, const LocalOperator& op) const {
  if (site < 0 || site >= n_qubits_) {
    throw std::invalid_argument("apply_local: site out of range");
  }
  // Site 0 is the most significant bit, so the stride of `site`'s bit is
  // 2^(n-1-site).
  std::size_t stride = std::size_t{1} << (n_qubits_ - 1 - site);
  std::vector<Complex> out(amps_.size());
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & stride) continue;  // handle each (0,1) pair once, from its 0 half
    Complex a0 = amps_[base];
    Complex a1 = amps_[base | stride];
    out[base] = op.m[0] * a0 + op.m[1] * a1;
    out[base | stride] = op.m[2] * a0 + op.m[3] * a1;
  }
  return StateVector(n_qubits_, std::move(out));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<Complex> out;
  out.reserve(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      out.push_back(a[i] * b[j]);
    }
  }
  return StateVector(a.n_qubits() + b.n_qubits(), std::move(out));
}

StateVector tensor_all(const std::vector<StateVector>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("tensor_all: no factors");
  }
  StateVector acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) {
    acc = tensor(acc, factors[i]);
  }
  return acc;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  Complex s{0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    s += std::conj(a[i]) * b[i];
  }
  return s;
}

std::vector<Complex> partial_trace(const StateVector& psi,
                                   const std::vector<int>& keep) {
  const int n = psi.n_qubits();
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n) {
      throw std::invalid_argument("partial_trace: site out of range");
    }
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw std::invalid_argument("partial_trace: sites must be strictly increasing");
    }
  }
  const int k = static_cast<int>(keep.size());
  std::vector<int> traced;
  traced.reserve(n - k);
  for (int s = 0, j = 0; s < n; ++s) {
    if (j < k && keep[j] == s) {
      ++j;
    } else {
      traced.push_back(s);
    }
  }

  // Index of site s within a full amplitude index: bit (n-1-s).
  auto full_index = [&](std::size_t kept_bits, std::size_t traced_bits) {
    std::size_t idx = 0;
    for (int i = 0; i < k; ++i) {
      if (kept_bits & (std::size_t{1} << (k - 1 - i))) {
        idx |= std::size_t{1} << (n - 1 - keep[i]);
      }
    }
    for (std::size_t i = 0; i < traced.size(); ++i) {
      if (traced_bits & (std::size_t{1} << (traced.size() - 1 - i))) {
        idx |= std::size_t{1} << (n - 1 - traced[i]);
      }
    }
    return idx;
  };

  const std::size_t dk = std::size_t{1} << k;
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<Complex> rho(dk * dk, Complex{0.0});
  for (std::size_t r = 0; r < dk; ++r) {
    for (std::size_t c = 0; c < dk; ++c) {
      Complex s{0.0};
      for (std::size_t t = 0; t < dt; ++t) {
        s += psi[full_index(r, t)] * std::conj(psi[full_index(c, t)]);
      }
      rho[r * dk + c] = s;
    }
  }
  return rho;
}

double vn_entropy_bits(const std::vector<Complex>& rho) {
  if (rho.size() != 4) {
    throw std::invalid_argument("vn_entropy_bits: expected a 2x2 density matrix");
  }
  // Hermitian 2x2: eigenvalues tr/2 +- sqrt((tr/2)^2 - det), both real.
  double tr = (rho[0] + rho[3]).real();
  Complex detc = rho[0] * rho[3] - rho[1] * rho[2];
  double det = detc.real();
  double half = tr / 2.0;
  double disc = half * half - det;
  if (disc < 0.0) disc = 0.0;  // roundoff on (near-)degenerate spectra
  double root = std::sqrt(disc);
  double e1 = half + root;
  double e2 = half - root;
  auto term = [](double e) {
    return e > 1e-15 ? -e * std::log2(e) : 0.0;
  };
  return term(e1) + term(e2);
}

}  // namespace contexture
