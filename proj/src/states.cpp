#include "contexture/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace contexture {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDomainTol = 1e-12;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

StateVector ghz_state(int n) {
  require(n >= 2 && n <= 20, "ghz_state: n must be in [2, 20]");
  std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0});
  const double r = 1.0 / std::sqrt(2.0);
  amps.front() = Complex{r};
  amps.back() = Complex{r};
  return StateVector(n, std::move(amps));
}

StateVector bipartite(double delta) {
  require(delta >= -kDomainTol && delta <= kPi / 4.0 + kDomainTol,
          "bipartite: delta outside [0, pi/4]");
  return StateVector(
      2, {Complex{std::cos(delta)}, Complex{0.0}, Complex{0.0},
          Complex{std::sin(delta)}});
}

StateVector w_state() {
  const double r = 1.0 / std::sqrt(3.0);
  // |001> + |010> + |100>, site 0 most significant.
  return StateVector(3, {Complex{0.0}, Complex{r}, Complex{r}, Complex{0.0},
                         Complex{r}, Complex{0.0}, Complex{0.0}, Complex{0.0}});
}

StateVector ghz_canonical(double delta, double alpha, double beta,
                          double gamma, double phi_phase) {
  require(delta > 0.0 && delta <= kPi / 4.0 + kDomainTol,
          "ghz_canonical: delta outside (0, pi/4]");
  for (double x : {alpha, beta, gamma}) {
    require(x > 0.0 && x <= kPi / 2.0 + kDomainTol,
            "ghz_canonical: alpha/beta/gamma outside (0, pi/2]");
  }
  // sqrt(K) (cos d |000> + sin d e^{i Phi} |v_a>|v_b>|v_c>), |v_x> =
  // cos x |0> + sin x |1>; K is fixed by normalization at the end.
  Complex head = Complex{std::cos(delta)};
  Complex tail = std::polar(std::sin(delta), phi_phase);
  std::array<double, 3> cs = {std::cos(alpha), std::cos(beta), std::cos(gamma)};
  std::array<double, 3> sn = {std::sin(alpha), std::sin(beta), std::sin(gamma)};
  std::vector<Complex> amps(8, Complex{0.0});
  for (std::size_t idx = 0; idx < 8; ++idx) {
    double prod = 1.0;
    for (int q = 0; q < 3; ++q) {
      bool one = (idx >> (2 - q)) & 1u;
      prod *= one ? sn[q] : cs[q];
    }
    amps[idx] = tail * prod;
  }
  amps[0] += head;
  return StateVector(3, std::move(amps)).normalized();
}

std::vector<LocalOperator> ilo_ghz_canonical(double delta, double alpha,
                                             double beta, double gamma,
                                             double phi_phase) {
  double k = 1.0 / (1.0 + 2.0 * std::cos(delta) * std::sin(delta) *
                              std::cos(alpha) * std::cos(beta) *
                              std::cos(gamma) * std::cos(phi_phase));
  double scale = std::sqrt(2.0 * k);
  Complex sde = std::polar(std::sin(delta), phi_phase);
  LocalOperator first{{Complex{scale * std::cos(delta)},
                       scale * sde * std::cos(alpha), Complex{0.0},
                       scale * sde * std::sin(alpha)}};
  LocalOperator second{{Complex{1.0}, Complex{std::cos(beta)}, Complex{0.0},
                        Complex{std::sin(beta)}}};
  LocalOperator third{{Complex{1.0}, Complex{std::cos(gamma)}, Complex{0.0},
                       Complex{std::sin(gamma)}}};
  return {first, second, third};
}

StateVector w_class(double a, double b, double c, double d) {
  require(a > 0.0 && b > 0.0 && c > 0.0 && d >= 0.0,
          "w_class: need a, b, c > 0 and d >= 0");
  require(std::abs(a + b + c + d - 1.0) <= 1e-9,
          "w_class: coefficients must sum to 1");
  // sqrt(a)|001> + sqrt(b)|010> + sqrt(c)|100> + sqrt(d)|000>.
  std::vector<Complex> amps(8, Complex{0.0});
  amps[0b001] = Complex{std::sqrt(a)};
  amps[0b010] = Complex{std::sqrt(b)};
  amps[0b100] = Complex{std::sqrt(c)};
  amps[0b000] = Complex{std::sqrt(d)};
  return StateVector(3, std::move(amps));
}

std::vector<LocalOperator> ilo_w_class(double a, double b, double c,
                                       double d) {
  require(a > 0.0 && b > 0.0 && c > 0.0 && d >= 0.0,
          "ilo_w_class: need a, b, c > 0 and d >= 0");
  double s3 = std::sqrt(3.0);
  LocalOperator first{{Complex{std::sqrt(a)}, Complex{std::sqrt(d)},
                       Complex{0.0}, Complex{std::sqrt(c)}}};
  LocalOperator second{{Complex{s3}, Complex{0.0}, Complex{0.0},
                        Complex{std::sqrt(3.0 * b / a)}}};
  return {first, second, LocalOperator::identity()};
}

StateVector v_factor(double lambda) {
  return StateVector(
      1, {Complex{std::cos(lambda / 2.0)}, Complex{std::sin(lambda / 2.0)}});
}

StateVector w_factor(double lambda) {
  return StateVector(
      1, {Complex{std::sin(lambda / 2.0)}, Complex{std::cos(lambda / 2.0)}});
}

StateVector ghz_slocc(double delta, const std::vector<double>& lambdas,
                      double phi_phase) {
  require(delta > 0.0 && delta <= kPi / 4.0 + kDomainTol,
          "ghz_slocc: delta outside (0, pi/4]");
  require(lambdas.size() >= 2 && lambdas.size() <= 12,
          "ghz_slocc: need between 2 and 12 sites");
  for (double l : lambdas) {
    require(l >= -kDomainTol && l <= kPi / 2.0 + kDomainTol,
            "ghz_slocc: lambda outside [0, pi/2]");
  }
  std::vector<StateVector> vs, ws;
  vs.reserve(lambdas.size());
  ws.reserve(lambdas.size());
  for (double l : lambdas) {
    vs.push_back(v_factor(l));
    ws.push_back(w_factor(l));
  }
  StateVector vbranch = tensor_all(vs);
  StateVector wbranch = tensor_all(ws);
  Complex cd = Complex{std::cos(delta)};
  Complex sd = std::polar(std::sin(delta), phi_phase);
  std::vector<Complex> amps(vbranch.dim());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = cd * vbranch[i] + sd * wbranch[i];
  }
  // normalized() supplies the closed-form factor
  // sqrt(K) = (1 + 2 cos d sin d cos Phi prod_i sin lambda_i)^{-1/2}
  // and rejects the degenerate boundary case where the two branches cancel
  // exactly (all lambda = pi/2 with Phi = pi).
  return StateVector(static_cast<int>(lambdas.size()), std::move(amps))
      .normalized();
}

StateVector balanced(const std::vector<double>& lambdas, double phi_phase) {
  return ghz_slocc(kPi / 4.0, lambdas, phi_phase);
}

}  // namespace contexture
