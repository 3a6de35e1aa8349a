// A guided tour at N = 3: builds the basic operators, checks the headline
// identities numerically, and prints what it finds.

#include <cmath>
#include <iostream>

#include "isinglab/isinglab.hpp"

using namespace isinglab;

int main() {
  const int N = 3;
  std::cout << "== operators on " << N << " sites ==\n";

  const PauliSum h = h_tfim(1.0, 1.0, N);
  std::cout << "H = " << h.str() << "\n";
  std::cout << "P = " << spin_parity(N).str() << "\n\n";

  std::cout << "== Jordan-Wigner chain ==\n";
  const auto gamma = jw_all(N);
  for (int j = 1; j <= 2 * N; ++j) {
    std::cout << "gamma_" << j << " = " << gamma[j].str() << "\n";
  }
  std::cout << "Clifford residual: " << clifford_residual(N) << "\n\n";

  std::cout << "== transfer operator vs circuit ==\n";
  const double omega = 0.25;
  const ModeRep rep(N);
  const auto eta = Inhomogeneity::staggered(N, omega);
  const Dense ratio = mat_inv(transfer(rep, -omega / 2.0, eta)) *
                      transfer(rep, omega / 2.0, eta);
  std::cout << "tau(-w/2)^-1 tau(+w/2) vs V_majorana(tanh w): "
            << rel_dist(ratio, v_majorana(std::tanh(omega), N)) << "\n";
  const Dense sector = (PauliSum::identity(N) + spin_parity(N)).to_dense();
  std::cout << "even-sector match with VA VB:                "
            << rel_dist(Dense(ratio * sector),
                        Dense(v_first_order(std::tanh(omega), 1.0, 1.0, N) *
                              sector))
            << "\n\n";

  std::cout << "== duality operator ==\n";
  const DualityOperator d = kw_continuous(N);
  std::cout << "route agreement: " << d.route_residual.value_or(1.0) << "\n";
  std::cout << "rank(D) = " << numerical_rank(d.mat) << " (expect "
            << (1 << (N - 1)) << ")\n";
  for (const auto& c : algebra_suite(std::tanh(omega), N)) {
    std::cout << (c.pass ? "  pass  " : "  FAIL  ") << c.id << "  residual "
              << c.residual << "\n";
  }
  std::cout << "\n== conserved charge ==\n";
  const PauliSum q1 = closed_q1(+1, omega, N);
  std::cout << "Q1+(omega=" << omega << ") has " << q1.term_count()
            << " Pauli terms\n";
  const Dense o = traceless_part(
      oracle_log_derivative_charge(1, omega / 2.0, omega, N));
  const Dense c = traceless_part(q1.to_dense());
  const cplx raw = fit_scalar(o, c);
  std::cout << "log-derivative fit residual: " << rel_dist(o, Dense(raw * c))
            << "\n";
  std::cout << "fitted scalar (axis-adjusted): " << ipow(1) * raw << "\n";
  return 0;
}
