#pragma once

// Majorana modes on N sites through the Jordan-Wigner map, parity operators,
// and the twisted translation built from them. 2N modes live on N qubits:
//   Gamma_{2j-1} = Z_1 .. Z_{j-1} X_j
//   Gamma_{2j}   = Z_1 .. Z_{j-1} Y_j
// so that Gamma_{2j-1} Gamma_{2j} = i Z_j and, for j < N,
// Gamma_{2j} Gamma_{2j+1} = i X_j X_{j+1}. All phases here are exact integer
// powers of i at the term level.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "isinglab/pauli.hpp"

namespace isinglab {

// Mode index j runs 1..2N. The mutated flag deliberately flips the sign of
// mode 2 (a wrong i in the Y string); it exists only for negative-control
// tests that prove the identity suites can fail.
inline PauliSum jw_gamma(int j, int N, bool mutated = false) {
  check_site_count(N);
  if (j < 1 || j > 2 * N) {
    throw std::out_of_range("jw_gamma: mode index out of range");
  }
  const int site = (j + 1) / 2;  // 1-based qubit the mode sits on
  PauliSum g = (j % 2 == 1) ? PauliSum::x(site, N) : PauliSum::y(site, N);
  for (int k = 1; k < site; ++k) g = PauliSum::z(k, N) * g;
  if (mutated && j == 2) g *= cplx(-1, 0);
  return g;
}

inline std::vector<PauliSum> jw_all(int N, bool mutated = false) {
  std::vector<PauliSum> g;
  g.reserve(2 * N + 1);
  g.push_back(PauliSum::identity(N));  // placeholder, modes are 1-based
  for (int j = 1; j <= 2 * N; ++j) g.push_back(jw_gamma(j, N, mutated));
  return g;
}

inline PauliSum spin_parity(int N) {
  PauliSum p = PauliSum::identity(N);
  for (int j = 1; j <= N; ++j) p = p * PauliSum::z(j, N);
  return p;
}

// Product of all modes, ordered 2N .. 1. With this order the spin parity
// satisfies prod_j Z_j = i^N * parity at every N; the ascending product
// differs by (-1)^N and breaks that relation for odd N.
inline PauliSum fermionic_parity(int N, bool mutated = false) {
  PauliSum p = PauliSum::identity(N);
  for (int j = 2 * N; j >= 1; --j) p = p * jw_gamma(j, N, mutated);
  return p;
}

inline PauliSum projector_even(int N) {
  return (PauliSum::identity(N) + spin_parity(N)) * cplx(0.5, 0);
}

inline PauliSum projector_odd(int N) {
  return (PauliSum::identity(N) - spin_parity(N)) * cplx(0.5, 0);
}

// max Frobenius deviation of {Gamma_j, Gamma_k} from 2 delta_{jk}; exact zero
// for the honest convention
inline double clifford_residual(int N, bool mutated = false) {
  const auto g = jw_all(N, mutated);
  const PauliSum two = PauliSum::identity(N) * cplx(2, 0);
  double worst = 0.0;
  for (int j = 1; j <= 2 * N; ++j) {
    for (int k = j; k <= 2 * N; ++k) {
      PauliSum ac = anticommutator(g[j], g[k]);
      if (j == k) ac -= two;
      worst = std::max(worst, ac.frobenius());
    }
  }
  return worst;
}

// U = Gamma_1 (Gamma_1 - Gamma_2)/sqrt2 ... (Gamma_{2N-1} - Gamma_{2N})/sqrt2.
// Conjugation shifts every mode up by one with a sign flip at the boundary:
// U Gamma_j U^-1 = Gamma_{j+1} for j < 2N and U Gamma_{2N} U^-1 = -Gamma_1.
inline PauliSum twisted_translation(int N, bool mutated = false) {
  const auto g = jw_all(N, mutated);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  PauliSum u = g[1];
  for (int k = 1; k < 2 * N; ++k) {
    u = u * ((g[k] - g[k + 1]) * cplx(inv_sqrt2, 0));
  }
  return u;
}

}  // namespace isinglab
