#pragma once

// Discrete-time evolution operators: rational elementary gates, first-order
// trotterized circuits in the spin and Majorana pictures, Floquet drives,
// symmetric second-order splittings, reference exponentials, and Trotter
// error measurement.
//
// Layer orderings are frozen: the Z layer comes before the XX layer, and
// within a layer the site index ascends. The duality relations distinguish
// these orderings, so they are part of the contract, not a style choice.

#include <cmath>
#include <stdexcept>

#include "isinglab/dense.hpp"
#include "isinglab/fermion.hpp"
#include "isinglab/pauli.hpp"

namespace isinglab {

// (1 + i w Z_j) / (1 + i w), a unitary equal to diag(1, e^{-2i arctan w}) on
// site j; w carries any coupling factor
inline PauliSum gate_uz(int j, double w, int N) {
  return (PauliSum::identity(N) + PauliSum::z(j, N) * cplx(0, w)) /
         cplx(1.0, w);
}

// (1 + i w X_j X_{j+1}) / (1 + i w) with periodic wrap N + 1 -> 1
inline PauliSum gate_uxx(int j, double w, int N) {
  const int k = (j == N) ? 1 : j + 1;
  if (j < 1 || j > N) throw std::out_of_range("gate_uxx: site out of range");
  return (PauliSum::identity(N) +
          PauliSum::x(j, N) * PauliSum::x(k, N) * cplx(0, w)) /
         cplx(1.0, w);
}

inline PauliSum va_layer_sparse(double w, int N) {
  PauliSum v = PauliSum::identity(N);
  for (int j = 1; j <= N; ++j) v = v * gate_uz(j, w, N);
  return v;
}

inline PauliSum vb_layer_sparse(double w, int N) {
  PauliSum v = PauliSum::identity(N);
  for (int j = 1; j <= N; ++j) v = v * gate_uxx(j, w, N);
  return v;
}

inline Dense va_layer(double w, int N) { return va_layer_sparse(w, N).to_dense(); }
inline Dense vb_layer(double w, int N) { return vb_layer_sparse(w, N).to_dense(); }

// V(w; h, J): all Z gates at coupling h w, then all XX gates at coupling J w
inline Dense v_first_order(double w, double h, double J, int N) {
  return (va_layer_sparse(h * w, N) * vb_layer_sparse(J * w, N)).to_dense();
}

// Majorana-picture circuit: prod_j (1 + w Gamma_{2j-1} Gamma_{2j}) / (1 + iw)
// then prod_j (1 + s_j w Gamma_{2j} Gamma_{2j+1}) / (1 + iw), where the
// boundary factor j = N picks up s_N = -1 from the mode wrap 2N + 1 -> 1.
// In spin language the boundary gate is (1 + i w P X_N X_1) / (1 + i w) with
// P the spin parity.
inline Dense v_majorana(double w, int N) {
  const auto g = jw_all(N);
  const PauliSum id = PauliSum::identity(N);
  PauliSum v = id;
  for (int j = 1; j <= N; ++j) {
    v = v * ((id + g[std::size_t(2 * j - 1)] * g[std::size_t(2 * j)] * cplx(w, 0)) /
             cplx(1.0, w));
  }
  for (int j = 1; j <= N; ++j) {
    const PauliSum& right = (j == N) ? g[1] : g[std::size_t(2 * j + 1)];
    const double s = (j == N) ? -1.0 : 1.0;
    v = v * ((id + g[std::size_t(2 * j)] * right * cplx(s * w, 0)) / cplx(1.0, w));
  }
  return v.to_dense();
}

inline PauliSum hamiltonian_a(int N) {
  PauliSum h(N);
  for (int j = 1; j <= N; ++j) h -= PauliSum::z(j, N);
  return h;
}

inline PauliSum hamiltonian_b(int N) {
  PauliSum h(N);
  for (int j = 1; j <= N; ++j) {
    const int k = (j == N) ? 1 : j + 1;
    h -= PauliSum::x(j, N) * PauliSum::x(k, N);
  }
  return h;
}

inline PauliSum h_tfim(double h, double J, int N) {
  return hamiltonian_a(N) * cplx(h, 0) + hamiltonian_b(N) * cplx(J, 0);
}

inline Dense reference_evolution(double t, double h, double J, int N) {
  return mat_exp(-kI * t * h_tfim(h, J, N).to_dense());
}

// binary Floquet half-steps e^{-i h t H_A} e^{-i J t H_B}; for h = J = 1 and
// w = tan t this equals e^{2 i N t} V(w; 1, 1)
inline Dense floquet_op(double t, double h, double J, int N) {
  const Dense ha = hamiltonian_a(N).to_dense();
  const Dense hb = hamiltonian_b(N).to_dense();
  return mat_exp(-kI * (h * t) * ha) * mat_exp(-kI * (J * t) * hb);
}

enum class SplitSign { minus, plus };

// symmetric splittings:
//   minus: e^{-iJt H_B/2} e^{-iht H_A} e^{-iJt H_B/2}
//   plus:  e^{-iht H_A/2} e^{-iJt H_B} e^{-iht H_A/2}
inline Dense second_order(double t, double h, double J, SplitSign sign, int N) {
  const Dense ha = hamiltonian_a(N).to_dense();
  const Dense hb = hamiltonian_b(N).to_dense();
  if (sign == SplitSign::minus) {
    const Dense half = mat_exp(-kI * (J * t / 2.0) * hb);
    return half * mat_exp(-kI * (h * t) * ha) * half;
  }
  const Dense half = mat_exp(-kI * (h * t / 2.0) * ha);
  return half * mat_exp(-kI * (J * t) * hb) * half;
}

enum class TrotterKind { first_order, second_order_minus, second_order_plus };

// spectral-norm distance between the n-step circuit and e^{-i H t}
inline double trotter_error(double t, int n, double h, double J,
                            TrotterKind kind, int N) {
  if (n < 1) throw std::invalid_argument("trotter_error: n must be positive");
  const double dt = t / n;
  Dense step;
  switch (kind) {
    case TrotterKind::first_order:
      step = floquet_op(dt, h, J, N);
      break;
    case TrotterKind::second_order_minus:
      step = second_order(dt, h, J, SplitSign::minus, N);
      break;
    case TrotterKind::second_order_plus:
      step = second_order(dt, h, J, SplitSign::plus, N);
      break;
  }
  return spectral_norm(dense_pow(step, n) - reference_evolution(t, h, J, N));
}

// Scaling distance for the rational-gate circuit V(t/n; 1, 1)^n against the
// exact evolution. Each rational layer carries a physically irrelevant
// overall factor e^{-2iN arctan(t/n)}, so the distance is taken modulo one
// global phase; without the alignment it saturates at O(1) instead of
// decaying as O(1/n).
inline double rational_trotter_error(double t, int n, int N) {
  const Dense circ = dense_pow(v_first_order(t / n, 1.0, 1.0, N), n);
  return phase_aligned_dist(circ, reference_evolution(t, 1.0, 1.0, N));
}

}  // namespace isinglab
